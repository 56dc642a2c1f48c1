#include <gtest/gtest.h>

#include "mtlkit/measure.hpp"
#include "mtlkit/random.hpp"
#include "support.hpp"

using namespace mtlkit;
using namespace mtlkit::testing;

TEST(Reach, HandTable) {
  for (const ReachRow& r : kReachTable) {
    Mtl f = parse_mtl(r.formula);
    EXPECT_EQ(future_reach(f).str(), r.fr) << r.formula;
    EXPECT_EQ(past_reach(f).str(), r.pr) << r.formula;
    EXPECT_EQ(unbounding_depth(f), r.ud) << r.formula;
  }
}

TEST(Reach, InfiniteIffUnbounded) {
  std::mt19937_64 rng(3);
  RandomMtlConfig cfg;
  for (int i = 0; i < 1000; ++i) {
    Mtl f = random_mtl(rng, cfg);
    EXPECT_EQ(future_reach(f).is_pos_inf(), unbounded_until_count(f) > 0) << print_mtl(f);
    EXPECT_EQ(past_reach(f).is_pos_inf(), unbounded_since_count(f) > 0) << print_mtl(f);
  }
}

TEST(Reach, SpliceSoundness) {
  std::mt19937_64 rng(8);
  RandomMtlConfig cfg;
  cfg.unbounded = false;
  RandomSignalConfig scfg;
  scfg.num_props = 2;
  int checked = 0;
  while (checked < 200) {
    Mtl f = random_mtl(rng, cfg);
    Bound fr = future_reach(f), pr = past_reach(f);
    ASSERT_TRUE(fr.is_finite() && pr.is_finite());
    Signal a = random_signal(rng(), scfg), b = random_signal(rng(), scfg);
    Rational r(static_cast<std::int64_t>(rng() % 49) - 24, 12);
    // Future side: agree on (-inf, r+fr].
    EXPECT_EQ(mtl_holds(a, r, f), mtl_holds(splice(a, b, r + fr.value()), r, f)) << print_mtl(f);
    // Past side: agree on [r-pr, inf).
    Signal mirrored = splice(b, a, r - pr.value() - Rational(1, 1000000));
    EXPECT_EQ(mtl_holds(a, r, f), mtl_holds(mirrored, r, f)) << print_mtl(f);
    ++checked;
  }
}

TEST(Bounded, Classifier) {
  EXPECT_TRUE(is_bounded(parse_mtl("p & F[(0,1)] q")));
  EXPECT_FALSE(is_bounded(parse_mtl("p U q")));
  EXPECT_TRUE(is_bounded(parse_mtl("K+ p")));
  EXPECT_FALSE(is_bounded(parse_mtl("G[(1,inf)] p")));
}

TEST(Separated, Classifier) {
  EXPECT_TRUE(is_syntactically_separated(parse_mtl("p & F[(0,1)] q")));
  EXPECT_FALSE(is_syntactically_separated(parse_mtl(kHistory)));
  // The displayed separated history formula meets the reach bounds with equality.
  EXPECT_TRUE(is_syntactically_separated(parse_mtl(kHistorySeparated)));
  EXPECT_FALSE(is_syntactically_separated(parse_mtl(kHistorySeparated), SeparationMode::Strict));
  EXPECT_TRUE(is_syntactically_separated(parse_mtl("F[=3] (p U q) | !P[=2] (p S q)"), SeparationMode::Strict));
  EXPECT_FALSE(is_syntactically_separated(parse_mtl("F[=3] (p U q S[(0,3)] r)"), SeparationMode::Strict));
  EXPECT_TRUE(is_syntactically_separated(parse_mtl("true U[=3] (p U q)"), SeparationMode::Strict));
  EXPECT_FALSE(is_syntactically_separated(parse_mtl("F[=1] (p U q)"), SeparationMode::Strict));
}

TEST(Bet, Recognizers) {
  EXPECT_TRUE(is_unit(parse_fo("exists y. (x <= y & y < x+1) & P(y)")));
  EXPECT_FALSE(is_unit(parse_fo("exists y. (x <= y & y < x+1) & P(x)")));
  Fo ex1 = parse_fo("exists y. exists z. (x<y & y<z & z<x+1 & P(y) & P(z))");
  EXPECT_FALSE(in_bet(ex1, fo::var("x", Rational(-1)), fo::var("x", Rational(1))));
  EXPECT_TRUE(is_n_bounded(ex1, 1));
  EXPECT_TRUE(is_unit(ex1));
  EXPECT_FALSE(is_unit(parse_fo("exists y. (x < y & P(y))")));
  EXPECT_FALSE(is_unit(parse_fo("exists y. (x <= y & y < x+2) & P(y)")));
  EXPECT_TRUE(is_n_bounded(parse_fo("exists y. (x <= y & y < x+2) & P(y)"), 2));
  EXPECT_TRUE(is_unit(parse_fo("forall y. (x <= y & y < x+1) -> P(y)")));
  EXPECT_TRUE(is_unit(parse_fo("forall y. (x < y & y < x+1/2) -> P(y)")));
  EXPECT_FALSE(is_unit(parse_fo("exists y. (x <= y & y < x+1) & P(y) & y < w")));
  Fo n = normalize_bet(ex1, fo::var("x"), fo::var("x", Rational(1)));
  EXPECT_TRUE(in_bet(n, fo::var("x"), fo::var("x", Rational(1))));
  // Normalization is an equivalence.
  std::mt19937_64 rng(1);
  RandomSignalConfig scfg;
  scfg.prop_names = {"P"};
  for (int i = 0; i < 50; ++i) {
    Signal s = random_signal(rng(), scfg);
    EXPECT_EQ(fo_truth_set(s, n), fo_truth_set(s, ex1));
  }
}
