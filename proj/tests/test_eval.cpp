#include <gtest/gtest.h>

#include "mtlkit/eval.hpp"
#include "mtlkit/random.hpp"
#include "support.hpp"

using namespace mtlkit;
using namespace mtlkit::testing;

namespace {

// Set path and point path agree at every probe relevant to either.
void expect_paths_agree(const Signal& f, const Mtl& phi) {
  SatSet s = mtl_satset(f, phi);
  PointEvaluator pe(f, phi);
  std::vector<Rational> ends = s.endpoints();
  for (const auto& b : f.breakpoints()) ends.push_back(b);
  for (const Rational& t : probes(ends)) {
    ASSERT_EQ(s.contains(t), pe.holds(t)) << print_mtl(phi) << " at " << t.str() << " satset " << s.str();
  }
}

}  // namespace

TEST(MtlSatset, Examples) {
  Signal f = p_on(Rational(0), Rational(1));
  EXPECT_EQ(mtl_satset(f, parse_mtl("F[(0,1)] P")).str(), "(-1,1)");
  EXPECT_EQ(mtl_satset(f, parse_mtl("F[=1/2] P")).str(), "[-1/2,1/2)");
  EXPECT_TRUE(mtl_satset(f, parse_mtl("true")).is_all());
  EXPECT_TRUE(mtl_satset(f, parse_mtl("false")).is_empty());
  EXPECT_THROW(mtl_satset(f, parse_mtl("Q")), EvalError);
  EXPECT_THROW(mtl_holds(f, Rational(0), parse_mtl("Q")), EvalError);
}

TEST(MtlSatset, HandComputedUntil) {
  // P on [0,1), Q at {1} only: P U Q holds on [0,1) and at points r<0 never (P false before 0).
  std::map<std::string, SatSet> m;
  m["P"] = SatSet({Interval::make(Rational(0), true, Rational(1), false)});
  m["Q"] = SatSet({Interval::point(Rational(1))});
  Signal f = Signal::from_satsets(m);
  // Strictness: at r=-something the stretch (r,1) must lie in P; r=0 works since (0,1) in P.
  EXPECT_EQ(mtl_satset(f, parse_mtl("P U Q")).str(), "[0,1)");
  EXPECT_EQ(mtl_satset(f, parse_mtl("P U[(0,1/2)] Q")).str(), "(1/2,1)");
  EXPECT_EQ(mtl_satset(f, parse_mtl("P U[(0,1/2]] Q")).str(), "[1/2,1)");
  // A point-only invariant admits no witness stretch.
  EXPECT_TRUE(mtl_satset(f, parse_mtl("Q S P")).is_empty());
  EXPECT_EQ(mtl_satset(f, parse_mtl("!Q S P")).str(), "(0,1]");
}

TEST(MtlHolds, Examples) {
  Signal f = p_on(Rational(0), Rational(1));
  EXPECT_TRUE(mtl_holds(f, Rational(0), parse_mtl("F[(0,1)] P")));
  EXPECT_FALSE(mtl_holds(f, Rational(3, 2), parse_mtl("false")));
  // The two-point formula on the 2n/3 fixture holds iff two P-points lie in (r, r+1).
  Signal hr = two_thirds_fixture();
  Mtl displayed = parse_mtl(
      "F[(0,1/2)] (P & F[(0,1/2)] P) | F[=1] P[(0,1/2)] (P & P[(0,1/2)] P) | F[(0,1/2)] P & F[(1/2,1)] P");
  EXPECT_FALSE(mtl_holds(hr, Rational(0), displayed));
  for (int k = -24; k <= 120; ++k) {
    Rational r(k, 24);
    int count = 0;
    for (int n = 0; n <= 6; ++n)
      if (Rational(2 * n, 3) > r && Rational(2 * n, 3) < r + Rational(1)) ++count;
    EXPECT_EQ(mtl_holds(hr, r, displayed), count >= 2) << r.str();
  }
}

TEST(MtlHolds, TwoPathsAgreeOnHandPicked) {
  Signal f = p_on(Rational(0), Rational(1));
  for (const char* s : {"P U P", "!P U P", "K+ P", "K- P", "K+ !P", "G[(0,1]] P", "H[[1/2,1)] P", "P S[=1] P",
                        "F[[1,2]] P & P[(0,1)] !P", "(P U[(1/2,1)] !P) S[(0,1/2]] P"})
    expect_paths_agree(f, parse_mtl(s));
  Signal hr = two_thirds_fixture();
  for (const char* s : {"F[(0,1)] (P & F[(0,1)] P)", "K+ P | K- P", "!P U[(0,2/3]] P", "G[(0,1)] !P"})
    expect_paths_agree(hr, parse_mtl(s));
}

TEST(MtlHolds, TwoPathsAgreeRandom) {
  std::mt19937_64 rng(2024);
  RandomMtlConfig fcfg;
  fcfg.props = {"p", "q"};
  RandomSignalConfig scfg;
  scfg.num_props = 2;
  for (int i = 0; i < 1500; ++i) {
    Mtl phi = random_mtl(rng, fcfg);
    Signal f = random_signal(rng(), scfg);
    SatSet s = mtl_satset(f, phi);
    Rational r(static_cast<std::int64_t>(rng() % 193) - 96, 24);
    ASSERT_EQ(s.contains(r), mtl_holds(f, r, phi)) << print_mtl(phi) << " at " << r.str();
    if (i % 10 == 0) expect_paths_agree(f, phi);
  }
}

TEST(MtlSatset, BooleanAlgebra) {
  std::mt19937_64 rng(99);
  RandomMtlConfig fcfg;
  RandomSignalConfig scfg;
  scfg.num_props = 2;
  for (int i = 0; i < 300; ++i) {
    Mtl a = random_mtl(rng, fcfg), b = random_mtl(rng, fcfg);
    Signal f = random_signal(rng(), scfg);
    SatSet sa = mtl_satset(f, a), sb = mtl_satset(f, b);
    EXPECT_EQ(mtl_satset(f, mtl::neg(a)), sa.complement());
    EXPECT_EQ(mtl_satset(f, mtl::conj(a, b)), sa.intersect(sb));
    EXPECT_EQ(mtl_satset(f, mtl::disj(a, b)), sa.unite(sb));
    EXPECT_EQ(mtl_satset(f, desugar(a)), sa);
  }
}

TEST(MtlSatset, KplusIsRightLimit) {
  std::mt19937_64 rng(5);
  RandomSignalConfig scfg;
  for (int i = 0; i < 200; ++i) {
    Signal f = random_signal(rng(), scfg);
    Mtl p = mtl::prop("p");
    SatSet k = mtl_satset(f, mtl::kplus(p));
    SatSet sp = f.prop_satset("p");
    // r in K+ p iff (r, r+eps) meets P for every eps: i.e. P holds on a right neighbourhood
    // or r is a limit of P points from the right. Finite variability makes this "P on (r, r+eps)".
    for (const Rational& t : probes(f.breakpoints())) {
      Rational eps(1, 1000);
      EXPECT_EQ(k.contains(t), sp.contains(t + eps)) << t.str();
    }
    EXPECT_EQ(k, mtl_satset(f, parse_mtl("!(!p U true)")));
  }
}

TEST(FoEval, Examples) {
  Fo phi = parse_fo("exists y. exists z. (x<y & y<z & z<x+1 & P(y) & P(z))");
  Signal f = p_at({Rational(1, 4), Rational(3, 4)});
  EXPECT_TRUE(fo_eval(f, phi, {{"x", Rational(0)}}));
  EXPECT_FALSE(fo_eval(f, phi, {{"x", Rational(1, 4)}}));
  EXPECT_FALSE(fo_eval(f, parse_fo("exists y. y < y"), {}));
  EXPECT_TRUE(fo_eval(f, parse_fo("x < x+1"), {{"x", Rational(5)}}));
  EXPECT_THROW(fo_eval(f, parse_fo("P(y)"), {}), EvalError);
}

TEST(FoTruthSet, Examples) {
  Signal f = p_on(Rational(0), Rational(1));
  EXPECT_EQ(fo_truth_set(f, parse_fo("exists y. (x<y & y<x+1 & P(y))")).str(), "(-1,1)");
  EXPECT_TRUE(fo_truth_set(f, parse_fo("true")).is_all());
  EXPECT_EQ(fo_truth_set(f, parse_fo("P(x)")).str(), "[0,1)");
  EXPECT_THROW(fo_truth_set(f, parse_fo("x < y")), EvalError);
}

TEST(FoTruthSet, MatchesHandTranslations) {
  std::vector<std::pair<const char*, const char*>> pairs = {
      {"exists y. (x<y & y<x+1 & P(y))", "F[(0,1)] P"},
      {"exists y. (x<y & P(y) & forall z. (x<z & z<y) -> Q(z))", "Q U P"},
      {"exists y. (y<x & y>x-2 & P(y) & forall z. (y<z & z<x) -> Q(z))", "Q S[(0,2)] P"},
      {"forall y. (x < y & y <= x+1/2) -> P(y)", "G[(0,1/2]] P"},
      {"P(x+1/2)", "F[=1/2] P"},
      {"forall e. x < e -> exists y. (x < y & y < e & P(y))", "K+ P"},
      {"exists y. exists z. (x<y & y<z & z<x+1 & P(y) & P(z))",
       "F[(0,1/2)] (P & F[(0,1/2)] P) | F[=1] P[(0,1/2)] (P & P[(0,1/2)] P) | F[(0,1/2)] P & F[(1/2,1)] P"},
  };
  std::mt19937_64 rng(17);
  RandomSignalConfig scfg;
  scfg.num_props = 2;
  scfg.prop_names = {"P", "Q"};
  for (int i = 0; i < 60; ++i) {
    Signal f = random_signal(rng(), scfg);
    for (auto [fo_text, mtl_text] : pairs)
      EXPECT_EQ(fo_truth_set(f, parse_fo(fo_text)), mtl_satset(f, parse_mtl(mtl_text))) << fo_text;
  }
}

TEST(FoTruthSet, DenserGridAgrees) {
  std::vector<const char*> formulas = {
      "exists y. exists z. (x<y & y<z & z<x+1 & P(y) & P(z))",
      "forall y. (x<y & y<x+1) -> exists z. (y<z & z<y+1/2 & Q(z))",
      "exists y. (y < x & P(y+1/3)) & !Q(x-1/4)",
      "exists y. exists w. (x < y & y+1 < w & w < x+3 & P(y) & Q(w) & forall z. (y < z & z < w) -> !P(z))",
  };
  std::mt19937_64 rng(23);
  RandomSignalConfig scfg;
  scfg.num_props = 2;
  scfg.prop_names = {"P", "Q"};
  for (int i = 0; i < 30; ++i) {
    Signal f = random_signal(rng(), scfg);
    for (const char* s : formulas) {
      Fo phi = parse_fo(s);
      EXPECT_EQ(fo_truth_set(f, phi), fo_truth_set(f, phi, 2)) << s;
    }
  }
}

TEST(FoEval, ChainNeedsQuantifierCountNotDepth) {
  // Depth 2 but the x-profile breaks at w - 4: offsets chain through three bound variables.
  Fo phi = parse_fo(
      "exists y. (exists a. x+1 < a & a+1 < y) & (exists b. y+1 < b & b+1 < w)");
  Signal f(std::vector<std::string>{"P"}, 0);
  for (int k = -16; k <= 16; ++k) {
    Rational x(k, 4);
    EXPECT_EQ(fo_eval(f, phi, {{"x", x}, {"w", Rational(0)}}), x + Rational(4) < Rational(0)) << x.str();
  }
}

TEST(MtlSatset, HistoryDisplayedFormIsEquivalent) {
  Mtl a = parse_mtl(kHistory), b = parse_mtl(kHistorySeparated);
  RandomSignalConfig scfg;
  scfg.prop_names = {"p"};
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    Signal f = random_signal(seed, scfg);
    ASSERT_EQ(mtl_satset(f, a), mtl_satset(f, b)) << seed;
  }
}
