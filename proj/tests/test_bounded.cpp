#include <gtest/gtest.h>

#include "mtlkit/eval.hpp"
#include "mtlkit/measure.hpp"
#include "mtlkit/random.hpp"
#include "mtlkit/transform.hpp"
#include "support.hpp"

using namespace mtlkit;
using namespace mtlkit::testing;

namespace {

Signal sig(std::uint64_t seed, std::vector<std::string> props, std::int64_t denom = 4) {
  RandomSignalConfig cfg;
  cfg.num_props = props.size();
  cfg.prop_names = std::move(props);
  cfg.max_pieces = 8;
  cfg.grid_denominator = denom;
  cfg.window = Rational(4);
  return random_signal(seed, cfg);
}

SatSet at_plus_one(const Signal& f, const Fo& delta) { return fo_truth_set(f, subst_term(delta, "y", fo::var("x", Rational(1)))); }

const char* kTwoPoint = "exists y. exists z. (x < y & y < z & z < x + 1 & P(y) & P(z))";
const char* kTwoPointMtl = "F[(0,1/2)] (P & F[(0,1/2)] P) | F[=1] P[(0,1/2)] (P & P[(0,1/2)] P) | F[(0,1/2)] P & F[(1/2,1)] P";

bool shifted_preds_within(const Fo& f, std::int64_t n) {
  for (const auto& p : preds_of(f)) {
    bool ok = false;
    for (std::int64_t j = -n; j < n; ++j) ok = ok || p == shifted_name("P", j);
    if (!ok) return false;
  }
  return true;
}

}  // namespace

TEST(Relativize, DisplayedReplacement) {
  Fo r = relativize_to_unit(parse_fo("exists y. (x - 1 <= y & y < x + 1 & P(y))"), 1);
  Fo want = parse_fo("exists y. (x <= y & y < x + 1 & (P_at_m1(y) | P_at_0(y)))");
  EXPECT_EQ(r, want) << print_fo(r);
}

TEST(Relativize, UnitInputOnlyRenamed) {
  Fo r = relativize_to_unit(parse_fo("exists y. (x <= y & y < x + 1 & P(y))"), 1);
  for (int k = 0; k < 50; ++k) {
    Signal f = sig(300 + k, {"P"});
    ASSERT_EQ(fo_truth_set(shifted_signal(f, -1, 1), r), fo_truth_set(shifted_signal(f, -1, 1), parse_fo("exists y. (x <= y & y < x + 1 & P_at_0(y))")));
  }
}

TEST(Relativize, ShiftedSignalSemantics) {
  const std::vector<std::pair<const char*, std::int64_t>> cases = {
      {"exists y. (x - 1 <= y & y < x + 1 & P(y))", 1},
      {"forall y. (x - 2 <= y & y < x + 2 -> P(y) | exists z. (y < z & z < y + 1 & x - 2 <= z & z < x + 2 & !P(z)))", 2},
      {"exists y. (x < y & y < x + 2 & P(y) & P(y + 1))", 3},
  };
  for (const auto& [text, n] : cases) {
    Fo phi = parse_fo(text);
    ASSERT_TRUE(is_n_bounded(phi, n)) << text;
    Fo r = relativize_to_unit(phi, n);
    EXPECT_TRUE(shifted_preds_within(r, n)) << print_fo(r);
    for (int k = 0; k < 40; ++k) {
      Signal f = sig(400 + k, {"P"});
      ASSERT_EQ(fo_truth_set(shifted_signal(f, -n, n), r), fo_truth_set(f, phi)) << text << " seed " << 400 + k;
    }
  }
}

TEST(Relativize, RejectsUnbounded) {
  EXPECT_THROW(relativize_to_unit(parse_fo("exists y. (x < y & P(y))"), 2), TransformError);
}

TEST(UnitStrip, PlusOneRules) {
  auto stripped_atom = [](const char* atom) {
    std::string s = std::string("exists y. (x <= y & y < x + 1 & exists z. (x <= z & z < x + 1 & ") + atom + " & P(z)))";
    return unit_strip_plus_one(parse_fo(s));
  };
  EXPECT_EQ(stripped_atom("y + 1 < z + 1"), parse_fo("exists y. (x <= y & y < y1 & exists z. (x <= z & z < y1 & (x <= z & y < z & P(z))))"));
  EXPECT_EQ(stripped_atom("y < z + 1"), parse_fo("exists y. (x <= y & y < y1 & exists z. (x <= z & z < y1 & (x <= z & P(z))))"));
  EXPECT_EQ(stripped_atom("y + 1 = z"), fo::ff());
}

TEST(UnitStrip, EquivalentAfterSubstitution) {
  for (const char* text : {"exists y. (x <= y & y < x + 1 & exists z. (x <= z & z < x + 1 & y + 1 < z + 1 & P(z) & !P(y)))",
                           "forall y. (x <= y & y < x + 1 -> P(y) | exists z. (x <= z & z < x + 1 & z < y & P(z)))"}) {
    Fo phi = parse_fo(text);
    Fo psi = unit_strip_plus_one(phi);
    std::string y;
    for (const auto& v : free_vars(psi))
      if (v != "x") y = v;
    ASSERT_FALSE(y.empty());
    Fo back = subst_term(psi, y, fo::var("x", Rational(1)));
    for (int k = 0; k < 50; ++k) {
      Signal f = sig(500 + k, {"P"});
      ASSERT_EQ(fo_truth_set(f, back), fo_truth_set(f, phi)) << text;
    }
  }
}

TEST(UnitStrip, RejectsNonUnit) { EXPECT_THROW(unit_strip_plus_one(parse_fo("exists y. (x < y & y < x + 2 & P(y))")), TransformError); }

TEST(Decomposition, BaseCase) {
  DecompositionFormula d{{parse_mtl("p")}, {parse_mtl("q")}};
  EXPECT_EQ(decomposition_to_mtl(d), parse_mtl("p & G[(0,1)] q"));
}

TEST(Decomposition, AllPointsMatchTwoPoint) {
  DecompositionFormula d{{parse_mtl("P"), parse_mtl("P")}, {mtl::tt(), mtl::tt()}};
  Mtl m = decomposition_to_mtl(d);
  EXPECT_LE(future_reach(m), Bound(Rational(1)));
  EXPECT_EQ(past_reach(m), Bound(Rational(0)));
  // x < z1 < x+1 with P at x and z1
  Mtl want = parse_mtl("P & F[(0,1)] P");
  for (int k = 0; k < 200; ++k) {
    Signal f = sig(600 + k, {"P"}, 6);
    ASSERT_EQ(mtl_satset(f, m), mtl_satset(f, want)) << k;
    ASSERT_EQ(mtl_satset(f, m), at_plus_one(f, decomposition_to_fo(d)));
  }
}

TEST(Decomposition, ExhaustiveUpToTwo) {
  const std::vector<Mtl> atoms = {parse_mtl("p"), parse_mtl("q"), parse_mtl("p & q"), parse_mtl("!p"), mtl::tt()};
  std::vector<Signal> sigs;
  for (int k = 0; k < 6; ++k) sigs.push_back(sig(700 + k, {"p", "q"}));
  std::size_t checked = 0;
  auto check = [&](const DecompositionFormula& d) {
    Mtl m = decomposition_to_mtl(d);
    ASSERT_LE(future_reach(m), Bound(Rational(1)));
    ASSERT_EQ(past_reach(m), Bound(Rational(0)));
    Fo fo = decomposition_to_fo(d);
    for (const auto& f : sigs) ASSERT_EQ(mtl_satset(f, m), at_plus_one(f, fo)) << print_mtl(m);
    ++checked;
  };
  for (const auto& a : atoms)
    for (const auto& b : atoms) check({{a}, {b}});
  for (const auto& p0 : atoms)
    for (const auto& p1 : atoms)
      for (const auto& g1 : atoms)
        for (const auto& g2 : atoms) check({{p0, p1}, {g1, g2}});
  EXPECT_EQ(checked, 650u);
}

namespace {

// The n = 2 disjunction with the intervals exactly as displayed: [0,h) for
// k = 0, open trailing boxes and open Since intervals.
Mtl displayed_n2(const std::string& f0, const std::string& f1, const std::string& g1, const std::string& g2) {
  std::string s;
  auto w = [](const std::string& x) { return "(" + x + ")"; };
  const std::string chain = w(f1) + " & G[(0,1/4)] " + w(g2);
  // U[[0,1/4)] b read as b now or U over (0,1/4)
  const std::string first[] = {w(w(chain) + " | " + w(g1) + " U[(0,1/4)] " + w(chain)), w(g1) + " U[[1/4,1/2)] " + w(chain)};
  const char* tail[] = {"(1/4,1)", "(1/2,1)"};
  for (int k = 0; k < 2; ++k) s += w(w(f0) + " & " + w(first[k]) + " & G[" + tail[k] + "] " + w(g2)) + " | ";
  const char* back[] = {"(1/4,1/2)", "(0,1/4)"};
  const char* lead[] = {"(0,1/2)", "(0,3/4)"};
  for (int k = 0; k < 2; ++k) {
    s += w("F[=1] (" + w(g2) + " S[" + back[k] + "] (" + w(f1) + " & H[(0,1/4)] " + w(g1) + ")) & G[" + lead[k] + "] " + w(g1) + " & " + w(f0));
    if (k == 0) s += " | ";
  }
  return parse_mtl(s);
}

bool fo_at_zero(const Signal& f, const DecompositionFormula& d) {
  return fo_eval(f, subst_term(decomposition_to_fo(d), "y", fo::var("x", Rational(1))), {{"x", Rational(0)}});
}

}  // namespace

TEST(Decomposition, IntervalEndpointWitnesses) {
  {
    // z1 = x is not strictly after x
    DecompositionFormula d{{mtl::tt(), parse_mtl("p")}, {mtl::tt(), mtl::tt()}};
    Signal f = p_at({Rational(0)}, "p");
    EXPECT_FALSE(fo_at_zero(f, d));
    EXPECT_FALSE(mtl_holds(f, Rational(0), decomposition_to_mtl(d)));
    EXPECT_TRUE(mtl_holds(f, Rational(0), displayed_n2("true", "p", "true", "true")));
  }
  {
    // z1 = x + 1/4 and psi_2 fails at x + 1/2
    DecompositionFormula d{{mtl::tt(), parse_mtl("p")}, {mtl::tt(), parse_mtl("!q")}};
    std::map<std::string, SatSet> m{{"p", SatSet({Interval::point(Rational(1, 4))})}, {"q", SatSet({Interval::point(Rational(1, 2))})}};
    Signal f = Signal::from_satsets(m);
    EXPECT_FALSE(fo_at_zero(f, d));
    EXPECT_FALSE(mtl_holds(f, Rational(0), decomposition_to_mtl(d)));
    EXPECT_TRUE(mtl_holds(f, Rational(0), displayed_n2("true", "p", "true", "!q")));
  }
  {
    // z1 = x + 1/2 sits on a left endpoint with k >= n
    DecompositionFormula d{{mtl::tt(), parse_mtl("p")}, {mtl::tt(), mtl::tt()}};
    Signal f = p_at({Rational(1, 2)}, "p");
    EXPECT_TRUE(fo_at_zero(f, d));
    EXPECT_TRUE(mtl_holds(f, Rational(0), decomposition_to_mtl(d)));
    EXPECT_FALSE(mtl_holds(f, Rational(0), displayed_n2("true", "p", "true", "true")));
  }
}

TEST(Decomposition, RejectsMalformed) {
  EXPECT_THROW(decomposition_to_mtl({{}, {}}), TransformError);
  EXPECT_THROW(decomposition_to_mtl({{mtl::tt()}, {mtl::tt(), mtl::tt()}}), TransformError);
}

TEST(BoundedFo, SingleWitnessInUnit) {
  Fo phi = parse_fo("exists y. (x <= y & y < x + 1 & P(y))");
  Mtl m = bounded_fo_to_mtl(phi, 1);
  Mtl want = parse_mtl("P | F[(0,1)] P");
  for (int k = 0; k < 200; ++k) {
    Signal f = sig(800 + k, {"P"});
    ASSERT_EQ(mtl_satset(f, m), mtl_satset(f, want));
  }
}

TEST(BoundedFo, TwoPointMatchesDisplayed) {
  Fo phi = parse_fo(kTwoPoint);
  Mtl m = bounded_fo_to_mtl(phi, 1);
  Mtl displayed = parse_mtl(kTwoPointMtl);
  EXPECT_LE(future_reach(m), Bound(Rational(1)));
  EXPECT_LE(past_reach(m), Bound(Rational(1)));
  for (int k = 0; k < 200; ++k) {
    Signal f = sig(900 + k, {"P"}, 6);
    ASSERT_EQ(mtl_satset(f, m), mtl_satset(f, displayed)) << k;
    ASSERT_EQ(mtl_satset(f, m), fo_truth_set(f, phi)) << k;
  }
  Signal fix = two_thirds_fixture();
  EXPECT_EQ(mtl_satset(fix, m), mtl_satset(fix, displayed));
  EXPECT_EQ(mtl_satset(fix, m), fo_truth_set(fix, phi));
}

TEST(BoundedFo, ReachWithinN) {
  for (const char* text : {"exists y. (x - 2 <= y & y < x + 2 & P(y) & !P(y + 1))", "forall y. (x - 1 <= y & y < x + 1 -> P(y))"}) {
    Fo phi = parse_fo(text);
    for (std::int64_t n : {1, 2}) {
      if (!is_n_bounded(phi, n)) continue;
      Mtl m = bounded_fo_to_mtl(phi, n);
      EXPECT_LE(future_reach(m), Bound(Rational(n))) << text;
      EXPECT_LE(past_reach(m), Bound(Rational(n))) << text;
      for (int k = 0; k < 50; ++k) {
        Signal f = sig(1000 + k, {"P"});
        ASSERT_EQ(mtl_satset(f, m), fo_truth_set(f, phi)) << text;
      }
    }
  }
}

TEST(BoundedFo, NestedAlternationNeedsGpss) {
  Fo phi = parse_fo(
      "exists y. (x <= y & y < x + 1 & forall z. (x <= z & z < x + 1 -> (z < y | exists w. (x <= w & w < x + 1 & z < w & P(w)))))");
  EXPECT_THROW(bounded_fo_to_mtl(phi, 1), RequiresGpssNormalization);
}

TEST(FoToMtl, DepthZero) {
  EXPECT_EQ(fo_to_mtl(parse_fo("P(x)")), parse_mtl("P"));
  EXPECT_EQ(fo_to_mtl(parse_fo("x < x")), mtl::ff());
}

TEST(FoToMtl, EquivalentOnSignals) {
  const std::vector<std::pair<const char*, const char*>> cases = {
      {"exists y. (x < y & P(y))", "F P"},
      {"forall y. (x < y -> P(y))", "G P"},
      {"exists y. (y < x & Q(y))", "P Q"},
      {"exists y. (x + 1 < y & P(y))", "F[(1,inf)] P"},
      {"P(x) & exists y. (x < y & Q(y) & !P(y))", "P & F (Q & !P)"},
      {"exists y. (x < y & y < x + 1 & P(y))", "F[(0,1)] P"},
  };
  for (const auto& [text, mtl_text] : cases) {
    Mtl m = fo_to_mtl(parse_fo(text));
    Mtl want = parse_mtl(mtl_text);
    for (int k = 0; k < 50; ++k) {
      Signal f = sig(1100 + k, {"P", "Q"});
      ASSERT_EQ(mtl_satset(f, m), mtl_satset(f, want)) << text;
    }
  }
}

TEST(FoToMtl, TwoPointFullPipeline) {
  Fo phi = parse_fo(kTwoPoint);
  Mtl m = fo_to_mtl(phi);
  Mtl displayed = parse_mtl(kTwoPointMtl);
  for (int k = 0; k < 200; ++k) {
    Signal f = sig(1200 + k, {"P"}, 6);
    ASSERT_EQ(mtl_satset(f, m), mtl_satset(f, displayed)) << k;
  }
  Signal fix = two_thirds_fixture();
  EXPECT_EQ(mtl_satset(fix, m), mtl_satset(fix, displayed));
}

TEST(FoToMtl, RationalConstants) {
  EXPECT_THROW(fo_to_mtl(parse_fo("P(x + 1/2)")), TransformError);
  Fo phi = parse_fo("exists y. (x < y & y < x + 1/2 & P(y))");
  Mtl m = fo_to_mtl_q(phi);
  for (int k = 0; k < 50; ++k) {
    Signal f = sig(1300 + k, {"P"});
    ASSERT_EQ(mtl_satset(f, m), mtl_satset(f, parse_mtl("F[(0,1/2)] P")));
  }
}
