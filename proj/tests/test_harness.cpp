#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

#include <json.hpp>

#include "mtlkit/eval.hpp"
#include "mtlkit/harness.hpp"
#include "mtlkit/json_io.hpp"
#include "mtlkit/random.hpp"
#include "mtlkit/transform.hpp"
#include "support.hpp"

using namespace mtlkit;
using namespace mtlkit::testing;

namespace {

EquivConfig cfg(std::size_t trials, std::uint64_t seed, std::size_t jobs = 1) {
  EquivConfig c;
  c.trials = trials;
  c.seed = seed;
  c.jobs = jobs;
  return c;
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

TEST(Equiv, Reflexive) {
  Mtl f = parse_mtl("p U[(0,1]] (q & H p)");
  EquivVerdict v = check_equiv_mtl(f, f, cfg(50, 3));
  EXPECT_EQ(v.status, EquivStatus::Equivalent);
  EXPECT_EQ(v.trials_run, 50u);
  EXPECT_FALSE(v.witness);
}

TEST(Equiv, CounterexampleReplays) {
  Mtl a = parse_mtl("F[(0,1)] P"), b = parse_mtl("F[(0,2)] P");
  EquivVerdict v = check_equiv_mtl(a, b, cfg(100, 7));
  ASSERT_EQ(v.status, EquivStatus::Counterexample);
  ASSERT_TRUE(v.witness);
  const Witness& w = *v.witness;
  EXPECT_NE(w.lhs_value, w.rhs_value);
  EXPECT_EQ(mtl_holds(w.signal, w.point, a), w.lhs_value);
  EXPECT_EQ(mtl_holds(w.signal, w.point, b), w.rhs_value);
  EXPECT_LE(v.trials_run, 100u);
}

TEST(Equiv, HistoryDisplayedForm) {
  EquivVerdict v = check_equiv_mtl(parse_mtl(kHistory), parse_mtl(kHistorySeparated), cfg(200, 11));
  EXPECT_EQ(v.status, EquivStatus::Equivalent);
  EXPECT_EQ(v.trials_run, 200u);
}

TEST(Equiv, DeterministicAcrossJobs) {
  Mtl a = parse_mtl("G[(0,1)] (p | F[=1/2] q)"), b = parse_mtl("G[(0,1]] (p | F[=1/2] q)");
  EquivVerdict v1 = check_equiv_mtl(a, b, cfg(200, 5, 1));
  EquivVerdict v2 = check_equiv_mtl(a, b, cfg(200, 5, 4));
  EquivVerdict v3 = check_equiv_mtl(a, b, cfg(200, 5, 1));
  ASSERT_EQ(v1.status, EquivStatus::Counterexample);
  EXPECT_EQ(v1.trials_run, v2.trials_run);
  EXPECT_EQ(v1.witness->signal, v2.witness->signal);
  EXPECT_EQ(v1.witness->point, v2.witness->point);
  EXPECT_EQ(verdict_to_json(v1), verdict_to_json(v3));
}

TEST(EquivFo, TwoPointWithFixture) {
  EquivConfig c = cfg(200, 13);
  c.signals.prop_names = {"P"};
  c.fixtures.push_back(two_thirds_fixture());
  Fo phi = parse_fo("exists y. exists z. (x < y & y < z & z < x + 1 & P(y) & P(z))");
  Mtl displayed = parse_mtl("F[(0,1/2)] (P & F[(0,1/2)] P) | F[=1] P[(0,1/2)] (P & P[(0,1/2)] P) | F[(0,1/2)] P & F[(1/2,1)] P");
  EquivVerdict v = check_equiv_fo_mtl(phi, displayed, c);
  EXPECT_EQ(v.status, EquivStatus::Equivalent);
  EXPECT_EQ(v.trials_run, 201u);
}

TEST(EquivFo, DifferentPredicates) {
  EquivVerdict v = check_equiv_fo_mtl(parse_fo("P(x)"), parse_mtl("Q"), cfg(20, 1));
  ASSERT_EQ(v.status, EquivStatus::Counterexample);
  EXPECT_EQ(fo_eval(v.witness->signal, parse_fo("P(x)"), {{"x", v.witness->point}}), v.witness->lhs_value);
}

TEST(EquivFo, BridgeOnRandomFormulas) {
  std::mt19937_64 rng(17);
  RandomMtlConfig rc;
  rc.max_size = 8;
  for (int i = 0; i < 40; ++i) {
    Mtl psi = random_mtl(rng, rc);
    EquivVerdict v = check_equiv_fo_mtl(mtl_to_fo(psi), psi, cfg(10, 100 + i));
    ASSERT_EQ(v.status, EquivStatus::Equivalent) << print_mtl(psi);
  }
}

TEST(Bundle, WritesAllFiles) {
  Mtl a = parse_mtl("F[(0,1)] P"), b = parse_mtl("F[(0,2)] P");
  EquivVerdict v = check_equiv_mtl(a, b, cfg(100, 7));
  auto dir = std::filesystem::temp_directory_path() / "mtlkit_bundle_test";
  std::filesystem::remove_all(dir);
  write_bundle(dir, v, print_mtl(a), false, print_mtl(b));
  for (const char* f : {"signal.json", "lhs.mtl", "rhs.mtl", "verdict.json"}) EXPECT_TRUE(std::filesystem::exists(dir / f)) << f;
  Signal back = signal_from_json(slurp(dir / "signal.json"));
  EXPECT_EQ(back, v.witness->signal);
  EXPECT_EQ(parse_mtl(slurp(dir / "lhs.mtl")), a);
  auto j = nlohmann::json::parse(slurp(dir / "verdict.json"));
  EXPECT_EQ(j["status"], "Counterexample");
  EXPECT_EQ(Rational::parse(j["witness"]["point"].get<std::string>()), v.witness->point);
  std::filesystem::remove_all(dir);
}

TEST(Mutation, FlipsOneEndpoint) {
  EXPECT_EQ(flip_one_endpoint(parse_mtl("p U[(0,1)] q")), parse_mtl("p U[(0,1]] q"));
  EXPECT_EQ(flip_one_endpoint(parse_mtl("F[=1] p & G[(1,inf)] q")), parse_mtl("F[=1] p & G[[1,inf)] q"));
  EXPECT_EQ(flip_one_endpoint(parse_mtl("p U q")), parse_mtl("p U q"));
}

TEST(RuleSuite, SubsetPassesWithCounts) {
  RuleSuiteConfig c;
  c.seed = 2;
  c.signals = 50;
  c.instances = 5;
  c.only = {"split.until", "nf.interval.open", "limit.box.past"};
  RuleReport r = rule_suite(c);
  ASSERT_EQ(r.rules.size(), 3u);
  EXPECT_TRUE(r.passed());
  for (const auto& x : r.rules) {
    EXPECT_EQ(x.instances_run, 5u);
    EXPECT_EQ(x.trials_run, 250u);
  }
  auto j = nlohmann::json::parse(r.to_json());
  EXPECT_EQ(j["failures"], 0);
  EXPECT_EQ(j["results"][0]["trials"], 250);
  EXPECT_TRUE(j["results"][0].contains("seed"));
}

TEST(RuleSuite, MutatedRuleFailsWithWitness) {
  RuleSuiteConfig c;
  c.seed = 2;
  c.signals = 100;
  c.instances = 10;
  c.only = {"def.diamond", "def.box"};
  c.mutate = "def.diamond";
  c.bundle_dir = std::filesystem::temp_directory_path() / "mtlkit_mutation_test";
  std::filesystem::remove_all(c.bundle_dir);
  RuleReport r = rule_suite(c);
  ASSERT_EQ(r.failures(), 1u);
  const auto& bad = r.rules[0].name == "def.diamond" ? r.rules[0] : r.rules[1];
  EXPECT_EQ(bad.verdict.status, EquivStatus::Counterexample);
  ASSERT_TRUE(bad.verdict.witness);
  EXPECT_TRUE(std::filesystem::exists(c.bundle_dir / "def.diamond" / "verdict.json"));
  std::filesystem::remove_all(c.bundle_dir);
}

TEST(RuleSuite, DisplayedEquivalenceFailsHonestly) {
  RuleSuiteConfig c;
  c.seed = 1;
  c.only = {"extract.vi", "extract.vi.complete"};
  RuleReport r = rule_suite(c);
  for (const auto& x : r.rules) {
    if (x.name == "extract.vi") EXPECT_EQ(x.verdict.status, EquivStatus::Counterexample);
    else EXPECT_EQ(x.verdict.status, EquivStatus::Equivalent);
  }
}

TEST(Json, SignalRoundTrip) {
  RandomSignalConfig sc;
  sc.num_props = 2;
  for (int i = 0; i < 50; ++i) {
    Signal s = random_signal(900 + i, sc);
    EXPECT_EQ(signal_from_json(signal_to_json(s)), s);
  }
  Signal c(std::vector<std::string>{"p"}, 1);
  EXPECT_EQ(signal_from_json(signal_to_json(c)), c);
}

TEST(Json, SignalFileFormat) {
  Signal s = signal_from_json(
      R"({"props":["P","Q"],"left_tail":[],"segments":[{"from":"0","to":"3/2","at_from":true,"props":["P"]},)"
      R"({"point":"3/2","props":[]},{"from":"3/2","to":"2","at_from":false,"props":["Q"]}],"right_tail":["Q"]})");
  EXPECT_TRUE(s.holds("P", Rational(0)));
  EXPECT_FALSE(s.holds("P", Rational(3, 2)));
  EXPECT_FALSE(s.holds("Q", Rational(3, 2)));
  EXPECT_TRUE(s.holds("Q", Rational(5)));
  EXPECT_THROW(signal_from_json(R"({"props":["P"],"segments":[{"from":"0","to":"1","props":["Z"]}]})"), std::invalid_argument);
  EXPECT_THROW(signal_from_json("{"), std::invalid_argument);
}

TEST(Json, SatSetAndAst) {
  SatSet s({Interval::make(Bound::neg_inf(), false, Rational(-1), true), Interval::point(Rational(2))});
  EXPECT_EQ(satset_from_json(satset_to_json(s)), s);
  auto j = nlohmann::json::parse(satset_to_json(s));
  EXPECT_EQ(j[0]["lo"], "-inf");
  auto m = nlohmann::json::parse(mtl_to_json(parse_mtl("p U[(0,1]] q")));
  EXPECT_EQ(m["kind"], "Until");
  EXPECT_EQ(m["interval"]["hi"], "1");
  EXPECT_TRUE(m["interval"]["hi_closed"].get<bool>());
  auto f = nlohmann::json::parse(fo_to_json(parse_fo("exists y. (x < y & P(y + 1))")));
  EXPECT_EQ(f["kind"], "Exists");
}
