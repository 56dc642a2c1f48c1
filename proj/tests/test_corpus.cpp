#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "mtlkit/eval.hpp"
#include "mtlkit/harness.hpp"
#include "mtlkit/json_io.hpp"
#include "mtlkit/measure.hpp"
#include "mtlkit/rules.hpp"
#include "mtlkit/transform.hpp"
#include "support.hpp"

using namespace mtlkit;

namespace {

const std::filesystem::path kDir = MTLKIT_CORPUS_DIR;

std::string slurp(const std::string& name) {
  std::ifstream in(kDir / name);
  if (!in) throw std::runtime_error("missing corpus file " + name);
  std::stringstream ss;
  ss << in.rdbuf();
  std::string s = ss.str();
  while (!s.empty() && (s.back() == '\n' || s.back() == '\r')) s.pop_back();
  return s;
}

EquivConfig cfg(std::size_t trials, std::uint64_t seed) {
  EquivConfig c;
  c.trials = trials;
  c.seed = seed;
  return c;
}

}  // namespace

TEST(Corpus, TwoThirdsFixture) {
  Signal s = signal_from_json(slurp("two_thirds.signal.json"));
  EXPECT_EQ(s, mtlkit::testing::two_thirds_fixture());
}

TEST(Corpus, TwoPoint) {
  Fo phi = parse_fo(slurp("two_point.fo"));
  Mtl displayed = parse_mtl(slurp("two_point_displayed.mtl"));
  Mtl got = fo_to_mtl(phi);
  EXPECT_EQ(got, parse_mtl(slurp("two_point_translated.mtl")));
  EquivConfig c = cfg(200, 1);
  c.signals.prop_names = {"P"};
  c.fixtures.push_back(signal_from_json(slurp("two_thirds.signal.json")));
  EXPECT_EQ(check_equiv_mtl(got, displayed, c).status, EquivStatus::Equivalent);
  EXPECT_EQ(check_equiv_fo_mtl(phi, displayed, c).status, EquivStatus::Equivalent);
}

TEST(Corpus, History) {
  Mtl phi = parse_mtl(slurp("history.mtl"));
  Mtl displayed = parse_mtl(slurp("history_separated.mtl"));
  Mtl got = separate(phi).flatten();
  EXPECT_EQ(got, parse_mtl(slurp("history_pipeline.mtl")));
  EXPECT_TRUE(is_syntactically_separated(displayed));
  EXPECT_EQ(check_equiv_mtl(got, displayed, cfg(200, 2)).status, EquivStatus::Equivalent);
  EXPECT_EQ(check_equiv_mtl(phi, displayed, cfg(200, 3)).status, EquivStatus::Equivalent);
}

TEST(Corpus, RuleInstances) {
  auto entries = nlohmann::json::parse(slurp("rules.json"));
  ASSERT_GT(entries.size(), 200u);
  std::set<std::string> refuted;
  for (const auto& e : entries) {
    const std::string rule = e["rule"];
    EXPECT_NO_THROW(find_rule(rule)) << rule;
    Mtl lhs = parse_mtl(e["lhs"].get<std::string>()), rhs = parse_mtl(e["rhs"].get<std::string>());
    if (e["expect"] == "Equivalent") {
      EXPECT_EQ(check_equiv_mtl(lhs, rhs, cfg(200, 4)).status, EquivStatus::Equivalent) << rule << ": " << e["lhs"];
      continue;
    }
    Signal s = signal_from_json(e["witness"]["signal"].dump());
    Rational t = Rational::parse(e["witness"]["point"].get<std::string>());
    EXPECT_NE(mtl_holds(s, t, lhs), mtl_holds(s, t, rhs)) << rule;
    EXPECT_NE(mtl_satset(s, lhs), mtl_satset(s, rhs)) << rule;
    refuted.insert(rule);
  }
  EXPECT_EQ(refuted, (std::set<std::string>{"extract.v", "extract.vi", "extract.v.past", "extract.vi.past"}));
}
