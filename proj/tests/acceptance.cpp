// Acceptance suite: one PASS/FAIL line per criterion.

#include <algorithm>
#include <atomic>
#include <chrono>
#include <iostream>
#include <mutex>
#include <random>
#include <sstream>
#include <thread>

#include <CLI11.hpp>

#include "mtlkit/eval.hpp"
#include "mtlkit/harness.hpp"
#include "mtlkit/measure.hpp"
#include "mtlkit/random.hpp"
#include "mtlkit/transform.hpp"
#include "support.hpp"

using namespace mtlkit;
using namespace mtlkit::testing;

namespace {

struct Outcome {
  bool pass = true;
  std::vector<std::string> notes;

  void fail(const std::string& why) {
    pass = false;
    if (notes.size() < 12) notes.push_back(why);
  }
  void note(const std::string& s) { notes.push_back(s); }
};

std::size_t g_jobs = 1;

template <class F>
void parallel_for(std::size_t n, F body) {
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i; (i = next++) < n;) body(i);
  };
  std::vector<std::thread> pool;
  for (std::size_t k = 1; k < std::min(g_jobs, n); ++k) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();
}

EquivConfig equiv_cfg(std::size_t trials, std::uint64_t seed, std::vector<std::string> props = {}) {
  EquivConfig c;
  c.trials = trials;
  c.seed = seed;
  c.jobs = 1;
  c.signals.prop_names = std::move(props);
  return c;
}

std::string witness_text(const EquivVerdict& v) {
  std::ostringstream os;
  os << status_name(v.status);
  if (v.witness) os << " at " << v.witness->point.str() << " (lhs=" << v.witness->lhs_value << ", rhs=" << v.witness->rhs_value << ")";
  if (!v.detail.empty()) os << " " << v.detail;
  return os.str();
}

Signal random_sig(std::uint64_t seed, std::vector<std::string> props = {"p", "q"}) {
  RandomSignalConfig c = default_signal_config();
  c.num_props = props.size();
  c.prop_names = std::move(props);
  return random_signal(seed, c);
}

// Unit-range +1 simplifications on FO formulas. Each atom sits under two
// quantifiers relativized to [x, x+1) next to a random literal combination.
const char* kPlusOneAtoms[] = {"y + 1 < z + 1", "z + 1 < y + 1", "y < z + 1", "z < y + 1", "y + 1 < z",
                               "y + 1 = z",     "y = z + 1",     "y + 1 = z + 1", "x + 1 < y + 1", "y + 1 < x + 1"};

std::string random_literals(std::mt19937_64& rng, int depth) {
  if (depth == 0 || rng() % 3 == 0) {
    std::string v = rng() % 2 ? "y" : "z";
    std::string p = rng() % 2 ? "P" : "Q";
    return (rng() % 3 == 0 ? "!" : "") + p + "(" + v + ")";
  }
  const char* op = rng() % 2 ? " & " : " | ";
  return "(" + random_literals(rng, depth - 1) + op + random_literals(rng, depth - 1) + ")";
}

Fo plus_one_instance(std::mt19937_64& rng, const std::string& atom) {
  auto quant = [&](const std::string& v, const std::string& body) {
    std::string guard = "x <= " + v + " & " + v + " < x + 1";
    if (rng() % 2) return "exists " + v + ". (" + guard + " & " + body + ")";
    return "forall " + v + ". (" + guard + " -> " + body + ")";
  };
  const char* join[] = {" & ", " | ", " -> "};
  std::string body = "(" + atom + ")" + join[rng() % 3] + random_literals(rng, 2);
  return parse_fo(quant("y", quant("z", "(" + body + ")")));
}

Outcome plus_one_rules(std::uint64_t seed, std::size_t signals, std::size_t instances) {
  Outcome out;
  std::size_t trials = 0;
  for (const char* atom : kPlusOneAtoms) {
    std::mt19937_64 rng(seed ^ std::hash<std::string>{}(atom));
    for (std::size_t i = 0; i < instances; ++i) {
      Fo phi = plus_one_instance(rng, atom);
      Fo psi;
      try {
        psi = unit_strip_plus_one(phi);
      } catch (const std::exception& e) {
        out.fail(std::string("unit +1 rule '") + atom + "' rejected " + print_fo(phi) + ": " + e.what());
        break;
      }
      std::set<std::string> fv = free_vars(psi);
      fv.erase("x");
      Fo back = fv.empty() ? psi : subst_term(psi, *fv.begin(), fo::var("x", Rational(1)));
      bool bad = false;
      for (std::size_t k = 0; k < signals && !bad; ++k, ++trials) {
        Signal f = random_sig(seed * 7919 + i * 1000 + k, {"P", "Q"});
        if (fo_truth_set(f, back) != fo_truth_set(f, phi)) {
          out.fail(std::string("unit +1 rule '") + atom + "' counterexample on " + print_fo(phi));
          bad = true;
        }
      }
      if (bad) break;
    }
  }
  out.note(std::to_string(std::size(kPlusOneAtoms)) + " unit +1 rules, " + std::to_string(trials) + " FO trials");
  return out;
}

Outcome criterion1(std::uint64_t seed) {
  Outcome out;
  RuleSuiteConfig c;
  c.seed = seed;
  c.signals = 200;
  c.instances = 20;
  c.jobs = g_jobs;
  RuleReport r = rule_suite(c);
  std::size_t trials = 0;
  for (const auto& x : r.rules) {
    trials += x.trials_run;
    if (x.verdict.status != EquivStatus::Equivalent)
      out.fail("rule " + x.name + (x.displayed ? " (displayed)" : "") + ": " + witness_text(x.verdict) + " on " + x.lhs +
               "  vs  " + x.rhs);
  }
  for (const auto& x : r.rules) {
    if (x.verdict.status == EquivStatus::Equivalent) continue;
    auto fixed = std::find_if(r.rules.begin(), r.rules.end(), [&](const RuleResult& y) {
      return y.name == x.name + ".complete" || y.name == x.name.substr(0, x.name.rfind(".past")) + ".complete.past";
    });
    if (fixed != r.rules.end() && fixed->verdict.status == EquivStatus::Equivalent)
      out.note(x.name + " fails as displayed; " + fixed->name + " (with the missing disjunct) passes");
  }
  std::ostringstream os;
  os << r.rules.size() << " rewrite rules, " << trials << " trials, " << r.failures() << " failing, " << r.seconds << " s";
  out.note(os.str());
  Outcome u = plus_one_rules(seed, 200, 20);
  for (const auto& n : u.notes) u.pass ? out.note(n) : out.fail(n);
  if (r.seconds > 600) out.fail("rule suite exceeded 10 minutes");
  return out;
}

Outcome criterion2(std::uint64_t seed) {
  Outcome out;
  std::mt19937_64 rng(seed);
  RandomMtlConfig fc;
  fc.max_size = 12;
  int done = 0, budget = 0;
  for (int i = 0; i < 100; ++i) {
    Mtl phi = random_mtl(rng, fc);
    Mtl sep;
    try {
      sep = separate(phi).flatten();
    } catch (const BudgetExceeded&) {
      ++budget;
      continue;
    } catch (const std::exception& e) {
      out.fail("separate threw on " + print_mtl(phi) + ": " + e.what());
      continue;
    }
    ++done;
    if (!is_syntactically_separated(sep, SeparationMode::Strict)) out.fail("not separated: " + print_mtl(phi));
    EquivVerdict v = check_equiv_mtl(phi, sep, equiv_cfg(50, seed * 1000 + i));
    if (v.status != EquivStatus::Equivalent) out.fail("separate changed meaning of " + print_mtl(phi) + ": " + witness_text(v));
  }
  if (done < 90) out.fail("only " + std::to_string(done) + "/100 terminated within budget");
  out.note(std::to_string(done) + "/100 terminated, " + std::to_string(budget) + " over budget");
  EquivVerdict ex2 =
      check_equiv_mtl(separate(parse_mtl(kHistory)).flatten(), parse_mtl(kHistorySeparated), equiv_cfg(200, seed + 2));
  if (ex2.status != EquivStatus::Equivalent) out.fail("history example differs from its displayed separated form: " + witness_text(ex2));
  else out.note("history example matches the displayed separated form on 200 signals");
  return out;
}

Outcome criterion3(std::uint64_t seed) {
  Outcome out;
  const std::vector<Mtl> atoms = {parse_mtl("p"), parse_mtl("q"), parse_mtl("p & q"), parse_mtl("!p"), mtl::tt()};
  std::vector<DecompositionFormula> cases;
  for (std::size_t n = 1; n <= 3; ++n) {
    std::size_t total = 1;
    for (std::size_t k = 0; k < 2 * n; ++k) total *= atoms.size();
    for (std::size_t code = 0; code < total; ++code) {
      DecompositionFormula d;
      std::size_t c = code;
      for (std::size_t k = 0; k < n; ++k) {
        d.points.push_back(atoms[c % atoms.size()]);
        c /= atoms.size();
        d.gaps.push_back(atoms[c % atoms.size()]);
        c /= atoms.size();
      }
      cases.push_back(std::move(d));
    }
  }
  std::mutex mu;
  std::atomic<std::size_t> trials{0};
  parallel_for(cases.size(), [&](std::size_t i) {
    const DecompositionFormula& d = cases[i];
    std::string err;
    try {
      Mtl m = decomposition_to_mtl(d);
      if (future_reach(m) > Bound(Rational(1))) err = "fr > 1";
      else if (past_reach(m) != Bound(Rational(0))) err = "pr != 0";
      else {
        Fo delta = subst_term(decomposition_to_fo(d), "y", fo::var("x", Rational(1)));
        EquivVerdict v = check_equiv_fo_mtl(delta, m, equiv_cfg(100, seed * 100003 + i, {"p", "q"}));
        trials += v.trials_run;
        if (v.status != EquivStatus::Equivalent) err = witness_text(v);
      }
    } catch (const std::exception& e) {
      err = e.what();
    }
    if (!err.empty()) {
      std::lock_guard<std::mutex> lock(mu);
      out.fail("case " + std::to_string(i) + " (n=" + std::to_string(d.n()) + "): " + err);
    }
  });
  out.note(std::to_string(cases.size()) + " decomposition formulas (n = 1..3), " + std::to_string(trials.load()) + " trials");
  return out;
}

Outcome criterion4(std::uint64_t seed) {
  Outcome out;
  Fo phi = parse_fo("exists y. exists z. (x < y & y < z & z < x + 1 & P(y) & P(z))");
  Mtl displayed = parse_mtl("F[(0,1/2)] (P & F[(0,1/2)] P) | F[=1] P[(0,1/2)] (P & P[(0,1/2)] P) | F[(0,1/2)] P & F[(1/2,1)] P");
  Mtl got = fo_to_mtl(phi);
  EquivConfig c = equiv_cfg(200, seed, {"P"});
  c.fixtures.push_back(two_thirds_fixture());
  EquivVerdict v = check_equiv_mtl(got, displayed, c);
  if (v.status != EquivStatus::Equivalent) out.fail("translation differs from the displayed formula: " + witness_text(v));
  EquivVerdict w = check_equiv_fo_mtl(phi, got, c);
  if (w.status != EquivStatus::Equivalent) out.fail("translation differs from the FO input: " + witness_text(w));
  out.note(std::to_string(v.trials_run) + " signals incl. the 2n/3 fixture, output size " + std::to_string(print_mtl(got).size()));
  return out;
}

Outcome criterion5(std::uint64_t seed) {
  Outcome out;
  std::mt19937_64 rng(seed);
  RandomMtlConfig fc;
  fc.max_size = 12;
  const Rational rs[] = {Rational(1, 2), Rational(2), Rational(3)};
  for (int i = 0; i < 500; ++i) {
    Mtl phi = random_mtl(rng, fc);
    Signal f = random_sig(rng());
    const Rational& r = rs[i % 3];
    if (mtl_satset(scale_signal(f, r), scale_mtl(phi, r)) != mtl_satset(f, phi).scaled(r))
      out.fail("scaling by " + r.str() + " fails on " + print_mtl(phi));
  }
  RandomMtlConfig bc;
  bc.max_size = 12;
  std::vector<std::pair<Mtl, Signal>> triples;
  for (int i = 0; i < 500; ++i) {
    Mtl phi = random_mtl(rng, bc);
    triples.emplace_back(phi, random_sig(rng()));
  }
  std::mutex mu;
  parallel_for(triples.size(), [&](std::size_t i) {
    const auto& [phi, f] = triples[i];
    if (fo_truth_set(f, mtl_to_fo(phi)) != mtl_satset(f, phi)) {
      std::lock_guard<std::mutex> lock(mu);
      out.fail("bridge fails on " + print_mtl(phi));
    }
  });
  out.note("500 scaling triples (r in {1/2, 2, 3}), 500 bridge pairs compared as exact sets");
  return out;
}

Outcome criterion6(std::uint64_t seed) {
  Outcome out;
  std::size_t rows = 0;
  for (const ReachRow& r : kReachTable) {
    Mtl f = parse_mtl(r.formula);
    ++rows;
    if (future_reach(f).str() != r.fr || past_reach(f).str() != r.pr || unbounding_depth(f) != r.ud)
      out.fail(std::string("measure mismatch on ") + r.formula + ": fr=" + future_reach(f).str() + " pr=" + past_reach(f).str() +
               " ud=" + std::to_string(unbounding_depth(f)));
  }
  std::mt19937_64 rng(seed);
  RandomMtlConfig fc;
  fc.unbounded = false;
  fc.props = {"p", "q"};
  for (int i = 0; i < 100; ++i) {
    Mtl f = random_mtl(rng, fc);
    Bound fr = future_reach(f), pr = past_reach(f);
    if (!fr.is_finite() || !pr.is_finite()) {
      out.fail("infinite reach on bounded " + print_mtl(f));
      continue;
    }
    Signal a = random_sig(rng()), b = random_sig(rng());
    Rational r(static_cast<std::int64_t>(rng() % 49) - 24, 12);
    if (mtl_holds(a, r, f) != mtl_holds(splice(a, b, r + fr.value()), r, f))
      out.fail("future splice at fr=" + fr.str() + " changes " + print_mtl(f));
    if (mtl_holds(a, r, f) != mtl_holds(splice(b, a, r - pr.value() - Rational(1, 1000000)), r, f))
      out.fail("past splice at pr=" + pr.str() + " changes " + print_mtl(f));
  }
  out.note(std::to_string(rows) + " hand-computed rows, 100 splice instances");
  return out;
}

Outcome criterion7(std::uint64_t seed) {
  Outcome out;
  std::mt19937_64 rng(seed);
  RandomMtlConfig fc;
  for (int i = 0; i < 1000; ++i) {
    Mtl phi = random_mtl(rng, fc);
    Signal f = random_sig(rng());
    SatSet s = mtl_satset(f, phi);
    std::vector<Rational> bps = f.breakpoints();
    Rational r = rng() % 2 && !bps.empty() ? bps[rng() % bps.size()] : Rational(static_cast<std::int64_t>(rng() % 193) - 96, 24);
    if (s.contains(r) != mtl_holds(f, r, phi)) out.fail("set and point paths disagree on " + print_mtl(phi) + " at " + r.str());
  }
  int identities = 0;
  for (int i = 0; i < 300; ++i) {
    Mtl a = random_mtl(rng, fc), b = random_mtl(rng, fc);
    Signal f = random_sig(rng());
    SatSet sa = mtl_satset(f, a), sb = mtl_satset(f, b);
    auto check = [&](bool ok, const char* what) {
      ++identities;
      if (!ok) out.fail(std::string(what) + " fails on " + print_mtl(a) + " , " + print_mtl(b));
    };
    check(mtl_satset(f, mtl::neg(a)) == sa.complement(), "negation");
    check(mtl_satset(f, mtl::conj(a, b)) == sa.intersect(sb), "conjunction");
    check(mtl_satset(f, mtl::disj(a, b)) == sa.unite(sb), "disjunction");
    check(mtl_satset(f, mtl::neg(mtl::neg(a))) == sa, "double negation");
    check(mtl_satset(f, mtl::neg(mtl::conj(a, b))) == sa.complement().unite(sb.complement()), "De Morgan");
    check(sa.unite(sa.complement()) == SatSet::all() && sa.intersect(sa.complement()) == SatSet::empty(), "complement laws");
    check(mtl_satset(f, desugar(a)) == sa, "desugaring");
  }
  out.note("1000 (signal, formula, point) triples, " + std::to_string(identities) + " Boolean identities");
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"mtlkit acceptance suite", "mtlkit_acceptance"};
  std::uint64_t seed = 20240601;
  std::vector<int> only;
  g_jobs = std::max(1u, std::thread::hardware_concurrency());
  app.add_option("--seed", seed);
  app.add_option("--only", only, "criteria to run (default all)")->check(CLI::Range(1, 7));
  app.add_option("--jobs", g_jobs)->check(CLI::PositiveNumber);
  CLI11_PARSE(app, argc, argv);

  using Fn = Outcome (*)(std::uint64_t);
  const std::pair<const char*, Fn> criteria[] = {
      {"rule soundness", criterion1},        {"separation pipeline", criterion2}, {"bounded FO pipeline", criterion3},
      {"two-point example end to end", criterion4}, {"scaling and bridge laws", criterion5}, {"measures", criterion6},
      {"evaluator self-consistency", criterion7}};
  int failures = 0;
  for (int k = 1; k <= 7; ++k) {
    if (!only.empty() && std::find(only.begin(), only.end(), k) == only.end()) continue;
    auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = criteria[k - 1].second(seed + k);
    } catch (const std::exception& e) {
      o.fail(std::string("uncaught: ") + e.what());
    }
    double s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    failures += !o.pass;
    std::cout << "criterion " << k << " " << (o.pass ? "PASS" : "FAIL") << "  " << criteria[k - 1].first << " (" << s << " s)\n";
    for (const auto& n : o.notes) std::cout << "    " << n << '\n';
    std::cout.flush();
  }
  return failures == 0 ? 0 : 1;
}
