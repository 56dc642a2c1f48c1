#include "mtlkit/harness.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <exception>
#include <fstream>
#include <functional>
#include <mutex>
#include <thread>

#include <json.hpp>

#include "mtlkit/eval.hpp"
#include "mtlkit/json_io.hpp"
#include "mtlkit/transform.hpp"

namespace mtlkit {

namespace {

using nlohmann::json;

std::uint64_t mix(std::uint64_t a, std::uint64_t b) {
  std::uint64_t z = a * 0x9E3779B97F4A7C15ull + b + 0x632BE59BD9B4E019ull;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

std::uint64_t name_seed(const std::string& s) {
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : s) h = (h ^ c) * 1099511628211ull;
  return h;
}

// Some point of a non-empty set.
Rational pick_point(const SatSet& s) {
  const Interval& i = s.intervals().front();
  if (i.lo.is_finite() && i.hi.is_finite()) return i.is_singleton() ? i.lo.value() : midpoint(i.lo.value(), i.hi.value());
  if (i.lo.is_finite()) return i.lo.value() + Rational(1);
  if (i.hi.is_finite()) return i.hi.value() - Rational(1);
  return Rational(0);
}

std::vector<std::string> alphabet(std::set<std::string> names) {
  if (names.empty()) names.insert("p");
  return {names.begin(), names.end()};
}

Signal cover(const Signal& s, const std::vector<std::string>& props) {
  std::vector<std::string> extra;
  for (const auto& p : props)
    if (!s.has_prop(p)) extra.push_back(p);
  return extra.empty() ? s : s.with_props(extra);
}

struct Side {
  std::function<SatSet(const Signal&)> set;
  std::function<bool(const Signal&, const Rational&)> point;
};

// Runs trials 0 .. trials+fixtures-1; the smallest failing index wins.
EquivVerdict run(const Side& lhs, const Side& rhs, const std::vector<std::string>& props, const EquivConfig& cfg) {
  const std::size_t total = cfg.trials + cfg.fixtures.size();
  auto signal_at = [&](std::size_t i) {
    return i < cfg.trials ? trial_signal(cfg, props, i) : cover(cfg.fixtures[i - cfg.trials], props);
  };
  std::atomic<std::size_t> first{total};
  std::mutex mu;
  std::exception_ptr error;
  std::size_t error_at = total;
  auto work = [&](std::size_t start, std::size_t stride) {
    for (std::size_t i = start; i < total; i += stride) {
      if (i >= first.load()) return;
      try {
        Signal f = signal_at(i);
        if (lhs.set(f) != rhs.set(f)) {
          std::size_t cur = first.load();
          while (i < cur && !first.compare_exchange_weak(cur, i)) {
          }
          return;
        }
      } catch (...) {
        std::lock_guard<std::mutex> lock(mu);
        if (i < error_at) {
          error_at = i;
          error = std::current_exception();
        }
        std::size_t cur = first.load();
        while (i < cur && !first.compare_exchange_weak(cur, i)) {
        }
        return;
      }
    }
  };
  std::size_t jobs = std::max<std::size_t>(1, std::min(cfg.jobs, total));
  if (jobs == 1) {
    work(0, 1);
  } else {
    std::vector<std::thread> pool;
    for (std::size_t t = 0; t < jobs; ++t) pool.emplace_back(work, t, jobs);
    for (auto& th : pool) th.join();
  }
  EquivVerdict v;
  v.seed = cfg.seed;
  std::size_t bad = first.load();
  if (error && error_at == bad) {
    try {
      std::rethrow_exception(error);
    } catch (const BudgetExceeded& e) {
      v.status = EquivStatus::BudgetExceeded;
      v.trials_run = bad;
      v.detail = e.stage();
      return v;
    } catch (const std::exception& e) {
      throw EvalError(std::string(e.what()) + " on signal " + signal_to_json(signal_at(bad), -1));
    }
  }
  if (bad == total) {
    v.trials_run = total;
    return v;
  }
  Signal f = signal_at(bad);
  SatSet a = lhs.set(f), b = rhs.set(f);
  SatSet diff = a.intersect(b.complement()).unite(b.intersect(a.complement()));
  Witness w{f, pick_point(diff), a.contains(pick_point(diff)), b.contains(pick_point(diff))};
  bool pl = lhs.point(f, w.point), pr = rhs.point(f, w.point);
  if (pl != w.lhs_value || pr != w.rhs_value)
    throw std::logic_error("witness replay disagrees with the set evaluator at " + w.point.str() + " on " + signal_to_json(f, -1));
  v.status = EquivStatus::Counterexample;
  v.trials_run = bad + 1;
  v.witness = std::move(w);
  return v;
}

Side mtl_side(const Mtl& f) {
  return {[f](const Signal& s) { return mtl_satset(s, f); }, [f](const Signal& s, const Rational& r) { return mtl_holds(s, r, f); }};
}

Side fo_side(const Fo& f) {
  std::string v = "x";
  for (const auto& name : free_vars(f)) v = name;
  return {[f](const Signal& s) { return fo_truth_set(s, f); },
          [f, v](const Signal& s, const Rational& r) { return fo_eval(s, f, {{v, r}}); }};
}

// Rebuilds f with the interval of its first eligible node changed.
std::optional<Mtl> flip(const Mtl& f) {
  switch (f.kind()) {
    case MtlKind::Until:
    case MtlKind::Since:
    case MtlKind::BoxF:
    case MtlKind::BoxP:
    case MtlKind::DiaF:
    case MtlKind::DiaP: {
      const Interval& i = f.interval();
      std::optional<Interval> j;
      if (!i.is_singleton() && i.hi.is_finite()) j = Interval::try_make(i.lo, i.lo_closed, i.hi, !i.hi_closed);
      else if (!i.is_singleton() && i.lo.is_finite() && i.lo.value() > Rational(0))
        j = Interval::try_make(i.lo, !i.lo_closed, i.hi, i.hi_closed);
      if (j) {
        switch (f.kind()) {
          case MtlKind::Until: return mtl::until(f.lhs(), f.rhs(), *j);
          case MtlKind::Since: return mtl::since(f.lhs(), f.rhs(), *j);
          case MtlKind::BoxF: return mtl::box_f(*j, f.arg());
          case MtlKind::BoxP: return mtl::box_p(*j, f.arg());
          case MtlKind::DiaF: return mtl::dia_f(*j, f.arg());
          default: return mtl::dia_p(*j, f.arg());
        }
      }
      break;
    }
    default: break;
  }
  if (!f.valid() || !f.lhs().valid()) return std::nullopt;
  if (auto a = flip(f.lhs())) return mtl::rebuild(f, *a, f.rhs());
  if (f.rhs().valid())
    if (auto b = flip(f.rhs())) return mtl::rebuild(f, f.lhs(), *b);
  return std::nullopt;
}

json verdict_json(const EquivVerdict& v) {
  json j{{"status", status_name(v.status)}, {"trials_run", v.trials_run}, {"seed", v.seed}};
  if (!v.detail.empty()) j["detail"] = v.detail;
  if (v.witness) {
    j["witness"] = {{"point", v.witness->point.str()},
                    {"lhs_value", v.witness->lhs_value},
                    {"rhs_value", v.witness->rhs_value},
                    {"signal", json::parse(signal_to_json(v.witness->signal, -1))}};
  }
  return j;
}

void write_file(const std::filesystem::path& p, const std::string& text) {
  std::ofstream out(p);
  if (!out) throw std::runtime_error("cannot write " + p.string());
  out << text << '\n';
}

}  // namespace

const char* status_name(EquivStatus s) {
  switch (s) {
    case EquivStatus::Equivalent: return "Equivalent";
    case EquivStatus::Counterexample: return "Counterexample";
    case EquivStatus::BudgetExceeded: return "BudgetExceeded";
  }
  return "?";
}

RandomSignalConfig default_signal_config() {
  RandomSignalConfig c;
  c.max_pieces = 8;
  c.window = Rational(4);
  c.grid_denominator = 12;
  return c;
}

Signal trial_signal(const EquivConfig& cfg, const std::vector<std::string>& props, std::size_t i) {
  RandomSignalConfig sc = cfg.signals;
  sc.prop_names = props;
  sc.num_props = props.size();
  return random_signal(mix(cfg.seed, i), sc);
}

EquivVerdict check_equiv_mtl(const Mtl& lhs, const Mtl& rhs, const EquivConfig& cfg) {
  std::set<std::string> names = props_of(lhs);
  for (const auto& p : props_of(rhs)) names.insert(p);
  return run(mtl_side(lhs), mtl_side(rhs), alphabet(names), cfg);
}

EquivVerdict check_equiv_fo_mtl(const Fo& lhs, const Mtl& rhs, const EquivConfig& cfg) {
  if (free_vars(lhs).size() > 1) throw std::invalid_argument("FO side must have at most one free variable");
  std::set<std::string> names = preds_of(lhs);
  for (const auto& p : props_of(rhs)) names.insert(p);
  return run(fo_side(lhs), mtl_side(rhs), alphabet(names), cfg);
}

std::string verdict_to_json(const EquivVerdict& v, int indent) { return verdict_json(v).dump(indent); }

void write_bundle(const std::filesystem::path& dir, const EquivVerdict& v, const std::string& lhs, bool lhs_is_fo,
                  const std::string& rhs) {
  std::filesystem::create_directories(dir);
  if (v.witness) write_file(dir / "signal.json", signal_to_json(v.witness->signal));
  write_file(dir / (lhs_is_fo ? "lhs.fo" : "lhs.mtl"), lhs);
  write_file(dir / "rhs.mtl", rhs);
  write_file(dir / "verdict.json", verdict_to_json(v));
}

Mtl flip_one_endpoint(const Mtl& f) {
  auto g = flip(f);
  return g ? *g : f;
}

std::size_t RuleReport::failures() const {
  return static_cast<std::size_t>(
      std::count_if(rules.begin(), rules.end(), [](const RuleResult& r) { return r.verdict.status != EquivStatus::Equivalent; }));
}

std::string RuleReport::to_json(int indent) const {
  json rs = json::array();
  for (const auto& r : rules) {
    json j{{"name", r.name},          {"family", r.family},         {"displayed", r.displayed},
           {"instances", r.instances_run}, {"trials", r.trials_run}, {"seed", r.seed},
           {"status", status_name(r.verdict.status)}, {"seconds", r.seconds}};
    if (r.verdict.status != EquivStatus::Equivalent) {
      j["lhs"] = r.lhs;
      j["rhs"] = r.rhs;
      j["verdict"] = verdict_json(r.verdict);
    }
    rs.push_back(std::move(j));
  }
  return json{{"seed", seed}, {"seconds", seconds}, {"rules", rs.size()}, {"failures", failures()}, {"results", rs}}.dump(indent);
}

RuleReport rule_suite(const RuleSuiteConfig& cfg) {
  using clock = std::chrono::steady_clock;
  auto t0 = clock::now();
  std::vector<const Rule*> todo;
  for (const auto& r : rule_catalog())
    if (cfg.only.empty() || std::find(cfg.only.begin(), cfg.only.end(), r.name) != cfg.only.end()) todo.push_back(&r);
  if (!cfg.mutate.empty()) find_rule(cfg.mutate);

  RuleReport report;
  report.seed = cfg.seed;
  report.rules.resize(todo.size());
  std::atomic<std::size_t> next{0};
  auto work = [&] {
    for (std::size_t k = next++; k < todo.size(); k = next++) {
      const Rule& rule = *todo[k];
      auto r0 = clock::now();
      RuleResult res;
      res.name = rule.name;
      res.family = rule.family;
      res.displayed = rule.displayed;
      res.seed = mix(cfg.seed, name_seed(rule.name));
      std::mt19937_64 rng(res.seed);
      for (std::size_t i = 0; i < cfg.instances; ++i) {
        RuleInstance inst = random_instance(rng, {"p", "q", "r"}, cfg.instance_size);
        Mtl lhs = rule.lhs(inst);
        Mtl rhs = rule.rhs(inst);
        if (rule.name == cfg.mutate) rhs = flip_one_endpoint(rhs);
        EquivConfig ec;
        ec.trials = cfg.signals;
        ec.seed = mix(res.seed, i);
        EquivVerdict v = check_equiv_mtl(lhs, rhs, ec);
        ++res.instances_run;
        res.trials_run += v.trials_run;
        res.verdict = v;
        if (v.status != EquivStatus::Equivalent) {
          res.lhs = print_mtl(lhs);
          res.rhs = print_mtl(rhs);
          if (!cfg.bundle_dir.empty()) write_bundle(cfg.bundle_dir / rule.name, v, res.lhs, false, res.rhs);
          break;
        }
      }
      res.seconds = std::chrono::duration<double>(clock::now() - r0).count();
      report.rules[k] = std::move(res);
    }
  };
  std::size_t jobs = std::max<std::size_t>(1, cfg.jobs);
  if (jobs == 1) {
    work();
  } else {
    std::vector<std::thread> pool;
    for (std::size_t t = 0; t < jobs; ++t) pool.emplace_back(work);
    for (auto& th : pool) th.join();
  }
  report.seconds = std::chrono::duration<double>(clock::now() - t0).count();
  return report;
}

}  // namespace mtlkit
