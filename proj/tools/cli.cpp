#include "cli.hpp"

#include <CLI11.hpp>
#include <iostream>
#include <iterator>
#include <json.hpp>
#include <optional>

#include "mtlkit/eval.hpp"
#include "mtlkit/harness.hpp"
#include "mtlkit/json_io.hpp"
#include "mtlkit/measure.hpp"
#include "mtlkit/transform.hpp"

namespace mtlkit::cli {

namespace {

using nlohmann::json;

struct Failure {
  int code;
  std::string message;
};

class Runner {
 public:
  Runner(std::istream& in, std::ostream& out, std::ostream& err) : in_(in), out_(out), err_(err) {}

  int main(const std::vector<std::string>& args) {
    CLI::App app{"MTL and FO(<,+q) toolkit", "mtlkit"};
    app.require_subcommand(1);
    app.set_help_all_flag("--help-all");

    auto formula_arg = [](CLI::App* sub, std::string& text) {
      sub->add_option("formula", text, "formula text; read from stdin when absent or '-'");
    };

    std::string text, lhs, rhs, bundle, by, mutate, bundle_dir;
    bool json_out = false, emit_stages = false, fo_lhs = false, fo_input = false;
    std::size_t budget = kDefaultBudget, trials = 100, jobs = 1, signals = 200, instances = 20;
    std::uint64_t seed = 0;
    std::optional<std::int64_t> n_bounded;
    std::vector<std::string> only;

    auto* reach = app.add_subcommand("reach", "future/past reach, unbounding depth and shape of an MTL formula");
    formula_arg(reach, text);
    reach->add_flag("--json", json_out);

    auto* normalize = app.add_subcommand("normalize", "normal form of an MTL formula");
    formula_arg(normalize, text);
    normalize->add_flag("--json", json_out);

    auto* separate_cmd = app.add_subcommand("separate", "syntactically separated equivalent of an MTL formula");
    formula_arg(separate_cmd, text);
    separate_cmd->add_option("--budget", budget, "node budget per stage")->check(CLI::PositiveNumber);
    separate_cmd->add_flag("--emit-stages", emit_stages, "print the output of every stage");
    separate_cmd->add_flag("--json", json_out);

    auto* fo2mtl = app.add_subcommand("fo2mtl", "translate an FO(<,+q) formula with free variable x into MTL");
    formula_arg(fo2mtl, text);
    fo2mtl->add_option("--n-bounded", n_bounded, "treat the input as N-bounded")->check(CLI::PositiveNumber);
    fo2mtl->add_option("--budget", budget)->check(CLI::PositiveNumber);
    fo2mtl->add_flag("--json", json_out);

    auto* mtl2fo = app.add_subcommand("mtl2fo", "FO transcription of an MTL formula");
    formula_arg(mtl2fo, text);
    mtl2fo->add_flag("--json", json_out);

    auto* scale = app.add_subcommand("scale", "multiply every constant by r");
    formula_arg(scale, text);
    scale->add_option("--by", by, "positive rational")->required();
    scale->add_flag("--fo", fo_input, "the input is an FO formula");
    scale->add_flag("--json", json_out);

    auto* fuzz = app.add_subcommand("fuzz-equiv", "randomized differential equivalence check");
    fuzz->add_option("--lhs", lhs)->required();
    fuzz->add_option("--rhs", rhs)->required();
    fuzz->add_flag("--fo-lhs", fo_lhs, "lhs is an FO formula in x");
    fuzz->add_option("--trials", trials)->default_val(100);
    fuzz->add_option("--seed", seed)->default_val(0);
    fuzz->add_option("--jobs", jobs)->default_val(1)->check(CLI::PositiveNumber);
    fuzz->add_option("--bundle", bundle, "counterexample bundle directory")->default_val("mtlkit-counterexample");
    fuzz->add_flag("--json", json_out);

    auto* suite = app.add_subcommand("rule-suite", "check every catalogued rewrite rule");
    suite->add_option("--seed", seed)->default_val(0);
    suite->add_option("--signals", signals)->default_val(200);
    suite->add_option("--instances", instances)->default_val(20);
    suite->add_option("--jobs", jobs)->default_val(1)->check(CLI::PositiveNumber);
    suite->add_option("--bundle-dir", bundle_dir, "write counterexample bundles here");
    suite->add_option("--mutate", mutate, "corrupt one rule (flip an interval endpoint)");
    suite->add_option("--only", only, "restrict to these rules");
    suite->add_flag("--json", json_out);

    std::vector<std::string> rev(args.rbegin(), args.rend());
    try {
      app.parse(rev);
    } catch (const CLI::ParseError& e) {
      int code = app.exit(e, out_, err_);
      return code == 0 ? kPass : kUsage;
    }

    try {
      if (reach->parsed()) return do_reach(read(text), json_out);
      if (normalize->parsed()) return emit_mtl(to_normal_form(parse_mtl(read(text))), json_out);
      if (separate_cmd->parsed()) return do_separate(read(text), budget, emit_stages, json_out);
      if (fo2mtl->parsed()) {
        Fo phi = parse_fo(read(text));
        return emit_mtl(n_bounded ? bounded_fo_to_mtl(phi, *n_bounded) : fo_to_mtl_q(phi, budget), json_out);
      }
      if (mtl2fo->parsed()) return emit_fo(mtl_to_fo(parse_mtl(read(text))), json_out);
      if (scale->parsed()) {
        Rational r = parse_rational(by);
        if (fo_input) return emit_fo(scale_fo(parse_fo(read(text)), r), json_out);
        return emit_mtl(scale_mtl(parse_mtl(read(text)), r), json_out);
      }
      if (fuzz->parsed()) return do_fuzz(lhs, rhs, fo_lhs, trials, seed, jobs, bundle, json_out);
      if (suite->parsed()) {
        RuleSuiteConfig c;
        c.seed = seed;
        c.signals = signals;
        c.instances = instances;
        c.jobs = jobs;
        c.bundle_dir = bundle_dir;
        c.mutate = mutate;
        c.only = only;
        return do_suite(c, json_out);
      }
    } catch (const Failure& f) {
      err_ << "mtlkit: " << f.message << '\n';
      return f.code;
    } catch (const ParseError& e) {
      err_ << "mtlkit: parse error: " << e.what() << '\n';
      return kUsage;
    } catch (const BudgetExceeded& e) {
      err_ << "mtlkit: budget of " << e.budget() << " nodes exceeded in stage " << e.stage() << '\n';
      return kBudget;
    } catch (const RequiresGpssNormalization& e) {
      err_ << "mtlkit: " << e.what() << '\n';
      return kUsage;
    } catch (const std::invalid_argument& e) {
      err_ << "mtlkit: " << e.what() << '\n';
      return kUsage;
    } catch (const std::out_of_range& e) {
      err_ << "mtlkit: " << e.what() << '\n';
      return kUsage;
    }
    return kUsage;
  }

 private:
  std::string read(const std::string& arg) {
    if (!arg.empty() && arg != "-") return arg;
    std::string s((std::istreambuf_iterator<char>(in_)), std::istreambuf_iterator<char>());
    if (s.find_first_not_of(" \t\r\n") == std::string::npos) throw Failure{kUsage, "no formula given"};
    return s;
  }

  static Rational parse_rational(const std::string& s) {
    Rational r;
    try {
      r = Rational::parse(s);
    } catch (const std::exception&) {
      throw Failure{kUsage, "not a rational: " + s};
    }
    if (r <= Rational(0)) throw Failure{kUsage, "scale factor must be positive: " + s};
    return r;
  }

  int emit_mtl(const Mtl& f, bool as_json) {
    if (as_json) out_ << json{{"formula", print_mtl(f)}, {"ast", json::parse(mtl_to_json(f))}}.dump(2) << '\n';
    else out_ << print_mtl(f) << '\n';
    return kPass;
  }

  int emit_fo(const Fo& f, bool as_json) {
    if (as_json) out_ << json{{"formula", print_fo(f)}, {"ast", json::parse(fo_to_json(f))}}.dump(2) << '\n';
    else out_ << print_fo(f) << '\n';
    return kPass;
  }

  int do_reach(const std::string& text, bool as_json) {
    Mtl f = parse_mtl(text);
    std::string fr = future_reach(f).str(), pr = past_reach(f).str();
    int ud = unbounding_depth(f);
    bool bounded = is_bounded(f), sep = is_syntactically_separated(f);
    if (as_json) {
      out_ << json{{"fr", fr}, {"pr", pr}, {"ud", ud}, {"bounded", bounded}, {"separated", sep}}.dump(2) << '\n';
    } else {
      out_ << "fr=" << fr << " pr=" << pr << " ud=" << ud << " bounded=" << (bounded ? "true" : "false")
           << " separated=" << (sep ? "true" : "false") << '\n';
    }
    return kPass;
  }

  int do_separate(const std::string& text, std::size_t budget, bool stages, bool as_json) {
    Mtl phi = parse_mtl(text);
    std::vector<StageTrace> trace;
    SeparatedForm s = separate(phi, budget, &trace);
    Mtl flat = s.flatten();
    if (as_json) {
      json j{{"formula", print_mtl(flat)}, {"separated", json::parse(separated_to_json(s))}};
      if (stages) j["stages"] = json::parse(trace_to_json(trace));
      out_ << j.dump(2) << '\n';
      return kPass;
    }
    if (stages)
      for (const auto& t : trace) out_ << t.stage << ": " << print_mtl(t.output) << '\n';
    out_ << print_mtl(flat) << '\n';
    return kPass;
  }

  int do_fuzz(const std::string& lhs, const std::string& rhs, bool fo_lhs, std::size_t trials, std::uint64_t seed,
              std::size_t jobs, const std::string& bundle, bool as_json) {
    EquivConfig c;
    c.trials = trials;
    c.seed = seed;
    c.jobs = jobs;
    Mtl r = parse_mtl(rhs);
    EquivVerdict v;
    std::string lhs_text;
    if (fo_lhs) {
      Fo l = parse_fo(lhs);
      lhs_text = print_fo(l);
      v = check_equiv_fo_mtl(l, r, c);
    } else {
      Mtl l = parse_mtl(lhs);
      lhs_text = print_mtl(l);
      v = check_equiv_mtl(l, r, c);
    }
    if (v.status == EquivStatus::Counterexample) write_bundle(bundle, v, lhs_text, fo_lhs, print_mtl(r));
    if (as_json) {
      json j = json::parse(verdict_to_json(v));
      if (v.status == EquivStatus::Counterexample) j["bundle"] = bundle;
      out_ << j.dump(2) << '\n';
    } else {
      out_ << status_name(v.status) << " trials=" << v.trials_run << " seed=" << v.seed;
      if (v.witness)
        out_ << " point=" << v.witness->point.str() << " lhs=" << (v.witness->lhs_value ? "true" : "false")
             << " rhs=" << (v.witness->rhs_value ? "true" : "false") << " bundle=" << bundle;
      out_ << '\n';
    }
    switch (v.status) {
      case EquivStatus::Equivalent: return kPass;
      case EquivStatus::Counterexample: return kCounterexample;
      case EquivStatus::BudgetExceeded: return kBudget;
    }
    return kUsage;
  }

  int do_suite(const RuleSuiteConfig& c, bool as_json) {
    RuleReport r = rule_suite(c);
    if (as_json) {
      out_ << r.to_json() << '\n';
    } else {
      for (const auto& x : r.rules) {
        out_ << (x.verdict.status == EquivStatus::Equivalent ? "PASS " : "FAIL ") << x.name << " instances=" << x.instances_run
             << " trials=" << x.trials_run << " seed=" << x.seed;
        if (x.verdict.witness) out_ << " point=" << x.verdict.witness->point.str();
        out_ << '\n';
      }
      out_ << r.rules.size() << " rules, " << r.failures() << " failing, " << r.seconds << " s\n";
    }
    return r.passed() ? kPass : kCounterexample;
  }

  std::istream& in_;
  std::ostream& out_;
  std::ostream& err_;
};

}  // namespace

int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err) {
  return Runner(in, out, err).main(args);
}

}  // namespace mtlkit::cli
