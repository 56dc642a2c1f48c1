#include "mtlkit/json_io.hpp"

#include <json.hpp>

namespace mtlkit {

namespace {

using nlohmann::json;

const char* mtl_kind_name(MtlKind k) {
  switch (k) {
    case MtlKind::True: return "True";
    case MtlKind::Prop: return "Prop";
    case MtlKind::Not: return "Not";
    case MtlKind::And: return "And";
    case MtlKind::Or: return "Or";
    case MtlKind::Until: return "Until";
    case MtlKind::Since: return "Since";
    case MtlKind::EvF: return "EvF";
    case MtlKind::EvP: return "EvP";
    case MtlKind::BoxF: return "BoxF";
    case MtlKind::BoxP: return "BoxP";
    case MtlKind::DiaF: return "DiaF";
    case MtlKind::DiaP: return "DiaP";
    case MtlKind::Kplus: return "Kplus";
    case MtlKind::Kminus: return "Kminus";
  }
  return "?";
}

const char* fo_kind_name(FoKind k) {
  switch (k) {
    case FoKind::True: return "True";
    case FoKind::Pred: return "Pred";
    case FoKind::Less: return "Less";
    case FoKind::Eq: return "Eq";
    case FoKind::And: return "And";
    case FoKind::Or: return "Or";
    case FoKind::Not: return "Not";
    case FoKind::Implies: return "Implies";
    case FoKind::Exists: return "Exists";
    case FoKind::Forall: return "Forall";
  }
  return "?";
}

json interval_json(const Interval& i) {
  return {{"lo", i.lo.str()}, {"hi", i.hi.str()}, {"lo_closed", i.lo_closed}, {"hi_closed", i.hi_closed}};
}

Interval interval_from(const json& j) {
  return Interval::make(Bound::parse(j.at("lo").get<std::string>()), j.at("lo_closed").get<bool>(),
                        Bound::parse(j.at("hi").get<std::string>()), j.at("hi_closed").get<bool>());
}

json mtl_json(const Mtl& f) {
  json j{{"kind", mtl_kind_name(f.kind())}};
  switch (f.kind()) {
    case MtlKind::True: break;
    case MtlKind::Prop: j["name"] = f.name(); break;
    case MtlKind::EvF:
    case MtlKind::EvP:
      j["offset"] = f.offset().str();
      j["arg"] = mtl_json(f.arg());
      break;
    case MtlKind::Until:
    case MtlKind::Since:
      j["interval"] = interval_json(f.interval());
      j["lhs"] = mtl_json(f.lhs());
      j["rhs"] = mtl_json(f.rhs());
      break;
    case MtlKind::BoxF:
    case MtlKind::BoxP:
    case MtlKind::DiaF:
    case MtlKind::DiaP:
      j["interval"] = interval_json(f.interval());
      j["arg"] = mtl_json(f.arg());
      break;
    case MtlKind::And:
    case MtlKind::Or:
      j["lhs"] = mtl_json(f.lhs());
      j["rhs"] = mtl_json(f.rhs());
      break;
    default: j["arg"] = mtl_json(f.arg());
  }
  return j;
}

json term_json(const Term& t) { return {{"var", t.var}, {"offset", t.offset.str()}}; }

json fo_json(const Fo& f) {
  json j{{"kind", fo_kind_name(f.kind())}};
  switch (f.kind()) {
    case FoKind::True: break;
    case FoKind::Pred:
      j["name"] = f.name();
      j["term"] = term_json(f.t1());
      break;
    case FoKind::Less:
    case FoKind::Eq:
      j["t1"] = term_json(f.t1());
      j["t2"] = term_json(f.t2());
      break;
    case FoKind::Not: j["arg"] = fo_json(f.lhs()); break;
    case FoKind::Exists:
    case FoKind::Forall:
      j["var"] = f.name();
      j["body"] = fo_json(f.body());
      break;
    default:
      j["lhs"] = fo_json(f.lhs());
      j["rhs"] = fo_json(f.rhs());
  }
  return j;
}

json separated_json(const SeparatedForm& s) {
  switch (s.kind) {
    case SeparatedForm::Kind::Bounded: return {{"kind", "Bounded"}, {"formula", print_mtl(s.body)}};
    case SeparatedForm::Kind::DistantFuture:
      return {{"kind", "DistantFuture"}, {"n", s.n.str()}, {"formula", print_mtl(s.body)}};
    case SeparatedForm::Kind::DistantPast: return {{"kind", "DistantPast"}, {"n", s.n.str()}, {"formula", print_mtl(s.body)}};
    default: break;
  }
  json kids = json::array();
  for (const auto& c : s.children) kids.push_back(separated_json(c));
  const char* k = s.kind == SeparatedForm::Kind::Not ? "Not" : s.kind == SeparatedForm::Kind::And ? "And" : "Or";
  return {{"kind", k}, {"children", kids}};
}

std::vector<std::string> strings(const json& j) {
  std::vector<std::string> out;
  for (const auto& e : j) out.push_back(e.get<std::string>());
  return out;
}

}  // namespace

std::string signal_to_json(const Signal& s, int indent) {
  SignalData d = to_data(s);
  json segs = json::array();
  for (const auto& p : d.segments) {
    if (p.is_point) segs.push_back({{"point", p.from.str()}, {"props", p.props}});
    else segs.push_back({{"from", p.from.str()}, {"to", p.to.str()}, {"at_from", p.at_from}, {"props", p.props}});
  }
  json j{{"props", d.props}, {"left_tail", d.left_tail}, {"segments", segs}, {"right_tail", d.right_tail}};
  if (d.segments.empty()) j["origin"] = d.origin.str();
  return j.dump(indent);
}

Signal signal_from_json(std::string_view text) {
  json j;
  try {
    j = json::parse(text);
    SignalData d;
    d.props = strings(j.at("props"));
    d.left_tail = strings(j.value("left_tail", json::array()));
    d.right_tail = strings(j.value("right_tail", json::array()));
    if (j.contains("origin")) d.origin = Rational::parse(j["origin"].get<std::string>());
    for (const auto& e : j.value("segments", json::array())) {
      SignalPiece p;
      p.props = strings(e.value("props", json::array()));
      if (e.contains("point")) {
        p.is_point = true;
        p.from = Rational::parse(e["point"].get<std::string>());
      } else {
        p.from = Rational::parse(e.at("from").get<std::string>());
        p.to = Rational::parse(e.at("to").get<std::string>());
        p.at_from = e.value("at_from", true);
      }
      d.segments.push_back(std::move(p));
    }
    return validate_signal(d);
  } catch (const json::exception& e) {
    throw std::invalid_argument(std::string("signal json: ") + e.what());
  }
}

std::string satset_to_json(const SatSet& s, int indent) {
  json j = json::array();
  for (const auto& i : s.intervals()) j.push_back(interval_json(i));
  return j.dump(indent);
}

SatSet satset_from_json(std::string_view text) {
  try {
    std::vector<Interval> parts;
    for (const auto& e : json::parse(text)) parts.push_back(interval_from(e));
    return SatSet(parts);
  } catch (const json::exception& e) {
    throw std::invalid_argument(std::string("satset json: ") + e.what());
  }
}

std::string mtl_to_json(const Mtl& f, int indent) { return mtl_json(f).dump(indent); }
std::string fo_to_json(const Fo& f, int indent) { return fo_json(f).dump(indent); }
std::string separated_to_json(const SeparatedForm& s, int indent) { return separated_json(s).dump(indent); }

std::string trace_to_json(const std::vector<StageTrace>& trace, int indent) {
  json j = json::array();
  for (const auto& t : trace) j.push_back({{"stage", t.stage}, {"output", print_mtl(t.output)}, {"size", t.output.size()}});
  return j.dump(indent);
}

}  // namespace mtlkit
