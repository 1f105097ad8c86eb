#include "msing/serialize.hpp"

namespace msing {

using nlohmann::json;

std::string group_kind_name(GroupKind kind) {
  switch (kind) {
    case GroupKind::A5: return "A5";
    case GroupKind::S4: return "S4";
    case GroupKind::A4: return "A4";
    case GroupKind::Dihedral: return "Dihedral";
    case GroupKind::K4: return "K4";
    case GroupKind::Cyclic: return "Cyclic";
    case GroupKind::Z2: return "Z2";
    case GroupKind::Trivial: return "Trivial";
    case GroupKind::Infinite: return "Infinite";
  }
  return "?";
}

GroupKind parse_group_kind(std::string_view name) {
  for (auto k : {GroupKind::A5, GroupKind::S4, GroupKind::A4, GroupKind::Dihedral, GroupKind::K4,
                 GroupKind::Cyclic, GroupKind::Z2, GroupKind::Trivial, GroupKind::Infinite}) {
    if (group_kind_name(k) == name) return k;
  }
  throw Error(ErrorCode::ParseError, "unknown group kind '" + std::string(name) + "'");
}

void to_json(json& j, const GroupLabel& g) {
  j = json{{"group", group_kind_name(g.kind())}, {"label", format_group(g)}};
  if (g.kind() == GroupKind::Dihedral || g.kind() == GroupKind::Cyclic) j["p"] = g.p();
}

void from_json(const json& j, GroupLabel& g) {
  switch (parse_group_kind(j.at("group").get<std::string>())) {
    case GroupKind::A5: g = GroupLabel::a5(); break;
    case GroupKind::S4: g = GroupLabel::s4(); break;
    case GroupKind::A4: g = GroupLabel::a4(); break;
    case GroupKind::Dihedral: g = GroupLabel::dihedral(j.at("p").get<std::int64_t>()); break;
    case GroupKind::K4: g = GroupLabel::k4(); break;
    case GroupKind::Cyclic: g = GroupLabel::cyclic(j.at("p").get<std::int64_t>()); break;
    case GroupKind::Z2: g = GroupLabel::z2(); break;
    case GroupKind::Trivial: g = GroupLabel::trivial(); break;
    case GroupKind::Infinite: g = GroupLabel::infinite(); break;
  }
}

void to_json(json& j, const ClassificationEntry& e) {
  to_json(j, e.group);
  j["index"] = e.index.counts;
}

void from_json(const json& j, ClassificationEntry& e) {
  from_json(j, e.group);
  e.index.counts = j.value("index", std::vector<std::int64_t>{});
  if (e.group.kind() != GroupKind::Infinite) validate_index(e.group, e.index);
}

void to_json(json& j, const MobiusMap& f) {
  j = json::array({format_complex(f.a()), format_complex(f.b()), format_complex(f.c()),
                   format_complex(f.d())});
}

void to_json(json& j, const PointSet& s) {
  j = json::array();
  for (const auto& p : s) j.push_back(format_point(p));
}

void to_json(json& j, const StabilizerResult& r) {
  to_json(j, r.label);
  j["order"] = r.order();
  j["index"] = r.index.counts;
  j["orbit_sizes"] = r.orbit_sizes();
  j["elements"] = r.elements;
}

void to_json(json& j, const WitnessResult& w) {
  j = json{{"n", w.points.size()}, {"entry", w.entry}, {"points", w.points}, {"attempts", w.attempts}};
  j["verified"] = w.verified ? json(*w.verified) : json(nullptr);
}

void to_json(json& j, const LambdaTuple& l) {
  json values = json::array();
  for (auto v : l.values) values.push_back(format_complex(v));
  j = json{{"n", l.n()}, {"values", values}};
}

void from_json(const json& j, LambdaTuple& l) {
  l.values.clear();
  for (const auto& v : j.at("values")) l.values.push_back(parse_complex(v.get<std::string>()));
  if (j.contains("n") && j.at("n").get<int>() != l.n()) {
    throw Error(ErrorCode::InvalidLambda, "n does not match the number of coordinates");
  }
}

void to_json(json& j, const GroupLawReport& r) {
  j = json{{"n", r.n},
           {"trials", r.trials},
           {"max_deviation", r.max_deviation},
           {"group_law_pass", r.group_law_pass},
           {"faithfulness_trials", r.faithfulness_trials},
           {"faithfulness_failures", r.faithfulness_failures},
           {"pass", r.pass}};
}

void to_json(json& j, const PhiReport& r) {
  j = json{{"n", r.n},
           {"g_order", r.g_order},
           {"a_order", r.a_order},
           {"a_label", r.a_label},
           {"injective", r.injective},
           {"lands_in_stabilizer", r.lands_in_stabilizer},
           {"pairs_checked", r.pairs_checked},
           {"pairs_failed", r.pairs_failed},
           {"pass", r.pass}};
}

}  // namespace msing
