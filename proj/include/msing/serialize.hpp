#pragma once

// JSON forms of the public types (nlohmann::json ADL hooks).
//   entry:      {"group": "Dihedral", "p": 7, "label": "D_7", "index": [1, 0, 144]}
//   points:     ["0+0i", "inf", "1+0.5i", ...]
//   stabilizer: {"order", "label", "group", "p"?, "index", "orbit_sizes", "elements"}
//   lambda:     {"n": 5, "values": ["2+1i", "5+0i"]}

#include <json.hpp>

#include "msing/classifier.hpp"
#include "msing/moduli.hpp"
#include "msing/sphere.hpp"
#include "msing/stabilizer.hpp"
#include "msing/witness.hpp"

namespace msing {

/// "A5", "S4", "A4", "Dihedral", "K4", "Cyclic", "Z2", "Trivial", "Infinite".
std::string group_kind_name(GroupKind kind);
/// Inverse of group_kind_name; throws ParseError.
GroupKind parse_group_kind(std::string_view name);

void to_json(nlohmann::json& j, const GroupLabel& g);
void from_json(const nlohmann::json& j, GroupLabel& g);
void to_json(nlohmann::json& j, const ClassificationEntry& e);
void from_json(const nlohmann::json& j, ClassificationEntry& e);
void to_json(nlohmann::json& j, const MobiusMap& f);
void to_json(nlohmann::json& j, const PointSet& s);
void to_json(nlohmann::json& j, const StabilizerResult& r);
void to_json(nlohmann::json& j, const WitnessResult& w);
void to_json(nlohmann::json& j, const LambdaTuple& l);
void from_json(const nlohmann::json& j, LambdaTuple& l);
void to_json(nlohmann::json& j, const GroupLawReport& r);
void to_json(nlohmann::json& j, const PhiReport& r);

}  // namespace msing
