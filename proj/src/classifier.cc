#include "msing/classifier.hpp"

#include <cctype>
#include <charconv>

namespace msing {

GroupLabel GroupLabel::dihedral(std::int64_t p) {
  if (p < 3) throw Error(ErrorCode::InvalidIndex, "dihedral parameter must be at least 3");
  return GroupLabel(GroupKind::Dihedral, p);
}

GroupLabel GroupLabel::cyclic(std::int64_t p) {
  if (p < 3) throw Error(ErrorCode::InvalidIndex, "cyclic parameter must be at least 3");
  return GroupLabel(GroupKind::Cyclic, p);
}

std::int64_t GroupLabel::order() const {
  switch (kind_) {
    case GroupKind::A5: return 60;
    case GroupKind::S4: return 24;
    case GroupKind::A4: return 12;
    case GroupKind::Dihedral: return 2 * p_;
    case GroupKind::K4: return 4;
    case GroupKind::Cyclic: return p_;
    case GroupKind::Z2: return 2;
    case GroupKind::Trivial: return 1;
    case GroupKind::Infinite: return 0;
  }
  return 0;
}

std::vector<std::int64_t> GroupLabel::slot_orbit_sizes() const {
  switch (kind_) {
    case GroupKind::A5: return {12, 20, 30, 60};
    case GroupKind::S4: return {6, 8, 12, 24};
    case GroupKind::A4: return {4, 6, 12};
    case GroupKind::Dihedral: return {2, p_, 2 * p_};
    case GroupKind::K4: return {2, 4};
    case GroupKind::Cyclic: return {1, p_};
    case GroupKind::Z2: return {1, 2};
    case GroupKind::Trivial:
    case GroupKind::Infinite: return {};
  }
  return {};
}

void validate_index(const GroupLabel& group, const ComponentIndex& index) {
  // Upper bounds of the non-generic slots; the last slot (k) is unbounded.
  std::vector<std::int64_t> caps;
  switch (group.kind()) {
    case GroupKind::A5:
    case GroupKind::S4: caps = {1, 1, 1}; break;
    case GroupKind::A4: caps = {2, 1}; break;
    case GroupKind::Dihedral: caps = {1, 2}; break;
    case GroupKind::K4: caps = {3}; break;
    case GroupKind::Cyclic:
    case GroupKind::Z2: caps = {2}; break;
    case GroupKind::Trivial:
    case GroupKind::Infinite:
      if (!index.counts.empty()) throw Error(ErrorCode::InvalidIndex, "group takes no index");
      return;
  }
  if (index.counts.size() != caps.size() + 1) {
    throw Error(ErrorCode::InvalidIndex, "wrong number of slots for " + format_group(group));
  }
  for (std::size_t i = 0; i < index.counts.size(); ++i) {
    const auto c = index.counts[i];
    if (c < 0 || (i < caps.size() && c > caps[i])) {
      throw Error(ErrorCode::InvalidIndex, "slot out of range for " + format_group(group));
    }
  }
}

namespace {

ClassificationEntry entry(GroupLabel g, std::vector<std::int64_t> counts) {
  return {g, ComponentIndex{std::move(counts)}};
}

// The icosahedral and octahedral blocks share one branch pattern; `residues`
// are the remainders for the six indices with one or two special orbits.
void polyhedral_block(std::int64_t n, std::int64_t order, const std::int64_t (&residues)[6],
                      GroupLabel g, std::vector<ClassificationEntry>& out) {
  const std::int64_t k = n / order, r = n - order * k;
  if (r == 0 && k >= 1) out.push_back(entry(g, {0, 0, 0, k}));
  if (r == residues[0]) out.push_back(entry(g, {1, 0, 0, k}));
  if (r == residues[1]) out.push_back(entry(g, {0, 1, 0, k}));
  if (r == residues[2]) out.push_back(entry(g, {0, 0, 1, k}));
  if (r == residues[3]) out.push_back(entry(g, {1, 1, 0, k}));
  if (r == residues[4]) out.push_back(entry(g, {1, 0, 1, k}));
  if (r == residues[5]) out.push_back(entry(g, {0, 1, 1, k}));
  if (r == 2 && k >= 1) out.push_back(entry(g, {1, 1, 1, k - 1}));
}

}  // namespace

std::vector<ClassificationEntry> classify(std::int64_t n) {
  if (n < 1) throw Error(ErrorCode::InvalidCardinality, "cardinality must be positive");
  std::vector<ClassificationEntry> out;
  if (n <= 2) out.push_back({GroupLabel::infinite(), {}});

  polyhedral_block(n, 60, {12, 20, 30, 32, 42, 50}, GroupLabel::a5(), out);
  polyhedral_block(n, 24, {6, 8, 12, 14, 18, 20}, GroupLabel::s4(), out);

  {
    const std::int64_t k = n / 12, r = n - 12 * k;
    const auto g = GroupLabel::a4();
    if (r == 0 && k >= 1) out.push_back(entry(g, {0, 0, k}));
    if (r == 4) out.push_back(entry(g, {1, 0, k}));
    if (r == 8 && k >= 1) out.push_back(entry(g, {2, 0, k}));
    if (r == 6 && k >= 1) out.push_back(entry(g, {0, 1, k}));
    if (r == 10) out.push_back(entry(g, {1, 1, k}));
    if (r == 2 && k >= 2) out.push_back(entry(g, {2, 1, k - 1}));
  }

  for (std::int64_t p = n; p >= 3; --p) {
    const std::int64_t k = n / (2 * p), l = n / p - 2 * k, r = n - 2 * p * k - p * l;
    const auto g = GroupLabel::dihedral(p);
    if (k >= 1 && r == 0) out.push_back(entry(g, {0, l, k}));
    if (k >= 2 && r == 0 && l == 0) out.push_back(entry(g, {0, 2, k - 1}));
    if (k >= 1 && r == 2) out.push_back(entry(g, {1, l, k}));
    if (k >= 2 && r == 2 && l == 0) out.push_back(entry(g, {1, 2, k - 1}));
    if (k == 0 && r == 0 && l == 1) out.push_back(entry(g, {0, 1, 0}));
    if (k == 0 && r == 2 && l == 1 && p != 4) out.push_back(entry(g, {1, 1, 0}));
  }

  {
    const std::int64_t k = n / 4, r = n - 4 * k;
    const auto g = GroupLabel::k4();
    if (k >= 1 && r == 0) out.push_back(entry(g, {0, k}));
    if (k >= 2 && r == 0) out.push_back(entry(g, {2, k - 1}));
    if (k >= 1 && r == 2) out.push_back(entry(g, {1, k}));
    if (k >= 2 && r == 2) out.push_back(entry(g, {3, k - 1}));
  }

  for (std::int64_t p = n; p >= 3; --p) {
    const std::int64_t k = n / p, r = n - p * k;
    const auto g = GroupLabel::cyclic(p);
    if (k >= 3 && r <= 2) out.push_back(entry(g, {r, k}));
    if (k == 2 && r == 1) out.push_back(entry(g, {r, k}));
    if (k == 1 && r == 1 && p != 3) out.push_back(entry(g, {r, k}));
  }

  {
    const std::int64_t k = n / 2, r = n - 2 * k;
    const auto g = GroupLabel::z2();
    if (k >= 3) out.push_back(entry(g, {r, k}));
    if (k >= 4 && r == 0) out.push_back(entry(g, {2, k - 1}));
    if (k == 2 && r == 1) out.push_back(entry(g, {r, k}));
  }

  if (n >= 5) out.push_back({GroupLabel::trivial(), {}});
  return out;
}

std::optional<std::int64_t> cardinality_of(const ClassificationEntry& e) {
  const auto sizes = e.group.slot_orbit_sizes();
  if (sizes.empty()) return std::nullopt;
  validate_index(e.group, e.index);
  std::int64_t total = 0;
  for (std::size_t i = 0; i < sizes.size(); ++i) total += sizes[i] * e.index.counts[i];
  return total;
}

std::set<std::int64_t> cardinality_set(const GroupLabel& group, std::int64_t n_max) {
  std::set<std::int64_t> out;
  for (std::int64_t n = 1; n <= n_max; ++n) {
    for (const auto& e : classify(n)) {
      if (e.group == group) {
        out.insert(n);
        break;
      }
    }
  }
  return out;
}

std::string format_group(const GroupLabel& g) {
  switch (g.kind()) {
    case GroupKind::A5: return "A_5";
    case GroupKind::S4: return "S_4";
    case GroupKind::A4: return "A_4";
    case GroupKind::Dihedral: return "D_" + std::to_string(g.p());
    case GroupKind::K4: return "K_4";
    case GroupKind::Cyclic: return "Z_" + std::to_string(g.p());
    case GroupKind::Z2: return "Z_2";
    case GroupKind::Trivial: return "(0)";
    case GroupKind::Infinite: return "infinity";
  }
  return "?";
}

std::string format_entry(const ClassificationEntry& e) {
  if (e.group.kind() == GroupKind::Trivial || e.group.kind() == GroupKind::Infinite) {
    return format_group(e.group);
  }
  std::string out = format_group(e.group) + ", (";
  for (std::size_t i = 0; i < e.index.counts.size(); ++i) {
    if (i > 0) out += ", ";
    out += std::to_string(e.index.counts[i]);
  }
  return out + ")";
}

std::string format_listing(const std::vector<ClassificationEntry>& entries) {
  std::string out;
  for (const auto& e : entries) out += format_entry(e) + "\n";
  return out;
}

namespace {

std::int64_t parse_int(std::string_view s, std::string_view whole) {
  std::int64_t v = 0;
  auto res = std::from_chars(s.data(), s.data() + s.size(), v);
  if (s.empty() || res.ec != std::errc() || res.ptr != s.data() + s.size()) {
    throw Error(ErrorCode::ParseError, "bad integer in entry '" + std::string(whole) + "'");
  }
  return v;
}

}  // namespace

ClassificationEntry parse_entry(std::string_view text) {
  std::string s;
  for (char ch : text) {
    if (!std::isspace(static_cast<unsigned char>(ch))) s.push_back(ch);
  }
  if (s == "(0)" || s == "trivial") return {GroupLabel::trivial(), {}};
  if (s == "infinity") return {GroupLabel::infinite(), {}};

  const auto comma = s.find(',');
  if (comma == std::string::npos || s.size() < comma + 3 || s[comma + 1] != '(' ||
      s.back() != ')') {
    throw Error(ErrorCode::ParseError, "expected 'G, (…)' but got '" + std::string(text) + "'");
  }
  const std::string_view name = std::string_view(s).substr(0, comma);
  std::string_view tuple = std::string_view(s).substr(comma + 2, s.size() - comma - 3);

  ComponentIndex index;
  while (!tuple.empty()) {
    const auto next = tuple.find(',');
    index.counts.push_back(parse_int(tuple.substr(0, next), text));
    if (next == std::string_view::npos) break;
    tuple.remove_prefix(next + 1);
  }

  GroupLabel g;
  if (name == "A_5") {
    g = GroupLabel::a5();
  } else if (name == "S_4") {
    g = GroupLabel::s4();
  } else if (name == "A_4") {
    g = GroupLabel::a4();
  } else if (name == "K_4") {
    g = GroupLabel::k4();
  } else if (name == "Z_2") {
    g = GroupLabel::z2();
  } else if (name.starts_with("D_")) {
    g = GroupLabel::dihedral(parse_int(name.substr(2), text));
  } else if (name.starts_with("Z_")) {
    g = GroupLabel::cyclic(parse_int(name.substr(2), text));
  } else {
    throw Error(ErrorCode::ParseError, "unknown group '" + std::string(name) + "'");
  }
  validate_index(g, index);
  return {g, index};
}

}  // namespace msing
