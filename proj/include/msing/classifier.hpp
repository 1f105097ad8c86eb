#pragma once

// Enumeration of every stabilizer group (with component index) that an
// n-point subset of the Riemann sphere can have. Pure integer arithmetic.

#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "msing/error.hpp"

namespace msing {

enum class GroupKind { A5, S4, A4, Dihedral, K4, Cyclic, Z2, Trivial, Infinite };

class GroupLabel {
 public:
  GroupLabel() = default;

  static GroupLabel a5() { return GroupLabel(GroupKind::A5, 0); }
  static GroupLabel s4() { return GroupLabel(GroupKind::S4, 0); }
  static GroupLabel a4() { return GroupLabel(GroupKind::A4, 0); }
  static GroupLabel k4() { return GroupLabel(GroupKind::K4, 0); }
  static GroupLabel z2() { return GroupLabel(GroupKind::Z2, 0); }
  static GroupLabel trivial() { return GroupLabel(GroupKind::Trivial, 0); }
  static GroupLabel infinite() { return GroupLabel(GroupKind::Infinite, 0); }
  /// p ≥ 3; D_2 is K4.
  static GroupLabel dihedral(std::int64_t p);
  /// p ≥ 3; Z_2 has its own kind.
  static GroupLabel cyclic(std::int64_t p);

  GroupKind kind() const { return kind_; }
  /// The dihedral/cyclic parameter (0 for other kinds).
  std::int64_t p() const { return p_; }
  /// Group order; 0 for Infinite.
  std::int64_t order() const;
  /// Orbit sizes attached to the component-index slots, in slot order.
  std::vector<std::int64_t> slot_orbit_sizes() const;

  friend bool operator==(const GroupLabel&, const GroupLabel&) = default;
  friend auto operator<=>(const GroupLabel&, const GroupLabel&) = default;

 private:
  GroupLabel(GroupKind kind, std::int64_t p) : kind_(kind), p_(p) {}

  GroupKind kind_ = GroupKind::Trivial;
  std::int64_t p_ = 0;
};

/// Orbit counts per slot: (ν, μ, ε, k) for A5/S4, (ν, ε, k) for A4 and
/// dihedral, (ν, k) for K4 and cyclic, empty for trivial.
struct ComponentIndex {
  std::vector<std::int64_t> counts;

  friend bool operator==(const ComponentIndex&, const ComponentIndex&) = default;
  friend auto operator<=>(const ComponentIndex&, const ComponentIndex&) = default;
};

struct ClassificationEntry {
  GroupLabel group;
  ComponentIndex index;

  friend bool operator==(const ClassificationEntry&, const ClassificationEntry&) = default;
  friend auto operator<=>(const ClassificationEntry&, const ClassificationEntry&) = default;
};

/// Throws InvalidIndex when the counts violate the slot ranges of `group`.
void validate_index(const GroupLabel& group, const ComponentIndex& index);

/// All possible (stabilizer, component index) pairs for an n-point set, in
/// the canonical listing order. Throws InvalidCardinality for n < 1.
std::vector<ClassificationEntry> classify(std::int64_t n);

/// Σ slot_count × slot_orbit_size; nullopt for Trivial and Infinite, which
/// carry no cardinality formula.
std::optional<std::int64_t> cardinality_of(const ClassificationEntry& entry);

/// { n ≤ n_max : classify(n) has an entry with this group }.
std::set<std::int64_t> cardinality_set(const GroupLabel& group, std::int64_t n_max);

std::string format_group(const GroupLabel& group);
/// One listing line, e.g. "D_7, (1, 0, 144)", "(0)", "infinity".
std::string format_entry(const ClassificationEntry& entry);
std::string format_listing(const std::vector<ClassificationEntry>& entries);

/// Accepts the listing grammar with or without spaces ("Z_2,(1,2)").
ClassificationEntry parse_entry(std::string_view text);

}  // namespace msing
