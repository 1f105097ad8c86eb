#pragma once

// Brute-force computation of the full Möbius stabilizer of a finite point
// set, independent of the classifier: every stabilizing map sends a fixed
// base triple to some ordered triple of the set, so trying all ordered
// triples is exhaustive.

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "msing/classifier.hpp"
#include "msing/sphere.hpp"

namespace msing {

enum class StabilizerSearch {
  automatic,
  /// Every ordered image of the base triple, prefiltered by a fourth point.
  triple_sweep,
  /// Sends one base point and each candidate image to ∞; after centring and
  /// scaling, a stabilizing map becomes a rotation, so sorted radii must agree
  /// and the outermost point fixes the angle. Near-quadratic in |α|.
  anchored,
};

/// automatic picks anchored from this size on.
inline constexpr std::size_t kAnchoredSearchFrom = 32;

struct StabilizerOptions {
  /// Indices into the point set; chosen by maximal separation when absent.
  std::optional<std::array<std::size_t, 3>> base_triple;
  /// Closure and element-order checks run at this multiple of the point
  /// tolerance.
  double closure_factor = 10.0;
  StabilizerSearch search = StabilizerSearch::automatic;
};

struct StabilizerResult {
  /// Identity first, the rest in a canonical order.
  std::vector<MobiusMap> elements;
  GroupLabel label;
  ComponentIndex index;
  /// Orbit partition of the input, each orbit sorted, orbits sorted by
  /// smallest member.
  std::vector<std::vector<std::size_t>> orbits;

  std::int64_t order() const { return static_cast<std::int64_t>(elements.size()); }
  /// Ascending.
  std::vector<std::int64_t> orbit_sizes() const;
  ClassificationEntry entry() const { return {label, index}; }
};

/// Requires |alpha| ≥ 3 (smaller sets have infinite stabilizers).
StabilizerResult stabilizer(const PointSet& alpha, const StabilizerOptions& options = {});

/// The raw enumeration behind stabilizer(): every map preserving alpha,
/// each paired with the permutation of indices it induces.
struct StabilizingMap {
  MobiusMap map;
  std::vector<std::size_t> permutation;
};
std::vector<StabilizingMap> enumerate_stabilizing_maps(const PointSet& alpha,
                                                       const StabilizerOptions& options = {});

/// Smallest m ≤ cap with f^m ≡ id; 0 if none.
std::int64_t element_order(const MobiusMap& f, std::int64_t cap, double tol);

/// From the group order N and the largest element order m. Throws
/// UnrecognizedGroup when (N, m) fits no finite Möbius group.
GroupLabel identify_group(std::span<const MobiusMap> elements,
                          double tol = 10.0 * kDefaultTolerance);
GroupLabel identify_group_from_orders(std::int64_t group_order, std::int64_t max_element_order);

/// True iff the elements contain the identity and are closed under
/// composition and inversion, projectively within `tol`.
bool is_group(std::span<const MobiusMap> elements, double tol);

std::vector<std::vector<std::size_t>> orbit_partition(const PointSet& alpha,
                                                      std::span<const MobiusMap> elements);

/// Counts orbits by size into the label's slots. Throws OrbitSizeMismatch for
/// an orbit size the label does not allow.
ComponentIndex component_index(const PointSet& alpha, std::span<const MobiusMap> elements,
                               const GroupLabel& label);
ComponentIndex index_from_orbit_sizes(std::span<const std::int64_t> sizes,
                                      const GroupLabel& label);

}  // namespace msing
