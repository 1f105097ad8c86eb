#pragma once

// Explicit point sets realizing classification entries. Every witness is
// proposed by a deterministic construction and then certified by the
// stabilizer oracle.

#include <array>
#include <cstdint>
#include <optional>
#include <vector>

#include "msing/classifier.hpp"
#include "msing/sphere.hpp"
#include "msing/stabilizer.hpp"

namespace msing {

namespace polyhedra {

using Vec3 = std::array<double, 3>;
using Rotation = std::array<double, 9>;  // row-major

Rotation axis_rotation(Vec3 axis, double angle);
Vec3 rotate(const Rotation& r, const Vec3& v);

/// Rotation group of the standard tetrahedron (A4, 12), octahedron (S4, 24)
/// or icosahedron (A5, 60). Throws InvalidIndex for other kinds.
const std::vector<Rotation>& rotation_group(GroupKind kind);

/// Orbit of a unit vector, duplicates merged.
std::vector<Vec3> orbit(const std::vector<Rotation>& group, const Vec3& seed);

/// Stereographic projection from the north pole.
RiemannPoint project(const Vec3& v);

}  // namespace polyhedra

/// Special (non-generic) orbits of the polyhedral groups, named by size:
/// A5: V12 (icosahedron vertices), V20 (face centres), V30 (edge midpoints);
/// S4: V6 (octahedron vertices), V8 (cube vertices), V12 (edge midpoints);
/// A4: V4a, V4b (the two inscribed tetrahedra of the cube), V6.
enum class OrbitTag { V4a, V4b, V6, V8, V12, V20, V30 };

PointSet polyhedral_orbit(GroupKind group, OrbitTag tag, double tol = kDefaultTolerance);
/// Throws SeedOnSpecialLocus when the orbit is smaller than the group.
PointSet polyhedral_generic_orbit(GroupKind group, const polyhedra::Vec3& seed,
                                  double tol = kDefaultTolerance);

/// `force` builds indices that the classification rules out (their sets
/// have a strictly larger stabilizer); intended for tests.
enum class Realizability { require, force };

/// Seeds move with `attempt`; attempt 0 is the textbook construction.
struct BuildOptions {
  Realizability realizability = Realizability::require;
  int attempt = 0;
  double tol = kDefaultTolerance;
};

PointSet polyhedral_witness(GroupKind group, const ComponentIndex& index,
                            const BuildOptions& options = {});
/// p ≥ 3 takes (ν, ε, k); p = 2 is K4 and takes (ν, k).
PointSet dihedral_witness(std::int64_t p, const ComponentIndex& index,
                          const BuildOptions& options = {});
/// p ≥ 3 takes (ν, k); p = 2 is Z2.
PointSet cyclic_witness(std::int64_t p, const ComponentIndex& index,
                        const BuildOptions& options = {});
/// (n-1)-th roots of unity plus one point off the circle; n ≥ 5.
PointSet trivial_witness(std::int64_t n, const BuildOptions& options = {});

/// Dispatches on the entry's group. Infinite yields the first n points of
/// {0, ∞}.
PointSet build_candidate(std::int64_t n, const ClassificationEntry& entry,
                         const BuildOptions& options = {});

struct WitnessOptions {
  double tol = kDefaultTolerance;
  int retry_bound = 16;
};

struct WitnessResult {
  PointSet points;
  ClassificationEntry entry;
  /// Empty only for the Infinite entry, which the oracle cannot certify.
  std::optional<StabilizerResult> verified;
  int attempts = 0;
};

/// Propose-and-verify. Throws EntryNotInClassification when entry ∉
/// classify(n) and WitnessSearchExhausted after `retry_bound` failures.
WitnessResult witness(std::int64_t n, const ClassificationEntry& entry,
                      const WitnessOptions& options = {});

/// φ(z) = (z-1)/(z+1) and ψ(z) = (z+i)/(iz+1): they conjugate the three
/// involutions of the standard Klein group ⟨-z, 1/z⟩ into one another.
struct K4Conjugators {
  MobiusMap phi;
  MobiusMap psi;
};
const K4Conjugators& k4_conjugators();

/// conj(A_{2p} ∪ C_{2p}(z)) for a generic z: a union of standard K4 orbits
/// whose full stabilizer is the strictly larger dihedral group of order 4p.
PointSet k4_superset_fixture(const MobiusMap& conj, std::int64_t p, double tol = kDefaultTolerance);

}  // namespace msing
