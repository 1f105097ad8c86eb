#include "msing/witness.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

namespace msing {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

Complex unit(double angle) { return std::polar(1.0, angle); }

std::string index_text(const ComponentIndex& index) {
  std::string s = "(";
  for (std::size_t i = 0; i < index.counts.size(); ++i) {
    if (i > 0) s += ", ";
    s += std::to_string(index.counts[i]);
  }
  return s + ")";
}

void reject(bool unrealizable, const BuildOptions& options, const GroupLabel& g,
            const ComponentIndex& index) {
  if (unrealizable && options.realizability == Realizability::require) {
    throw Error(ErrorCode::UnrealizableIndex,
                format_group(g) + " with index " + index_text(index) +
                    " forces a strictly larger stabilizer");
  }
}

void append(std::vector<RiemannPoint>& out, const PointSet& s) {
  out.insert(out.end(), s.begin(), s.end());
}

polyhedra::Vec3 special_seed(GroupKind group, OrbitTag tag) {
  constexpr double phi = std::numbers::phi;
  switch (group) {
    case GroupKind::A5:
      if (tag == OrbitTag::V12) return {0, 1, phi};
      if (tag == OrbitTag::V20) return {1, 1, 1};
      if (tag == OrbitTag::V30) return {0, 0, 1};
      break;
    case GroupKind::S4:
      if (tag == OrbitTag::V6) return {0, 0, 1};
      if (tag == OrbitTag::V8) return {1, 1, 1};
      if (tag == OrbitTag::V12) return {1, 1, 0};
      break;
    case GroupKind::A4:
      if (tag == OrbitTag::V4a) return {1, 1, 1};
      if (tag == OrbitTag::V4b) return {-1, -1, -1};
      if (tag == OrbitTag::V6) return {0, 0, 1};
      break;
    default: break;
  }
  throw Error(ErrorCode::InvalidIndex, "no such special orbit for this group");
}

PointSet project_all(const std::vector<polyhedra::Vec3>& vs, double tol) {
  std::vector<RiemannPoint> pts;
  pts.reserve(vs.size());
  for (const auto& v : vs) pts.push_back(polyhedra::project(v));
  return PointSet(std::move(pts), tol);
}

// Generic seeds: small rotations of a fixed base point about a fixed axis,
// spaced 2π/(8k²N) apart. `attempt` moves the base point.
std::vector<polyhedra::Vec3> generic_polyhedral_seeds(std::int64_t order, std::int64_t k,
                                                      int attempt) {
  const polyhedra::Vec3 base{0.2137, 0.5813, 0.7853};
  const auto shift = polyhedra::axis_rotation({0.9, 0.1, -0.4}, 0.61 * attempt);
  const auto start = polyhedra::rotate(shift, base);
  std::vector<polyhedra::Vec3> seeds;
  const double step = kTwoPi / (8.0 * static_cast<double>(k * k * order));
  for (std::int64_t l = 1; l <= k; ++l) {
    seeds.push_back(polyhedra::rotate(
        polyhedra::axis_rotation({0.3, -0.7, 0.2}, step * static_cast<double>(l)), start));
  }
  return seeds;
}

}  // namespace

PointSet polyhedral_orbit(GroupKind group, OrbitTag tag, double tol) {
  return project_all(polyhedra::orbit(polyhedra::rotation_group(group), special_seed(group, tag)),
                     tol);
}

PointSet polyhedral_generic_orbit(GroupKind group, const polyhedra::Vec3& seed, double tol) {
  const auto& g = polyhedra::rotation_group(group);
  auto orb = polyhedra::orbit(g, seed);
  if (orb.size() < g.size()) {
    throw Error(ErrorCode::SeedOnSpecialLocus,
                "seed orbit has " + std::to_string(orb.size()) + " points, expected " +
                    std::to_string(g.size()));
  }
  return project_all(orb, tol);
}

PointSet polyhedral_witness(GroupKind group, const ComponentIndex& index,
                            const BuildOptions& options) {
  GroupLabel label;
  std::vector<OrbitTag> slot_tags;
  switch (group) {
    case GroupKind::A5:
      label = GroupLabel::a5();
      slot_tags = {OrbitTag::V12, OrbitTag::V20, OrbitTag::V30};
      break;
    case GroupKind::S4:
      label = GroupLabel::s4();
      slot_tags = {OrbitTag::V6, OrbitTag::V8, OrbitTag::V12};
      break;
    case GroupKind::A4: label = GroupLabel::a4(); break;
    default: throw Error(ErrorCode::InvalidIndex, "not a polyhedral group");
  }
  validate_index(label, index);
  const auto& c = index.counts;
  const std::int64_t k = c.back();

  std::vector<RiemannPoint> pts;
  if (group == GroupKind::A4) {
    const bool excluded = (c[0] == 0 && c[1] == 0 && k == 0) ||
                          (c[0] == 2 && c[1] == 0 && k == 0) ||
                          (c[0] == 0 && c[1] == 1 && k == 0) || (c[0] == 2 && c[1] == 1 && k == 0);
    reject(excluded, options, label, index);
    if (c[0] >= 1) append(pts, polyhedral_orbit(group, OrbitTag::V4a, options.tol));
    if (c[0] == 2) append(pts, polyhedral_orbit(group, OrbitTag::V4b, options.tol));
    if (c[1] == 1) append(pts, polyhedral_orbit(group, OrbitTag::V6, options.tol));
  } else {
    reject(std::all_of(c.begin(), c.end(), [](auto v) { return v == 0; }), options, label, index);
    for (std::size_t s = 0; s < slot_tags.size(); ++s) {
      if (c[s] == 1) append(pts, polyhedral_orbit(group, slot_tags[s], options.tol));
    }
  }
  if (k > 0) {
    for (const auto& seed : generic_polyhedral_seeds(label.order(), k, options.attempt)) {
      append(pts, polyhedral_generic_orbit(group, seed, options.tol));
    }
  }
  return PointSet(std::move(pts), options.tol);
}

PointSet dihedral_witness(std::int64_t p, const ComponentIndex& index, const BuildOptions& options) {
  if (p < 2) throw Error(ErrorCode::InvalidIndex, "dihedral parameter must be at least 2");
  const GroupLabel label = p == 2 ? GroupLabel::k4() : GroupLabel::dihedral(p);
  validate_index(label, index);
  const auto& c = index.counts;
  const std::int64_t k = c.back();
  const double pd = static_cast<double>(p);

  std::vector<Complex> finite;
  bool with_infinity = false;
  if (p == 2) {
    reject(k == 0, options, label, index);
    const std::int64_t nu = c[0];
    if (nu >= 1) {
      finite.push_back(0.0);
      with_infinity = true;
    }
    if (nu >= 2) finite.insert(finite.end(), {Complex(1, 0), Complex(-1, 0)});
    if (nu >= 3) finite.insert(finite.end(), {Complex(0, 1), Complex(0, -1)});
  } else {
    const std::int64_t nu = c[0], eps = c[1];
    const bool excluded = k == 0 && (eps == 0 || eps == 2 || (p == 4 && nu == 1 && eps == 1));
    reject(excluded, options, label, index);
    if (nu == 1) {
      finite.push_back(0.0);
      with_infinity = true;
    }
    for (std::int64_t j = 0; j < p && eps >= 1; ++j) finite.push_back(unit(kTwoPi * j / pd));
    for (std::int64_t j = 0; j < p && eps == 2; ++j) {
      finite.push_back(unit(kTwoPi * (2.0 * j + 1.0) / (2.0 * pd)));
    }
  }

  // C_p(z) = {z ω^j} ∪ {z⁻¹ ω^j} with z = e^{2πi l/(8k²p)}, l = 1..k.
  const double kd = static_cast<double>(k);
  for (std::int64_t l = 1; l <= k; ++l) {
    const double t = (static_cast<double>(l) + 0.37 * options.attempt) / (8.0 * kd * kd * pd);
    const Complex z = unit(kTwoPi * t);
    for (std::int64_t j = 0; j < p; ++j) {
      const Complex w = unit(kTwoPi * j / pd);
      finite.push_back(z * w);
      finite.push_back(w / z);
    }
  }

  std::vector<RiemannPoint> pts;
  for (auto v : finite) pts.push_back(RiemannPoint::finite(v));
  if (with_infinity) pts.push_back(RiemannPoint::infinity());
  return PointSet(std::move(pts), options.tol);
}

PointSet cyclic_witness(std::int64_t p, const ComponentIndex& index, const BuildOptions& options) {
  if (p < 2) throw Error(ErrorCode::InvalidIndex, "cyclic parameter must be at least 2");
  const GroupLabel label = p == 2 ? GroupLabel::z2() : GroupLabel::cyclic(p);
  validate_index(label, index);
  const std::int64_t nu = index.counts[0], k = index.counts[1];
  const double a = options.attempt;

  std::vector<RiemannPoint> pts;
  if (p == 2) {
    reject(k <= 1 || (k == 2 && nu != 1), options, label, index);
    if (nu >= 1) pts.push_back(RiemannPoint::finite(0.0));
    if (nu == 2) pts.push_back(RiemannPoint::infinity());
    for (std::int64_t l = 1; l <= k; ++l) {
      const double ld = static_cast<double>(l);
      // {±1, …, ±k}, or the half-integers {±1/2, …, ±(2k-1)/2} without 0.
      double r = nu == 0 ? ld - 0.5 : ld;
      r += 0.05 * a * ld * ld;
      pts.push_back(RiemannPoint::finite(r));
      pts.push_back(RiemannPoint::finite(-r));
    }
    return PointSet(std::move(pts), options.tol);
  }

  const bool excluded = k == 0 || (k <= 2 && nu != 1) || (p == 3 && nu == 1 && k == 1);
  reject(excluded, options, label, index);
  if (nu >= 1) pts.push_back(RiemannPoint::finite(0.0));
  if (nu == 2) pts.push_back(RiemannPoint::infinity());
  const double pd = static_cast<double>(p);
  for (std::int64_t l = 1; l <= k; ++l) {
    const double ld = static_cast<double>(l);
    const Complex seed = std::polar(ld, 0.1 * a * ld / pd);
    for (std::int64_t j = 0; j < p; ++j) {
      pts.push_back(RiemannPoint::finite(seed * unit(kTwoPi * j / pd)));
    }
  }
  return PointSet(std::move(pts), options.tol);
}

PointSet trivial_witness(std::int64_t n, const BuildOptions& options) {
  if (n < 5) {
    throw Error(ErrorCode::InvalidCardinality, "sets with fewer than 5 points are never rigid");
  }
  std::vector<RiemannPoint> pts;
  const double m = static_cast<double>(n - 1);
  for (std::int64_t j = 0; j < n - 1; ++j) {
    pts.push_back(RiemannPoint::finite(unit(kTwoPi * static_cast<double>(j) / m)));
  }
  pts.push_back(RiemannPoint::finite(2.0 + 0.25 * options.attempt));
  return PointSet(std::move(pts), options.tol);
}

PointSet build_candidate(std::int64_t n, const ClassificationEntry& entry,
                         const BuildOptions& options) {
  const auto& g = entry.group;
  switch (g.kind()) {
    case GroupKind::A5:
    case GroupKind::S4:
    case GroupKind::A4: return polyhedral_witness(g.kind(), entry.index, options);
    case GroupKind::Dihedral: return dihedral_witness(g.p(), entry.index, options);
    case GroupKind::K4: return dihedral_witness(2, entry.index, options);
    case GroupKind::Cyclic: return cyclic_witness(g.p(), entry.index, options);
    case GroupKind::Z2: return cyclic_witness(2, entry.index, options);
    case GroupKind::Trivial: return trivial_witness(n, options);
    case GroupKind::Infinite: {
      std::vector<RiemannPoint> pts{RiemannPoint::finite(0.0), RiemannPoint::infinity()};
      pts.resize(static_cast<std::size_t>(std::clamp<std::int64_t>(n, 0, 2)));
      return PointSet(std::move(pts), options.tol);
    }
  }
  throw Error(ErrorCode::InvalidIndex, "unknown group");
}

WitnessResult witness(std::int64_t n, const ClassificationEntry& entry, const WitnessOptions& options) {
  const auto listing = classify(n);
  if (std::find(listing.begin(), listing.end(), entry) == listing.end()) {
    throw Error(ErrorCode::EntryNotInClassification,
                format_entry(entry) + " is not possible for " + std::to_string(n) + " points");
  }
  if (entry.group.kind() == GroupKind::Infinite) {
    return {build_candidate(n, entry, {Realizability::require, 0, options.tol}), entry, std::nullopt, 1};
  }

  std::string last;
  for (int attempt = 0; attempt < options.retry_bound; ++attempt) {
    try {
      PointSet pts = build_candidate(n, entry, {Realizability::require, attempt, options.tol});
      if (static_cast<std::int64_t>(pts.size()) != n) {
        last = "construction produced " + std::to_string(pts.size()) + " points";
        continue;
      }
      StabilizerResult res = stabilizer(pts);
      if (res.entry() == entry) return {std::move(pts), entry, std::move(res), attempt + 1};
      last = "oracle found " + format_entry(res.entry());
    } catch (const Error& e) {
      if (e.code() == ErrorCode::UnrealizableIndex) throw;
      last = e.what();
    }
  }
  throw Error(ErrorCode::WitnessSearchExhausted,
              format_entry(entry) + " at n = " + std::to_string(n) + " after " +
                  std::to_string(options.retry_bound) + " attempts; last: " + last);
}

const K4Conjugators& k4_conjugators() {
  static const K4Conjugators c{MobiusMap(1.0, -1.0, 1.0, 1.0),
                               MobiusMap(1.0, Complex(0, 1), Complex(0, 1), 1.0)};
  return c;
}

PointSet k4_superset_fixture(const MobiusMap& conj, std::int64_t p, double tol) {
  const auto base = dihedral_witness(2 * p, ComponentIndex{{0, 1, 1}}, {Realizability::require, 0, tol});
  return image(conj, base);
}

}  // namespace msing
