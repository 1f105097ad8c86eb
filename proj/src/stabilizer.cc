#include "msing/stabilizer.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <set>
#include <string>

#include "msing/kernels.hpp"

namespace msing {

namespace {

kernels::MobiusCoeffs coeffs(Complex a, Complex b, Complex c, Complex d) {
  return {a.real(), a.imag(), b.real(), b.imag(), c.real(), c.imag(), d.real(), d.imag()};
}

kernels::MobiusCoeffs coeffs(const MobiusMap& f) { return coeffs(f.a(), f.b(), f.c(), f.d()); }

kernels::HomogeneousBatch to_batch(const PointSet& s) {
  kernels::HomogeneousBatch batch(s.size());
  for (std::size_t i = 0; i < s.size(); ++i) {
    batch.zr[i] = s[i].numerator().real();
    batch.zi[i] = s[i].numerator().imag();
    batch.wr[i] = s[i].denominator().real();
    batch.wi[i] = s[i].denominator().imag();
  }
  return batch;
}

kernels::SphereBatch sphere_batch(const PointSet& s) {
  kernels::SphereBatch batch(s.size());
  for (std::size_t i = 0; i < s.size(); ++i) {
    const auto& p = s.index().points()[i];
    batch.x[i] = p.x;
    batch.y[i] = p.y;
    batch.z[i] = p.z;
  }
  return batch;
}

std::vector<SpherePoint> gather(const kernels::SphereBatch& b) {
  std::vector<SpherePoint> out(b.size());
  for (std::size_t i = 0; i < b.size(); ++i) out[i] = {b.x[i], b.y[i], b.z[i]};
  return out;
}

// Index of the point maximizing the minimum distance to `chosen`.
std::size_t farthest_from(const kernels::SphereBatch& pts, const std::vector<std::size_t>& chosen) {
  const auto& backend = kernels::active();
  std::vector<double> best(pts.size(), 4.0), dist(pts.size());
  for (std::size_t c : chosen) {
    const double q[3] = {pts.x[c], pts.y[c], pts.z[c]};
    backend.chordal_distances(q, pts.view(), dist.data());
    for (std::size_t i = 0; i < pts.size(); ++i) best[i] = std::min(best[i], dist[i]);
  }
  for (std::size_t c : chosen) best[c] = -1.0;
  return static_cast<std::size_t>(std::max_element(best.begin(), best.end()) - best.begin());
}

struct BaseChoice {
  std::array<std::size_t, 3> triple;
  std::optional<std::size_t> probe;  // fourth point used to prefilter candidates
};

BaseChoice choose_base(const PointSet& alpha, const StabilizerOptions& options) {
  const auto pts = sphere_batch(alpha);
  BaseChoice choice{};
  if (options.base_triple) {
    choice.triple = *options.base_triple;
    for (std::size_t i : choice.triple) {
      if (i >= alpha.size()) throw Error(ErrorCode::InvalidIndex, "base triple index out of range");
    }
  } else {
    // Farthest pair, then the point farthest from both.
    const auto& backend = kernels::active();
    std::vector<double> dist(alpha.size());
    std::size_t bi = 0, bj = 1;
    double best = -1.0;
    for (std::size_t i = 0; i < alpha.size(); ++i) {
      const double q[3] = {pts.x[i], pts.y[i], pts.z[i]};
      backend.chordal_distances(q, pts.view(), dist.data());
      const auto j = static_cast<std::size_t>(std::max_element(dist.begin(), dist.end()) - dist.begin());
      if (dist[j] > best) {
        best = dist[j];
        bi = i;
        bj = j;
      }
    }
    choice.triple = {bi, bj, farthest_from(pts, {bi, bj})};
  }
  if (alpha.size() >= 4) {
    choice.probe = farthest_from(pts, {choice.triple[0], choice.triple[1], choice.triple[2]});
  }
  return choice;
}

Complex det(const RiemannPoint& p, const RiemannPoint& q) {
  return p.numerator() * q.denominator() - q.numerator() * p.denominator();
}

// Canonical ordering key: the image of a fixed generic point, rounded.
std::array<long long, 3> order_key(const MobiusMap& f) {
  static const RiemannPoint reference = RiemannPoint::finite({0.3141592653, 0.2718281828});
  const auto s = f(reference).on_sphere();
  return {std::llround(s.x * 1e9), std::llround(s.y * 1e9), std::llround(s.z * 1e9)};
}

// A rotation of the sphere taking a to ∞.
MobiusMap to_infinity(const RiemannPoint& a) {
  const Complex az = a.numerator(), aw = a.denominator();
  return MobiusMap(std::conj(az), std::conj(aw), aw, -az);
}

// α with one point sent to ∞, then centred and scaled to unit RMS radius.
// Determined by the anchor up to a rotation about 0.
struct AnchorFrame {
  std::size_t anchor;
  MobiusMap to_inf;
  Complex centre;
  double scale;
  std::vector<Complex> t;       // t[anchor] is 0 and unused
  std::vector<double> radii;    // sorted, anchor excluded
};

AnchorFrame anchor_frame(const PointSet& alpha, std::size_t anchor) {
  const std::size_t n = alpha.size();
  AnchorFrame fr{anchor, to_infinity(alpha[anchor]), 0.0, 0.0, std::vector<Complex>(n), {}};
  const Complex az = alpha[anchor].numerator(), aw = alpha[anchor].denominator();
  for (std::size_t i = 0; i < n; ++i) {
    if (i == anchor) continue;
    const Complex pz = alpha[i].numerator(), pw = alpha[i].denominator();
    fr.t[i] = (std::conj(az) * pz + std::conj(aw) * pw) / (aw * pz - az * pw);
    fr.centre += fr.t[i];
  }
  fr.centre /= static_cast<double>(n - 1);
  double sq = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    if (i != anchor) sq += std::norm(fr.t[i] - fr.centre);
  }
  fr.scale = std::sqrt(sq / static_cast<double>(n - 1));
  fr.radii.reserve(n - 1);
  for (std::size_t i = 0; i < n; ++i) {
    if (i == anchor) continue;
    fr.t[i] = (fr.t[i] - fr.centre) / fr.scale;
    fr.radii.push_back(std::abs(fr.t[i]));
  }
  std::sort(fr.radii.begin(), fr.radii.end());
  return fr;
}

// Loose on purpose: the radii only prune, every survivor is checked exactly.
constexpr double kRadiusSlack = 1e-6;

bool radius_close(double x, double y) { return std::abs(x - y) <= kRadiusSlack * (1.0 + std::max(x, y)); }

std::size_t nearest(const kernels::SphereBatch& pts, const RiemannPoint& p) {
  const auto s = p.on_sphere();
  const double q[3] = {s.x, s.y, s.z};
  std::vector<double> dist(pts.size());
  kernels::active().chordal_distances(q, pts.view(), dist.data());
  return static_cast<std::size_t>(std::min_element(dist.begin(), dist.end()) - dist.begin());
}

}  // namespace

std::vector<std::int64_t> StabilizerResult::orbit_sizes() const {
  std::vector<std::int64_t> sizes;
  for (const auto& o : orbits) sizes.push_back(static_cast<std::int64_t>(o.size()));
  std::sort(sizes.begin(), sizes.end());
  return sizes;
}

std::vector<StabilizingMap> enumerate_stabilizing_maps(const PointSet& alpha,
                                                       const StabilizerOptions& options) {
  const std::size_t n = alpha.size();
  if (n < 3) {
    throw Error(ErrorCode::InvalidCardinality, "sets with fewer than 3 points have infinite stabilizers");
  }
  const double tol = alpha.tolerance();
  const auto base = choose_base(alpha, options);
  const Triple src{alpha[base.triple[0]], alpha[base.triple[1]], alpha[base.triple[2]]};

  const auto batch = to_batch(alpha);
  const auto& backend = kernels::active();
  kernels::SphereBatch probe_images(n), full_images(n);

  std::vector<StabilizingMap> found;
  std::set<std::vector<std::size_t>> seen;

  auto try_candidate = [&](std::size_t a, std::size_t b, std::size_t c) {
    const MobiusMap f = mobius_through_triple(src, {alpha[a], alpha[b], alpha[c]}, tol);
    backend.map_to_sphere(coeffs(f), batch.view(), full_images.span());
    const auto images = gather(full_images);
    auto perm = match_images(alpha, images);
    if (perm && seen.insert(*perm).second) found.push_back({f, std::move(*perm)});
  };

  const bool anchored = options.search == StabilizerSearch::anchored ||
                        (options.search == StabilizerSearch::automatic && n >= kAnchoredSearchFrom);
  if (anchored && n >= 4) {
    const auto pts = sphere_batch(alpha);
    const AnchorFrame home = anchor_frame(alpha, base.triple[0]);
    std::size_t outer = base.triple[0] == 0 ? 1 : 0;
    for (std::size_t i = 0; i < n; ++i) {
      if (i != home.anchor && std::abs(home.t[i]) > std::abs(home.t[outer])) outer = i;
    }
    const double outer_radius = std::abs(home.t[outer]);
    for (std::size_t a = 0; a < n; ++a) {
      const AnchorFrame fr = anchor_frame(alpha, a);
      bool same = true;
      for (std::size_t i = 0; i + 1 < n && same; ++i) same = radius_close(home.radii[i], fr.radii[i]);
      if (!same) continue;
      for (std::size_t j = 0; j < n; ++j) {
        if (j == a || !radius_close(std::abs(fr.t[j]), outer_radius)) continue;
        // The affine map between the two ∞-normal forms, pulled back.
        const Complex rot = fr.t[j] / home.t[outer];
        const Complex k = fr.scale * rot / (std::abs(rot) * home.scale);
        const MobiusMap affine(k, fr.centre - k * home.centre, 0.0, 1.0);
        const MobiusMap f = compose(inverse(fr.to_inf), compose(affine, home.to_inf));
        const std::size_t b = nearest(pts, f(alpha[base.triple[1]]));
        const std::size_t c = nearest(pts, f(alpha[base.triple[2]]));
        if (a != b && b != c && a != c) try_candidate(a, b, c);
      }
    }
    return found;
  }

  // With the base normalized to (0, 1, ∞) and the probe landing at χ = (x : y),
  // the candidate for (a, b, c) sends the probe to
  //   det(b, a)·x·c + det(c, b)·y·a,
  // which is linear in c: one matrix per (a, b) maps every c at once.
  std::optional<std::pair<Complex, Complex>> chi;
  if (base.probe) {
    const MobiusMap normalize = mobius_through_triple(
        src, {RiemannPoint::finite(0.0), RiemannPoint::finite(1.0), RiemannPoint::infinity()}, tol);
    const RiemannPoint q = normalize(alpha[*base.probe]);
    chi = {q.numerator(), q.denominator()};
  }

  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = 0; b < n; ++b) {
      if (b == a) continue;
      if (!chi) {
        for (std::size_t c = 0; c < n; ++c) {
          if (c != a && c != b) try_candidate(a, b, c);
        }
        continue;
      }
      const auto& pa = alpha[a];
      const auto& pb = alpha[b];
      const Complex alpha1 = det(pb, pa) * chi->first;
      const Complex beta = chi->second;
      const Complex az = pa.numerator(), aw = pa.denominator();
      const Complex bz = pb.numerator(), bw = pb.denominator();
      backend.map_to_sphere(coeffs(alpha1 + beta * az * bw, -beta * az * bz, beta * aw * bw,
                                   alpha1 - beta * aw * bz),
                            batch.view(), probe_images.span());
      for (std::size_t c = 0; c < n; ++c) {
        if (c == a || c == b) continue;
        const SpherePoint q{probe_images.x[c], probe_images.y[c], probe_images.z[c]};
        const auto hit = alpha.index().find(q, tol);
        if (hit && *hit != a && *hit != b && *hit != c) try_candidate(a, b, c);
      }
    }
  }
  return found;
}

std::int64_t element_order(const MobiusMap& f, std::int64_t cap, double tol) {
  const auto id = MobiusMap::identity();
  MobiusMap power = f;
  for (std::int64_t m = 1; m <= cap; ++m) {
    if (projectively_equal(power, id, tol)) return m;
    power = compose(power, f);
  }
  return 0;
}

GroupLabel identify_group_from_orders(std::int64_t N, std::int64_t m) {
  if (N == 1 && m == 1) return GroupLabel::trivial();
  if (N == 2 && m == 2) return GroupLabel::z2();
  if (N == 60 && m == 5) return GroupLabel::a5();
  if (N == 24 && m == 4) return GroupLabel::s4();
  if (N == 12 && m == 3) return GroupLabel::a4();
  if (N == 4 && m == 2) return GroupLabel::k4();
  if (N >= 3 && N == m) return GroupLabel::cyclic(N);
  if (m >= 3 && N == 2 * m) return GroupLabel::dihedral(m);
  throw Error(ErrorCode::UnrecognizedGroup,
              "no finite Möbius group has order " + std::to_string(N) +
                  " and maximal element order " + std::to_string(m));
}

GroupLabel identify_group(std::span<const MobiusMap> elements, double tol) {
  const auto N = static_cast<std::int64_t>(elements.size());
  std::int64_t m = 0;
  for (const auto& f : elements) {
    const auto order = element_order(f, N, tol);
    if (order == 0) {
      throw Error(ErrorCode::UnrecognizedGroup, "element order exceeds the group order");
    }
    m = std::max(m, order);
  }
  return identify_group_from_orders(N, m);
}

bool is_group(std::span<const MobiusMap> elements, double tol) {
  // Bucket by the image of a generic point, then confirm projectively.
  std::multimap<std::array<long long, 3>, std::size_t> buckets;
  for (std::size_t i = 0; i < elements.size(); ++i) buckets.emplace(order_key(elements[i]), i);
  auto contains = [&](const MobiusMap& g) {
    const auto key = order_key(g);
    // Rounding can push a key into a neighbouring cell; fall back to a scan.
    auto [lo, hi] = buckets.equal_range(key);
    for (auto it = lo; it != hi; ++it) {
      if (projectively_equal(elements[it->second], g, tol)) return true;
    }
    return std::any_of(elements.begin(), elements.end(),
                       [&](const MobiusMap& e) { return projectively_equal(e, g, tol); });
  };
  if (!contains(MobiusMap::identity())) return false;
  for (const auto& f : elements) {
    if (!contains(inverse(f))) return false;
    for (const auto& g : elements) {
      if (!contains(compose(f, g))) return false;
    }
  }
  return true;
}

std::vector<std::vector<std::size_t>> orbit_partition(const PointSet& alpha,
                                                      std::span<const MobiusMap> elements) {
  const std::size_t n = alpha.size();
  std::vector<std::size_t> parent(n);
  std::iota(parent.begin(), parent.end(), std::size_t{0});
  auto root = [&](std::size_t i) {
    while (parent[i] != i) i = parent[i] = parent[parent[i]];
    return i;
  };

  const auto batch = to_batch(alpha);
  kernels::SphereBatch images(n);
  for (const auto& f : elements) {
    kernels::active().map_to_sphere(coeffs(f), batch.view(), images.span());
    const auto perm = match_images(alpha, gather(images));
    if (!perm) throw Error(ErrorCode::OrbitSizeMismatch, "an element does not preserve the set");
    for (std::size_t i = 0; i < n; ++i) parent[root(i)] = root((*perm)[i]);
  }

  std::map<std::size_t, std::vector<std::size_t>> groups;
  for (std::size_t i = 0; i < n; ++i) groups[root(i)].push_back(i);
  std::vector<std::vector<std::size_t>> orbits;
  for (auto& [r, members] : groups) orbits.push_back(std::move(members));
  std::sort(orbits.begin(), orbits.end());
  return orbits;
}

ComponentIndex index_from_orbit_sizes(std::span<const std::int64_t> sizes, const GroupLabel& label) {
  if (label.kind() == GroupKind::Trivial) {
    for (auto s : sizes) {
      if (s != 1) throw Error(ErrorCode::OrbitSizeMismatch, "non-singleton orbit under the trivial group");
    }
    return {};
  }
  const auto slots = label.slot_orbit_sizes();
  ComponentIndex index{std::vector<std::int64_t>(slots.size(), 0)};
  for (auto s : sizes) {
    const auto it = std::find(slots.begin(), slots.end(), s);
    if (it == slots.end()) {
      throw Error(ErrorCode::OrbitSizeMismatch,
                  "orbit of size " + std::to_string(s) + " under " + format_group(label));
    }
    ++index.counts[static_cast<std::size_t>(it - slots.begin())];
  }
  return index;
}

ComponentIndex component_index(const PointSet& alpha, std::span<const MobiusMap> elements,
                               const GroupLabel& label) {
  std::vector<std::int64_t> sizes;
  for (const auto& o : orbit_partition(alpha, elements)) {
    sizes.push_back(static_cast<std::int64_t>(o.size()));
  }
  return index_from_orbit_sizes(sizes, label);
}

StabilizerResult stabilizer(const PointSet& alpha, const StabilizerOptions& options) {
  auto maps = enumerate_stabilizing_maps(alpha, options);
  const double group_tol = options.closure_factor * alpha.tolerance();

  StabilizerResult result;
  result.elements.reserve(maps.size());
  const auto id = MobiusMap::identity();
  for (auto& m : maps) result.elements.push_back(m.map);
  std::sort(result.elements.begin(), result.elements.end(),
            [&](const MobiusMap& f, const MobiusMap& g) {
              const bool fi = projectively_equal(f, id, group_tol);
              const bool gi = projectively_equal(g, id, group_tol);
              if (fi != gi) return fi;
              return order_key(f) < order_key(g);
            });

  if (!is_group(result.elements, group_tol)) {
    throw Error(ErrorCode::UnrecognizedGroup, "stabilizing maps are not closed under composition");
  }
  result.label = identify_group(result.elements, group_tol);

  // Orbits straight from the induced permutations.
  const std::size_t n = alpha.size();
  std::vector<std::size_t> parent(n);
  std::iota(parent.begin(), parent.end(), std::size_t{0});
  auto root = [&](std::size_t i) {
    while (parent[i] != i) i = parent[i] = parent[parent[i]];
    return i;
  };
  for (const auto& m : maps) {
    for (std::size_t i = 0; i < n; ++i) parent[root(i)] = root(m.permutation[i]);
  }
  std::map<std::size_t, std::vector<std::size_t>> groups;
  for (std::size_t i = 0; i < n; ++i) groups[root(i)].push_back(i);
  for (auto& [r, members] : groups) result.orbits.push_back(std::move(members));
  std::sort(result.orbits.begin(), result.orbits.end());

  const auto sizes = result.orbit_sizes();
  for (auto s : sizes) {
    if (result.order() % s != 0) {
      throw Error(ErrorCode::OrbitSizeMismatch, "orbit size does not divide the group order");
    }
  }
  result.index = index_from_orbit_sizes(sizes, result.label);
  return result;
}

}  // namespace msing
