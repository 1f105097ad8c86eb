#pragma once

// Points of the extended complex plane and Möbius transformations, both in
// homogeneous coordinates so that infinity needs no special casing.

#include <array>
#include <complex>
#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "msing/error.hpp"

namespace msing {

using Complex = std::complex<double>;

inline constexpr double kDefaultTolerance = 1e-8;
inline constexpr double kDeterminantFloor = 1e-12;
inline constexpr double kMapEqualityTolerance = 1e-8;

// Image of a point on the unit sphere under inverse stereographic projection
// from the north pole; infinity sits at (0, 0, 1).
struct SpherePoint {
  double x = 0.0;
  double y = 0.0;
  double z = -1.0;
};

double euclidean_distance(const SpherePoint& p, const SpherePoint& q);

/// A point z/w of the Riemann sphere. The larger-modulus coordinate is
/// stored as exactly 1 + 0i, so every point has one canonical
/// representative (on the unit circle the denominator is the one fixed).
class RiemannPoint {
 public:
  RiemannPoint() = default;  // the origin

  static RiemannPoint finite(Complex value);
  static RiemannPoint infinity();
  /// Throws InvalidPoint for (0, 0) or non-finite input.
  static RiemannPoint homogeneous(Complex z, Complex w);
  static RiemannPoint from_sphere(const SpherePoint& p);

  Complex numerator() const { return z_; }
  Complex denominator() const { return w_; }
  bool is_infinity() const { return w_ == Complex(0.0, 0.0); }
  /// z/w; std::numeric_limits<double>::infinity() in the real part for ∞.
  Complex value() const;
  SpherePoint on_sphere() const;

 private:
  RiemannPoint(Complex z, Complex w) : z_(z), w_(w) {}

  Complex z_{0.0, 0.0};
  Complex w_{1.0, 0.0};
};

/// 2|z_p w_q - z_q w_p| / (‖p‖‖q‖): the straight-line distance between the
/// two points on the unit sphere, in [0, 2].
double chordal_distance(const RiemannPoint& p, const RiemannPoint& q);

/// z ↦ (az + b)/(cz + d), stored with its largest-modulus entry scaled to 1.
class MobiusMap {
 public:
  /// Throws DegenerateMap when |ad - bc| falls below the floor after scaling.
  MobiusMap(Complex a, Complex b, Complex c, Complex d);

  static MobiusMap identity();

  Complex a() const { return m_[0]; }
  Complex b() const { return m_[1]; }
  Complex c() const { return m_[2]; }
  Complex d() const { return m_[3]; }
  Complex determinant() const { return m_[0] * m_[3] - m_[1] * m_[2]; }
  const std::array<Complex, 4>& coefficients() const { return m_; }

  RiemannPoint operator()(const RiemannPoint& p) const;

 private:
  std::array<Complex, 4> m_;
};

RiemannPoint apply(const MobiusMap& f, const RiemannPoint& p);
/// f ∘ g.
MobiusMap compose(const MobiusMap& f, const MobiusMap& g);
MobiusMap inverse(const MobiusMap& f);

/// True iff f·g⁻¹ is within `tol` of a scalar multiple of the identity.
bool projectively_equal(const MobiusMap& f, const MobiusMap& g,
                        double tol = kMapEqualityTolerance);

using Triple = std::array<RiemannPoint, 3>;

/// The unique map sending src[i] to dst[i]. Throws NearDegenerateTriple if two
/// points of either triple lie within 2·tol of each other.
MobiusMap mobius_through_triple(const Triple& src, const Triple& dst,
                                double tol = kDefaultTolerance);

/// Sorted-by-x lookup structure over sphere images.
class SphereIndex {
 public:
  SphereIndex() = default;
  explicit SphereIndex(std::vector<SpherePoint> points);

  std::size_t size() const { return points_.size(); }
  const std::vector<SpherePoint>& points() const { return points_; }

  /// Index of the unique point within `tol` of q, or nullopt. Throws
  /// AmbiguousMatching if more than one point qualifies.
  std::optional<std::size_t> find(const SpherePoint& q, double tol) const;
  /// All indices within `tol` of q.
  std::vector<std::size_t> find_all(const SpherePoint& q, double tol) const;

 private:
  std::vector<SpherePoint> points_;
  std::vector<std::pair<double, std::size_t>> by_x_;
};

/// A finite set of pairwise-separated points. Construction throws
/// PointsNotSeparated when two points lie within 2·tol of each other.
class PointSet {
 public:
  PointSet() = default;
  explicit PointSet(std::vector<RiemannPoint> points,
                    double tol = kDefaultTolerance);

  std::size_t size() const { return points_.size(); }
  bool empty() const { return points_.empty(); }
  double tolerance() const { return tol_; }
  const std::vector<RiemannPoint>& points() const { return points_; }
  const RiemannPoint& operator[](std::size_t i) const { return points_[i]; }
  auto begin() const { return points_.begin(); }
  auto end() const { return points_.end(); }

  const SphereIndex& index() const { return index_; }
  std::optional<std::size_t> find(const RiemannPoint& p) const;
  bool contains(const RiemannPoint& p) const { return find(p).has_value(); }

  /// Smallest pairwise chordal distance (2 for fewer than two points).
  double min_separation() const;

 private:
  std::vector<RiemannPoint> points_;
  double tol_ = kDefaultTolerance;
  SphereIndex index_;
};

/// Tolerance-aware set equality: same size and a perfect matching at chordal
/// distance ≤ tol. Throws AmbiguousMatching if a tolerance ball catches two
/// candidates.
bool set_equal(const PointSet& a, const PointSet& b);

/// Assigns each image to its unique partner in `target`; nullopt if some
/// image has no partner or two images share one.
std::optional<std::vector<std::size_t>> match_images(
    const PointSet& target, std::span<const SpherePoint> images);

PointSet image(const MobiusMap& f, const PointSet& s);

// Serialization: finite points as "re+imi", infinity as "inf".
std::string format_complex(Complex v);
std::string format_point(const RiemannPoint& p);
RiemannPoint parse_point(std::string_view text);
Complex parse_complex(std::string_view text);

}  // namespace msing
