#include "msing/sphere.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <limits>

#include "msing/kernels.hpp"

namespace msing {

const char* error_code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::InvalidPoint: return "InvalidPoint";
    case ErrorCode::DegenerateMap: return "DegenerateMap";
    case ErrorCode::NearDegenerateTriple: return "NearDegenerateTriple";
    case ErrorCode::PointsNotSeparated: return "PointsNotSeparated";
    case ErrorCode::AmbiguousMatching: return "AmbiguousMatching";
    case ErrorCode::InvalidCardinality: return "InvalidCardinality";
    case ErrorCode::InvalidIndex: return "InvalidIndex";
    case ErrorCode::UnrecognizedGroup: return "UnrecognizedGroup";
    case ErrorCode::OrbitSizeMismatch: return "OrbitSizeMismatch";
    case ErrorCode::UnrealizableIndex: return "UnrealizableIndex";
    case ErrorCode::SeedOnSpecialLocus: return "SeedOnSpecialLocus";
    case ErrorCode::WitnessSearchExhausted: return "WitnessSearchExhausted";
    case ErrorCode::EntryNotInClassification: return "EntryNotInClassification";
    case ErrorCode::ClosedFormMismatch: return "ClosedFormMismatch";
    case ErrorCode::EnumerationBoundExceeded: return "EnumerationBoundExceeded";
    case ErrorCode::InvalidLambda: return "InvalidLambda";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::PathDisagreement: return "PathDisagreement";
  }
  return "Unknown";
}

namespace {

bool is_finite(Complex v) { return std::isfinite(v.real()) && std::isfinite(v.imag()); }

// det[[p_z, q_z], [p_w, q_w]]
Complex det(const RiemannPoint& p, const RiemannPoint& q) {
  return p.numerator() * q.denominator() - q.numerator() * p.denominator();
}

// Sends (p1, p2, p3) to (0, 1, ∞).
std::array<Complex, 4> normalizing_matrix(const Triple& t) {
  const Complex k1 = det(t[1], t[2]);
  const Complex k3 = det(t[1], t[0]);
  return {t[0].denominator() * k1, -t[0].numerator() * k1,
          t[2].denominator() * k3, -t[2].numerator() * k3};
}

void check_triple(const Triple& t, double tol, const char* which) {
  for (int i = 0; i < 3; ++i) {
    for (int j = i + 1; j < 3; ++j) {
      if (chordal_distance(t[i], t[j]) <= 2.0 * tol) {
        throw Error(ErrorCode::NearDegenerateTriple,
                    std::string(which) + " points " + format_point(t[i]) + " and " +
                        format_point(t[j]) + " are not separated");
      }
    }
  }
}

}  // namespace

double euclidean_distance(const SpherePoint& p, const SpherePoint& q) {
  const double dx = p.x - q.x, dy = p.y - q.y, dz = p.z - q.z;
  return std::sqrt(dx * dx + dy * dy + dz * dz);
}

RiemannPoint RiemannPoint::finite(Complex value) {
  return homogeneous(value, Complex(1.0, 0.0));
}

RiemannPoint RiemannPoint::infinity() {
  return RiemannPoint(Complex(1.0, 0.0), Complex(0.0, 0.0));
}

RiemannPoint RiemannPoint::homogeneous(Complex z, Complex w) {
  if (!is_finite(z) || !is_finite(w)) {
    throw Error(ErrorCode::InvalidPoint, "non-finite homogeneous coordinate");
  }
  const double nz = std::norm(z), nw = std::norm(w);
  if (nz == 0.0 && nw == 0.0) {
    throw Error(ErrorCode::InvalidPoint, "homogeneous coordinates (0, 0)");
  }
  if (nz > nw) return RiemannPoint(Complex(1.0, 0.0), w / z);
  return RiemannPoint(z / w, Complex(1.0, 0.0));
}

RiemannPoint RiemannPoint::from_sphere(const SpherePoint& p) {
  // (x + iy)/(1 - z) = (1 + z)/(x - iy); pick the better-conditioned form.
  if (p.z > 0.0) return homogeneous(Complex(1.0 + p.z, 0.0), Complex(p.x, -p.y));
  return homogeneous(Complex(p.x, p.y), Complex(1.0 - p.z, 0.0));
}

Complex RiemannPoint::value() const {
  if (is_infinity()) return {std::numeric_limits<double>::infinity(), 0.0};
  return z_ / w_;
}

SpherePoint RiemannPoint::on_sphere() const {
  const double nz = std::norm(z_), nw = std::norm(w_);
  const double inv = 1.0 / (nz + nw);
  const Complex zw = z_ * std::conj(w_);
  return {2.0 * zw.real() * inv, 2.0 * zw.imag() * inv, (nz - nw) * inv};
}

double chordal_distance(const RiemannPoint& p, const RiemannPoint& q) {
  const double np = std::sqrt(std::norm(p.numerator()) + std::norm(p.denominator()));
  const double nq = std::sqrt(std::norm(q.numerator()) + std::norm(q.denominator()));
  return std::min(2.0, 2.0 * std::abs(det(p, q)) / (np * nq));
}

MobiusMap::MobiusMap(Complex a, Complex b, Complex c, Complex d) : m_{a, b, c, d} {
  std::size_t largest = 0;
  for (std::size_t i = 0; i < 4; ++i) {
    if (!is_finite(m_[i])) throw Error(ErrorCode::DegenerateMap, "non-finite coefficient");
    if (std::abs(m_[i]) > std::abs(m_[largest])) largest = i;
  }
  if (std::abs(m_[largest]) == 0.0) throw Error(ErrorCode::DegenerateMap, "zero matrix");
  const Complex scale = m_[largest];
  for (auto& e : m_) e /= scale;
  m_[largest] = Complex(1.0, 0.0);
  if (std::abs(determinant()) < kDeterminantFloor) {
    throw Error(ErrorCode::DegenerateMap, "determinant below floor");
  }
}

MobiusMap MobiusMap::identity() { return MobiusMap(1.0, 0.0, 0.0, 1.0); }

RiemannPoint MobiusMap::operator()(const RiemannPoint& p) const {
  const Complex z = p.numerator(), w = p.denominator();
  return RiemannPoint::homogeneous(m_[0] * z + m_[1] * w, m_[2] * z + m_[3] * w);
}

RiemannPoint apply(const MobiusMap& f, const RiemannPoint& p) { return f(p); }

MobiusMap compose(const MobiusMap& f, const MobiusMap& g) {
  return MobiusMap(f.a() * g.a() + f.b() * g.c(), f.a() * g.b() + f.b() * g.d(),
                   f.c() * g.a() + f.d() * g.c(), f.c() * g.b() + f.d() * g.d());
}

MobiusMap inverse(const MobiusMap& f) { return MobiusMap(f.d(), -f.b(), -f.c(), f.a()); }

bool projectively_equal(const MobiusMap& f, const MobiusMap& g, double tol) {
  // f · adj(g) is det(g)·f·g⁻¹.
  std::array<Complex, 4> m{f.a() * g.d() - f.b() * g.c(), -f.a() * g.b() + f.b() * g.a(),
                           f.c() * g.d() - f.d() * g.c(), -f.c() * g.b() + f.d() * g.a()};
  double scale = 0.0;
  for (const auto& e : m) scale = std::max(scale, std::abs(e));
  if (scale == 0.0) return false;
  return std::abs(m[1]) / scale <= tol && std::abs(m[2]) / scale <= tol &&
         std::abs(m[0] - m[3]) / scale <= tol;
}

MobiusMap mobius_through_triple(const Triple& src, const Triple& dst, double tol) {
  check_triple(src, tol, "source");
  check_triple(dst, tol, "destination");
  const auto s = normalizing_matrix(src);
  const auto t = normalizing_matrix(dst);
  // adj(t) · s
  const Complex a = t[3] * s[0] - t[1] * s[2];
  const Complex b = t[3] * s[1] - t[1] * s[3];
  const Complex c = -t[2] * s[0] + t[0] * s[2];
  const Complex d = -t[2] * s[1] + t[0] * s[3];
  return MobiusMap(a, b, c, d);
}

SphereIndex::SphereIndex(std::vector<SpherePoint> points) : points_(std::move(points)) {
  by_x_.reserve(points_.size());
  for (std::size_t i = 0; i < points_.size(); ++i) by_x_.emplace_back(points_[i].x, i);
  std::sort(by_x_.begin(), by_x_.end());
}

std::vector<std::size_t> SphereIndex::find_all(const SpherePoint& q, double tol) const {
  std::vector<std::size_t> hits;
  auto it = std::lower_bound(by_x_.begin(), by_x_.end(),
                             std::make_pair(q.x - tol, std::size_t{0}));
  for (; it != by_x_.end() && it->first <= q.x + tol; ++it) {
    if (euclidean_distance(points_[it->second], q) <= tol) hits.push_back(it->second);
  }
  return hits;
}

std::optional<std::size_t> SphereIndex::find(const SpherePoint& q, double tol) const {
  std::optional<std::size_t> hit;
  auto it = std::lower_bound(by_x_.begin(), by_x_.end(),
                             std::make_pair(q.x - tol, std::size_t{0}));
  for (; it != by_x_.end() && it->first <= q.x + tol; ++it) {
    if (euclidean_distance(points_[it->second], q) <= tol) {
      if (hit) throw Error(ErrorCode::AmbiguousMatching, "two points inside one tolerance ball");
      hit = it->second;
    }
  }
  return hit;
}

PointSet::PointSet(std::vector<RiemannPoint> points, double tol)
    : points_(std::move(points)), tol_(tol) {
  if (!(tol >= 0.0)) throw Error(ErrorCode::InvalidPoint, "negative tolerance");
  std::vector<SpherePoint> sphere;
  sphere.reserve(points_.size());
  for (const auto& p : points_) sphere.push_back(p.on_sphere());
  index_ = SphereIndex(std::move(sphere));
  for (std::size_t i = 0; i < points_.size(); ++i) {
    for (std::size_t j : index_.find_all(index_.points()[i], 2.0 * tol_)) {
      if (j != i) {
        throw Error(ErrorCode::PointsNotSeparated,
                    format_point(points_[i]) + " and " + format_point(points_[j]));
      }
    }
  }
}

std::optional<std::size_t> PointSet::find(const RiemannPoint& p) const {
  return index_.find(p.on_sphere(), tol_);
}

double PointSet::min_separation() const {
  const std::size_t n = points_.size();
  if (n < 2) return 2.0;
  kernels::SphereBatch batch(n);
  for (std::size_t i = 0; i < n; ++i) {
    const auto& s = index_.points()[i];
    batch.x[i] = s.x;
    batch.y[i] = s.y;
    batch.z[i] = s.z;
  }
  const auto& backend = kernels::active();
  std::vector<double> dist(n);
  double best = 2.0;
  for (std::size_t i = 0; i + 1 < n; ++i) {
    const double q[3] = {batch.x[i], batch.y[i], batch.z[i]};
    kernels::SphereView rest{batch.x.data() + i + 1, batch.y.data() + i + 1,
                             batch.z.data() + i + 1, n - i - 1};
    backend.chordal_distances(q, rest, dist.data());
    best = std::min(best, *std::min_element(dist.begin(), dist.begin() + (n - i - 1)));
  }
  return best;
}

std::optional<std::vector<std::size_t>> match_images(const PointSet& target,
                                                     std::span<const SpherePoint> images) {
  if (images.size() != target.size()) return std::nullopt;
  std::vector<std::size_t> assignment(images.size());
  std::vector<char> used(target.size(), 0);
  for (std::size_t i = 0; i < images.size(); ++i) {
    const auto hit = target.index().find(images[i], target.tolerance());
    if (!hit || used[*hit]) return std::nullopt;
    used[*hit] = 1;
    assignment[i] = *hit;
  }
  return assignment;
}

bool set_equal(const PointSet& a, const PointSet& b) {
  if (a.size() != b.size()) return false;
  const double tol = std::max(a.tolerance(), b.tolerance());
  std::vector<char> used(b.size(), 0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    const auto hit = b.index().find(a.index().points()[i], tol);
    if (!hit) return false;
    if (used[*hit]) {
      throw Error(ErrorCode::AmbiguousMatching, "a point is within tolerance of two partners");
    }
    used[*hit] = 1;
  }
  return true;
}

PointSet image(const MobiusMap& f, const PointSet& s) {
  std::vector<RiemannPoint> out;
  out.reserve(s.size());
  for (const auto& p : s) out.push_back(f(p));
  return PointSet(std::move(out), s.tolerance());
}

namespace {

std::string format_double(double v) {
  if (v == 0.0) v = 0.0;  // drop the sign of negative zero
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

double parse_double(std::string_view s, std::string_view whole) {
  double v = 0.0;
  if (!s.empty() && s.front() == '+') s.remove_prefix(1);
  auto res = std::from_chars(s.data(), s.data() + s.size(), v);
  if (s.empty() || res.ec != std::errc() || res.ptr != s.data() + s.size()) {
    throw Error(ErrorCode::ParseError, "bad number in '" + std::string(whole) + "'");
  }
  return v;
}

}  // namespace

std::string format_complex(Complex v) {
  std::string out = format_double(v.real());
  const double im = v.imag() == 0.0 ? 0.0 : v.imag();
  if (std::signbit(im)) {
    out += "-" + format_double(-im);
  } else {
    out += "+" + format_double(im);
  }
  return out + "i";
}

std::string format_point(const RiemannPoint& p) {
  if (p.is_infinity()) return "inf";
  return format_complex(p.value());
}

Complex parse_complex(std::string_view text) {
  std::string compact;
  for (char ch : text) {
    if (ch != ' ' && ch != '\t') compact.push_back(ch);
  }
  std::string_view s = compact;
  if (s.empty()) throw Error(ErrorCode::ParseError, "empty complex number");
  if (s.back() != 'i') return {parse_double(s, text), 0.0};

  s.remove_suffix(1);
  // Split at the last sign that is not an exponent sign or the leading sign.
  std::size_t split = std::string_view::npos;
  for (std::size_t i = s.size(); i-- > 1;) {
    if ((s[i] == '+' || s[i] == '-') && s[i - 1] != 'e' && s[i - 1] != 'E') {
      split = i;
      break;
    }
  }
  const std::string_view re = split == std::string_view::npos ? std::string_view{} : s.substr(0, split);
  std::string_view im = split == std::string_view::npos ? s : s.substr(split);
  double imag = 0.0;
  if (im.empty() || im == "+") {
    imag = 1.0;
  } else if (im == "-") {
    imag = -1.0;
  } else {
    imag = parse_double(im, text);
  }
  return {re.empty() ? 0.0 : parse_double(re, text), imag};
}

RiemannPoint parse_point(std::string_view text) {
  std::string_view s = text;
  while (!s.empty() && s.front() == ' ') s.remove_prefix(1);
  while (!s.empty() && s.back() == ' ') s.remove_suffix(1);
  if (s == "inf" || s == "infinity" || s == "Infinity" || s == "∞") {
    return RiemannPoint::infinity();
  }
  return RiemannPoint::finite(parse_complex(s));
}

}  // namespace msing
