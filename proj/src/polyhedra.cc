#include <cmath>
#include <numbers>

#include "msing/witness.hpp"

namespace msing::polyhedra {

namespace {

Vec3 normalized(Vec3 v) {
  const double n = std::sqrt(v[0] * v[0] + v[1] * v[1] + v[2] * v[2]);
  return {v[0] / n, v[1] / n, v[2] / n};
}

Rotation multiply(const Rotation& a, const Rotation& b) {
  Rotation c{};
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) {
      double s = 0.0;
      for (int k = 0; k < 3; ++k) s += a[3 * i + k] * b[3 * k + j];
      c[3 * i + j] = s;
    }
  }
  return c;
}

bool close(const Rotation& a, const Rotation& b) {
  double s = 0.0;
  for (int i = 0; i < 9; ++i) s += std::abs(a[i] - b[i]);
  return s < 1e-9;
}

std::vector<Rotation> close_under(const std::vector<Rotation>& generators) {
  std::vector<Rotation> group{axis_rotation({0, 0, 1}, 0.0)};
  for (std::size_t i = 0; i < group.size(); ++i) {
    for (const auto& g : generators) {
      const Rotation r = multiply(g, group[i]);
      bool known = false;
      for (const auto& h : group) {
        if (close(h, r)) {
          known = true;
          break;
        }
      }
      if (!known) group.push_back(r);
    }
  }
  return group;
}

}  // namespace

Rotation axis_rotation(Vec3 axis, double angle) {
  const auto [x, y, z] = normalized(axis);
  const double c = std::cos(angle), s = std::sin(angle), t = 1.0 - c;
  return {t * x * x + c,     t * x * y - s * z, t * x * z + s * y,
          t * x * y + s * z, t * y * y + c,     t * y * z - s * x,
          t * x * z - s * y, t * y * z + s * x, t * z * z + c};
}

Vec3 rotate(const Rotation& r, const Vec3& v) {
  return {r[0] * v[0] + r[1] * v[1] + r[2] * v[2], r[3] * v[0] + r[4] * v[1] + r[5] * v[2],
          r[6] * v[0] + r[7] * v[1] + r[8] * v[2]};
}

const std::vector<Rotation>& rotation_group(GroupKind kind) {
  constexpr double pi = std::numbers::pi;
  constexpr double phi = std::numbers::phi;
  static const std::vector<Rotation> tetrahedral =
      close_under({axis_rotation({0, 0, 1}, pi), axis_rotation({1, 1, 1}, 2 * pi / 3)});
  static const std::vector<Rotation> octahedral =
      close_under({axis_rotation({0, 0, 1}, pi / 2), axis_rotation({1, 1, 1}, 2 * pi / 3)});
  // Icosahedron with vertices at the cyclic permutations of (0, ±1, ±φ).
  static const std::vector<Rotation> icosahedral =
      close_under({axis_rotation({0, 1, phi}, 2 * pi / 5), axis_rotation({1, 1, 1}, 2 * pi / 3)});
  switch (kind) {
    case GroupKind::A4: return tetrahedral;
    case GroupKind::S4: return octahedral;
    case GroupKind::A5: return icosahedral;
    default: throw Error(ErrorCode::InvalidIndex, "not a polyhedral group");
  }
}

std::vector<Vec3> orbit(const std::vector<Rotation>& group, const Vec3& seed) {
  const Vec3 s = normalized(seed);
  std::vector<Vec3> out;
  for (const auto& r : group) {
    const Vec3 v = rotate(r, s);
    bool known = false;
    for (const auto& w : out) {
      if (std::abs(w[0] - v[0]) + std::abs(w[1] - v[1]) + std::abs(w[2] - v[2]) < 1e-9) {
        known = true;
        break;
      }
    }
    if (!known) out.push_back(v);
  }
  return out;
}

RiemannPoint project(const Vec3& v) {
  const Vec3 u = normalized(v);
  return RiemannPoint::from_sphere({u[0], u[1], u[2]});
}

}  // namespace msing::polyhedra
