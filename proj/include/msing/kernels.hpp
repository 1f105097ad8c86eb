#pragma once

// Data-parallel inner loops of the stabilizer search. Every kernel has a
// scalar reference implementation; SIMD variants are chosen at runtime and
// must agree with the reference to rounding.

#include <cstddef>
#include <string_view>
#include <vector>

namespace msing::kernels {

struct MobiusCoeffs {
  double ar, ai, br, bi, cr, ci, dr, di;
};

// Structure-of-arrays homogeneous coordinates (z : w).
struct HomogeneousView {
  const double* zr;
  const double* zi;
  const double* wr;
  const double* wi;
  std::size_t size;
};

struct SphereView {
  const double* x;
  const double* y;
  const double* z;
  std::size_t size;
};

struct SphereSpan {
  double* x;
  double* y;
  double* z;
  std::size_t size;
};

// Applies the map to every point and writes the sphere images.
using MapToSphereFn = void (*)(const MobiusCoeffs& m, HomogeneousView in,
                               SphereSpan out);
// out[i] = |q - p_i| (chordal distance).
using ChordalDistancesFn = void (*)(const double q[3], SphereView pts,
                                    double* out);

struct Backend {
  const char* name;
  MapToSphereFn map_to_sphere;
  ChordalDistancesFn chordal_distances;
};

const Backend& scalar_backend();
// nullptr when not compiled in or not supported by this CPU.
const Backend* avx2_backend();

// Auto-selected on first use; MSING_KERNELS=scalar forces the reference.
const Backend& active();
// "auto", "scalar" or "avx2". Returns false if the request cannot be honoured.
bool select(std::string_view name);

class HomogeneousBatch {
 public:
  HomogeneousBatch() = default;
  explicit HomogeneousBatch(std::size_t n) : zr(n), zi(n), wr(n), wi(n) {}

  std::size_t size() const { return zr.size(); }
  HomogeneousView view() const {
    return {zr.data(), zi.data(), wr.data(), wi.data(), zr.size()};
  }

  std::vector<double> zr, zi, wr, wi;
};

class SphereBatch {
 public:
  SphereBatch() = default;
  explicit SphereBatch(std::size_t n) : x(n), y(n), z(n) {}

  std::size_t size() const { return x.size(); }
  SphereView view() const { return {x.data(), y.data(), z.data(), x.size()}; }
  SphereSpan span() { return {x.data(), y.data(), z.data(), x.size()}; }

  std::vector<double> x, y, z;
};

namespace scalar {
void map_to_sphere(const MobiusCoeffs& m, HomogeneousView in, SphereSpan out);
void chordal_distances(const double q[3], SphereView pts, double* out);
}  // namespace scalar

#if defined(MSING_HAVE_AVX2)
namespace avx2 {
void map_to_sphere(const MobiusCoeffs& m, HomogeneousView in, SphereSpan out);
void chordal_distances(const double q[3], SphereView pts, double* out);
}  // namespace avx2
#endif

}  // namespace msing::kernels
