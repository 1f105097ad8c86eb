#include <immintrin.h>

#include "msing/kernels.hpp"

namespace msing::kernels::avx2 {

namespace {

constexpr std::size_t kLanes = 4;

}  // namespace

void map_to_sphere(const MobiusCoeffs& m, HomogeneousView in, SphereSpan out) {
  const __m256d ar = _mm256_set1_pd(m.ar), ai = _mm256_set1_pd(m.ai);
  const __m256d br = _mm256_set1_pd(m.br), bi = _mm256_set1_pd(m.bi);
  const __m256d cr = _mm256_set1_pd(m.cr), ci = _mm256_set1_pd(m.ci);
  const __m256d dr = _mm256_set1_pd(m.dr), di = _mm256_set1_pd(m.di);
  const __m256d one = _mm256_set1_pd(1.0);
  const __m256d two = _mm256_set1_pd(2.0);

  std::size_t i = 0;
  for (; i + kLanes <= in.size; i += kLanes) {
    const __m256d zr = _mm256_loadu_pd(in.zr + i);
    const __m256d zi = _mm256_loadu_pd(in.zi + i);
    const __m256d wr = _mm256_loadu_pd(in.wr + i);
    const __m256d wi = _mm256_loadu_pd(in.wi + i);

    const __m256d Zr = _mm256_add_pd(_mm256_fmsub_pd(ar, zr, _mm256_mul_pd(ai, zi)),
                                     _mm256_fmsub_pd(br, wr, _mm256_mul_pd(bi, wi)));
    const __m256d Zi = _mm256_add_pd(_mm256_fmadd_pd(ar, zi, _mm256_mul_pd(ai, zr)),
                                     _mm256_fmadd_pd(br, wi, _mm256_mul_pd(bi, wr)));
    const __m256d Wr = _mm256_add_pd(_mm256_fmsub_pd(cr, zr, _mm256_mul_pd(ci, zi)),
                                     _mm256_fmsub_pd(dr, wr, _mm256_mul_pd(di, wi)));
    const __m256d Wi = _mm256_add_pd(_mm256_fmadd_pd(cr, zi, _mm256_mul_pd(ci, zr)),
                                     _mm256_fmadd_pd(dr, wi, _mm256_mul_pd(di, wr)));

    const __m256d nz = _mm256_fmadd_pd(Zr, Zr, _mm256_mul_pd(Zi, Zi));
    const __m256d nw = _mm256_fmadd_pd(Wr, Wr, _mm256_mul_pd(Wi, Wi));
    const __m256d inv = _mm256_div_pd(one, _mm256_add_pd(nz, nw));
    const __m256d re = _mm256_fmadd_pd(Zr, Wr, _mm256_mul_pd(Zi, Wi));
    const __m256d im = _mm256_fmsub_pd(Zi, Wr, _mm256_mul_pd(Zr, Wi));

    _mm256_storeu_pd(out.x + i, _mm256_mul_pd(_mm256_mul_pd(two, re), inv));
    _mm256_storeu_pd(out.y + i, _mm256_mul_pd(_mm256_mul_pd(two, im), inv));
    _mm256_storeu_pd(out.z + i, _mm256_mul_pd(_mm256_sub_pd(nz, nw), inv));
  }

  if (i < in.size) {
    HomogeneousView tail{in.zr + i, in.zi + i, in.wr + i, in.wi + i, in.size - i};
    scalar::map_to_sphere(m, tail, {out.x + i, out.y + i, out.z + i, in.size - i});
  }
}

void chordal_distances(const double q[3], SphereView pts, double* out) {
  const __m256d qx = _mm256_set1_pd(q[0]);
  const __m256d qy = _mm256_set1_pd(q[1]);
  const __m256d qz = _mm256_set1_pd(q[2]);

  std::size_t i = 0;
  for (; i + kLanes <= pts.size; i += kLanes) {
    const __m256d dx = _mm256_sub_pd(_mm256_loadu_pd(pts.x + i), qx);
    const __m256d dy = _mm256_sub_pd(_mm256_loadu_pd(pts.y + i), qy);
    const __m256d dz = _mm256_sub_pd(_mm256_loadu_pd(pts.z + i), qz);
    const __m256d s = _mm256_fmadd_pd(dx, dx, _mm256_fmadd_pd(dy, dy, _mm256_mul_pd(dz, dz)));
    _mm256_storeu_pd(out + i, _mm256_sqrt_pd(s));
  }

  if (i < pts.size) {
    SphereView tail{pts.x + i, pts.y + i, pts.z + i, pts.size - i};
    scalar::chordal_distances(q, tail, out + i);
  }
}

}  // namespace msing::kernels::avx2
