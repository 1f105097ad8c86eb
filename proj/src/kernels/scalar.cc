#include <cmath>

#include "msing/kernels.hpp"

namespace msing::kernels::scalar {

void map_to_sphere(const MobiusCoeffs& m, HomogeneousView in, SphereSpan out) {
  for (std::size_t i = 0; i < in.size; ++i) {
    const double zr = in.zr[i], zi = in.zi[i], wr = in.wr[i], wi = in.wi[i];
    // Z = a z + b w, W = c z + d w
    const double Zr = (m.ar * zr - m.ai * zi) + (m.br * wr - m.bi * wi);
    const double Zi = (m.ar * zi + m.ai * zr) + (m.br * wi + m.bi * wr);
    const double Wr = (m.cr * zr - m.ci * zi) + (m.dr * wr - m.di * wi);
    const double Wi = (m.cr * zi + m.ci * zr) + (m.dr * wi + m.di * wr);
    const double nz = Zr * Zr + Zi * Zi;
    const double nw = Wr * Wr + Wi * Wi;
    const double inv = 1.0 / (nz + nw);
    // Z * conj(W)
    const double re = Zr * Wr + Zi * Wi;
    const double im = Zi * Wr - Zr * Wi;
    out.x[i] = 2.0 * re * inv;
    out.y[i] = 2.0 * im * inv;
    out.z[i] = (nz - nw) * inv;
  }
}

void chordal_distances(const double q[3], SphereView pts, double* out) {
  for (std::size_t i = 0; i < pts.size; ++i) {
    const double dx = pts.x[i] - q[0];
    const double dy = pts.y[i] - q[1];
    const double dz = pts.z[i] - q[2];
    out[i] = std::sqrt(dx * dx + dy * dy + dz * dz);
  }
}

}  // namespace msing::kernels::scalar
