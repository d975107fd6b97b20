#pragma once

#include <cmath>
#include <cstddef>

// Per-cell arithmetic shared by the scalar reference kernels and the
// boundary-wrap code paths. The expression trees here are the canonical
// ones; the AVX2 kernels mirror them operation for operation.
namespace modica::kernels::detail {

inline double sub_scale_cell(double a, double b, double s) { return (a - b) * s; }

inline double lap3_scale_cell(double p, double m, double c, double s) {
    return ((p + m) - 2.0 * c) * s;
}

inline double cross4_scale_cell(double pp, double pm, double mp, double mm, double s) {
    return ((pp - pm) - (mp - mm)) * s;
}

inline double diffusion1_cell(double gx, double uxx, double pm2, double e2, bool* substituted) {
    const double s = gx * gx;
    const double den = e2 + s;
    *substituted = (den == 0.0);
    const double coef = *substituted ? 1.0 : 1.0 + (pm2 * s) / den;
    return coef * uxx;
}

inline double diffusion2_cell(double gx, double gy, double uxx, double uyy, double uxy, double pm2,
                              double e2, bool* substituted) {
    const double sx = gx * gx;
    const double sy = gy * gy;
    const double den = e2 + (sx + sy);
    *substituted = (den == 0.0);
    if (*substituted) return uxx + uyy;
    const double axx = 1.0 + (pm2 * sx) / den;
    const double ayy = 1.0 + (pm2 * sy) / den;
    const double axy = (pm2 * (gx * gy)) / den;
    return ((axx * uxx) + (ayy * uyy)) + ((2.0 * axy) * uxy);
}

inline double update_cell(double u, double d, double r, double dt) { return u + dt * (d - r); }

inline double norm2_cell(double gx, double gy) { return std::sqrt(gx * gx + gy * gy); }

}  // namespace modica::kernels::detail
