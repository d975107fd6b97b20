#include <algorithm>
#include <cmath>

#include "kernels_detail.hpp"
#include "modica/kernels.hpp"

namespace modica::kernels {

namespace {

using namespace detail;

void sub_scale(const double* a, const double* b, double s, double* out, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) out[i] = sub_scale_cell(a[i], b[i], s);
}

void lap3_scale(const double* p, const double* m, const double* c, double s, double* out,
                std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) out[i] = lap3_scale_cell(p[i], m[i], c[i], s);
}

void cross4_scale(const double* pp, const double* pm, const double* mp, const double* mm, double s,
                  double* out, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) out[i] = cross4_scale_cell(pp[i], pm[i], mp[i], mm[i], s);
}

std::size_t diffusion1(const double* gx, const double* uxx, double pm2, double e2, double* out,
                       std::size_t n) {
    std::size_t count = 0;
    for (std::size_t i = 0; i < n; ++i) {
        bool sub = false;
        out[i] = diffusion1_cell(gx[i], uxx[i], pm2, e2, &sub);
        count += sub ? 1 : 0;
    }
    return count;
}

std::size_t diffusion2(const double* gx, const double* gy, const double* uxx, const double* uyy,
                       const double* uxy, double pm2, double e2, double* out, std::size_t n) {
    std::size_t count = 0;
    for (std::size_t i = 0; i < n; ++i) {
        bool sub = false;
        out[i] = diffusion2_cell(gx[i], gy[i], uxx[i], uyy[i], uxy[i], pm2, e2, &sub);
        count += sub ? 1 : 0;
    }
    return count;
}

void update(const double* u, const double* d, const double* r, double dt, double* out,
            std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) out[i] = update_cell(u[i], d[i], r[i], dt);
}

void fmacc_dev(double* acc, const double* src, const double* ctr, double w, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) acc[i] += w * (src[i] - ctr[i]);
}

double max_abs(const double* x, std::size_t n) {
    double m = 0.0;
    for (std::size_t i = 0; i < n; ++i) m = std::max(m, std::fabs(x[i]));
    return m;
}

void min_max(const double* x, std::size_t n, double* mn, double* mx) {
    double lo = x[0];
    double hi = x[0];
    for (std::size_t i = 1; i < n; ++i) {
        lo = std::min(lo, x[i]);
        hi = std::max(hi, x[i]);
    }
    *mn = lo;
    *mx = hi;
}

double norm_max2(const double* gx, const double* gy, std::size_t n) {
    double m = 0.0;
    for (std::size_t i = 0; i < n; ++i) m = std::max(m, norm2_cell(gx[i], gy[i]));
    return m;
}

}  // namespace

const Table& scalar_table() {
    static const Table t{sub_scale,  lap3_scale, cross4_scale, diffusion1, diffusion2,
                         update,     fmacc_dev,  max_abs,      min_max,    norm_max2};
    return t;
}

}  // namespace modica::kernels
