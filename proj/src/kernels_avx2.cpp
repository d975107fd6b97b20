// AVX2 kernel variants. Arithmetic mirrors kernels_scalar.cpp operation for
// operation (no FMA), so results are bit-identical to the scalar reference;
// remainder cells reuse the shared per-cell helpers.
#if defined(__x86_64__) || defined(_M_X64)

#include <immintrin.h>

#include <algorithm>
#include <cmath>

#include "kernels_detail.hpp"
#include "modica/kernels.hpp"

namespace modica::kernels {

namespace {

using namespace detail;

void sub_scale(const double* a, const double* b, double s, double* out, std::size_t n) {
    const __m256d vs = _mm256_set1_pd(s);
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        const __m256d va = _mm256_loadu_pd(a + i);
        const __m256d vb = _mm256_loadu_pd(b + i);
        _mm256_storeu_pd(out + i, _mm256_mul_pd(_mm256_sub_pd(va, vb), vs));
    }
    for (; i < n; ++i) out[i] = sub_scale_cell(a[i], b[i], s);
}

void lap3_scale(const double* p, const double* m, const double* c, double s, double* out,
                std::size_t n) {
    const __m256d vs = _mm256_set1_pd(s);
    const __m256d two = _mm256_set1_pd(2.0);
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        const __m256d vp = _mm256_loadu_pd(p + i);
        const __m256d vm = _mm256_loadu_pd(m + i);
        const __m256d vc = _mm256_loadu_pd(c + i);
        const __m256d t = _mm256_sub_pd(_mm256_add_pd(vp, vm), _mm256_mul_pd(two, vc));
        _mm256_storeu_pd(out + i, _mm256_mul_pd(t, vs));
    }
    for (; i < n; ++i) out[i] = lap3_scale_cell(p[i], m[i], c[i], s);
}

void cross4_scale(const double* pp, const double* pm, const double* mp, const double* mm, double s,
                  double* out, std::size_t n) {
    const __m256d vs = _mm256_set1_pd(s);
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        const __m256d a = _mm256_sub_pd(_mm256_loadu_pd(pp + i), _mm256_loadu_pd(pm + i));
        const __m256d b = _mm256_sub_pd(_mm256_loadu_pd(mp + i), _mm256_loadu_pd(mm + i));
        _mm256_storeu_pd(out + i, _mm256_mul_pd(_mm256_sub_pd(a, b), vs));
    }
    for (; i < n; ++i) out[i] = cross4_scale_cell(pp[i], pm[i], mp[i], mm[i], s);
}

std::size_t diffusion1(const double* gx, const double* uxx, double pm2, double e2, double* out,
                       std::size_t n) {
    const __m256d vpm2 = _mm256_set1_pd(pm2);
    const __m256d ve2 = _mm256_set1_pd(e2);
    const __m256d one = _mm256_set1_pd(1.0);
    const __m256d zero = _mm256_setzero_pd();
    std::size_t count = 0;
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        const __m256d g = _mm256_loadu_pd(gx + i);
        const __m256d s = _mm256_mul_pd(g, g);
        const __m256d den = _mm256_add_pd(ve2, s);
        const __m256d mask = _mm256_cmp_pd(den, zero, _CMP_EQ_OQ);
        const __m256d coef =
            _mm256_add_pd(one, _mm256_div_pd(_mm256_mul_pd(vpm2, s), den));
        const __m256d safe = _mm256_blendv_pd(coef, one, mask);
        _mm256_storeu_pd(out + i, _mm256_mul_pd(safe, _mm256_loadu_pd(uxx + i)));
        count += static_cast<std::size_t>(__builtin_popcount(_mm256_movemask_pd(mask)));
    }
    for (; i < n; ++i) {
        bool sub = false;
        out[i] = diffusion1_cell(gx[i], uxx[i], pm2, e2, &sub);
        count += sub ? 1 : 0;
    }
    return count;
}

std::size_t diffusion2(const double* gx, const double* gy, const double* uxx, const double* uyy,
                       const double* uxy, double pm2, double e2, double* out, std::size_t n) {
    const __m256d vpm2 = _mm256_set1_pd(pm2);
    const __m256d ve2 = _mm256_set1_pd(e2);
    const __m256d one = _mm256_set1_pd(1.0);
    const __m256d two = _mm256_set1_pd(2.0);
    const __m256d zero = _mm256_setzero_pd();
    std::size_t count = 0;
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        const __m256d vgx = _mm256_loadu_pd(gx + i);
        const __m256d vgy = _mm256_loadu_pd(gy + i);
        const __m256d sx = _mm256_mul_pd(vgx, vgx);
        const __m256d sy = _mm256_mul_pd(vgy, vgy);
        const __m256d den = _mm256_add_pd(ve2, _mm256_add_pd(sx, sy));
        const __m256d mask = _mm256_cmp_pd(den, zero, _CMP_EQ_OQ);
        const __m256d axx = _mm256_add_pd(one, _mm256_div_pd(_mm256_mul_pd(vpm2, sx), den));
        const __m256d ayy = _mm256_add_pd(one, _mm256_div_pd(_mm256_mul_pd(vpm2, sy), den));
        const __m256d axy =
            _mm256_div_pd(_mm256_mul_pd(vpm2, _mm256_mul_pd(vgx, vgy)), den);
        const __m256d vuxx = _mm256_loadu_pd(uxx + i);
        const __m256d vuyy = _mm256_loadu_pd(uyy + i);
        const __m256d vuxy = _mm256_loadu_pd(uxy + i);
        const __m256d full = _mm256_add_pd(
            _mm256_add_pd(_mm256_mul_pd(axx, vuxx), _mm256_mul_pd(ayy, vuyy)),
            _mm256_mul_pd(_mm256_mul_pd(two, axy), vuxy));
        const __m256d ident = _mm256_add_pd(vuxx, vuyy);
        _mm256_storeu_pd(out + i, _mm256_blendv_pd(full, ident, mask));
        count += static_cast<std::size_t>(__builtin_popcount(_mm256_movemask_pd(mask)));
    }
    for (; i < n; ++i) {
        bool sub = false;
        out[i] = diffusion2_cell(gx[i], gy[i], uxx[i], uyy[i], uxy[i], pm2, e2, &sub);
        count += sub ? 1 : 0;
    }
    return count;
}

void update(const double* u, const double* d, const double* r, double dt, double* out,
            std::size_t n) {
    const __m256d vdt = _mm256_set1_pd(dt);
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        const __m256d vu = _mm256_loadu_pd(u + i);
        const __m256d diff = _mm256_sub_pd(_mm256_loadu_pd(d + i), _mm256_loadu_pd(r + i));
        _mm256_storeu_pd(out + i, _mm256_add_pd(vu, _mm256_mul_pd(vdt, diff)));
    }
    for (; i < n; ++i) out[i] = update_cell(u[i], d[i], r[i], dt);
}

void fmacc_dev(double* acc, const double* src, const double* ctr, double w, std::size_t n) {
    const __m256d vw = _mm256_set1_pd(w);
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        const __m256d dev = _mm256_sub_pd(_mm256_loadu_pd(src + i), _mm256_loadu_pd(ctr + i));
        const __m256d va = _mm256_add_pd(_mm256_loadu_pd(acc + i), _mm256_mul_pd(vw, dev));
        _mm256_storeu_pd(acc + i, va);
    }
    for (; i < n; ++i) acc[i] += w * (src[i] - ctr[i]);
}

double max_abs(const double* x, std::size_t n) {
    const __m256d signmask = _mm256_set1_pd(-0.0);
    __m256d vm = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        vm = _mm256_max_pd(vm, _mm256_andnot_pd(signmask, _mm256_loadu_pd(x + i)));
    }
    alignas(32) double lanes[4];
    _mm256_store_pd(lanes, vm);
    double m = std::max(std::max(lanes[0], lanes[1]), std::max(lanes[2], lanes[3]));
    for (; i < n; ++i) m = std::max(m, std::fabs(x[i]));
    return m;
}

void min_max(const double* x, std::size_t n, double* mn, double* mx) {
    __m256d vlo = _mm256_set1_pd(x[0]);
    __m256d vhi = vlo;
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        const __m256d v = _mm256_loadu_pd(x + i);
        vlo = _mm256_min_pd(vlo, v);
        vhi = _mm256_max_pd(vhi, v);
    }
    alignas(32) double lo4[4];
    alignas(32) double hi4[4];
    _mm256_store_pd(lo4, vlo);
    _mm256_store_pd(hi4, vhi);
    double lo = std::min(std::min(lo4[0], lo4[1]), std::min(lo4[2], lo4[3]));
    double hi = std::max(std::max(hi4[0], hi4[1]), std::max(hi4[2], hi4[3]));
    for (; i < n; ++i) {
        lo = std::min(lo, x[i]);
        hi = std::max(hi, x[i]);
    }
    *mn = lo;
    *mx = hi;
}

double norm_max2(const double* gx, const double* gy, std::size_t n) {
    __m256d vm = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        const __m256d vgx = _mm256_loadu_pd(gx + i);
        const __m256d vgy = _mm256_loadu_pd(gy + i);
        const __m256d s = _mm256_add_pd(_mm256_mul_pd(vgx, vgx), _mm256_mul_pd(vgy, vgy));
        vm = _mm256_max_pd(vm, _mm256_sqrt_pd(s));
    }
    alignas(32) double lanes[4];
    _mm256_store_pd(lanes, vm);
    double m = std::max(std::max(lanes[0], lanes[1]), std::max(lanes[2], lanes[3]));
    for (; i < n; ++i) m = std::max(m, norm2_cell(gx[i], gy[i]));
    return m;
}

}  // namespace

const Table& avx2_table() {
    static const Table t{sub_scale,  lap3_scale, cross4_scale, diffusion1, diffusion2,
                         update,     fmacc_dev,  max_abs,      min_max,    norm_max2};
    return t;
}

}  // namespace modica::kernels

#endif  // x86-64
