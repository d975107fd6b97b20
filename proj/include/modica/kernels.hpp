#pragma once

#include <cstddef>
#include <string>

namespace modica::kernels {

// Inner-loop kernels used by the field operators. Every kernel has a scalar
// reference implementation and, on x86-64 hosts with AVX2, a vectorized
// variant selected at run time. The vector variants use the same operation
// order as the scalar reference and no fused multiply-add, so both produce
// bit-identical results; the equivalence tests assert exactly that.
enum class Isa { Scalar, Avx2 };

// Kernel implementations, one function-pointer table per ISA.
struct Table {
    // out[i] = (a[i] - b[i]) * s
    void (*sub_scale)(const double* a, const double* b, double s, double* out, std::size_t n);
    // out[i] = ((p[i] + m[i]) - 2*c[i]) * s
    void (*lap3_scale)(const double* p, const double* m, const double* c, double s, double* out,
                       std::size_t n);
    // out[i] = ((pp[i] - pm[i]) - (mp[i] - mm[i])) * s
    void (*cross4_scale)(const double* pp, const double* pm, const double* mp, const double* mm,
                         double s, double* out, std::size_t n);
    // out[i] = a(gx[i]) * uxx[i] with a = 1 + pm2*gx^2/(e2+gx^2); cells with
    // e2+gx^2 == 0 fall back to a = 1 and are counted in the return value.
    std::size_t (*diffusion1)(const double* gx, const double* uxx, double pm2, double e2,
                              double* out, std::size_t n);
    // 2-d analogue: out = axx*uxx + ayy*uyy + 2*axy*uxy from the gradient
    // components; zero-gradient cells at e2 == 0 use the identity matrix.
    std::size_t (*diffusion2)(const double* gx, const double* gy, const double* uxx,
                              const double* uyy, const double* uxy, double pm2, double e2,
                              double* out, std::size_t n);
    // out[i] = u[i] + dt * (d[i] - r[i])
    void (*update)(const double* u, const double* d, const double* r, double dt, double* out,
                   std::size_t n);
    // acc[i] += w * (src[i] - ctr[i])
    void (*fmacc_dev)(double* acc, const double* src, const double* ctr, double w, std::size_t n);
    double (*max_abs)(const double* x, std::size_t n);
    void (*min_max)(const double* x, std::size_t n, double* mn, double* mx);
    // max over i of sqrt(gx[i]^2 + gy[i]^2)
    double (*norm_max2)(const double* gx, const double* gy, std::size_t n);
};

const Table& scalar_table();
bool avx2_supported();

// Active table. Defaults to the best supported ISA; the MODICA_SIMD
// environment variable ("scalar", "avx2", "auto") overrides the default.
const Table& active();
Isa active_isa();
void force_isa(Isa isa);
std::string isa_name(Isa isa);

}  // namespace modica::kernels
