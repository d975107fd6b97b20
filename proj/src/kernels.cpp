#include "modica/kernels.hpp"

#include <cstdlib>
#include <stdexcept>
#include <string>

namespace modica::kernels {

#if defined(__x86_64__) || defined(_M_X64)
const Table& avx2_table();
#endif

bool avx2_supported() {
#if defined(__x86_64__) || defined(_M_X64)
    return __builtin_cpu_supports("avx2") != 0;
#else
    return false;
#endif
}

namespace {

Isa detect_isa() {
    if (const char* env = std::getenv("MODICA_SIMD")) {
        const std::string v(env);
        if (v == "scalar") return Isa::Scalar;
        if (v == "avx2") {
            if (!avx2_supported()) throw std::runtime_error("MODICA_SIMD=avx2: host lacks AVX2");
            return Isa::Avx2;
        }
        if (v != "auto" && !v.empty())
            throw std::runtime_error("MODICA_SIMD must be scalar, avx2 or auto");
    }
    return avx2_supported() ? Isa::Avx2 : Isa::Scalar;
}

Isa& current_isa() {
    static Isa isa = detect_isa();
    return isa;
}

}  // namespace

const Table& active() {
#if defined(__x86_64__) || defined(_M_X64)
    if (current_isa() == Isa::Avx2) return avx2_table();
#endif
    return scalar_table();
}

Isa active_isa() { return current_isa(); }

void force_isa(Isa isa) {
    if (isa == Isa::Avx2 && !avx2_supported())
        throw std::runtime_error("force_isa: host lacks AVX2");
    current_isa() = isa;
}

std::string isa_name(Isa isa) { return isa == Isa::Avx2 ? "avx2" : "scalar"; }

}  // namespace modica::kernels
