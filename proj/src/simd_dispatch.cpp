#include "slater/simd.hpp"

#include <atomic>
#include <stdexcept>

#include "slater/bessel.hpp"

namespace slater::simd {

namespace scalar_isa {
namespace {
void k01e(const double* z, double* k0e, double* k1e, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) specfun::k01_scaled(z[i], k0e[i], k1e[i]);
}
void kve(int twice_nu, const double* z, double* out, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) out[i] = specfun::k_scaled({twice_nu}, z[i]);
}
}  // namespace
const KernelSet kernel_set = {"scalar", &k01e, &kve};
}  // namespace scalar_isa

namespace native_isa {
extern const KernelSet kernel_set;
}
#if defined(SLATER_HAVE_AVX2_TU)
namespace avx2_isa {
extern const KernelSet kernel_set;
}
#endif

namespace {

bool avx2_supported() {
#if defined(SLATER_HAVE_AVX2_TU) && defined(__x86_64__)
    return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
    return false;
#endif
}

const KernelSet* lookup(Backend b) {
    switch (b) {
        case Backend::Scalar:
            return &scalar_isa::kernel_set;
        case Backend::Native:
            return &native_isa::kernel_set;
        case Backend::Avx2:
#if defined(SLATER_HAVE_AVX2_TU)
            return avx2_supported() ? &avx2_isa::kernel_set : nullptr;
#else
            return nullptr;
#endif
    }
    return nullptr;
}

Backend pick_default() { return avx2_supported() ? Backend::Avx2 : Backend::Native; }

std::atomic<Backend> g_backend{pick_default()};

}  // namespace

const KernelSet& kernels() { return *lookup(g_backend.load(std::memory_order_relaxed)); }

Backend active_backend() { return g_backend.load(std::memory_order_relaxed); }

const char* backend_name(Backend b) {
    const KernelSet* k = lookup(b);
    if (k) return k->name;
    switch (b) {
        case Backend::Scalar: return "scalar";
        case Backend::Native: return "native";
        case Backend::Avx2: return "avx2";
    }
    return "?";
}

const KernelSet* kernels_for(Backend b) { return lookup(b); }

void set_backend(Backend b) {
    if (!lookup(b)) throw std::invalid_argument("simd backend unavailable on this host");
    g_backend.store(b, std::memory_order_relaxed);
}

std::vector<Backend> available_backends() {
    std::vector<Backend> out;
    for (Backend b : {Backend::Scalar, Backend::Native, Backend::Avx2})
        if (lookup(b)) out.push_back(b);
    return out;
}

}  // namespace slater::simd
