#pragma once

// Batched kernels for the transcendental-heavy part of the integrands:
// exponentially scaled Macdonald functions evaluated over blocks of
// quadrature nodes. A scalar reference implementation (plain loops over
// slater::specfun) is always available; SIMD variants built from
// std::experimental::simd are compiled per target ISA and selected at
// runtime. All backends implement the same series / continued-fraction
// algorithms and are equivalence-tested against the scalar reference.

#include <cstddef>
#include <vector>

namespace slater::simd {

enum class Backend {
    Scalar,  // reference loops over slater::specfun
    Native,  // std::experimental::simd at the baseline ISA (SSE2 / NEON)
    Avx2,    // x86-64 AVX2+FMA translation unit
};

struct KernelSet {
    const char* name;
    // k0e[i] = e^{z[i]} K0(z[i]), k1e[i] = e^{z[i]} K1(z[i]); requires z[i] > 0.
    void (*k01e)(const double* z, double* k0e, double* k1e, std::size_t n);
    // out[i] = e^{z[i]} K_{nu}(z[i]) with nu = twice_nu/2 (integer or half order).
    void (*kve)(int twice_nu, const double* z, double* out, std::size_t n);
};

// Active kernel set. Defaults to the widest backend the host supports.
const KernelSet& kernels();

Backend active_backend();
const char* backend_name(Backend b);

// Kernel set for a specific backend, or nullptr when it was not compiled in
// or the CPU lacks the ISA.
const KernelSet* kernels_for(Backend b);

// Force a backend (tests and benchmarks). Throws std::invalid_argument when
// the backend is unavailable on this host.
void set_backend(Backend b);

std::vector<Backend> available_backends();

}  // namespace slater::simd
