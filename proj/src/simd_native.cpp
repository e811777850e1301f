// Baseline-ISA SIMD kernels (SSE2 on x86-64, NEON on aarch64).
#define SLATER_SIMD_NS native_isa
#if defined(__aarch64__)
#define SLATER_SIMD_NAME "neon"
#else
#define SLATER_SIMD_NAME "sse2"
#endif
#include "simd_kernels.inl"
