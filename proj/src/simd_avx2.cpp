// AVX2+FMA SIMD kernels; this translation unit is compiled with
// -mavx2 -mfma on x86-64 only and selected at runtime via cpuid.
#define SLATER_SIMD_NS avx2_isa
#define SLATER_SIMD_NAME "avx2"
#include "simd_kernels.inl"
