#include "sobol.hpp"

#include <stdexcept>

namespace slater::quadrature::detail {

namespace {

// Primitive polynomial degree s, interior coefficient bits a, and initial
// odd direction integers m_1..m_s for dimensions 2..16.
struct DirInit {
    int s;
    unsigned a;
    unsigned m[6];
};

constexpr DirInit kInit[15] = {
    {1, 0, {1}},
    {2, 1, {1, 3}},
    {3, 1, {1, 3, 1}},
    {3, 2, {1, 1, 1}},
    {4, 1, {1, 1, 3, 3}},
    {4, 4, {1, 3, 5, 13}},
    {5, 2, {1, 1, 5, 5, 17}},
    {5, 4, {1, 1, 5, 5, 5}},
    {5, 7, {1, 1, 7, 11, 19}},
    {5, 11, {1, 1, 5, 1, 1}},
    {5, 13, {1, 1, 1, 3, 11}},
    {5, 14, {1, 3, 5, 5, 31}},
    {6, 1, {1, 3, 3, 9, 7, 49}},
    {6, 13, {1, 1, 1, 15, 21, 21}},
    {6, 16, {1, 3, 1, 13, 27, 49}},
};

}  // namespace

Sobol::Sobol(int dim) : dim_(dim) {
    if (dim < 1 || dim > kSobolMaxDim)
        throw std::invalid_argument("sobol: dimension must be in [1, 16]");
    // First coordinate: van der Corput in base 2.
    for (int b = 0; b < kSobolBits; ++b) v_[0][b] = 1ull << (kSobolBits - 1 - b);
    for (int d = 1; d < dim; ++d) {
        const DirInit& in = kInit[d - 1];
        const int s = in.s;
        for (int i = 0; i < s && i < kSobolBits; ++i)
            v_[d][i] = static_cast<std::uint64_t>(in.m[i]) << (kSobolBits - 1 - i);
        for (int i = s; i < kSobolBits; ++i) {
            std::uint64_t vi = v_[d][i - s] ^ (v_[d][i - s] >> s);
            for (int k = 1; k < s; ++k)
                if ((in.a >> (s - 1 - k)) & 1u) vi ^= v_[d][i - k];
            v_[d][i] = vi;
        }
    }
}

void Sobol::state(std::uint64_t index, std::uint64_t* acc) const {
    const std::uint64_t gray = index ^ (index >> 1);
    for (int d = 0; d < dim_; ++d) {
        std::uint64_t a = 0;
        std::uint64_t g = gray;
        int b = 0;
        while (g != 0 && b < kSobolBits) {
            if (g & 1ull) a ^= v_[d][b];
            g >>= 1;
            ++b;
        }
        acc[d] = a;
    }
}

void Sobol::point(std::uint64_t index, double* x) const {
    std::uint64_t acc[kSobolMaxDim];
    state(index, acc);
    for (int d = 0; d < dim_; ++d) x[d] = static_cast<double>(acc[d]) * 0x1.0p-52;
}

void Sobol::fill(std::uint64_t index, std::size_t count, double* out) const {
    if (count == 0) return;
    std::uint64_t acc[kSobolMaxDim];
    state(index, acc);
    for (int d = 0; d < dim_; ++d) out[d] = static_cast<double>(acc[d]) * 0x1.0p-52;
    for (std::size_t i = 1; i < count; ++i) {
        // index i-1 -> i flips Gray bit ctz(i + index)
        const int b = static_cast<int>(__builtin_ctzll(index + i));
        double* row = out + i * dim_;
        for (int d = 0; d < dim_; ++d) {
            if (b < kSobolBits) acc[d] ^= v_[d][b];
            row[d] = static_cast<double>(acc[d]) * 0x1.0p-52;
        }
    }
}

}  // namespace slater::quadrature::detail
