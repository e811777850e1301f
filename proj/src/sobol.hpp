#pragma once

// Sobol low-discrepancy sequence, dimensions 1..16, 52 output bits.
// Direction numbers follow the usual primitive-polynomial construction
// (Joe-Kuo style initial values for the low dimensions used here).

#include <cstdint>

namespace slater::quadrature::detail {

inline constexpr int kSobolMaxDim = 16;
inline constexpr int kSobolBits = 52;

class Sobol {
  public:
    explicit Sobol(int dim);

    int dim() const { return dim_; }

    // Writes the point with the given index into x[0..dim); x in [0,1).
    void point(std::uint64_t index, double* x) const;

    // Writes `count` consecutive points starting at `index`, row-major into
    // out[count][dim], walking the Gray code incrementally.
    void fill(std::uint64_t index, std::size_t count, double* out) const;

  private:
    void state(std::uint64_t index, std::uint64_t* acc) const;

    int dim_;
    std::uint64_t v_[kSobolMaxDim][kSobolBits];
};

}  // namespace slater::quadrature::detail
