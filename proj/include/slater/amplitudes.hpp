#pragma once

// Fully integrated transition amplitudes for two and three Slater orbitals:
// closed forms, reduced low-dimensional integral forms, and the four-term
// three-orbital bridge amplitude with its per-term tables.

#include <vector>

#include "slater/quadrature.hpp"

namespace slater::amplitudes {

using quadrature::EvalResult;
using quadrature::IntervalKind;
using quadrature::QuadratureConfig;

// The three decay constants of the three-orbital amplitude. eta2 plays the
// role written interchangeably as eta_2 / eta_13.
struct TripleEtas {
    double eta1;
    double eta12;
    double eta2;
};

// S2 = 4 pi (e^{-eta12 x2} - e^{-eta1 x2}) / (x2 (eta1^2 - eta12^2)); the
// degenerate eta1 ~ eta12 case switches to a second-order series around the
// mean of the squared decays.
double s2_closed(double eta1, double eta12, double x2);

// Same amplitude via the one-dimensional pair-representation integral.
EvalResult s2_via_rep(double eta1, double eta12, double x2, const QuadratureConfig& config);

// S3 = 16 pi^2 / ((eta1+eta2)(eta1+eta12)(eta2+eta12))
double s3_closed(const TripleEtas& etas);

// S3 via the two-dimensional unit-square sigma form.
EvalResult s3_sigma_2d(const TripleEtas& etas, const QuadratureConfig& config);

struct BridgeAmplitude {
    std::vector<EvalResult> terms;  // four terms
    EvalResult total;
};

// The four bridge terms of S3, each a 3-D integral (radial x2 with measure
// 4 pi x2^2 over [0,inf), sigma_1 and sigma_2 over the chosen intervals,
// factor 1/2 per Full sigma axis).
BridgeAmplitude s3_bridge_terms(const TripleEtas& etas, IntervalKind sigma1_interval,
                                IntervalKind sigma2_interval, const QuadratureConfig& config);

// Same four terms with the sigma_2 integral replaced by its closed form (its
// [0,inf) value carrying the bridge 1/2), leaving a 2-D integral over
// (x2, sigma_1). `simplified_exponent` selects the algebraically collapsed
// exponent sqrt(a (s+1)) + sqrt(c/(s+1)); it is exact for this parameter
// family and cross-checked against the general form in the tests.
BridgeAmplitude s3_bridge_reduced(const TripleEtas& etas, IntervalKind sigma1_interval,
                                  const QuadratureConfig& config,
                                  bool simplified_exponent = false);

}  // namespace slater::amplitudes
