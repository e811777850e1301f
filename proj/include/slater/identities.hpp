#pragma once

// Numeric verification of the two-denominator parametrizations and the
// Macdonald-function integral identities with (a x^2 + b x + c)/x arguments,
// including the finite-interval pair identity.

#include "slater/quadrature.hpp"

namespace slater::identities {

using quadrature::EvalResult;
using quadrature::IntervalKind;
using quadrature::QuadratureConfig;

struct AbcTriple {
    double a;
    double b;
    double c;
};

// 1/(a1 a2) as the one-dimensional two-term integral over [0,1].
EvalResult feynman_pair(double a1, double a2, const QuadratureConfig& config);

// 1/(a1 a2 a3) as the iterated four-term two-dimensional integral.
EvalResult feynman_triple(double a1, double a2, double a3, const QuadratureConfig& config);

struct IdentityCheck {
    EvalResult lhs;
    double rhs;
};

// int_0^inf x^{-3/2} K0(2 sqrt((a x^2 + b x + c)/x)) dx
//   = pi e^{-2 sqrt(2 sqrt(a c) + b)} / (2 sqrt(c))
IdentityCheck identity_k0_x32(const AbcTriple& abc, const QuadratureConfig& config);

// int_0^inf x^{-1/2} K0(2 sqrt((a x^2 + b x + c)/x)) dx
//   = pi e^{-2 sqrt(b + 2 sqrt(a c))} / (2 sqrt(a)).
// The x -> 1/x substitution maps this integral onto identity_k0_x32 with a
// and c swapped, which fixes the 1/2 prefactor.
IdentityCheck identity_k0_x12(const AbcTriple& abc, const QuadratureConfig& config);

// int over the chosen interval of
//   2 x^{-3/2} K0(2 sqrt((a x^2+b x+c)/x)) + 2 x^{-1/2} K0(2 sqrt((c x^2+b x+a)/x))
// = (pi/sqrt(c)) e^{-2 sqrt(2 sqrt(a c)+b)}, identical over [0,1] and
// [1,inf), and over [0,inf) with an extra 1/2.
IdentityCheck identity_pair_unit(const AbcTriple& abc, IntervalKind interval,
                                 const QuadratureConfig& config);

}  // namespace slater::identities
