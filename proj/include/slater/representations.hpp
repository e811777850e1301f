#pragma once

// The M-orbital integral representations: weight vectors, quadratic forms,
// Macdonald-kernel integrands, and their numerical evaluation against the
// closed-form product of Slater orbitals.

#include <cstdint>
#include <span>
#include <vector>

#include "slater/quadrature.hpp"

namespace slater::representations {

using quadrature::EvalResult;
using quadrature::IntervalKind;
using quadrature::QuadratureConfig;

struct SlaterFactor {
    double eta;  // decay constant, > 0
    double r;    // radial magnitude, > 0
};

// Ordered product of M >= 2 factors e^{-eta_i R_i} / R_i.
class SlaterProduct {
  public:
    explicit SlaterProduct(std::vector<SlaterFactor> factors);

    int size() const { return static_cast<int>(factors_.size()); }
    std::span<const SlaterFactor> factors() const { return factors_; }
    const SlaterFactor& operator[](int i) const { return factors_[static_cast<std::size_t>(i)]; }

  private:
    std::vector<SlaterFactor> factors_;
};

enum class RepKind {
    SigmaUnit,      // unit-cube sigma form
    SigmaRho,       // unit-cube sigma form with explicit rho integral
    Schweber2,      // nested-simplex second Schweber parametrization
    Schweber2Rho,   // same, before the rho integral is done
    Schweber3,      // third Schweber parametrization (known unstable for M > 2)
    InfinitePrior,  // the [0,inf)^{M-1} form
    Bridge,         // two/four-term bridge form, M in {2,3}
};

const char* rep_name(RepKind rep);

struct WeightVector {
    std::vector<double> w;
    double sum() const;
};

// Weight builders. Each returns M positive components; the sigma and
// Schweber builders return a partition of unity.
WeightVector weights_sigma(int m, std::span<const double> u);
WeightVector weights_schweber2(int m, std::span<const double> alphas);
WeightVector weights_schweber3(int m, std::span<const double> alphas);

struct QuadForms {
    double a_coord;  // A = sum R_i^2 / w_i
    double b_decay;  // B = sum eta_i^2 w_i
};
QuadForms quad_forms(const SlaterProduct& product, const WeightVector& w);

// Number of integration parameters the representation uses for a product of
// m orbitals (m-1, plus one for the rho forms).
int parameter_dimension(RepKind rep, int m);

// Pointwise integrand in the representation's own coordinates (unit cube,
// nested simplex, or positive orthant; rho forms take the extra trailing
// rho > 0 coordinate). Assembled in log space so boundary prefactors never
// overflow. Throws std::domain_error for out-of-domain u.
double integrand(RepKind rep, const SlaterProduct& product, std::span<const double> u);

// prod e^{-eta_i R_i} / R_i
double direct_product(const SlaterProduct& product);

// Integrates the representation over its domain; the result reproduces
// direct_product(product) up to quadrature error.
EvalResult evaluate_rep(RepKind rep, const SlaterProduct& product, const QuadratureConfig& config);

// The two (M=2) or four (M=3) bridge terms evaluated separately, each over
// the per-axis interval choice, applying the factor 1/2 per Full axis. The
// term sum equals direct_product for every interval mix.
std::vector<EvalResult> bridge_terms(const SlaterProduct& product,
                                     std::span<const IntervalKind> intervals,
                                     const QuadratureConfig& config);

struct StabilitySample {
    int m;
    int index;
    double reference;
    double value;
    double rel_error;
    std::int64_t n_evals;
    bool converged;
    bool passed;
};

struct StabilityEntry {
    int m;
    int n_samples;
    int n_passed;
    double max_rel_error;
};

struct StabilityReport {
    RepKind rep;
    double tolerance;
    std::vector<StabilityEntry> per_m;
    std::vector<StabilitySample> samples;
};

// Draws n_samples random products per M (eta, R uniform in [0.2, 3] from the
// counter generator) and compares evaluate_rep with direct_product. Failures
// are recorded, never thrown.
StabilityReport stability_sweep(RepKind rep, int m_lo, int m_hi, int n_samples,
                                std::uint64_t seed, const QuadratureConfig& config,
                                double tolerance);

}  // namespace slater::representations
