#pragma once

// Deterministic adaptive Gauss-Kronrod quadrature for dimensions 1-3 and
// seeded low-discrepancy (Sobol + randomized shifts) integration for
// dimensions >= 4, over mixed finite / semi-infinite boxes.

#include <cstdint>
#include <functional>
#include <span>
#include <vector>

namespace slater::quadrature {

// [0,1], [1,inf), [0,inf). In bridge mode a FULL axis implies the caller
// applies a factor 1/2 per such axis.
enum class IntervalKind { Unit, Tail, Full };

enum class Method { Adaptive, LowDiscrepancy };

struct QuadratureConfig {
    double abs_tol = 0.0;
    double rel_tol = 1e-8;
    std::int64_t max_evals = 10'000'000;
    Method method = Method::Adaptive;
    std::uint64_t seed = 0;

    // Throws std::invalid_argument unless at least one tolerance is positive
    // and max_evals >= 100.
    void validate() const;

    // Built-in defaults: rel_tol 1e-8 for dims <= 3, 1e-4 for dims >= 4.
    static QuadratureConfig defaults_for_dim(int dim);
};

struct EvalResult {
    double value = 0.0;
    double error_estimate = 0.0;
    std::int64_t n_evals = 0;
    bool converged = false;
};

struct AxisMapResult {
    double x;
    double jacobian;
};

// Maps t in (0,1) onto the axis interval:
//   Unit -> (t, 1);  Tail -> (1/t, 1/t^2) onto (1,inf);
//   Full -> (t/(1-t), 1/(1-t)^2).
// Throws std::domain_error for t outside (0,1).
AxisMapResult map_axis(double t, IntervalKind interval);

// One integration axis. `regularized` applies the additional substitution
// t = s^2 (3 - 2 s) before the interval map; its Jacobian 6 s (1 - s)
// vanishes at both ends, which tames the x^{-1/2}..x^{-3/2}-type endpoint
// factors of the sigma-form prefactors without clipping any domain.
struct Axis {
    IntervalKind kind = IntervalKind::Unit;
    bool regularized = false;
};

// Batch integrand: evaluate at n points of dimension dim, row-major in
// `pts`, writing n values to `out`. n never exceeds kMaxBatch.
inline constexpr std::size_t kMaxBatch = 512;
using BatchIntegrand = std::function<void(const double* pts, std::size_t n, double* out)>;

// Core integrator over mapped axes. Dimension 1-3 uses nested adaptive
// Gauss-Kronrod 7/15 bisection (deterministic); dimension >= 4 (or any
// dimension >= 2 when Method::LowDiscrepancy is requested) uses a Sobol
// sequence with 8 independent randomized shifts, whose spread provides the
// error estimate. Non-convergence is reported via converged=false, never
// thrown; a non-finite integrand value throws std::runtime_error naming the
// abscissa.
EvalResult integrate(const BatchIntegrand& f, std::span<const Axis> axes,
                     const QuadratureConfig& config);

// Conveniences over scalar callables.
EvalResult integrate_1d(const std::function<double(double)>& f, IntervalKind interval,
                        const QuadratureConfig& config);
EvalResult integrate_nd(const std::function<double(std::span<const double>)>& f,
                        std::span<const IntervalKind> intervals, const QuadratureConfig& config);

// Worker cap shared by all parallel sections: min(SLATER_KERNELS_THREADS,
// hardware concurrency), at least 1.
unsigned worker_count();

}  // namespace slater::quadrature
