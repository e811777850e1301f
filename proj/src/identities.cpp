#include "slater/identities.hpp"

#include <cmath>
#include <stdexcept>

#include "slater/simd.hpp"

namespace slater::identities {

namespace {

constexpr double kPi = 3.141592653589793238462643383279503;

void validate(const AbcTriple& t) {
    if (!(t.a > 0.0) || !(t.b > 0.0) || !(t.c > 0.0))
        throw std::domain_error("abc coefficients must be strictly positive");
}

// x^{power} K0(2 sqrt((a x^2 + b x + c)/x)) assembled through the scaled
// kernel; once the exponent is past the underflow edge the value is an exact
// zero rather than 0 * inf.
class KernelPowIntegrand {
  public:
    KernelPowIntegrand(AbcTriple abc, double power, double scale)
        : abc_(abc), power_(power), scale_(scale) {}

    void operator()(const double* x, std::size_t n, double* out) const {
        double kappa[quadrature::kMaxBatch];
        double skip[quadrature::kMaxBatch];
        for (std::size_t i = 0; i < n; ++i) {
            kappa[i] = 2.0 * std::sqrt((abc_.a * x[i] * x[i] + abc_.b * x[i] + abc_.c) / x[i]);
            skip[i] = std::isfinite(kappa[i]) ? 1.0 : 0.0;  // boundary-rounded node
            if (skip[i] == 0.0) kappa[i] = 1.0;
        }
        double k0e[quadrature::kMaxBatch];
        double k1e[quadrature::kMaxBatch];
        simd::kernels().k01e(kappa, k0e, k1e, n);
        for (std::size_t i = 0; i < n; ++i)
            out[i] = skip[i] * scale_ * std::pow(x[i], power_) * std::exp(-kappa[i]) * k0e[i];
    }

  private:
    AbcTriple abc_;
    double power_;
    double scale_;
};

EvalResult integrate_kernel_sum(const std::vector<KernelPowIntegrand>& parts,
                                IntervalKind interval, bool half_on_full,
                                const QuadratureConfig& config) {
    const quadrature::Axis axis{interval, true};
    EvalResult r = quadrature::integrate(
        [&parts](const double* x, std::size_t n, double* out) {
            double tmp[quadrature::kMaxBatch];
            for (std::size_t i = 0; i < n; ++i) out[i] = 0.0;
            for (const auto& part : parts) {
                part(x, n, tmp);
                for (std::size_t i = 0; i < n; ++i) out[i] += tmp[i];
            }
        },
        std::span<const quadrature::Axis>(&axis, 1), config);
    if (half_on_full && interval == IntervalKind::Full) {
        r.value *= 0.5;
        r.error_estimate *= 0.5;
    }
    return r;
}

}  // namespace

EvalResult feynman_pair(double a1, double a2, const QuadratureConfig& config) {
    if (!(a1 > 0.0) || !(a2 > 0.0)) throw std::domain_error("denominators must be positive");
    return quadrature::integrate_1d(
        [=](double s) {
            const double u = a1 + a2 * s, v = a1 * s + a2;
            return 1.0 / (u * u) + 1.0 / (v * v);
        },
        IntervalKind::Unit, config);
}

EvalResult feynman_triple(double a1, double a2, double a3, const QuadratureConfig& config) {
    if (!(a1 > 0.0) || !(a2 > 0.0) || !(a3 > 0.0))
        throw std::domain_error("denominators must be positive");
    const IntervalKind axes[2] = {IntervalKind::Unit, IntervalKind::Unit};
    return quadrature::integrate_nd(
        [=](std::span<const double> s) {
            const double s1 = s[0], s2 = s[1];
            const double t1 = a1 * s1 + a3 * s2 + a2;
            const double t2 = a2 * s1 + a3 * s2 + a1;
            const double t3 = s2 * (a1 * s1 + a2) + a3;
            const double t4 = s2 * (a2 * s1 + a1) + a3;
            return 2.0 * (1.0 / (t1 * t1 * t1) + 1.0 / (t2 * t2 * t2) + s2 / (t3 * t3 * t3) +
                          s2 / (t4 * t4 * t4));
        },
        axes, config);
}

IdentityCheck identity_k0_x32(const AbcTriple& abc, const QuadratureConfig& config) {
    validate(abc);
    IdentityCheck out;
    out.lhs = integrate_kernel_sum({KernelPowIntegrand(abc, -1.5, 1.0)}, IntervalKind::Full,
                                   false, config);
    out.rhs = kPi * std::exp(-2.0 * std::sqrt(2.0 * std::sqrt(abc.a * abc.c) + abc.b)) /
              (2.0 * std::sqrt(abc.c));
    return out;
}

IdentityCheck identity_k0_x12(const AbcTriple& abc, const QuadratureConfig& config) {
    validate(abc);
    IdentityCheck out;
    out.lhs = integrate_kernel_sum({KernelPowIntegrand(abc, -0.5, 1.0)}, IntervalKind::Full,
                                   false, config);
    out.rhs = kPi * std::exp(-2.0 * std::sqrt(abc.b + 2.0 * std::sqrt(abc.a * abc.c))) /
              (2.0 * std::sqrt(abc.a));
    return out;
}

IdentityCheck identity_pair_unit(const AbcTriple& abc, IntervalKind interval,
                                 const QuadratureConfig& config) {
    validate(abc);
    const AbcTriple swapped{abc.c, abc.b, abc.a};
    IdentityCheck out;
    out.lhs = integrate_kernel_sum(
        {KernelPowIntegrand(abc, -1.5, 2.0), KernelPowIntegrand(swapped, -0.5, 2.0)}, interval,
        true, config);
    out.rhs = kPi / std::sqrt(abc.c) *
              std::exp(-2.0 * std::sqrt(2.0 * std::sqrt(abc.a * abc.c) + abc.b));
    return out;
}

}  // namespace slater::identities
