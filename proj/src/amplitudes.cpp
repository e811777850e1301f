#include "slater/amplitudes.hpp"

#include <cmath>
#include <future>
#include <stdexcept>

#include "slater/simd.hpp"

namespace slater::amplitudes {

namespace {

constexpr double kPi = 3.141592653589793238462643383279503;

void require_positive(double v, const char* what) {
    if (!(v > 0.0)) throw std::domain_error(std::string(what) + " must be positive");
}

void validate(const TripleEtas& e) {
    require_positive(e.eta1, "eta1");
    require_positive(e.eta12, "eta12");
    require_positive(e.eta2, "eta2");
}

// Decay form of bridge term t at (s1, s2): the eta weights per term.
double bridge_decay(const TripleEtas& e, int t, double s1, double s2) {
    const double e1 = e.eta1 * e.eta1, e12 = e.eta12 * e.eta12, e13 = e.eta2 * e.eta2;
    switch (t) {
        case 0: return s1 * e1 + e12 + e13 * s2;
        case 1: return e1 + e12 * s1 + e13 * s2;
        case 2: return s1 * s2 * e1 + e12 * s2 + e13;
        default: return s2 * e1 + s1 * s2 * e12 + e13;
    }
}

// One bridge term as a 3-D batch integrand over rows (s1, s2, x2).
class BridgeTermIntegrand {
  public:
    BridgeTermIntegrand(const TripleEtas& e, int term) : e_(e), term_(term) {}

    void operator()(const double* pts, std::size_t n, double* out) const {
        double kappa[quadrature::kMaxBatch];
        double pre[quadrature::kMaxBatch];
        for (std::size_t i = 0; i < n; ++i) {
            const double s1 = pts[3 * i], s2 = pts[3 * i + 1], x2 = pts[3 * i + 2];
            const double p = term_ < 2 ? s1 + s2 + 1.0 : (s1 + 1.0) * s2 + 1.0;
            const double b = bridge_decay(e_, term_, s1, s2);
            kappa[i] = x2 * std::sqrt(p) * std::sqrt(b) / (std::sqrt(s1 + 1.0) * std::sqrt(s2));
            const double d = term_ < 2 ? std::pow(s2, -1.5) : 1.0 / std::sqrt(s2);
            pre[i] = 8.0 * kPi * x2 * x2 * d * std::pow(s1 + 1.0, -1.5);
            if (!std::isfinite(kappa[i]) || !std::isfinite(pre[i])) {
                // node rounded onto the closed boundary; the limit is zero
                kappa[i] = 1.0;
                pre[i] = 0.0;
            }
        }
        double k0e[quadrature::kMaxBatch];
        double k1e[quadrature::kMaxBatch];
        simd::kernels().k01e(kappa, k0e, k1e, n);
        for (std::size_t i = 0; i < n; ++i) out[i] = pre[i] * std::exp(-kappa[i]) * k0e[i];
    }

  private:
    TripleEtas e_;
    int term_;
};

// Reduced term (sigma_2 done analytically): 2-D batch integrand over rows
// (s1, x2). Pair 0 carries the (a, b, c) set of terms 1/3, pair 1 the
// (a, b-f, c-g) set of terms 2/4.
class ReducedTermIntegrand {
  public:
    ReducedTermIntegrand(const TripleEtas& e, int pair, bool simplified)
        : e_(e), pair_(pair), simplified_(simplified) {}

    void operator()(const double* pts, std::size_t n, double* out) const {
        const double e1 = e_.eta1 * e_.eta1, e12 = e_.eta12 * e_.eta12, e13 = e_.eta2 * e_.eta2;
        for (std::size_t i = 0; i < n; ++i) {
            const double s1 = pts[2 * i], x2 = pts[2 * i + 1];
            if (!std::isfinite(s1) || !std::isfinite(x2)) {
                out[i] = 0.0;
                continue;
            }
            const double b0 = pair_ == 0 ? e1 * s1 + e12 : e1 + e12 * s1;
            const double x2q = 0.25 * x2 * x2;
            const double a = x2q * e13 / (s1 + 1.0);
            const double b = x2q * (b0 + e13 * (s1 + 1.0)) / (s1 + 1.0);
            const double c = x2q * b0;
            const double expo = simplified_
                                    ? 2.0 * (std::sqrt(a * (s1 + 1.0)) + std::sqrt(c / (s1 + 1.0)))
                                    : 2.0 * std::sqrt(2.0 * std::sqrt(a * c) + b);
            const double w = kPi / std::sqrt(c) * std::exp(-expo);
            out[i] = 0.5 * 4.0 * kPi * x2 * x2 * std::pow(s1 + 1.0, -1.5) * w;
        }
    }

  private:
    TripleEtas e_;
    int pair_;
    bool simplified_;
};

EvalResult combine(const std::vector<EvalResult>& terms) {
    EvalResult total;
    total.converged = true;
    for (const EvalResult& t : terms) {
        total.value += t.value;
        total.error_estimate += t.error_estimate;
        total.n_evals += t.n_evals;
        total.converged = total.converged && t.converged;
    }
    return total;
}

// Runs the four per-term integrations, in parallel when workers allow.
std::vector<EvalResult> run_terms(const std::vector<quadrature::BatchIntegrand>& fns,
                                  std::span<const quadrature::Axis> axes,
                                  const QuadratureConfig& config) {
    std::vector<EvalResult> results(fns.size());
    if (quadrature::worker_count() >= 2) {
        std::vector<std::future<EvalResult>> futs;
        futs.reserve(fns.size());
        for (const auto& fn : fns)
            futs.push_back(std::async(std::launch::async, [&fn, axes, &config] {
                return quadrature::integrate(fn, axes, config);
            }));
        for (std::size_t i = 0; i < futs.size(); ++i) results[i] = futs[i].get();
    } else {
        for (std::size_t i = 0; i < fns.size(); ++i)
            results[i] = quadrature::integrate(fns[i], axes, config);
    }
    return results;
}

}  // namespace

double s2_closed(double eta1, double eta12, double x2) {
    require_positive(eta1, "eta1");
    require_positive(eta12, "eta12");
    require_positive(x2, "x2");
    const double a2 = eta1 * eta1, b2 = eta12 * eta12;
    const double delta = a2 - b2;
    if (std::abs(delta) < 1e-8 * (a2 + b2)) {
        // Second-order average of g(B) = e^{-x sqrt(B)}/sqrt(B) over the
        // interval between the squared decays.
        const double bm = 0.5 * (a2 + b2);
        const double u = std::sqrt(bm);
        const double g = std::exp(-x2 * u) / u;
        const double gpp = std::exp(-x2 * u) * (x2 * x2 * u * u + 3.0 * x2 * u + 3.0) /
                           (4.0 * u * u * u * u * u);
        return 2.0 * kPi * (g + gpp * delta * delta / 24.0);
    }
    return 4.0 * kPi * (std::exp(-eta12 * x2) - std::exp(-eta1 * x2)) / (x2 * delta);
}

EvalResult s2_via_rep(double eta1, double eta12, double x2, const QuadratureConfig& config) {
    require_positive(eta1, "eta1");
    require_positive(eta12, "eta12");
    require_positive(x2, "x2");
    const double a2 = eta1 * eta1, b2 = eta12 * eta12;
    return quadrature::integrate_1d(
        [=](double alpha) {
            const double b = (1.0 - alpha) * a2 + alpha * b2;
            return 2.0 * kPi * std::exp(-x2 * std::sqrt(b)) / std::sqrt(b);
        },
        IntervalKind::Unit, config);
}

double s3_closed(const TripleEtas& e) {
    validate(e);
    return 16.0 * kPi * kPi /
           ((e.eta1 + e.eta2) * (e.eta1 + e.eta12) * (e.eta2 + e.eta12));
}

EvalResult s3_sigma_2d(const TripleEtas& e, const QuadratureConfig& config) {
    validate(e);
    const double e1 = e.eta1 * e.eta1, e12 = e.eta12 * e.eta12, e13 = e.eta2 * e.eta2;
    const quadrature::Axis axes[2] = {{IntervalKind::Unit, false}, {IntervalKind::Unit, false}};
    return quadrature::integrate(
        [=](const double* pts, std::size_t n, double* out) {
            for (std::size_t i = 0; i < n; ++i) {
                const double a1 = pts[2 * i], s2 = pts[2 * i + 1];
                const double den = a1 * (e12 * (1.0 - s2) + e13 * s2 - e1) + e1;
                out[i] = 4.0 * kPi * kPi * a1 / (den * std::sqrt(den));
            }
        },
        axes, config);
}

BridgeAmplitude s3_bridge_terms(const TripleEtas& e, IntervalKind sigma1_interval,
                                IntervalKind sigma2_interval, const QuadratureConfig& config) {
    validate(e);
    const quadrature::Axis axes[3] = {{sigma1_interval, true},
                                      {sigma2_interval, true},
                                      {IntervalKind::Full, false}};
    double factor = 1.0;
    if (sigma1_interval == IntervalKind::Full) factor *= 0.5;
    if (sigma2_interval == IntervalKind::Full) factor *= 0.5;

    std::vector<quadrature::BatchIntegrand> fns;
    for (int t = 0; t < 4; ++t)
        fns.emplace_back([item = BridgeTermIntegrand(e, t)](const double* p, std::size_t n,
                                                            double* o) { item(p, n, o); });
    BridgeAmplitude amp;
    amp.terms = run_terms(fns, axes, config);
    for (EvalResult& t : amp.terms) {
        t.value *= factor;
        t.error_estimate *= factor;
    }
    amp.total = combine(amp.terms);
    return amp;
}

BridgeAmplitude s3_bridge_reduced(const TripleEtas& e, IntervalKind sigma1_interval,
                                  const QuadratureConfig& config, bool simplified_exponent) {
    validate(e);
    const quadrature::Axis axes[2] = {{sigma1_interval, false}, {IntervalKind::Full, false}};
    const double factor = sigma1_interval == IntervalKind::Full ? 0.5 : 1.0;

    std::vector<quadrature::BatchIntegrand> fns;
    for (int t = 0; t < 4; ++t)
        fns.emplace_back([item = ReducedTermIntegrand(e, t % 2, simplified_exponent)](
                             const double* p, std::size_t n, double* o) { item(p, n, o); });
    BridgeAmplitude amp;
    amp.terms = run_terms(fns, axes, config);
    for (EvalResult& t : amp.terms) {
        t.value *= factor;
        t.error_estimate *= factor;
    }
    amp.total = combine(amp.terms);
    return amp;
}

}  // namespace slater::amplitudes
