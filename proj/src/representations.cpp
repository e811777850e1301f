#include "slater/representations.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include "slater/bessel.hpp"
#include "slater/rng.hpp"
#include "slater/simd.hpp"

namespace slater::representations {

namespace {

constexpr int kMaxOrbitals = 8;
constexpr double kLn2 = 0.693147180559945309417232121458177;
constexpr double kLnPi = 1.144729885849400174143427351353059;

// Running product with the binary exponent carried separately, so weight
// products near the domain boundary never underflow before the log is taken.
struct TrackedProduct {
    double mant = 1.0;
    long ex = 0;
    void mul(double v) {
        int e = 0;
        mant *= std::frexp(v, &e);
        ex += e;
    }
    double log() const { return std::log(mant) + static_cast<double>(ex) * kLn2; }
};

void check_unit_open(std::span<const double> u) {
    for (double v : u)
        if (!(v > 0.0) || !(v < 1.0))
            throw std::domain_error("parameter " + std::to_string(v) +
                                    " lies outside the open unit interval");
}

void weights_sigma_raw(int m, const double* u, double* w) {
    w[0] = 1.0 - u[0];
    double p = u[0];
    for (int k = 1; k <= m - 2; ++k) {
        w[k] = p * (1.0 - u[k]);
        p *= u[k];
    }
    w[m - 1] = p;
}

void weights_schweber2_raw(int m, const double* a, double* w) {
    w[0] = 1.0 - a[0];
    for (int k = 1; k <= m - 2; ++k) w[k] = a[k - 1] - a[k];
    w[m - 1] = a[m - 2];
}

void weights_schweber3_raw(int m, const double* u, double* w) {
    w[m - 1] = 1.0 - u[0];
    double p = u[0];
    for (int k = m - 2; k >= 1; --k) {
        w[k] = p * (1.0 - u[m - 1 - k]);
        p *= u[m - 1 - k];
    }
    w[0] = p;
}

// Coordinate factor shared by the sigma and Schweber-3 forms:
// prod_i u_i^{m-2-i}. It is also the Jacobian of the nested-simplex ->
// unit-cube substitution alpha_j -> alpha_{j-1} sigma_j.
double coordinate_factor_log(int m, const double* u) {
    TrackedProduct j;
    for (int i = 0; i <= m - 3; ++i)
        for (int k = 0; k < m - 2 - i; ++k) j.mul(u[i]);
    return j.log();
}

struct ProductView {
    int m = 0;
    double eta[kMaxOrbitals];
    double r[kMaxOrbitals];
    explicit ProductView(const SlaterProduct& p) : m(p.size()) {
        for (int i = 0; i < m; ++i) {
            eta[i] = p[i].eta;
            r[i] = p[i].r;
        }
    }
};

struct FormsOut {
    double a, b, log_w;
};

FormsOut forms_from_weights(const ProductView& pv, const double* w) {
    TrackedProduct tw;
    double a = 0.0, b = 0.0;
    for (int i = 0; i < pv.m; ++i) {
        if (!(w[i] > 0.0)) throw std::domain_error("weight vector has a nonpositive component");
        a += pv.r[i] * pv.r[i] / w[i];
        b += pv.eta[i] * pv.eta[i] * w[i];
        tw.mul(w[i]);
    }
    return {a, b, tw.log()};
}

// log of the compact integrand without the kernel: the caller appends
// -z + log(e^z K_{m/2}(z)) with z = sqrt(A B).
double compact_prefactor_log(int m, double log_j, const FormsOut& f) {
    const double c0 = (1.0 - 0.5 * m) * kLn2 - 0.5 * m * kLnPi;
    return c0 + log_j - 1.5 * f.log_w + 0.25 * m * std::log(f.b / f.a);
}

double rho_prefactor_log(int m, double log_j, const FormsOut& f, double rho) {
    const double c0 = -m * kLn2 - 0.5 * m * kLnPi;
    return c0 + log_j - 1.5 * f.log_w - (0.5 * m + 1.0) * std::log(rho);
}

bool is_rho_form(RepKind rep) {
    return rep == RepKind::SigmaRho || rep == RepKind::Schweber2Rho;
}

// Quadrature nodes live in the open domain, but the axis maps can round a
// near-boundary node onto the closed boundary (u == 1, or an infinite
// zeta/rho on a Full axis). The integrand's limit there is zero.
bool on_closed_boundary(RepKind rep, int m, const double* u) {
    const int dim = is_rho_form(rep) ? m : m - 1;
    const bool cube = rep != RepKind::InfinitePrior;
    for (int i = 0; i < m - 1; ++i)
        if (!(u[i] > 0.0) || !std::isfinite(u[i]) || (cube && !(u[i] < 1.0))) return true;
    if (is_rho_form(rep) && (!(u[dim - 1] > 0.0) || !std::isfinite(u[dim - 1]))) return true;
    return false;
}

// Per-point weight/Jacobian assembly shared by the scalar integrand and the
// batch evaluators. Coords::Cube reconstructs the nested Schweber-2 alphas
// from unit-cube coordinates and folds in the substitution Jacobian.
enum class Coords { Native, Cube };

void assemble_point(RepKind rep, Coords coords, const ProductView& pv, const double* u,
                    double* w, double& log_j) {
    const int m = pv.m;
    log_j = 0.0;
    switch (rep) {
        case RepKind::SigmaUnit:
        case RepKind::SigmaRho:
            weights_sigma_raw(m, u, w);
            log_j = coordinate_factor_log(m, u);
            break;
        case RepKind::Schweber3:
            weights_schweber3_raw(m, u, w);
            log_j = coordinate_factor_log(m, u);
            break;
        case RepKind::Schweber2:
        case RepKind::Schweber2Rho:
            if (coords == Coords::Native) {
                weights_schweber2_raw(m, u, w);
            } else {
                double alpha[kMaxOrbitals];
                alpha[0] = u[0];
                for (int j = 1; j <= m - 2; ++j) alpha[j] = alpha[j - 1] * u[j];
                weights_schweber2_raw(m, alpha, w);
                log_j = coordinate_factor_log(m, u);
            }
            break;
        case RepKind::InfinitePrior:
            w[0] = 1.0;
            for (int i = 1; i < m; ++i) w[i] = u[i - 1];
            break;
        case RepKind::Bridge:
            throw std::invalid_argument("bridge integrand is assembled per term");
    }
}

// ---------------------------------------------------------------------------
// Bridge term tables. Weights are not a partition of unity here; each term
// has its own pattern and the third/fourth three-orbital terms carry an
// extra sigma_2 factor.

void bridge_weights(int m, int term, const double* s, double* w, double& log_j) {
    log_j = 0.0;
    if (m == 2) {
        w[term == 0 ? 0 : 1] = s[0];
        w[term == 0 ? 1 : 0] = 1.0;
        return;
    }
    switch (term) {
        case 0: w[0] = s[0]; w[1] = 1.0; w[2] = s[1]; break;
        case 1: w[0] = 1.0; w[1] = s[0]; w[2] = s[1]; break;
        case 2:
            w[0] = s[0] * s[1];
            w[1] = s[1];
            w[2] = 1.0;
            log_j = std::log(s[1]);
            break;
        case 3:
            w[0] = s[1];
            w[1] = s[0] * s[1];
            w[2] = 1.0;
            log_j = std::log(s[1]);
            break;
    }
}

int bridge_term_count(int m) { return m == 2 ? 2 : 4; }

// ---------------------------------------------------------------------------
// Batch evaluators.

class CompactBatch {
  public:
    CompactBatch(RepKind rep, Coords coords, const SlaterProduct& p)
        : rep_(rep), coords_(coords), pv_(p) {}

    void operator()(const double* pts, std::size_t n, double* out) const {
        const int m = pv_.m;
        const int dim = parameter_dimension(rep_, m);
        double w[kMaxOrbitals];
        double log_j = 0.0;
        if (!is_rho_form(rep_)) {
            double z[quadrature::kMaxBatch];
            double pre[quadrature::kMaxBatch];
            for (std::size_t i = 0; i < n; ++i) {
                const double* u = pts + i * dim;
                if (on_closed_boundary(rep_, m, u)) {
                    z[i] = 1.0;
                    pre[i] = -std::numeric_limits<double>::infinity();
                    continue;
                }
                assemble_point(rep_, coords_, pv_, u, w, log_j);
                const FormsOut f = forms_from_weights(pv_, w);
                z[i] = std::sqrt(f.a * f.b);
                pre[i] = compact_prefactor_log(m, log_j, f);
            }
            double kv[quadrature::kMaxBatch];
            simd::kernels().kve(m, z, kv, n);
            for (std::size_t i = 0; i < n; ++i) {
                const double lg = pre[i] - z[i];
                out[i] = lg > 700.0 ? std::exp(lg + std::log(kv[i])) : std::exp(lg) * kv[i];
            }
        } else {
            for (std::size_t i = 0; i < n; ++i) {
                const double* u = pts + i * dim;
                if (on_closed_boundary(rep_, m, u)) {
                    out[i] = 0.0;
                    continue;
                }
                const double rho = u[dim - 1];
                assemble_point(rep_, coords_, pv_, u, w, log_j);
                const FormsOut f = forms_from_weights(pv_, w);
                out[i] = std::exp(rho_prefactor_log(m, log_j, f, rho) - rho * f.b -
                                  0.25 * f.a / rho);
            }
        }
    }

  private:
    RepKind rep_;
    Coords coords_;
    ProductView pv_;
};

class BridgeTermBatch {
  public:
    BridgeTermBatch(const SlaterProduct& p, int term) : pv_(p), term_(term) {}

    void operator()(const double* pts, std::size_t n, double* out) const {
        const int m = pv_.m;
        const int dim = m - 1;
        double z[quadrature::kMaxBatch];
        double pre[quadrature::kMaxBatch];
        double w[kMaxOrbitals];
        double log_j = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            const double* s = pts + i * dim;
            bool boundary = false;
            for (int k = 0; k < dim; ++k)
                boundary = boundary || !(s[k] > 0.0) || !std::isfinite(s[k]);
            if (boundary) {
                z[i] = 1.0;
                pre[i] = -std::numeric_limits<double>::infinity();
                continue;
            }
            bridge_weights(m, term_, s, w, log_j);
            const FormsOut f = forms_from_weights(pv_, w);
            z[i] = std::sqrt(f.a * f.b);
            pre[i] = compact_prefactor_log(m, log_j, f);
        }
        double kv[quadrature::kMaxBatch];
        simd::kernels().kve(m, z, kv, n);
        for (std::size_t i = 0; i < n; ++i) {
            const double lg = pre[i] - z[i];
            out[i] = lg > 700.0 ? std::exp(lg + std::log(kv[i])) : std::exp(lg) * kv[i];
        }
    }

  private:
    ProductView pv_;
    int term_;
};

}  // namespace

// ---------------------------------------------------------------------------

SlaterProduct::SlaterProduct(std::vector<SlaterFactor> factors) : factors_(std::move(factors)) {
    if (factors_.size() < 2) throw std::invalid_argument("SlaterProduct needs at least 2 factors");
    for (const SlaterFactor& f : factors_)
        if (!(f.eta > 0.0) || !(f.r > 0.0))
            throw std::domain_error("SlaterProduct factors must have positive eta and r");
}

const char* rep_name(RepKind rep) {
    switch (rep) {
        case RepKind::SigmaUnit: return "sigma";
        case RepKind::SigmaRho: return "sigma-rho";
        case RepKind::Schweber2: return "schweber2";
        case RepKind::Schweber2Rho: return "schweber2-rho";
        case RepKind::Schweber3: return "schweber3";
        case RepKind::InfinitePrior: return "prior";
        case RepKind::Bridge: return "bridge";
    }
    return "?";
}

double WeightVector::sum() const {
    double s = 0.0;
    for (double v : w) s += v;
    return s;
}

WeightVector weights_sigma(int m, std::span<const double> u) {
    if (m < 2 || static_cast<int>(u.size()) != m - 1)
        throw std::invalid_argument("weights_sigma: need m >= 2 and m-1 coordinates");
    check_unit_open(u);
    WeightVector out;
    out.w.resize(static_cast<std::size_t>(m));
    weights_sigma_raw(m, u.data(), out.w.data());
    return out;
}

WeightVector weights_schweber2(int m, std::span<const double> alphas) {
    if (m < 2 || static_cast<int>(alphas.size()) != m - 1)
        throw std::invalid_argument("weights_schweber2: need m >= 2 and m-1 coordinates");
    double prev = 1.0;
    for (double a : alphas) {
        if (!(a > 0.0) || !(a < prev))
            throw std::domain_error(
                "weights_schweber2: nesting 1 > a1 > ... > a_{M-1} > 0 violated");
        prev = a;
    }
    WeightVector out;
    out.w.resize(static_cast<std::size_t>(m));
    weights_schweber2_raw(m, alphas.data(), out.w.data());
    return out;
}

WeightVector weights_schweber3(int m, std::span<const double> alphas) {
    if (m < 2 || static_cast<int>(alphas.size()) != m - 1)
        throw std::invalid_argument("weights_schweber3: need m >= 2 and m-1 coordinates");
    check_unit_open(alphas);
    WeightVector out;
    out.w.resize(static_cast<std::size_t>(m));
    weights_schweber3_raw(m, alphas.data(), out.w.data());
    return out;
}

QuadForms quad_forms(const SlaterProduct& product, const WeightVector& w) {
    if (static_cast<int>(w.w.size()) != product.size())
        throw std::invalid_argument("quad_forms: weight count must match product size");
    const ProductView pv(product);
    const FormsOut f = forms_from_weights(pv, w.w.data());
    return {f.a, f.b};
}

int parameter_dimension(RepKind rep, int m) { return is_rho_form(rep) ? m : m - 1; }

double integrand(RepKind rep, const SlaterProduct& product, std::span<const double> u) {
    const int m = product.size();
    if (m > kMaxOrbitals) throw std::invalid_argument("integrand: supports up to 8 orbitals");
    const int dim = parameter_dimension(rep, m);
    if (static_cast<int>(u.size()) != dim)
        throw std::invalid_argument("integrand: expected " + std::to_string(dim) +
                                    " coordinates for " + rep_name(rep));
    const ProductView pv(product);

    if (rep == RepKind::Bridge) {
        if (m != 2 && m != 3) throw std::invalid_argument("bridge form requires M in {2,3}");
        check_unit_open(u);
        double out = 0.0;
        for (int t = 0; t < bridge_term_count(m); ++t) {
            double one = 0.0;
            BridgeTermBatch(product, t)(u.data(), 1, &one);
            out += one;
        }
        return out;
    }

    switch (rep) {
        case RepKind::SigmaUnit:
        case RepKind::Schweber3:
            check_unit_open(u);
            break;
        case RepKind::SigmaRho:
            check_unit_open(u.subspan(0, static_cast<std::size_t>(m - 1)));
            if (!(u[static_cast<std::size_t>(m - 1)] > 0.0))
                throw std::domain_error("rho must be positive");
            break;
        case RepKind::Schweber2:
        case RepKind::Schweber2Rho: {
            double prev = 1.0;
            for (int j = 0; j <= m - 2; ++j) {
                const double a = u[static_cast<std::size_t>(j)];
                if (!(a > 0.0) || !(a < prev))
                    throw std::domain_error("nested simplex ordering violated");
                prev = a;
            }
            if (rep == RepKind::Schweber2Rho && !(u[static_cast<std::size_t>(m - 1)] > 0.0))
                throw std::domain_error("rho must be positive");
            break;
        }
        case RepKind::InfinitePrior:
            for (double v : u)
                if (!(v > 0.0)) throw std::domain_error("zeta coordinates must be positive");
            break;
        default:
            break;
    }

    double w[kMaxOrbitals];
    double log_j = 0.0;
    assemble_point(rep, Coords::Native, pv, u.data(), w, log_j);
    const FormsOut f = forms_from_weights(pv, w);
    if (!is_rho_form(rep)) {
        const double z = std::sqrt(f.a * f.b);
        const double kv = specfun::k_scaled({m}, z);
        return std::exp(compact_prefactor_log(m, log_j, f) - z + std::log(kv));
    }
    const double rho = u[static_cast<std::size_t>(m - 1)];
    return std::exp(rho_prefactor_log(m, log_j, f, rho) - rho * f.b - 0.25 * f.a / rho);
}

double direct_product(const SlaterProduct& product) {
    double log_p = 0.0;
    for (const SlaterFactor& f : product.factors()) log_p += -f.eta * f.r - std::log(f.r);
    return std::exp(log_p);
}

EvalResult evaluate_rep(RepKind rep, const SlaterProduct& product, const QuadratureConfig& config) {
    const int m = product.size();
    if (m > kMaxOrbitals) throw std::invalid_argument("evaluate_rep: supports up to 8 orbitals");

    if (rep == RepKind::Bridge) {
        if (m != 2 && m != 3) throw std::invalid_argument("bridge form requires M in {2,3}");
        const std::vector<IntervalKind> unit(static_cast<std::size_t>(m - 1), IntervalKind::Unit);
        const std::vector<EvalResult> terms = bridge_terms(product, unit, config);
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

    const int dim = parameter_dimension(rep, m);
    std::vector<quadrature::Axis> axes;
    axes.reserve(static_cast<std::size_t>(dim));
    for (int i = 0; i < m - 1; ++i)
        axes.push_back({rep == RepKind::InfinitePrior ? IntervalKind::Full : IntervalKind::Unit,
                        true});
    if (is_rho_form(rep)) axes.push_back({IntervalKind::Full, true});

    // The nested Schweber-2 simplex is always integrated in unit-cube sigma
    // coordinates; the batch evaluator folds in the substitution Jacobian.
    const CompactBatch batch(rep, Coords::Cube, product);
    return quadrature::integrate(
        [&batch](const double* pts, std::size_t n, double* out) { batch(pts, n, out); }, axes,
        config);
}

std::vector<EvalResult> bridge_terms(const SlaterProduct& product,
                                     std::span<const IntervalKind> intervals,
                                     const QuadratureConfig& config) {
    const int m = product.size();
    if (m != 2 && m != 3) throw std::invalid_argument("bridge form requires M in {2,3}");
    if (static_cast<int>(intervals.size()) != m - 1)
        throw std::invalid_argument("bridge_terms: need one interval per sigma axis");

    std::vector<quadrature::Axis> axes;
    double factor = 1.0;
    for (IntervalKind k : intervals) {
        axes.push_back({k, true});
        if (k == IntervalKind::Full) factor *= 0.5;
    }

    std::vector<EvalResult> out;
    for (int t = 0; t < bridge_term_count(m); ++t) {
        const BridgeTermBatch batch(product, t);
        EvalResult r = quadrature::integrate(
            [&batch](const double* pts, std::size_t n, double* o) { batch(pts, n, o); }, axes,
            config);
        r.value *= factor;
        r.error_estimate *= factor;
        out.push_back(r);
    }
    return out;
}

StabilityReport stability_sweep(RepKind rep, int m_lo, int m_hi, int n_samples,
                                std::uint64_t seed, const QuadratureConfig& config,
                                double tolerance) {
    if (m_lo < 2 || m_hi > kMaxOrbitals || m_lo > m_hi)
        throw std::invalid_argument("stability_sweep: m range must lie within [2, 8]");
    StabilityReport report;
    report.rep = rep;
    report.tolerance = tolerance;
    for (int m = m_lo; m <= m_hi; ++m) {
        StabilityEntry entry{m, n_samples, 0, 0.0};
        for (int s = 0; s < n_samples; ++s) {
            std::vector<SlaterFactor> factors;
            const std::uint64_t base =
                (static_cast<std::uint64_t>(m) << 32) + static_cast<std::uint64_t>(s) * 64;
            for (int i = 0; i < m; ++i)
                factors.push_back({rng::counter_uniform(seed, base + 2 * i, 0.2, 3.0),
                                   rng::counter_uniform(seed, base + 2 * i + 1, 0.2, 3.0)});
            const SlaterProduct product(std::move(factors));
            const double ref = direct_product(product);
            StabilitySample sample{m, s, ref, 0.0, 0.0, 0, false, false};
            try {
                const EvalResult r = evaluate_rep(rep, product, config);
                sample.value = r.value;
                sample.n_evals = r.n_evals;
                sample.converged = r.converged;
                sample.rel_error = std::abs(r.value - ref) / ref;
            } catch (const std::exception&) {
                sample.value = std::numeric_limits<double>::quiet_NaN();
                sample.rel_error = std::numeric_limits<double>::infinity();
            }
            // pass/fail is the oracle comparison at the configured tolerance;
            // convergence certification is recorded alongside
            sample.passed = sample.rel_error <= tolerance;
            if (sample.passed) ++entry.n_passed;
            entry.max_rel_error = std::max(entry.max_rel_error, sample.rel_error);
            report.samples.push_back(sample);
        }
        report.per_m.push_back(entry);
    }
    return report;
}

}  // namespace slater::representations
