#include "slater/quadrature.hpp"

#include <algorithm>
#include <array>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "slater/rng.hpp"
#include "sobol.hpp"

namespace slater::quadrature {

namespace {

// Gauss-Kronrod 7/15 abscissae and weights (positive half; QUADPACK dqk15).
constexpr double kXgk[8] = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144838258730, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
constexpr double kWgk[8] = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
constexpr double kWg[4] = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

constexpr double kInnerTolFactor = 0.25;  // tolerance tightening per nested level

// A panel may be split while its width stays above a floor that is relative
// to its distance from the nearer endpoint of (0,1); panels chasing an
// endpoint singularity can therefore keep shrinking geometrically.
bool splittable(double lo, double hi) {
    const double scale = std::min(hi, 1.0 - lo);
    return hi - lo > std::max(0x1p-45 * scale, 1e-290);
}
constexpr int kQmcShifts = 8;
constexpr std::int64_t kQmcStartN = 1024;
constexpr std::int64_t kQmcBlock = 256;

double pairwise_sum(const double* v, std::size_t n) {
    if (n == 0) return 0.0;
    if (n <= 8) {
        double s = 0.0;
        for (std::size_t i = 0; i < n; ++i) s += v[i];
        return s;
    }
    const std::size_t h = n / 2;
    return pairwise_sum(v, h) + pairwise_sum(v + h, n - h);
}

unsigned env_worker_count() {
    unsigned hw = std::thread::hardware_concurrency();
    if (hw == 0) hw = 1;
    if (const char* env = std::getenv("SLATER_KERNELS_THREADS")) {
        char* end = nullptr;
        const long v = std::strtol(env, &end, 10);
        if (end != env && v >= 1) hw = std::min<unsigned>(hw, static_cast<unsigned>(v));
    }
    return hw;
}

void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body) {
    const unsigned workers = std::min<std::size_t>(worker_count(), n);
    if (workers <= 1) {
        for (std::size_t i = 0; i < n; ++i) body(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::mutex err_mutex;
    std::exception_ptr first_error;
    auto run = [&] {
        for (std::size_t i = next.fetch_add(1); i < n; i = next.fetch_add(1)) {
            try {
                body(i);
            } catch (...) {
                std::lock_guard<std::mutex> lock(err_mutex);
                if (!first_error) first_error = std::current_exception();
                return;
            }
        }
    };
    std::vector<std::thread> threads;
    threads.reserve(workers);
    for (unsigned t = 0; t < workers; ++t) threads.emplace_back(run);
    for (auto& th : threads) th.join();
    if (first_error) std::rethrow_exception(first_error);
}

struct MappedPoint {
    double x;
    double jacobian;
};

MappedPoint apply_axis(double t, const Axis& axis) {
    double s = t, jac = 1.0;
    if (axis.regularized) {
        // quintic smoothstep: the Jacobian vanishes quadratically at both
        // endpoints, flattening the x^{-1/2}..x^{-3/2}-type boundary layers
        // for both the bisection and the low-discrepancy engines
        const double om = 1.0 - s;
        jac = 30.0 * s * s * om * om;
        s = s * s * s * (10.0 + s * (6.0 * s - 15.0));
    }
    switch (axis.kind) {
        case IntervalKind::Unit:
            return {s, jac};
        case IntervalKind::Tail:
            return {1.0 / s, jac / (s * s)};
        case IntervalKind::Full: {
            const double om = 1.0 - s;
            return {s / om, jac / (om * om)};
        }
    }
    return {s, jac};
}

[[noreturn]] void throw_nonfinite(const double* coords, int dim) {
    std::ostringstream os;
    os << "integrand returned a non-finite value at (";
    for (int i = 0; i < dim; ++i) os << (i ? ", " : "") << coords[i];
    os << ")";
    throw std::runtime_error(os.str());
}

// ---------------------------------------------------------------------------
// Nested adaptive Gauss-Kronrod engine (dimensions 1-3).

class NestedEngine {
  public:
    NestedEngine(const BatchIntegrand& f, std::span<const Axis> axes,
                 const QuadratureConfig& cfg)
        : f_(f), axes_(axes), dim_(static_cast<int>(axes.size())), cfg_(cfg) {}

    EvalResult run() {
        const LevelOut top = integrate_level(0, cfg_.rel_tol, cfg_.abs_tol);
        EvalResult r;
        r.value = top.value;
        r.error_estimate = top.err;
        r.n_evals = used_;
        r.converged =
            top.ok && top.err <= std::max(cfg_.abs_tol, cfg_.rel_tol * std::abs(top.value));
        return r;
    }

  private:
    struct Panel {
        double lo, hi;
        double val;
        double err;  // rule error + inherited inner error
        bool inner_ok;
        std::uint64_t id;
    };
    struct PanelOrder {
        bool operator()(const Panel& a, const Panel& b) const {
            if (a.err != b.err) return a.err < b.err;
            return a.id < b.id;  // deterministic tie-break
        }
    };
    struct LevelOut {
        double value;
        double err;
        bool ok;
    };

    Panel eval_panel(int level, double lo, double hi, double inner_rel, double inner_abs) {
        const double mid = 0.5 * (lo + hi);
        const double hl = 0.5 * (hi - lo);
        double tv[15];
        for (int j = 0; j < 7; ++j) {
            tv[2 * j] = mid - hl * kXgk[j];
            tv[2 * j + 1] = mid + hl * kXgk[j];
        }
        tv[14] = mid;

        double fv[15];
        double inherited = 0.0;
        bool inner_ok = true;
        if (level == dim_ - 1) {
            double pts[15 * 8];
            double jac[15];
            for (int j = 0; j < 15; ++j) {
                const MappedPoint mp = apply_axis(tv[j], axes_[level]);
                for (int k = 0; k + 1 < dim_; ++k) pts[j * dim_ + k] = coords_[k];
                pts[j * dim_ + dim_ - 1] = mp.x;
                jac[j] = mp.jacobian;
            }
            double out[15];
            f_(pts, 15, out);
            used_ += 15;
            for (int j = 0; j < 15; ++j) {
                if (!std::isfinite(out[j])) throw_nonfinite(&pts[j * dim_], dim_);
                fv[j] = out[j] * jac[j];
            }
        } else {
            for (int j = 0; j < 15; ++j) {
                const MappedPoint mp = apply_axis(tv[j], axes_[level]);
                coords_[level] = mp.x;
                const LevelOut inner = integrate_level(level + 1, inner_rel, inner_abs);
                fv[j] = inner.value * mp.jacobian;
                inherited += kWgk[j / 2] * inner.err * mp.jacobian;
                inner_ok = inner_ok && inner.ok;
            }
        }

        double resk = 0.0, resg = 0.0;
        for (int j = 0; j < 7; ++j) resk += kWgk[j] * (fv[2 * j] + fv[2 * j + 1]);
        resk += kWgk[7] * fv[14];
        for (int j = 0; j < 3; ++j)
            resg += kWg[j] * (fv[2 * (2 * j + 1)] + fv[2 * (2 * j + 1) + 1]);
        resg += kWg[3] * fv[14];

        const double reskh = 0.5 * resk;
        double resasc = kWgk[7] * std::abs(fv[14] - reskh);
        for (int j = 0; j < 7; ++j)
            resasc += kWgk[j] * (std::abs(fv[2 * j] - reskh) + std::abs(fv[2 * j + 1] - reskh));

        double err = std::abs(resk - resg) * hl;
        const double resasc_h = resasc * hl;
        if (resasc_h != 0.0 && err != 0.0)
            err = resasc_h * std::min(1.0, std::pow(200.0 * err / resasc_h, 1.5));

        Panel p;
        p.lo = lo;
        p.hi = hi;
        p.val = resk * hl;
        p.err = err + inherited * hl;
        p.inner_ok = inner_ok;
        p.id = next_id_++;
        return p;
    }

    LevelOut integrate_level(int level, double rel, double abs) {
        const double inner_rel = rel * kInnerTolFactor;
        const double inner_abs = abs * kInnerTolFactor;

        std::vector<Panel> heap;
        std::vector<Panel> done;
        PanelOrder order;

        heap.push_back(eval_panel(level, 0.0, 1.0, inner_rel, inner_abs));
        double vsum = heap[0].val;
        double esum = heap[0].err;
        bool ok = heap[0].inner_ok;

        while (true) {
            const double tol = std::max(abs, rel * std::abs(vsum));
            if (esum <= tol) break;
            if (used_ >= cfg_.max_evals || heap.empty()) {
                ok = false;
                break;
            }
            std::pop_heap(heap.begin(), heap.end(), order);
            const Panel worst = heap.back();
            heap.pop_back();
            if (!splittable(worst.lo, worst.hi)) {
                done.push_back(worst);  // cannot usefully split further
                continue;
            }
            const double mid = 0.5 * (worst.lo + worst.hi);
            const Panel l = eval_panel(level, worst.lo, mid, inner_rel, inner_abs);
            const Panel r = eval_panel(level, mid, worst.hi, inner_rel, inner_abs);
            vsum += l.val + r.val - worst.val;
            esum += l.err + r.err - worst.err;
            ok = ok && l.inner_ok && r.inner_ok;
            heap.push_back(l);
            std::push_heap(heap.begin(), heap.end(), order);
            heap.push_back(r);
            std::push_heap(heap.begin(), heap.end(), order);
        }

        // Re-sum panels in positional order for a well-conditioned total.
        done.insert(done.end(), heap.begin(), heap.end());
        std::sort(done.begin(), done.end(),
                  [](const Panel& a, const Panel& b) { return a.lo < b.lo; });
        std::vector<double> vals, errs;
        vals.reserve(done.size());
        errs.reserve(done.size());
        for (const Panel& p : done) {
            vals.push_back(p.val);
            errs.push_back(p.err);
        }
        LevelOut out;
        out.value = pairwise_sum(vals.data(), vals.size());
        out.err = pairwise_sum(errs.data(), errs.size());
        out.ok = ok && out.err <= std::max(abs, rel * std::abs(out.value));
        return out;
    }

    const BatchIntegrand& f_;
    std::span<const Axis> axes_;
    int dim_;
    QuadratureConfig cfg_;
    double coords_[8] = {};
    std::int64_t used_ = 0;
    std::uint64_t next_id_ = 0;
};

// ---------------------------------------------------------------------------
// Randomized-shift Sobol engine (dimensions >= 4, or on request).

class QmcEngine {
  public:
    QmcEngine(const BatchIntegrand& f, std::span<const Axis> axes, const QuadratureConfig& cfg)
        : f_(f), axes_(axes), dim_(static_cast<int>(axes.size())), cfg_(cfg), sobol_(dim_) {
        for (int s = 0; s < kQmcShifts; ++s)
            for (int d = 0; d < dim_; ++d)
                shift_[s][d] = rng::counter_uniform(cfg.seed, static_cast<std::uint64_t>(s) * 64 + d);
    }

    EvalResult run() {
        std::int64_t n = 0;
        std::int64_t target = std::max<std::int64_t>(
            1, std::min<std::int64_t>(kQmcStartN, cfg_.max_evals / kQmcShifts));
        std::array<std::vector<double>, kQmcShifts> block_sums;

        EvalResult r;
        while (true) {
            extend(block_sums, n, target);
            n = target;

            double means[kQmcShifts];
            for (int s = 0; s < kQmcShifts; ++s)
                means[s] =
                    pairwise_sum(block_sums[s].data(), block_sums[s].size()) / static_cast<double>(n);
            const double value = pairwise_sum(means, kQmcShifts) / kQmcShifts;
            double var = 0.0;
            for (int s = 0; s < kQmcShifts; ++s) var += (means[s] - value) * (means[s] - value);
            const double err = std::sqrt(var / (kQmcShifts * (kQmcShifts - 1.0)));

            r.value = value;
            r.error_estimate = err;
            r.n_evals = kQmcShifts * n;
            if (err <= std::max(cfg_.abs_tol, cfg_.rel_tol * std::abs(value))) {
                r.converged = true;
                break;
            }
            if (kQmcShifts * target * 2 > cfg_.max_evals) {
                r.converged = false;
                break;
            }
            target *= 2;
        }
        return r;
    }

  private:
    // Evaluates indices [from, to) for every shift, appending one partial sum
    // per kQmcBlock chunk. Each task generates its Sobol block once and runs
    // all shifts over it; the block layout (and therefore the final
    // reduction) is independent of the number of workers.
    void extend(std::array<std::vector<double>, kQmcShifts>& block_sums, std::int64_t from,
                std::int64_t to) {
        const std::int64_t nblocks = (to - from + kQmcBlock - 1) / kQmcBlock;
        std::array<std::size_t, kQmcShifts> base;
        for (int s = 0; s < kQmcShifts; ++s) {
            base[s] = block_sums[s].size();
            block_sums[s].resize(base[s] + nblocks);
        }
        parallel_for(static_cast<std::size_t>(nblocks), [&](std::size_t b) {
            const std::int64_t lo = from + static_cast<std::int64_t>(b) * kQmcBlock;
            const std::int64_t hi = std::min<std::int64_t>(lo + kQmcBlock, to);
            double sums[kQmcShifts];
            eval_block(lo, hi, sums);
            for (int s = 0; s < kQmcShifts; ++s) block_sums[s][base[s] + b] = sums[s];
        });
    }

    void eval_block(std::int64_t lo, std::int64_t hi, double* shift_sums) const {
        const std::size_t count = static_cast<std::size_t>(hi - lo);
        double pts[kQmcBlock * 8];
        double jac[kQmcBlock];
        double u[kQmcBlock * detail::kSobolMaxDim];
        double out[kQmcBlock];
        sobol_.fill(static_cast<std::uint64_t>(lo), count, u);
        for (int s = 0; s < kQmcShifts; ++s) {
            for (std::size_t i = 0; i < count; ++i) {
                double j = 1.0;
                for (int d = 0; d < dim_; ++d) {
                    double t = u[i * dim_ + d] + shift_[s][d];
                    if (t >= 1.0) t -= 1.0;
                    t = std::min(std::max(t, 0x1.0p-53), 1.0 - 0x1.0p-53);
                    const MappedPoint mp = apply_axis(t, axes_[d]);
                    pts[i * dim_ + d] = mp.x;
                    j *= mp.jacobian;
                }
                jac[i] = j;
            }
            f_(pts, count, out);
            double sum = 0.0;
            for (std::size_t i = 0; i < count; ++i) {
                if (!std::isfinite(out[i])) throw_nonfinite(&pts[i * dim_], dim_);
                sum += out[i] * jac[i];
            }
            shift_sums[s] = sum;
        }
    }

    const BatchIntegrand& f_;
    std::span<const Axis> axes_;
    int dim_;
    QuadratureConfig cfg_;
    detail::Sobol sobol_;
    double shift_[kQmcShifts][detail::kSobolMaxDim] = {};
};

}  // namespace

void QuadratureConfig::validate() const {
    if (!(abs_tol > 0.0) && !(rel_tol > 0.0))
        throw std::invalid_argument("QuadratureConfig: at least one tolerance must be positive");
    if (abs_tol < 0.0 || rel_tol < 0.0)
        throw std::invalid_argument("QuadratureConfig: tolerances must be nonnegative");
    if (max_evals < 100) throw std::invalid_argument("QuadratureConfig: max_evals must be >= 100");
}

QuadratureConfig QuadratureConfig::defaults_for_dim(int dim) {
    QuadratureConfig cfg;
    cfg.rel_tol = dim <= 3 ? 1e-8 : 1e-4;
    return cfg;
}

AxisMapResult map_axis(double t, IntervalKind interval) {
    if (!(t > 0.0) || !(t < 1.0))
        throw std::domain_error("map_axis: t must lie strictly inside (0,1)");
    const MappedPoint mp = apply_axis(t, Axis{interval, false});
    return {mp.x, mp.jacobian};
}

unsigned worker_count() {
    static const unsigned n = env_worker_count();
    return n;
}

EvalResult integrate(const BatchIntegrand& f, std::span<const Axis> axes,
                     const QuadratureConfig& config) {
    config.validate();
    const int dim = static_cast<int>(axes.size());
    if (dim < 1) throw std::invalid_argument("integrate: dimension must be >= 1");
    if (dim > 8) throw std::invalid_argument("integrate: dimension must be <= 8");
    const bool qmc = dim >= 4 || (config.method == Method::LowDiscrepancy && dim >= 2);
    if (qmc) return QmcEngine(f, axes, config).run();
    return NestedEngine(f, axes, config).run();
}

EvalResult integrate_1d(const std::function<double(double)>& f, IntervalKind interval,
                        const QuadratureConfig& config) {
    const Axis axis{interval, false};
    BatchIntegrand batch = [&f](const double* pts, std::size_t n, double* out) {
        for (std::size_t i = 0; i < n; ++i) out[i] = f(pts[i]);
    };
    return integrate(batch, std::span<const Axis>(&axis, 1), config);
}

EvalResult integrate_nd(const std::function<double(std::span<const double>)>& f,
                        std::span<const IntervalKind> intervals, const QuadratureConfig& config) {
    if (intervals.empty()) throw std::invalid_argument("integrate_nd: dimension must be >= 1");
    std::vector<Axis> axes(intervals.size());
    for (std::size_t i = 0; i < intervals.size(); ++i) axes[i] = Axis{intervals[i], false};
    const std::size_t dim = intervals.size();
    BatchIntegrand batch = [&f, dim](const double* pts, std::size_t n, double* out) {
        for (std::size_t i = 0; i < n; ++i)
            out[i] = f(std::span<const double>(pts + i * dim, dim));
    };
    return integrate(batch, axes, config);
}

}  // namespace slater::quadrature
