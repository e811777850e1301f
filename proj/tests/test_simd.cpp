#include "doctest.h"

#include <cmath>
#include <string>
#include <vector>

#include "slater/rng.hpp"
#include "slater/quadrature.hpp"
#include "slater/representations.hpp"
#include "slater/simd.hpp"

using namespace slater;

TEST_SUITE_BEGIN("simd");

namespace {

std::vector<double> test_arguments() {
    std::vector<double> z;
    for (int i = 0; i < 4096; ++i) {
        // log-uniform over [1e-3, 7e2], straddling the series/CF crossover
        const double u = rng::counter_uniform(99, i);
        z.push_back(std::exp(std::log(1e-3) + u * (std::log(7e2) - std::log(1e-3))));
    }
    // exact crossover neighbourhood
    for (double v : {1.999999, 2.0, 2.000001}) z.push_back(v);
    return z;
}

}  // namespace

TEST_CASE("every compiled backend matches the scalar reference") {
    const auto z = test_arguments();
    const std::size_t n = z.size();
    const simd::KernelSet* ref = simd::kernels_for(simd::Backend::Scalar);
    REQUIRE(ref != nullptr);
    std::vector<double> r0(n), r1(n), b0(n), b1(n);
    ref->k01e(z.data(), r0.data(), r1.data(), n);

    for (simd::Backend b : simd::available_backends()) {
        CAPTURE(simd::backend_name(b));
        const simd::KernelSet* k = simd::kernels_for(b);
        REQUIRE(k != nullptr);
        k->k01e(z.data(), b0.data(), b1.data(), n);
        for (std::size_t i = 0; i < n; ++i) {
            CHECK(std::abs(b0[i] - r0[i]) <= 1e-14 * r0[i]);
            CHECK(std::abs(b1[i] - r1[i]) <= 1e-14 * r1[i]);
        }
        for (int tn : {1, 2, 3, 4, 5, 6, 7, 8}) {
            std::vector<double> want(n), got(n);
            ref->kve(tn, z.data(), want.data(), n);
            k->kve(tn, z.data(), got.data(), n);
            for (std::size_t i = 0; i < n; ++i)
                CHECK(std::abs(got[i] - want[i]) <= 2e-14 * want[i]);
        }
    }
}

TEST_CASE("integration results agree across forced backends") {
    using namespace slater::representations;
    const simd::Backend initial = simd::active_backend();
    quadrature::QuadratureConfig cfg;
    cfg.rel_tol = 1e-9;
    const SlaterProduct p({{0.3, 1.0}, {0.5, 1.0}, {0.9, 1.0}});
    double reference = 0.0;
    for (simd::Backend b : simd::available_backends()) {
        CAPTURE(simd::backend_name(b));
        simd::set_backend(b);
        const auto r = evaluate_rep(RepKind::SigmaUnit, p, cfg);
        CHECK(r.converged);
        if (reference == 0.0)
            reference = r.value;
        else
            CHECK(r.value == doctest::Approx(reference).epsilon(1e-10));
    }
    simd::set_backend(initial);
}

TEST_CASE("backend selection") {
    const auto backends = simd::available_backends();
    REQUIRE(backends.size() >= 2);  // scalar + native at minimum
    const simd::Backend initial = simd::active_backend();
    for (simd::Backend b : backends) {
        simd::set_backend(b);
        CHECK(simd::active_backend() == b);
        CHECK(simd::kernels().name == std::string(simd::backend_name(b)));
    }
    simd::set_backend(initial);
#if !defined(__x86_64__)
    CHECK_THROWS(simd::set_backend(simd::Backend::Avx2));
#endif
}

TEST_SUITE_END();
