#include "doctest.h"

#include <cmath>
#include <stdexcept>

#include "slater/bessel.hpp"
#include "slater/quadrature.hpp"

using namespace slater;

namespace {

// Independent oracle: K_nu(z) = int_0^inf e^{-z cosh t} cosh(nu t) dt,
// evaluated with the adaptive integrator (which contains no Bessel code).
double k_oracle(double nu, double z) {
    quadrature::QuadratureConfig cfg;
    cfg.rel_tol = 1e-13;
    auto r = quadrature::integrate_1d(
        [nu, z](double t) {
            // cosh(nu t) e^{-z cosh t} split into exponentials so the tail
            // underflows to zero instead of producing inf * 0.
            const double c = std::cosh(t);
            return 0.5 * (std::exp(nu * t - z * c) + std::exp(-nu * t - z * c));
        },
        quadrature::IntervalKind::Full, cfg);
    REQUIRE(r.converged);
    return r.value;
}

}  // namespace

TEST_SUITE_BEGIN("bessel");

TEST_CASE("half order closed forms") {
    // K_{1/2}(z) = sqrt(pi/(2z)) e^{-z}
    const double pi = 3.14159265358979323846;
    for (double z : {0.05, 0.5, 1.0, 3.0, 20.0}) {
        const double want = std::sqrt(pi / (2.0 * z)) * std::exp(-z);
        CHECK(specfun::k_half(1, z) == doctest::Approx(want).epsilon(1e-14));
    }
    CHECK(specfun::k_half(1, 1.0) == doctest::Approx(0.46106850444789456).epsilon(1e-14));
    // K_{3/2}(z) = K_{1/2}(z) (1 + 1/z)
    CHECK(specfun::k_half(3, 1.0) == doctest::Approx(0.92213700889578912).epsilon(1e-14));
    // Recurrence identity at z = 2: K_{5/2} = K_{1/2} + (3/2) K_{3/2}
    const double want52 = specfun::k_half(1, 2.0) + 1.5 * specfun::k_half(3, 2.0);
    CHECK(specfun::k_half(5, 2.0) == doctest::Approx(want52).epsilon(1e-14));
}

TEST_CASE("half order domain and contract errors") {
    CHECK_THROWS_AS(specfun::k_half(1, 0.0), std::domain_error);
    CHECK_THROWS_AS(specfun::k_half(1, -2.0), std::domain_error);
    CHECK_THROWS_AS(specfun::k_half(2, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(specfun::k_half(-1, 1.0), std::invalid_argument);
}

TEST_CASE("integer order against quadrature oracle") {
    // Frozen oracle digits for the spec examples.
    CHECK(specfun::k_int(0, 1.0) == doctest::Approx(0.42102443824070833).epsilon(1e-13));
    CHECK(specfun::k_int(1, 1.0) == doctest::Approx(0.60190723019723457).epsilon(1e-13));
    // K_2(2) = K_0(2) + K_1(2)
    const double k2 = specfun::k_int(2, 2.0);
    CHECK(k2 == doctest::Approx(specfun::k_int(0, 2.0) + specfun::k_int(1, 2.0)).epsilon(1e-13));

    for (double z : {0.03, 0.4, 1.7, 2.3, 6.0, 14.0, 45.0}) {
        CHECK(specfun::k_int(0, z) == doctest::Approx(k_oracle(0.0, z)).epsilon(1e-12));
        CHECK(specfun::k_int(1, z) == doctest::Approx(k_oracle(1.0, z)).epsilon(1e-12));
    }
    CHECK_THROWS_AS(specfun::k_int(0, 0.0), std::domain_error);
    CHECK_THROWS_AS(specfun::k_int(-1, 1.0), std::invalid_argument);
}

TEST_CASE("series and continued fraction branches agree on [1,4]") {
    // Both K0/K1 branches are valid across the z = 2 crossover; they must
    // agree to well below the 1e-12 contract.
    for (double z = 1.0; z <= 4.0; z += 0.125) {
        double s0, s1;
        specfun::k01_scaled(z, s0, s1);
        CHECK(s0 == doctest::Approx(k_oracle(0.0, z) * std::exp(z)).epsilon(1e-13));
        CHECK(s1 == doctest::Approx(k_oracle(1.0, z) * std::exp(z)).epsilon(1e-13));
    }
}

TEST_CASE("scaled kernels") {
    CHECK(specfun::k_scaled({1}, 100.0) == doctest::Approx(0.12533141373155003).epsilon(1e-14));
    CHECK(specfun::k_scaled({0}, 1.0) == doctest::Approx(1.144463079806895).epsilon(1e-13));
    CHECK(specfun::k_scaled({2}, 50.0) == doctest::Approx(0.17856655855881557).epsilon(1e-13));
    CHECK(std::isfinite(specfun::k_scaled({3}, 5000.0)));
    CHECK(std::isfinite(specfun::k_scaled({6}, 1e12)));
    CHECK_THROWS_AS(specfun::k_scaled({0}, -1.0), std::domain_error);
}

TEST_CASE("scaling consistency") {
    for (int tn : {0, 1, 2, 3, 4, 5, 6, 7}) {
        for (double z : {0.1, 0.9, 2.0, 5.5, 30.0}) {
            const double raw = specfun::k({tn}, z);
            const double scaled = specfun::k_scaled({tn}, z) * std::exp(-z);
            CHECK(raw == doctest::Approx(scaled).epsilon(1e-12));
        }
    }
}

TEST_CASE("recurrence invariant across orders") {
    // |K_{nu+1} - K_{nu-1} - (2 nu / z) K_nu| <= 1e-10 K_{nu+1}
    for (double z = 0.01; z <= 50.0; z *= 1.9) {
        for (int tn = 2; tn <= 12; ++tn) {
            const double km = specfun::k_scaled({tn - 2}, z);
            const double k0 = specfun::k_scaled({tn}, z);
            const double kp = specfun::k_scaled({tn + 2}, z);
            CHECK(std::abs(kp - km - (static_cast<double>(tn) / z) * k0) <= 1e-10 * kp);
        }
    }
}

TEST_CASE("positivity and monotonic decrease in z") {
    for (int tn : {0, 1, 2, 3, 5}) {
        double prev = specfun::k_scaled({tn}, 0.05) * std::exp(-0.05);
        CHECK(prev > 0.0);
        for (double z = 0.1; z <= 30.0; z += 0.7) {
            const double cur = specfun::k({tn}, z);
            CHECK(cur > 0.0);
            CHECK(cur < prev);
            prev = cur;
        }
    }
}

TEST_CASE("upward recurrence error growth stays mild for the orders in use") {
    // Orders up to nu = 6 (twice_nu = 12) lose at most ~2 digits relative to
    // the oracle; that is the documented cost of the upward recurrence.
    for (double z : {0.5, 2.0, 10.0}) {
        for (int nu : {2, 3, 4, 6}) {
            const double want = k_oracle(nu, z);
            CHECK(specfun::k_int(nu, z) == doctest::Approx(want).epsilon(1e-11));
        }
    }
}

TEST_SUITE_END();
