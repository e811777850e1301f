#include "doctest.h"

#include <cmath>
#include <stdexcept>

#include "slater/identities.hpp"
#include "slater/rng.hpp"

using namespace slater;
using namespace slater::identities;
using quadrature::IntervalKind;
using quadrature::QuadratureConfig;

namespace {
constexpr double kPi = 3.14159265358979323846;
const AbcTriple kPaperAbc{0.21, 0.31, 0.41};
}  // namespace

TEST_SUITE_BEGIN("identities");

TEST_CASE("feynman pair") {
    QuadratureConfig cfg;
    cfg.rel_tol = 1e-10;
    CHECK(feynman_pair(1, 2, cfg).value == doctest::Approx(0.5).epsilon(1e-9));
    CHECK(feynman_pair(1, 1, cfg).value == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(feynman_pair(0.3, 0.9, cfg).value == doctest::Approx(1.0 / 0.27).epsilon(1e-9));
    CHECK_THROWS_AS(feynman_pair(0.0, 1.0, cfg), std::domain_error);
}

TEST_CASE("feynman triple") {
    QuadratureConfig cfg;
    cfg.rel_tol = 1e-9;
    CHECK(feynman_triple(1, 1, 1, cfg).value == doctest::Approx(1.0).epsilon(1e-8));
    CHECK(feynman_triple(1, 2, 4, cfg).value == doctest::Approx(0.125).epsilon(1e-8));
    CHECK(feynman_triple(0.3, 0.5, 0.9, cfg).value ==
          doctest::Approx(1.0 / 0.135).epsilon(1e-8));
}

TEST_CASE("feynman identities for 100 random tuples") {
    QuadratureConfig cfg;
    cfg.rel_tol = 1e-9;
    for (int trial = 0; trial < 100; ++trial) {
        const double a1 = rng::counter_uniform(71, 3 * trial, 0.1, 4.0);
        const double a2 = rng::counter_uniform(71, 3 * trial + 1, 0.1, 4.0);
        const auto p = feynman_pair(a1, a2, cfg);
        CHECK(p.converged);
        CHECK(p.value == doctest::Approx(1.0 / (a1 * a2)).epsilon(1e-7));
        if (trial < 25) {
            const double a3 = rng::counter_uniform(71, 3 * trial + 2, 0.1, 4.0);
            const auto t = feynman_triple(a1, a2, a3, cfg);
            CHECK(t.value == doctest::Approx(1.0 / (a1 * a2 * a3)).epsilon(1e-7));
        }
    }
}

TEST_CASE("k0 x^{-3/2} identity") {
    QuadratureConfig cfg;
    cfg.rel_tol = 1e-9;
    const auto chk = identity_k0_x32(kPaperAbc, cfg);
    CHECK(chk.rhs == doctest::Approx(0.36910729806145828).epsilon(1e-14));
    CHECK(chk.lhs.value == doctest::Approx(chk.rhs).epsilon(1e-7));

    // scaling (a,b,c) -> (t a, t b, t c) rescales the exponent by sqrt(t)
    const AbcTriple scaled{2 * 0.21, 2 * 0.31, 2 * 0.41};
    const auto chk2 = identity_k0_x32(scaled, cfg);
    CHECK(chk2.lhs.value == doctest::Approx(chk2.rhs).epsilon(1e-7));
    const double le = -2.0 * std::sqrt(2.0 * std::sqrt(0.21 * 0.41) + 0.31);
    CHECK(std::log(chk2.rhs * 2.0 * std::sqrt(2 * 0.41) / kPi) ==
          doctest::Approx(le * std::sqrt(2.0)).epsilon(1e-12));
}

TEST_CASE("k0 x^{-1/2} identity carries the half prefactor") {
    QuadratureConfig cfg;
    cfg.rel_tol = 1e-9;
    // x -> 1/x maps this integral onto the x^{-3/2} identity with a and c
    // swapped; the closed form is pi e^{-2 sqrt(b + 2 sqrt(a c))}/(2 sqrt(a)).
    const AbcTriple abc{0.41, 0.31, 0.21};
    const auto chk = identity_k0_x12(abc, cfg);
    CHECK(chk.rhs == doctest::Approx(0.36910729806145828).epsilon(1e-14));
    CHECK(chk.lhs.value == doctest::Approx(chk.rhs).epsilon(1e-7));
    const auto swapped = identity_k0_x32(kPaperAbc, cfg);
    CHECK(chk.lhs.value == doctest::Approx(swapped.lhs.value).epsilon(1e-7));

    const auto unit = identity_k0_x12({1, 1, 1}, cfg);
    CHECK(unit.rhs == doctest::Approx(kPi * std::exp(-2.0 * std::sqrt(3.0)) / 2.0).epsilon(1e-14));
    CHECK(unit.lhs.value == doctest::Approx(unit.rhs).epsilon(1e-7));
}

TEST_CASE("pair identity over every interval") {
    QuadratureConfig cfg;
    cfg.rel_tol = 1e-8;
    for (IntervalKind k : {IntervalKind::Unit, IntervalKind::Tail, IntervalKind::Full}) {
        const auto chk = identity_pair_unit(kPaperAbc, k, cfg);
        CHECK(chk.rhs == doctest::Approx(0.73821459612291655).epsilon(1e-14));
        CHECK(chk.lhs.value == doctest::Approx(0.738215).epsilon(5e-6));
        CHECK(chk.lhs.value == doctest::Approx(chk.rhs).epsilon(1e-6));
    }
}

TEST_CASE("x -> 1/x duality for 20 random triples") {
    QuadratureConfig cfg;
    cfg.rel_tol = 1e-8;
    for (int trial = 0; trial < 20; ++trial) {
        const AbcTriple abc{rng::counter_uniform(73, 3 * trial, 0.05, 5.0),
                            rng::counter_uniform(73, 3 * trial + 1, 0.05, 5.0),
                            rng::counter_uniform(73, 3 * trial + 2, 0.05, 5.0)};
        CAPTURE(abc.a);
        CAPTURE(abc.b);
        CAPTURE(abc.c);
        // interval invariance of the pair sum
        const auto u = identity_pair_unit(abc, IntervalKind::Unit, cfg);
        const auto t = identity_pair_unit(abc, IntervalKind::Tail, cfg);
        const auto f = identity_pair_unit(abc, IntervalKind::Full, cfg);
        CHECK(u.lhs.value == doctest::Approx(u.rhs).epsilon(1e-6));
        CHECK(t.lhs.value == doctest::Approx(u.lhs.value).epsilon(1e-6));
        CHECK(f.lhs.value == doctest::Approx(u.lhs.value).epsilon(1e-6));
        // under x -> 1/x the full pair integral is twice the single term
        const auto one = identity_k0_x32(abc, cfg);
        CHECK(2.0 * one.lhs.value == doctest::Approx(f.lhs.value).epsilon(1e-6));
    }
}

TEST_CASE("domain validation") {
    QuadratureConfig cfg;
    CHECK_THROWS_AS(identity_k0_x32({0.0, 1.0, 1.0}, cfg), std::domain_error);
    CHECK_THROWS_AS(identity_pair_unit({1.0, -0.1, 1.0}, IntervalKind::Unit, cfg),
                    std::domain_error);
}

TEST_SUITE_END();
