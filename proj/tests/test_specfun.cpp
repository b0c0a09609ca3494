#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "mf/errors.hpp"
#include "mf/specfun.hpp"
#include "oracles.hpp"

using namespace mf::specfun;

TEST_CASE("degree zero is the constant 1 for any parameter") {
    CHECK(gegenbauer({0, 5.0}, 0.3) == 1.0);
    CHECK(gegenbauer({0, 0.5}, -0.9) == 1.0);
    CHECK(gegenbauer({0, 12.0}, 1.0) == 1.0);
}

TEST_CASE("low-degree closed forms") {
    // C_1^q = 2 q x
    CHECK(gegenbauer({1, 2.0}, 0.5) == doctest::Approx(2.0).epsilon(1e-14));
    // C_3^2 = 32 x^3 - 12 x, frozen from the series oracle
    CHECK(oracles::gegenbauer_series(3, 2.0, 0.25) == doctest::Approx(-2.5).epsilon(1e-13));
    CHECK(gegenbauer({3, 2.0}, 0.25) == doctest::Approx(-2.5).epsilon(1e-13));
}

TEST_CASE("recurrence matches the series oracle to 1e-10 relative") {
    for (int p = 0; p <= 12; ++p) {
        for (double q : {1.0, 2.0, 3.5, 6.0, 11.0}) {
            for (double x : {-0.95, -0.5, -0.1, 0.0, 0.3, 0.77, 0.99}) {
                const double ref = oracles::gegenbauer_series(p, q, x);
                const double got = gegenbauer({p, q}, x);
                CHECK(got == doctest::Approx(ref).epsilon(1e-10));
            }
        }
    }
}

TEST_CASE("parity: C_p^q(-x) = (-1)^p C_p^q(x)") {
    for (int p = 0; p <= 15; ++p) {
        for (double q : {1.0, 2.5, 7.0}) {
            for (double x : {0.1, 0.42, 0.8, 0.999}) {
                const double plus = gegenbauer({p, q}, x);
                const double minus = gegenbauer({p, q}, -x);
                const double expected = (p % 2 ? -plus : plus);
                CHECK(minus == doctest::Approx(expected).epsilon(1e-12));
            }
        }
    }
}

TEST_CASE("derivative identity and finite-difference oracle") {
    CHECK(gegenbauer_deriv({0, 3.0}, 0.7) == 0.0);
    // C_1^2 = 4x has slope 4 everywhere
    CHECK(gegenbauer_deriv({1, 2.0}, -0.3) == doctest::Approx(4.0).epsilon(1e-14));
    CHECK(gegenbauer_deriv({1, 2.0}, 0.98) == doctest::Approx(4.0).epsilon(1e-14));

    const GegenbauerIndex idx{4, 3.0};
    auto f = [&](double x) { return gegenbauer(idx, x); };
    const double fd = oracles::fd_deriv(f, 0.1, 1e-3);
    CHECK(gegenbauer_deriv(idx, 0.1) == doctest::Approx(fd).epsilon(1e-8));

    // higher degrees: the FD truncation itself limits the agreement
    for (int p : {2, 5, 9}) {
        for (double x : {-0.6, 0.25, 0.85}) {
            const GegenbauerIndex i2{p, 4.0};
            auto g = [&](double t) { return gegenbauer(i2, t); };
            CHECK(gegenbauer_deriv(i2, x) ==
                  doctest::Approx(oracles::fd_deriv(g, x, 1e-3)).epsilon(1e-7));
            CHECK(gegenbauer_deriv2(i2, x) ==
                  doctest::Approx(oracles::fd_deriv2(g, x, 1e-3)).epsilon(1e-6));
        }
    }
}

TEST_CASE("ultraspherical equation residual") {
    // p = 0: C = 1, C' = C'' = 0 and R_0 = 0
    CHECK(ultraspherical_residual({0, 4.0}, 0.5) == 0.0);

    // analytic C_2^q plus coefficient evaluation
    {
        const auto parts = ultraspherical_residual_parts({2, 2.0}, 0.3);
        CHECK(std::abs(parts.residual) < 1e-10);
    }
    // recurrence evaluation near the edge, relative to the term scale
    {
        const auto parts = ultraspherical_residual_parts({10, 6.0}, 0.9);
        CHECK(std::abs(parts.residual) < 1e-7 * parts.scale);
    }
}

TEST_CASE("residual invariant over the index sweep") {
    for (int p = 0; p <= 20; ++p) {
        for (int l = 0; l <= 10; ++l) {
            const GegenbauerIndex idx{p, l + 1.0};
            for (int i = 1; i < 50; ++i) {
                const double xi = -1.0 + 2.0 * i / 50.0;
                const auto parts = ultraspherical_residual_parts(idx, xi);
                const double scale = parts.scale > 0.0 ? parts.scale : 1.0;
                CHECK(std::abs(parts.residual) <= 1e-8 * scale);
            }
        }
    }
}

TEST_CASE("error paths") {
    CHECK_THROWS_AS(gegenbauer({-1, 2.0}, 0.0), std::domain_error);
    CHECK_THROWS_AS(gegenbauer({3, 0.0}, 0.0), std::domain_error);
    CHECK_THROWS_AS(gegenbauer({3, -1.0}, 0.0), std::domain_error);
    CHECK_THROWS_AS(ultraspherical_residual({2, 2.0}, 1.0), mf::singularity_error);
    CHECK_THROWS_AS(ultraspherical_residual({2, 2.0}, -1.0), mf::singularity_error);
}

TEST_CASE("extrapolation flag") {
    CHECK_FALSE(gegenbauer_extrapolation(0.5));
    CHECK_FALSE(gegenbauer_extrapolation(-1.0));
    CHECK(gegenbauer_extrapolation(1.2));
    // values outside [-1,1] still evaluate (polynomial)
    CHECK(gegenbauer({2, 2.0}, 1.5) == doctest::Approx(12.0 * 1.5 * 1.5 - 2.0));
}
