#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "qmeasure.hpp"

using namespace qosc;

TEST_CASE("jackson integral of a constant telescopes to b") {
    for (double q : {0.3, 0.5, 0.8})
        for (double b : {0.5, 1.0, 3.75}) {
            const double got = jackson_integral([](double) { return 1.0; }, b, q);
            CHECK(got == doctest::Approx(b).epsilon(1e-14));
        }
}

TEST_CASE("jackson integral of x over [0,1] at q = 1/2 is 2/3") {
    const double got = jackson_integral([](double x) { return x; }, 1.0, 0.5);
    CHECK(got == doctest::Approx(2.0 / 3.0).epsilon(1e-15));
}

TEST_CASE("jackson monomial closed form b^{n+1}/[n+1;q]") {
    for (double q : {0.3, 0.5, 0.8}) {
        for (long n = 0; n <= 8; ++n) {
            const double b = 1.3;
            const double got = jackson_integral(
                [n](double x) { return std::pow(x, static_cast<double>(n)); }, b, q);
            const double want = std::pow(b, static_cast<double>(n + 1)) / q_bracket(n + 1, q);
            CHECK(got == doctest::Approx(want).epsilon(1e-13));
        }
    }
}

TEST_CASE("jackson integral is linear") {
    const double q = 0.6, b = 1.7;
    auto f = [](double x) { return x * x - 0.5 * x; };
    auto g = [](double x) { return std::cos(3.0 * x); };
    for (double a1 : {-2.0, 0.25, 5.0}) {
        for (double a2 : {-1.5, 3.0}) {
            const double lhs = jackson_integral(
                [&](double x) { return a1 * f(x) + a2 * g(x); }, b, q);
            const double rhs = a1 * jackson_integral(f, b, q) + a2 * jackson_integral(g, b, q);
            CHECK(std::abs(lhs - rhs) <= 1e-13 * std::max(1.0, std::abs(rhs)));
        }
    }
}

TEST_CASE("jackson error paths") {
    CHECK_THROWS_AS(jackson_integral([](double) { return 1.0; }, 1.0, 1.5), error);
    CHECK_THROWS_AS(jackson_integral([](double) { return 1.0; }, -1.0, 0.5), error);
    // non-finite summand at an interior grid point
    try {
        jackson_integral([](double x) { return 1.0 / (x - 0.5); }, 1.0, 0.5);
        FAIL("expected an evaluation error");
    } catch (const error& e) {
        CHECK(e.code() == errc::evaluation);
    }
    // summand (1-q) x f(x) constant when f = 1/x: the tail never decays
    SeriesPolicy capped;
    capped.max_terms = 50;
    try {
        jackson_integral([](double x) { return 1.0 / x; }, 1.0, 0.5, capped);
        FAIL("expected a non-convergence error");
    } catch (const error& e) {
        CHECK(e.code() == errc::non_convergence);
    }
}

TEST_CASE("factorial moments of the coherent-state weight") {
    // int_0^{1/(1-q)} x^n / e_q(qx) d_q x = [n;q]!
    for (double q : {0.3, 0.5, 0.8}) {
        for (long n = 0; n <= 12; ++n) {
            const double got = resolution_of_unity_diag(n, q);
            CHECK(std::abs(got - 1.0) <= 1e-10);
        }
    }
}

TEST_CASE("completeness survives q near 1 where the weight crushes the endpoint") {
    // at q = 0.99 the weight is ~1e-72 at the endpoint and the integrand bulk
    // sits thousands of grid points in; the sum must not stop early
    for (long n : {0L, 5L}) {
        CHECK(std::abs(resolution_of_unity_diag(n, 0.99) - 1.0) <= 1e-10);
    }
}

TEST_CASE("negative control: the shifted weight breaks the identity") {
    // weight 1/e_q(x) instead of 1/e_q(qx): the integral must drift off 1
    const double q = 0.5;
    const double b = 1.0 / (1.0 - q);
    const double wrong = jackson_integral(
        [&](double x) {
            return q_pochhammer_inf(cplx((1.0 - q) * x), q).real();
        },
        b, q);
    CHECK(std::abs(wrong - 1.0) > 1e-3);
}

TEST_CASE("deepening the tail cutoff does not move the result") {
    SeriesPolicy deep;
    deep.tail_cutoff = 1e-24;
    for (long n : {0L, 5L, 10L}) {
        const double base = resolution_of_unity_diag(n, 0.5);
        const double refined = resolution_of_unity_diag(n, 0.5, deep);
        CHECK(std::abs(base - refined) <= 1e-10);
    }
}

TEST_CASE("jackson grid reports the truncation depth actually used") {
    const JacksonGrid grid = jackson_grid([](double) { return 1.0; }, 1.0, 0.5);
    grid.validate();
    CHECK(grid.b == 1.0);
    CHECK(grid.q == 0.5);
    // summand (1-q) q^m falls below the 1e-18 cutoff near m = 60
    CHECK(grid.m_cut >= 55);
    CHECK(grid.m_cut <= 70);

    SeriesPolicy shallow;
    shallow.tail_cutoff = 1e-6;
    const JacksonGrid coarse = jackson_grid([](double) { return 1.0; }, 1.0, 0.5, shallow);
    CHECK(coarse.m_cut < grid.m_cut);

    JacksonGrid bad{-1.0, 0.5, 3};
    CHECK_THROWS_AS(bad.validate(), error);
}

TEST_CASE("stieltjes moment targets") {
    CHECK(stieltjes_moment_target(0, {0.5, 0.0, {}}) == 1.0);
    CHECK(stieltjes_moment_target(3, {0.5, 0.0, {}}) == doctest::Approx(2.625));
    // lambda = 1 at q matches the inverse-base factorial
    const double got = stieltjes_moment_target(2, {0.5, 1.0, {}});
    CHECK(got == doctest::Approx(3.0).epsilon(1e-14));
    CHECK(got == doctest::Approx(q_factorial_lambda(2, 0.5, 1.0)).epsilon(1e-15));
    CHECK(got == doctest::Approx(q_factorial(2, 2.0)).epsilon(1e-14));  // [n;1/q]!
    CHECK_THROWS_AS(stieltjes_moment_target(-1, {0.5, 0.0, {}}), error);
}
