#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "pdm/calculus.hpp"

using namespace pdm;
using Catch::Approx;

TEST_CASE("central derivative is exact for low-degree polynomials", "[calculus]") {
    auto square = [](double x) { return x * x; };
    CHECK(calculus::central_derivative(square, 3.0, 1) == Approx(6.0).margin(1e-10));
    CHECK(calculus::central_derivative(square, 3.0, 2) == Approx(2.0).margin(1e-10));

    // degree-4 polynomial, first derivative exact up to rounding
    auto quartic = [](double x) { return 2 * x * x * x * x - 3 * x * x * x + x - 7; };
    auto quartic1 = [](double x) { return 8 * x * x * x - 9 * x * x + 1; };
    for (double r : {-2.5, -0.3, 0.0, 1.0, 4.2}) {
        CHECK(calculus::central_derivative(quartic, r, 1) ==
              Approx(quartic1(r)).margin(1e-7 * std::max(1.0, std::abs(quartic1(r)))));
    }
}

TEST_CASE("central derivative matches cos at the origin", "[calculus]") {
    auto f = [](double x) { return std::sin(x); };
    CHECK(calculus::central_derivative(f, 0.0, 1, 1e-3) == Approx(1.0).margin(1e-8));
}

TEST_CASE("central derivative rejects non-finite evaluations", "[calculus]") {
    auto f = [](double x) { return std::sqrt(x); };
    CHECK_THROWS_AS(calculus::central_derivative(f, 5e-5, 1), evaluation_error);
}

TEST_CASE("adaptive quadrature on known integrals", "[calculus]") {
    CHECK(calculus::adaptive_quadrature([](double) { return 1.0; }, 0.0, 2.0) ==
          Approx(2.0).margin(1e-14));
    CHECK(calculus::adaptive_quadrature(
              [](double x) { return 1.0 / std::sqrt(1 + x * x); }, 0.0, 1.0) ==
          Approx(std::asinh(1.0)).margin(1e-9));
    // sqrt of the rational mass profile at a = 2
    CHECK(calculus::adaptive_quadrature(
              [](double x) { return (2 + x * x) / (1 + x * x); }, 0.0, 1.0) ==
          Approx(1.0 + std::atan(1.0)).margin(1e-9));
}

TEST_CASE("quadrature error shrinks under tolerance tightening", "[calculus]") {
    auto f = [](double x) { return std::exp(-x) * std::sin(3 * x); };
    const double exact = (3.0 - std::exp(-2.0) * (std::sin(6.0) * 1.0 +
                                                  3.0 * std::cos(6.0))) /
                         10.0;
    double prev = 1.0;
    for (double tol : {1e-4, 1e-7, 1e-10}) {
        const double err =
            std::abs(calculus::adaptive_quadrature(f, 0.0, 2.0, tol) - exact);
        CHECK(err <= prev + 1e-15);
        CHECK(err <= 10 * tol);
        prev = err;
    }
}

TEST_CASE("quadrature reports depth exhaustion with best estimate", "[calculus]") {
    auto f = [](double x) { return std::sqrt(std::abs(x - 0.123456)); };
    try {
        calculus::adaptive_quadrature(f, 0.0, 1.0, 1e-300);
        FAIL("expected accuracy_error");
    } catch (const accuracy_error& e) {
        // best estimate is still a decent value of the integral
        const double exact = (std::pow(0.123456, 1.5) + std::pow(1 - 0.123456, 1.5)) / 1.5;
        CHECK(e.best_estimate == Approx(exact).margin(1e-6));
    }
}

TEST_CASE("cumulative integral on a uniform grid", "[calculus]") {
    const RadialGrid grid(0.0, 1.0, 101);
    auto one = calculus::cumulative_integral([](double) { return 1.0; }, grid);
    CHECK(one.front() == 0.0);
    CHECK(one.back() == Approx(1.0).margin(1e-12));

    auto lin = calculus::cumulative_integral([](double x) { return x; }, grid);
    CHECK(lin.back() == Approx(0.5).margin(1e-10));

    auto rat = calculus::cumulative_integral(
        [](double x) { return (2 + x * x) / (1 + x * x); }, grid);
    CHECK(rat.back() == Approx(1.0 + std::atan(1.0)).margin(1e-10));
}

TEST_CASE("cumulative integral agrees with adaptive quadrature", "[calculus]") {
    const RadialGrid grid(0.0, 3.0, 61);
    auto f = [](double x) { return std::cos(x) * std::cos(x) + 0.5; };
    const double tol = 1e-10;
    auto table = calculus::cumulative_integral(f, grid, tol);
    for (std::size_t i = 0; i < grid.count; i += 7) {
        const double direct = calculus::adaptive_quadrature(f, 0.0, grid.node(i), tol);
        CHECK(std::abs(table[i] - direct) <= 2 * tol);
    }
    // monotone nondecreasing for f >= 0
    for (std::size_t i = 1; i < table.size(); ++i) CHECK(table[i] >= table[i - 1]);
}

TEST_CASE("cumulative table interpolates between nodes", "[calculus]") {
    const RadialGrid grid(0.0, 2.0, 201);
    calculus::CumulativeTable table([](double x) { return x; }, grid);
    CHECK(table(1.234) == Approx(0.5 * 1.234 * 1.234).margin(1e-4));
    CHECK(table(0.0) == Approx(0.0).margin(1e-15));
    CHECK(table(2.0) == Approx(2.0).margin(1e-10));
}

TEST_CASE("cumulative integral anchors grids that do not start at zero",
          "[calculus]") {
    const RadialGrid grid(0.5, 2.0, 31);
    auto table = calculus::cumulative_integral([](double x) { return x; }, grid);
    CHECK(table.front() == Approx(0.125).margin(1e-12));
    CHECK(table.back() == Approx(2.0).margin(1e-10));
}
