#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "pdm/mass_profile.hpp"

using namespace pdm;
using Catch::Approx;

TEST_CASE("constant profile evaluates to (1, 0, 0) everywhere", "[mass-profiles]") {
    const auto p = constant_mass();
    for (double r : {-7.0, 0.0, 0.3, 5.0, 42.0}) {
        const auto t = eval_mass(p, r);
        CHECK(t.m == 1.0);
        CHECK(t.m1 == 0.0);
        CHECK(t.m2 == 0.0);
    }
}

TEST_CASE("rational profile values at r = 1", "[mass-profiles]") {
    const auto p = rational_mass(2.0);
    const auto t = eval_mass(p, 1.0);
    CHECK(t.m == Approx(2.25).margin(1e-14));
    CHECK(t.m1 == Approx(-1.5).margin(1e-14));
    // second derivative cross-checked against finite differences of m
    const double fd = calculus::central_derivative(p.m, 1.0, 2);
    CHECK(t.m2 == Approx(2.0).margin(1e-12));
    CHECK(t.m2 == Approx(fd).margin(1e-6));
}

TEST_CASE("inverse-quadratic profile values at r = 1", "[mass-profiles]") {
    const auto p = inverse_quadratic_mass();
    const auto t = eval_mass(p, 1.0);
    CHECK(t.m == Approx(0.5).margin(1e-14));
    CHECK(t.m1 == Approx(-0.5).margin(1e-14));
    CHECK(t.m2 == Approx(0.5).margin(1e-14));
}

TEST_CASE("built-in profiles validate cleanly", "[mass-profiles]") {
    const RadialGrid grid(0.01, 10.0, 128);

    const auto constant_report = validate_profile(constant_mass(), grid);
    CHECK(constant_report.positive);
    CHECK(constant_report.max_derivative_error == 0.0);
    CHECK(constant_report.closed_integral_error <= 1e-8);

    for (const auto& name : builtin_profile_names()) {
        const auto report = validate_profile(make_profile(name), grid);
        CHECK(report.positive);
        CHECK(report.derivatives_consistent(1e-6));
        CHECK(report.closed_integral_consistent(1e-8));
    }
}

TEST_CASE("validation reports positivity violations", "[mass-profiles]") {
    MassProfile bad;
    bad.name = "inverted-parabola";
    bad.m = [](double r) { return 1 - r * r; };
    bad.m1 = [](double r) { return -2 * r; };
    bad.m2 = [](double) { return -2.0; };
    const auto report = validate_profile(bad, RadialGrid(0.01, 2.0, 64));
    CHECK_FALSE(report.positive);
    CHECK(report.worst_positivity_at > 1.0);
}

TEST_CASE("built-in profiles are even and bounded", "[mass-profiles]") {
    for (const auto& name : builtin_profile_names()) {
        const auto p = make_profile(name);
        double min_m = 1e300, max_m = -1e300;
        for (int i = 1; i <= 1000; ++i) {
            const double r = 0.1 * i;
            CHECK(p.m(r) == Approx(p.m(-r)).margin(1e-14));
            min_m = std::min(min_m, p.m(r));
            max_m = std::max(max_m, p.m(r));
        }
        CHECK(min_m > 0.0);
        CHECK(std::isfinite(max_m));
    }
}

TEST_CASE("profile factory and parameter handling", "[mass-profiles]") {
    CHECK(make_profile("rational", {{"a", 3.0}}).m(0.0) == Approx(9.0));
    CHECK_THROWS_AS(make_profile("morse"), std::invalid_argument);
    CHECK_THROWS_AS(rational_mass(0.0), std::invalid_argument);
    CHECK_THROWS_AS(rational_mass(-1.0), std::invalid_argument);
}

TEST_CASE("half-line profiles reject r outside the domain", "[mass-profiles]") {
    MassProfile p = constant_mass();
    p.domain = MassProfile::Domain::half_line;
    CHECK_THROWS_AS(eval_mass(p, -1.0), std::domain_error);
    CHECK_NOTHROW(eval_mass(p, 1.0));
}
