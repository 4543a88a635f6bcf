#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <numbers>

#include "pdm/oscillator.hpp"

using namespace pdm;
using Catch::Approx;

TEST_CASE("oscillator superpotential closed forms", "[oscillator]") {
    CHECK(oscillator_superpotential(constant_mass(), 2.0, 3.0) ==
          Approx(3.0).margin(1e-14));
    // r + atan r + (1/2) * 2r(a-1)/(a+r^2)^2 at a = 2, r = 1
    CHECK(oscillator_superpotential(rational_mass(2.0), 2.0, 1.0) ==
          Approx(1.0 + std::numbers::pi / 4 + 1.0 / 9.0).margin(1e-12));
    // asinh 1 + (1/2) / sqrt(2)
    CHECK(oscillator_superpotential(inverse_quadratic_mass(), 2.0, 1.0) ==
          Approx(std::asinh(1.0) + 0.5 / std::sqrt(2.0)).margin(1e-12));
}

TEST_CASE("superpotential falls back to quadrature without a closed integral",
          "[oscillator]") {
    auto p = rational_mass(2.0);
    auto stripped = p;
    stripped.closed_sqrt_integral = nullptr;
    for (double r : {0.5, 1.0, 3.0})
        CHECK(oscillator_superpotential(stripped, 2.0, r) ==
              Approx(oscillator_superpotential(p, 2.0, r)).margin(1e-9));
}

TEST_CASE("unperturbed potential for constant mass", "[oscillator]") {
    CHECK(unperturbed_potential(constant_mass(), 2.0, 2.0) ==
          Approx(4.0).margin(1e-9));
    CHECK(unperturbed_potential(constant_mass(), 2.0, 0.0) ==
          Approx(0.0).margin(1e-9));
}

TEST_CASE("unperturbed potential for rational mass matches direct assembly",
          "[oscillator]") {
    // independent evaluation of W^2 - (W/sqrt(M))' + omega/2 with its own
    // wider-step finite difference
    const auto p = rational_mass(2.0);
    const double omega = 2.0;
    auto w_over_sqrt_m = [&](double x) {
        return oscillator_superpotential(p, omega, x) / std::sqrt(p.m(x));
    };
    for (double r : {0.5, 1.0, 2.0}) {
        const double w = oscillator_superpotential(p, omega, r);
        const double h = 1e-3;
        const double deriv = (-w_over_sqrt_m(r + 2 * h) + 8 * w_over_sqrt_m(r + h) -
                              8 * w_over_sqrt_m(r - h) + w_over_sqrt_m(r - 2 * h)) /
                             (12 * h);
        CHECK(unperturbed_potential(p, omega, r) ==
              Approx(w * w - deriv + 1.0).margin(1e-8));
    }
}

TEST_CASE("ground state factor for constant mass is a Gaussian", "[oscillator]") {
    const RadialGrid grid(0.0, 6.0, 301);
    const auto f = ground_state_f(constant_mass(), 2.0, grid);
    for (std::size_t i = 0; i < grid.count; i += 13) {
        const double r = grid.node(i);
        CHECK(f[i] == Approx(std::exp(-0.5 * r * r)).margin(1e-8));
    }
}

TEST_CASE("ground state factor starts at one and decays", "[oscillator]") {
    const RadialGrid grid(0.0, 6.0, 301);
    for (const auto& name : builtin_profile_names()) {
        const auto f = ground_state_f(make_profile(name), 2.0, grid);
        CHECK(f.front() == 1.0);
        for (double v : f) CHECK(v > 0.0);
        CHECK(f.back() < f[grid.count / 2]);
    }
}

TEST_CASE("ground state factor matches independent quadrature", "[oscillator]") {
    const auto p = rational_mass(2.0);
    const RadialGrid grid(0.0, 4.0, 401);
    const auto f = ground_state_f(p, 2.0, grid);
    auto integrand = [&](double z) {
        return std::sqrt(p.m(z)) * oscillator_superpotential(p, 2.0, z);
    };
    const double expected =
        std::exp(-calculus::adaptive_quadrature(integrand, 0.0, 1.0, 1e-12));
    CHECK(f[100] == Approx(expected).margin(1e-9)); // node at r = 1
}

TEST_CASE("explicit energy correction for constant mass", "[oscillator]") {
    const RadialGrid grid(0.5, 5.0, 101);
    {
        const auto report = delta_e_formula(constant_mass(), presets::bendaniel_duke,
                                            {3, 1, 2.0, 0}, grid);
        CHECK(report.delta_e_mean == Approx(4.0).margin(1e-10));
        CHECK(report.delta_e_max_deviation <= 1e-10);
    }
    {
        const auto report = delta_e_formula(constant_mass(), presets::bendaniel_duke,
                                            {1, 0, 2.0, 0}, grid);
        CHECK(report.delta_e_mean == Approx(0.0).margin(1e-12));
        CHECK(report.delta_e_max_deviation <= 1e-12);
    }
}

TEST_CASE("explicit correction equals the Riccati extraction pointwise",
          "[oscillator]") {
    const RadialGrid grid(0.5, 5.0, 41);
    for (const auto& name : builtin_profile_names()) {
        const auto p = make_profile(name);
        const auto w = oscillator_superpotential_field(p, 2.0);
        for (const auto& params : {presets::bendaniel_duke, presets::zhu_kroemer})
            for (std::size_t i = 2; i + 2 < grid.count; i += 5) {
                const double r = grid.node(i);
                const QuantumSetting s{3, 0, 2.0, 0};
                CHECK(std::abs(delta_e_explicit(p, params, s, r) -
                               delta_e_pointwise(p, params, s, w, r)) <= 1e-6);
            }
    }
}

TEST_CASE("assembled solution for the constant-mass oscillator", "[oscillator]") {
    const RadialGrid grid(0.0, 8.0, 401);
    {
        auto [result, table] = assemble_solution(
            constant_mass(), presets::bendaniel_duke, {3, 0, 2.0, 0}, grid);
        CHECK(result.epsilon == Approx(1.0));
        CHECK(result.delta_e_mean == Approx(2.0).margin(1e-10));
        CHECK(result.total_e == Approx(3.0).margin(1e-10));
        CHECK(result.total_e == result.epsilon + result.delta_e_mean);
        CHECK(result.solvable);
        CHECK_FALSE(result.extrapolated);

        // Psi proportional to r exp(-r^2/2): compare normalized shapes
        const auto psi = table.psi_normalized();
        const double scale = psi[50] / (grid.node(50) * std::exp(-0.5 * grid.node(50) * grid.node(50)));
        for (std::size_t i = 10; i < grid.count; i += 37) {
            const double r = grid.node(i);
            CHECK(psi[i] == Approx(scale * r * std::exp(-0.5 * r * r)).margin(1e-8));
        }
    }
    {
        auto [result, table] = assemble_solution(
            constant_mass(), presets::bendaniel_duke, {1, 0, 2.0, 0}, grid);
        (void)table;
        CHECK(result.delta_e_mean == Approx(0.0).margin(1e-12));
        CHECK(result.total_e == Approx(1.0).margin(1e-12));
    }
    {
        auto [result, table] = assemble_solution(
            constant_mass(), presets::zhu_kroemer, {3, 0, 2.0, 0}, grid);
        (void)table;
        CHECK(result.total_e == Approx(3.0).margin(1e-10));
    }
}

TEST_CASE("wavefunction table invariants", "[oscillator]") {
    const RadialGrid grid(0.0, 8.0, 401);
    auto [result, table] = assemble_solution(rational_mass(2.0),
                                             presets::zhu_kroemer,
                                             {3, 1, 2.0, 0}, grid);
    (void)result;
    for (std::size_t i = 0; i < grid.count; ++i) {
        CHECK(table.psi[i] == table.f[i] * table.g[i]); // exact by construction
        CHECK(std::isfinite(table.psi[i]));
    }
    const auto normalized = table.psi_normalized();
    double norm = 0.0;
    const double h = grid.spacing();
    for (std::size_t i = 0; i + 1 < normalized.size(); ++i)
        norm += 0.5 * h *
                (normalized[i] * normalized[i] + normalized[i + 1] * normalized[i + 1]);
    CHECK(norm == Approx(1.0).margin(1e-8));
}

TEST_CASE("excited levels are labelled extrapolated", "[oscillator]") {
    const RadialGrid grid(0.0, 8.0, 401);
    auto [result, table] = assemble_solution(
        constant_mass(), presets::bendaniel_duke, {3, 0, 2.0, 1}, grid);
    (void)table;
    CHECK(result.extrapolated);
    CHECK(result.epsilon == Approx(3.0));
    CHECK(result.total_e == Approx(5.0).margin(1e-10));
}
