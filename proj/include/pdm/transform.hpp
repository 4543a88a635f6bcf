#ifndef PDM_TRANSFORM_HPP
#define PDM_TRANSFORM_HPP

#include <cmath>
#include <functional>
#include <string>
#include <vector>

#include "pdm/calculus.hpp"
#include "pdm/mass_profile.hpp"

namespace pdm {

// A special function H(g) solving H'' + Q H' + R H = 0, restricted to the
// polynomial (bound-state) solutions. Derivatives are supplied analytically
// so the construction check is exact.
struct SpecialFunctionSpec {
    std::string name;
    std::function<double(double)> q;
    std::function<double(double)> r;
    std::function<double(double)> h;
    std::function<double(double)> dh;
    std::function<double(double)> d2h;
    int level = 0;

    double ode_residual(double g) const {
        return d2h(g) + q(g) * dh(g) + r(g) * h(g);
    }
};

namespace detail {

inline double hermite_value(int n, double g) {
    if (n == 0) return 1.0;
    if (n == 1) return 2.0 * g;
    double hm = 1.0, hc = 2.0 * g;
    for (int k = 1; k < n; ++k) {
        const double hn = 2.0 * g * hc - 2.0 * k * hm;
        hm = hc;
        hc = hn;
    }
    return hc;
}

} // namespace detail

// Physicists' Hermite polynomial at the given level: Q = -2g, R = 2n.
// Construction verifies the defining equation on g in [-4, 4].
inline SpecialFunctionSpec hermite_spec(int level) {
    if (level < 0)
        throw std::invalid_argument("hermite_spec: level must be >= 0");
    SpecialFunctionSpec spec;
    spec.name = "hermite-" + std::to_string(level);
    spec.level = level;
    spec.q = [](double g) { return -2.0 * g; };
    spec.r = [level](double) { return 2.0 * level; };
    spec.h = [level](double g) { return detail::hermite_value(level, g); };
    spec.dh = [level](double g) {
        return level == 0 ? 0.0 : 2.0 * level * detail::hermite_value(level - 1, g);
    };
    spec.d2h = [level](double g) {
        return level < 2 ? 0.0
                         : 4.0 * level * (level - 1) * detail::hermite_value(level - 2, g);
    };
    double worst = 0.0;
    double scale = 1.0;
    for (int i = 0; i <= 80; ++i) {
        const double g = -4.0 + 0.1 * i;
        worst = std::max(worst, std::abs(spec.ode_residual(g)));
        scale = std::max(scale, std::abs(spec.h(g)));
    }
    if (worst / scale > 1e-8)
        throw evaluation_error("hermite_spec: defining equation residual too large");
    return spec;
}

// Monotone change of variable g(z) plus the mass profile and special function
// entering the substitution Phi(z) = H[g(z)] f(z).
struct TransformSpec {
    std::function<double(double)> g;
    std::function<double(double)> dg;
    MassProfile profile;
    SpecialFunctionSpec special;
};

// f(z) = (M/g')^{1/2} exp[(1/2) int_{g(0)}^{g(z)} Q dg], fixed up to one
// global constant by the reference point z0 = 0.
inline double build_f(const TransformSpec& ts, double z) {
    const double gp = ts.dg(z);
    if (!(gp > 0.0))
        throw std::domain_error("build_f: g'(z) must be > 0");
    const double g0 = ts.g(0.0);
    const double exponent =
        0.5 * calculus::adaptive_quadrature(ts.special.q, g0, ts.g(z), 1e-12);
    if (std::abs(exponent) > 700.0)
        throw evaluation_error("build_f: exponent overflow");
    return std::sqrt(ts.profile.m(z) / gp) * std::exp(exponent);
}

// Max over the grid of |DV(z) - DE + (g'^2/M) R(g(z))|.
inline double prescription_residual(const TransformSpec& ts,
                                    const std::function<double(double)>& delta_v,
                                    double delta_e, const RadialGrid& grid) {
    double worst = 0.0;
    for (std::size_t i = 0; i < grid.count; ++i) {
        const double z = grid.node(i);
        const double gp = ts.dg(z);
        const double value = delta_v(z) - delta_e +
                             gp * gp / ts.profile.m(z) * ts.special.r(ts.g(z));
        worst = std::max(worst, std::abs(value));
    }
    return worst;
}

// Applies the Hermitian operator -[(1/M) Phi']' + V_eff Phi - lambda Phi to
// the assembled Phi = H(g) f by finite differences and returns
// max |residual| / max |Phi| over interior nodes.
inline double assemble_phi_residual(const TransformSpec& ts,
                                    const std::function<double(double)>& v_eff,
                                    double lambda, const RadialGrid& grid,
                                    double fd_step = 1e-3) {
    auto phi = [&ts](double z) { return ts.special.h(ts.g(z)) * build_f(ts, z); };
    double worst = 0.0;
    double scale = 0.0;
    for (std::size_t i = 2; i + 2 < grid.count; ++i) {
        const double z = grid.node(i);
        const auto [m, m1, m2] = eval_mass(ts.profile, z);
        (void)m2;
        const double p = phi(z);
        const double p1 = calculus::central_derivative(phi, z, 1, fd_step);
        const double p2 = calculus::central_derivative(phi, z, 2, fd_step);
        const double residual =
            -p2 / m + m1 / (m * m) * p1 + (v_eff(z) - lambda) * p;
        worst = std::max(worst, std::abs(residual));
        scale = std::max(scale, std::abs(p));
    }
    return worst / scale;
}

} // namespace pdm

#endif
