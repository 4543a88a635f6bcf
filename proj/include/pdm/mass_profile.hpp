#ifndef PDM_MASS_PROFILE_HPP
#define PDM_MASS_PROFILE_HPP

#include <cmath>
#include <functional>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "pdm/calculus.hpp"
#include "pdm/errors.hpp"
#include "pdm/grid.hpp"

namespace pdm {

// Dimensionless mass function M(r) with analytic first/second derivatives.
// Built-ins additionally carry a closed form of int_0^r sqrt(M).
struct MassProfile {
    enum class Domain { half_line, full_line };

    std::string name;
    std::map<std::string, double> params;
    std::function<double(double)> m;
    std::function<double(double)> m1;
    std::function<double(double)> m2;
    std::function<double(double)> closed_sqrt_integral; // may be empty
    Domain domain = Domain::full_line;

    bool in_domain(double r) const {
        return domain == Domain::full_line || r > 0.0;
    }
    bool has_closed_sqrt_integral() const {
        return static_cast<bool>(closed_sqrt_integral);
    }
};

struct MassTriple {
    double m;
    double m1;
    double m2;
};

inline MassTriple eval_mass(const MassProfile& profile, double r) {
    if (!profile.in_domain(r))
        throw std::domain_error("eval_mass: r outside domain of profile '" +
                                profile.name + "'");
    return {profile.m(r), profile.m1(r), profile.m2(r)};
}

inline MassProfile constant_mass() {
    MassProfile p;
    p.name = "constant";
    p.m = [](double) { return 1.0; };
    p.m1 = [](double) { return 0.0; };
    p.m2 = [](double) { return 0.0; };
    p.closed_sqrt_integral = [](double r) { return r; };
    return p;
}

// M(r) = ((a + r^2)/(1 + r^2))^2, a > 0.  sqrt(M) = (a+r^2)/(1+r^2),
// int_0^r sqrt(M) = r + (a-1) atan r.
inline MassProfile rational_mass(double a) {
    if (!(a > 0.0))
        throw std::invalid_argument("rational_mass: parameter a must be > 0");
    MassProfile p;
    p.name = "rational";
    p.params["a"] = a;
    auto s = [a](double r) { return (a + r * r) / (1 + r * r); };
    auto s1 = [a](double r) {
        const double d = 1 + r * r;
        return 2 * r * (1 - a) / (d * d);
    };
    auto s2 = [a](double r) {
        const double d = 1 + r * r;
        return 2 * (1 - a) * (1 - 3 * r * r) / (d * d * d);
    };
    p.m = [s](double r) { const double v = s(r); return v * v; };
    p.m1 = [s, s1](double r) { return 2 * s(r) * s1(r); };
    p.m2 = [s, s1, s2](double r) {
        const double d1 = s1(r);
        return 2 * (d1 * d1 + s(r) * s2(r));
    };
    p.closed_sqrt_integral = [a](double r) { return r + (a - 1) * std::atan(r); };
    return p;
}

// M(r) = 1/(1 + r^2); int_0^r sqrt(M) = asinh r.
inline MassProfile inverse_quadratic_mass() {
    MassProfile p;
    p.name = "inverse-quadratic";
    p.m = [](double r) { return 1.0 / (1 + r * r); };
    p.m1 = [](double r) {
        const double d = 1 + r * r;
        return -2 * r / (d * d);
    };
    p.m2 = [](double r) {
        const double d = 1 + r * r;
        return (6 * r * r - 2) / (d * d * d);
    };
    p.closed_sqrt_integral = [](double r) { return std::asinh(r); };
    return p;
}

inline std::vector<std::string> builtin_profile_names() {
    return {"constant", "rational", "inverse-quadratic"};
}

inline MassProfile make_profile(const std::string& name,
                                const std::map<std::string, double>& params = {}) {
    if (name == "constant") return constant_mass();
    if (name == "rational") {
        auto it = params.find("a");
        return rational_mass(it == params.end() ? 2.0 : it->second);
    }
    if (name == "inverse-quadratic") return inverse_quadratic_mass();
    throw std::invalid_argument("unknown mass profile '" + name + "'");
}

struct ProfileValidationReport {
    bool positive = true;
    double worst_positivity = 0.0;      // min M over the grid
    double worst_positivity_at = 0.0;   // location of the minimum
    double max_derivative_error = 0.0;  // relative, against finite differences
    double closed_integral_error = 0.0; // absolute, when a closed form exists
    bool derivatives_consistent(double tol = 1e-6) const {
        return max_derivative_error <= tol;
    }
    bool closed_integral_consistent(double tol = 1e-8) const {
        return closed_integral_error <= tol;
    }
};

// Cross-checks the analytic derivatives against finite differences of m and,
// when present, the closed sqrt-integral against numerical quadrature.
inline ProfileValidationReport validate_profile(const MassProfile& profile,
                                                const RadialGrid& grid) {
    ProfileValidationReport report;
    report.worst_positivity = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < grid.count; ++i) {
        const double r = grid.node(i);
        if (!profile.in_domain(r))
            throw std::domain_error("validate_profile: grid leaves profile domain");
        const double mv = profile.m(r);
        if (mv < report.worst_positivity) {
            report.worst_positivity = mv;
            report.worst_positivity_at = r;
        }
        if (mv <= 0.0) report.positive = false;

        const double fd1 = calculus::central_derivative(profile.m, r, 1);
        const double fd2 = calculus::central_derivative(profile.m, r, 2);
        const double e1 =
            std::abs(profile.m1(r) - fd1) / std::max(1.0, std::abs(profile.m1(r)));
        const double e2 =
            std::abs(profile.m2(r) - fd2) / std::max(1.0, std::abs(profile.m2(r)));
        report.max_derivative_error =
            std::max({report.max_derivative_error, e1, e2});
    }
    if (profile.has_closed_sqrt_integral()) {
        auto sqrt_m = [&profile](double r) { return std::sqrt(profile.m(r)); };
        const auto table = calculus::cumulative_integral(sqrt_m, grid, 1e-12);
        for (std::size_t i = 0; i < grid.count; ++i) {
            const double err =
                std::abs(table[i] - profile.closed_sqrt_integral(grid.node(i)));
            report.closed_integral_error =
                std::max(report.closed_integral_error, err);
        }
    }
    return report;
}

} // namespace pdm

#endif
