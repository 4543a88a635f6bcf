#ifndef PDM_POTENTIALS_HPP
#define PDM_POTENTIALS_HPP

#include <cmath>
#include <functional>
#include <stdexcept>
#include <string>

#include "pdm/mass_profile.hpp"

namespace pdm {

// Ordering parameters (alpha, gamma) selecting the effective Hamiltonian.
struct AmbiguityParams {
    double alpha;
    double gamma;

    bool operator==(const AmbiguityParams&) const = default;
};

namespace presets {
inline constexpr AmbiguityParams bendaniel_duke{0.0, 0.0};
inline constexpr AmbiguityParams zhu_kroemer{-0.5, -0.5};
inline constexpr AmbiguityParams li_kuhn{0.0, -0.5};
// Bastard is quoted with alpha = -1 only; gamma = 0 here is a convention,
// not a literature value. Never admitted by the splitting, so nothing
// downstream depends on it.
inline constexpr AmbiguityParams bastard{-1.0, 0.0};
} // namespace presets

inline AmbiguityParams preset_by_name(const std::string& name) {
    if (name == "bendaniel-duke" || name == "bdd") return presets::bendaniel_duke;
    if (name == "zhu-kroemer" || name == "zk") return presets::zhu_kroemer;
    if (name == "li-kuhn") return presets::li_kuhn;
    if (name == "bastard") return presets::bastard;
    throw std::invalid_argument("unknown Hamiltonian preset '" + name + "'");
}

inline std::string preset_name(const AmbiguityParams& p) {
    if (p == presets::bendaniel_duke) return "bendaniel-duke";
    if (p == presets::zhu_kroemer) return "zhu-kroemer";
    if (p == presets::li_kuhn) return "li-kuhn";
    if (p == presets::bastard) return "bastard";
    return "custom";
}

// Dimension N, angular momentum L, oscillator scale omega, level index n.
struct QuantumSetting {
    int dimension = 1;       // N >= 1
    int angular_momentum = 0; // L >= 0
    double omega = 2.0;
    int level = 0;           // n >= 0

    void validate() const {
        if (dimension < 1)
            throw std::invalid_argument("QuantumSetting: dimension must be >= 1");
        if (angular_momentum < 0)
            throw std::invalid_argument("QuantumSetting: angular momentum must be >= 0");
        if (dimension == 1 && angular_momentum != 0)
            throw std::invalid_argument("QuantumSetting: N=1 requires L=0");
        if (!(omega > 0.0))
            throw std::invalid_argument("QuantumSetting: omega must be > 0");
        if (level < 0)
            throw std::invalid_argument("QuantumSetting: level must be >= 0");
    }
};

// U_ag = -((a+g)/2) M''/M^2 + (ag + a + g) M'^2/M^3
inline double u_alpha_gamma(const MassProfile& profile, const AmbiguityParams& params,
                            double r) {
    const auto [m, m1, m2] = eval_mass(profile, r);
    const double sum = params.alpha + params.gamma;
    const double mix = params.alpha * params.gamma + sum;
    return -0.5 * sum * m2 / (m * m) + mix * m1 * m1 / (m * m * m);
}

inline double centrifugal_bracket(int dimension, int angular_momentum) {
    const double n = dimension;
    const double l = angular_momentum;
    return l * (l + n - 2) + (n - 1) * (n - 3) / 4.0;
}

// DV = U_ag - (M'/M^2)(N-1)/(2r) + [L(L+N-2) + (N-1)(N-3)/4]/(M r^2).
// At N=1, L=0 this is exactly U_ag.
inline double delta_v(const MassProfile& profile, const AmbiguityParams& params,
                      const QuantumSetting& setting, double r) {
    setting.validate();
    if (!(r > 0.0))
        throw std::domain_error("delta_v: requires r > 0");
    const double base = u_alpha_gamma(profile, params, r);
    if (setting.dimension == 1 && setting.angular_momentum == 0) return base;
    const auto [m, m1, m2] = eval_mass(profile, r);
    (void)m2;
    const double n = setting.dimension;
    return base - m1 / (m * m) * (n - 1) / (2 * r) +
           centrifugal_bracket(setting.dimension, setting.angular_momentum) /
               (m * r * r);
}

// U_eff = V0 + DV; at N=1, L=0 this equals V0 + U_ag.
inline double u_eff(const MassProfile& profile, const AmbiguityParams& params,
                    const QuantumSetting& setting,
                    const std::function<double(double)>& v0, double r) {
    return v0(r) + delta_v(profile, params, setting, r);
}

} // namespace pdm

#endif
