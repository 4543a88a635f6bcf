#ifndef PDM_RUNNER_HPP
#define PDM_RUNNER_HPP

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "pdm/oracle.hpp"
#include "pdm/oscillator.hpp"
#include "pdm/transform.hpp"

namespace pdm::runner {

// Exit-code contract shared by all subcommands.
enum ExitCode : int {
    exit_ok = 0,
    exit_usage = 1,
    exit_check_failed = 2, // strict-mode solvability / residual over tolerance
    exit_numeric = 3,
};

struct RunConfig {
    std::string profile = "constant"; // builtin name or "all"
    std::map<std::string, double> profile_params;
    std::string preset = "";          // empty = both allowed presets for checks
    double omega = 2.0;
    std::vector<int> dims{3};
    std::vector<int> angular{0};
    std::vector<int> levels{0};
    int nodes = 4000;        // oracle base-grid interior nodes
    double r_max = 0.0;      // oracle half-line extent, 0 = auto
    int refine_levels = 2;
    bool strict = false;
    std::string out;         // empty = stdout

    // check/evaluation grid
    double check_r_min = 0.5;
    double check_r_max = 5.0;
    int check_nodes = 101;

    // wavefunction / assembly grid
    double wf_r_max = 8.0;
    int wf_nodes = 801;

    double identity_tol = 1e-6;
    double solvability_tol = 1e-6;
    double transform_tol = 1e-5;
    double membership_tol = 1e-3;
};

inline std::string format_double(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.12g", v);
    return buf;
}

inline std::string format_bool(bool v) { return v ? "true" : "false"; }

struct RunOutput {
    std::string csv;
    int exit_code = exit_ok;
};

namespace detail {

inline std::vector<MassProfile> selected_profiles(const RunConfig& config) {
    std::vector<MassProfile> out;
    if (config.profile == "all") {
        for (const auto& name : builtin_profile_names())
            out.push_back(make_profile(name, config.profile_params));
    } else {
        out.push_back(make_profile(config.profile, config.profile_params));
    }
    return out;
}

inline std::vector<AmbiguityParams> selected_presets(const RunConfig& config) {
    if (config.preset.empty())
        return {presets::bendaniel_duke, presets::zhu_kroemer};
    const auto p = preset_by_name(config.preset);
    require_allowed_params(p);
    return {p};
}

inline RadialGrid check_grid(const RunConfig& config) {
    return RadialGrid(config.check_r_min, config.check_r_max,
                      static_cast<std::size_t>(config.check_nodes));
}

inline RadialGrid assembly_grid(const RunConfig& config) {
    return RadialGrid(0.0, config.wf_r_max, static_cast<std::size_t>(config.wf_nodes));
}

inline oracle::OracleOptions oracle_options(const RunConfig& config) {
    oracle::OracleOptions opt;
    opt.nodes = config.nodes;
    opt.r_max = config.r_max;
    opt.levels = config.refine_levels;
    opt.membership_tol = config.membership_tol;
    return opt;
}

inline std::string profile_label(const MassProfile& profile) {
    std::string label = profile.name;
    for (const auto& [key, value] : profile.params)
        label += ";" + key + "=" + format_double(value);
    return label;
}

} // namespace detail

// One row per (N, L, n), sorted; E_analytic = epsilon + delta_e_mean and the
// oracle comparison attached.
inline RunOutput run_spectrum(const RunConfig& config) {
    std::ostringstream csv;
    csv << "profile,alpha,gamma,N,L,n,omega,epsilon,delta_e_mean,delta_e_dev,"
           "E_analytic,E_oracle,abs_err,membership,solvable_flag\n";
    bool any_unsolvable = false;

    auto dims = config.dims;
    auto angular = config.angular;
    auto levels = config.levels;
    std::sort(dims.begin(), dims.end());
    std::sort(angular.begin(), angular.end());
    std::sort(levels.begin(), levels.end());

    for (const auto& profile : detail::selected_profiles(config)) {
        for (const auto& params : detail::selected_presets(config)) {
            for (int n_dim : dims) {
                for (int l : angular) {
                    if (n_dim == 1 && l != 0) continue;
                    for (int n : levels) {
                        QuantumSetting setting{n_dim, l, config.omega, n};
                        AssembleOptions opts;
                        opts.solvable_threshold = config.solvability_tol;
                        auto [result, table] = assemble_solution(
                            profile, params, setting, detail::assembly_grid(config),
                            opts);
                        (void)table;
                        result = oracle::verify_against_analytic(
                            result, profile, params, setting,
                            detail::oracle_options(config));
                        if (!result.solvable) any_unsolvable = true;
                        csv << detail::profile_label(profile) << ','
                            << format_double(params.alpha) << ','
                            << format_double(params.gamma) << ',' << n_dim << ','
                            << l << ',' << n << ',' << format_double(config.omega)
                            << ',' << format_double(result.epsilon) << ','
                            << format_double(result.delta_e_mean) << ','
                            << format_double(result.delta_e_deviation) << ','
                            << format_double(result.total_e) << ','
                            << format_double(*result.oracle_e) << ','
                            << format_double(*result.abs_err) << ','
                            << format_bool(*result.membership) << ','
                            << format_bool(result.solvable) << '\n';
                    }
                }
            }
        }
    }
    return {csv.str(),
            config.strict && any_unsolvable ? exit_check_failed : exit_ok};
}

// Tabulated Psi = F G for one setting; psi_normalized integrates to 1.
inline RunOutput run_wavefunction(const RunConfig& config, int n_dim, int l, int n) {
    std::ostringstream csv;
    csv << "r,F,G,psi,psi_normalized\n";
    const auto profiles = detail::selected_profiles(config);
    const auto presets_list = detail::selected_presets(config);
    const auto& profile = profiles.front();
    const auto& params = presets_list.front();
    QuantumSetting setting{n_dim, l, config.omega, n};
    auto [result, table] =
        assemble_solution(profile, params, setting, detail::assembly_grid(config));
    (void)result;
    const auto normalized = table.psi_normalized();
    for (std::size_t i = 0; i < table.grid.count; ++i)
        csv << format_double(table.grid.node(i)) << ',' << format_double(table.f[i])
            << ',' << format_double(table.g[i]) << ',' << format_double(table.psi[i])
            << ',' << format_double(normalized[i]) << '\n';
    return {csv.str(), exit_ok};
}

enum class CheckKind { identity, solvability, transform };

inline RunOutput run_checks(const RunConfig& config, CheckKind which) {
    std::ostringstream csv;
    bool all_pass = true;

    if (which == CheckKind::transform) {
        // Constant-mass Hermite harness: g = sqrt(omega/2) z, V = omega^2 z^2/4,
        // lambda = (n + 1/2) omega, DeltaE = n omega.
        csv << "level,lambda,phi_residual,prescription_residual,pass\n";
        const double omega = config.omega;
        const double c = std::sqrt(0.5 * omega);
        const RadialGrid grid(-5.0, 5.0, 201);
        auto levels = config.levels;
        std::sort(levels.begin(), levels.end());
        for (int level : levels) {
            TransformSpec ts{[c](double z) { return c * z; },
                             [c](double) { return c; }, constant_mass(),
                             hermite_spec(level)};
            auto v_eff = [omega](double z) { return 0.25 * omega * omega * z * z; };
            const double lambda = (level + 0.5) * omega;
            const double phi_res = assemble_phi_residual(ts, v_eff, lambda, grid);
            const double presc_res = prescription_residual(
                ts, [](double) { return 0.0; }, level * omega, grid);
            const bool pass = phi_res <= config.transform_tol && presc_res <= 1e-10;
            all_pass = all_pass && pass;
            csv << level << ',' << format_double(lambda) << ','
                << format_double(phi_res) << ',' << format_double(presc_res) << ','
                << format_bool(pass) << '\n';
        }
        return {csv.str(), all_pass ? exit_ok : exit_check_failed};
    }

    if (which == CheckKind::identity)
        csv << "profile,alpha,gamma,N,L,omega,identity_residual,pass\n";
    else
        csv << "profile,alpha,gamma,N,L,omega,delta_e_mean,delta_e_dev,solvable\n";

    auto dims = config.dims;
    auto angular = config.angular;
    std::sort(dims.begin(), dims.end());
    std::sort(angular.begin(), angular.end());
    const auto grid = detail::check_grid(config);

    for (const auto& profile : detail::selected_profiles(config)) {
        const auto w = oscillator_superpotential_field(profile, config.omega);
        for (const auto& params : detail::selected_presets(config)) {
            for (int n_dim : dims) {
                for (int l : angular) {
                    if (n_dim == 1 && l != 0) continue;
                    QuantumSetting setting{n_dim, l, config.omega, 0};
                    if (which == CheckKind::identity) {
                        const auto report =
                            cross_term_check(profile, params, setting, w, grid);
                        const bool pass =
                            report.identity_residual <= config.identity_tol;
                        all_pass = all_pass && pass;
                        csv << detail::profile_label(profile) << ','
                            << format_double(params.alpha) << ','
                            << format_double(params.gamma) << ',' << n_dim << ','
                            << l << ',' << format_double(config.omega) << ','
                            << format_double(report.identity_residual) << ','
                            << format_bool(pass) << '\n';
                    } else {
                        const auto report =
                            solvability_check(profile, params, setting, w, grid);
                        const bool solvable =
                            report.delta_e_max_deviation <= config.solvability_tol;
                        all_pass = all_pass && solvable;
                        csv << detail::profile_label(profile) << ','
                            << format_double(params.alpha) << ','
                            << format_double(params.gamma) << ',' << n_dim << ','
                            << l << ',' << format_double(config.omega) << ','
                            << format_double(report.delta_e_mean) << ','
                            << format_double(report.delta_e_max_deviation) << ','
                            << format_bool(solvable) << '\n';
                    }
                }
            }
        }
    }
    return {csv.str(), all_pass ? exit_ok : exit_check_failed};
}

// Oracle-focused view: analytic E vs the low-lying oracle spectrum.
inline RunOutput run_verify(const RunConfig& config) {
    std::ostringstream csv;
    csv << "profile,alpha,gamma,N,L,n,omega,E_analytic,E_oracle,abs_err,membership\n";
    auto dims = config.dims;
    auto angular = config.angular;
    auto levels = config.levels;
    std::sort(dims.begin(), dims.end());
    std::sort(angular.begin(), angular.end());
    std::sort(levels.begin(), levels.end());
    for (const auto& profile : detail::selected_profiles(config)) {
        for (const auto& params : detail::selected_presets(config)) {
            for (int n_dim : dims) {
                for (int l : angular) {
                    if (n_dim == 1 && l != 0) continue;
                    for (int n : levels) {
                        QuantumSetting setting{n_dim, l, config.omega, n};
                        auto [result, table] = assemble_solution(
                            profile, params, setting, detail::assembly_grid(config));
                        (void)table;
                        result = oracle::verify_against_analytic(
                            result, profile, params, setting,
                            detail::oracle_options(config));
                        csv << detail::profile_label(profile) << ','
                            << format_double(params.alpha) << ','
                            << format_double(params.gamma) << ',' << n_dim << ','
                            << l << ',' << n << ',' << format_double(config.omega)
                            << ',' << format_double(result.total_e) << ','
                            << format_double(*result.oracle_e) << ','
                            << format_double(*result.abs_err) << ','
                            << format_bool(*result.membership) << '\n';
                    }
                }
            }
        }
    }
    return {csv.str(), exit_ok};
}

inline RunOutput run_list_profiles() {
    std::ostringstream csv;
    csv << "name,parameters\n";
    csv << "constant,\n";
    csv << "rational,a=2\n";
    csv << "inverse-quadratic,\n";
    return {csv.str(), exit_ok};
}

// Plain key=value config file; '#' starts a comment. Lists are
// comma-separated integers.
inline void apply_config_line(RunConfig& config, const std::string& key,
                              const std::string& value) {
    auto parse_list = [](const std::string& s) {
        std::vector<int> out;
        std::stringstream ss(s);
        std::string item;
        while (std::getline(ss, item, ',')) out.push_back(std::stoi(item));
        if (out.empty()) throw std::invalid_argument("empty list value");
        return out;
    };
    if (key == "profile") config.profile = value;
    else if (key.rfind("param.", 0) == 0)
        config.profile_params[key.substr(6)] = std::stod(value);
    else if (key == "preset") config.preset = value;
    else if (key == "omega") config.omega = std::stod(value);
    else if (key == "N") config.dims = parse_list(value);
    else if (key == "L") config.angular = parse_list(value);
    else if (key == "n") config.levels = parse_list(value);
    else if (key == "nodes") config.nodes = std::stoi(value);
    else if (key == "rmax") config.r_max = std::stod(value);
    else if (key == "refine") config.refine_levels = std::stoi(value);
    else if (key == "strict") config.strict = (value == "true" || value == "1");
    else if (key == "out") config.out = value;
    else if (key == "check_rmin") config.check_r_min = std::stod(value);
    else if (key == "check_rmax") config.check_r_max = std::stod(value);
    else if (key == "check_nodes") config.check_nodes = std::stoi(value);
    else if (key == "wf_rmax") config.wf_r_max = std::stod(value);
    else if (key == "wf_nodes") config.wf_nodes = std::stoi(value);
    else if (key == "identity_tol") config.identity_tol = std::stod(value);
    else if (key == "solvability_tol") config.solvability_tol = std::stod(value);
    else if (key == "transform_tol") config.transform_tol = std::stod(value);
    else if (key == "membership_tol") config.membership_tol = std::stod(value);
    else throw std::invalid_argument("unknown config key '" + key + "'");
}

inline void load_config_file(RunConfig& config, const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open config file '" + path + "'");
    std::string line;
    while (std::getline(in, line)) {
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        const auto eq = line.find('=');
        if (eq == std::string::npos) continue;
        auto trim = [](std::string s) {
            const auto b = s.find_first_not_of(" \t\r");
            const auto e = s.find_last_not_of(" \t\r");
            return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
        };
        const auto key = trim(line.substr(0, eq));
        const auto value = trim(line.substr(eq + 1));
        if (key.empty()) continue;
        apply_config_line(config, key, value);
    }
}

} // namespace pdm::runner

#endif
