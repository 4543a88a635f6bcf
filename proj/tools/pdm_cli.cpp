// Command-line front end for the position-dependent-mass solver library.
// Exit codes: 0 ok, 1 usage error, 2 failed strict/check run, 3 numeric failure.

#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "pdm/runner.hpp"

namespace {

int emit(const pdm::runner::RunOutput& output, const std::string& out_path) {
    if (out_path.empty()) {
        std::cout << output.csv;
    } else {
        std::ofstream out(out_path, std::ios::binary);
        if (!out) {
            std::cerr << "error: cannot open output file '" << out_path << "'\n";
            return pdm::runner::exit_usage;
        }
        out << output.csv;
    }
    return output.exit_code;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Analytic splitting method for N-dimensional "
                 "position-dependent-mass Schrodinger equations, with an "
                 "independent finite-difference oracle"};
    app.require_subcommand(1);

    pdm::runner::RunConfig config;
    std::string config_path;
    std::vector<std::string> raw_params;

    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--config", config_path, "key=value config file");
        sub->add_option("--profile", config.profile,
                        "mass profile name (or 'all' for checks)");
        sub->add_option("--param", raw_params, "profile parameter key=value")
            ->take_all();
        sub->add_option("--preset", config.preset,
                        "Hamiltonian preset (bendaniel-duke | zhu-kroemer)");
        sub->add_option("--omega", config.omega, "oscillator scale");
        sub->add_option("--N", config.dims, "dimension list")->delimiter(',');
        sub->add_option("--L", config.angular, "angular momentum list")
            ->delimiter(',');
        sub->add_option("--n", config.levels, "level list")->delimiter(',');
        sub->add_option("--nodes", config.nodes, "oracle base-grid interior nodes");
        sub->add_option("--rmax", config.r_max, "oracle half-line extent");
        sub->add_option("--refine", config.refine_levels, "Richardson levels (2|3)");
        sub->add_flag("--strict", config.strict,
                      "exit 2 when any case is not exactly solvable");
        sub->add_option("--out", config.out, "output CSV path (default stdout)");
    };

    auto* spectrum = app.add_subcommand("spectrum", "energy table with oracle check");
    auto* wavefunction =
        app.add_subcommand("wavefunction", "tabulated Psi = F G for one setting");
    auto* check_identity =
        app.add_subcommand("check-identity", "cross-term identity residuals");
    auto* check_solvability =
        app.add_subcommand("check-solvability", "energy-correction constancy");
    auto* transform_check =
        app.add_subcommand("transform-check", "special-function harness residuals");
    auto* verify = app.add_subcommand("verify", "analytic vs oracle eigenvalues");
    auto* list_profiles =
        app.add_subcommand("list-profiles", "built-in mass profiles");
    for (auto* sub : {spectrum, wavefunction, check_identity, check_solvability,
                      transform_check, verify})
        add_common(sub);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return e.get_exit_code() == 0 ? 0 : pdm::runner::exit_usage;
    }

    try {
        if (!config_path.empty())
            pdm::runner::load_config_file(config, config_path);
        // flags win over the config file: re-parse by applying raw params last
        for (const auto& kv : raw_params) {
            const auto eq = kv.find('=');
            if (eq == std::string::npos) {
                std::cerr << "error: --param expects key=value\n";
                return pdm::runner::exit_usage;
            }
            config.profile_params[kv.substr(0, eq)] = std::stod(kv.substr(eq + 1));
        }

        pdm::runner::RunOutput output;
        if (spectrum->parsed()) {
            output = pdm::runner::run_spectrum(config);
        } else if (wavefunction->parsed()) {
            output = pdm::runner::run_wavefunction(config, config.dims.front(),
                                                   config.angular.front(),
                                                   config.levels.front());
        } else if (check_identity->parsed()) {
            output =
                pdm::runner::run_checks(config, pdm::runner::CheckKind::identity);
        } else if (check_solvability->parsed()) {
            output =
                pdm::runner::run_checks(config, pdm::runner::CheckKind::solvability);
        } else if (transform_check->parsed()) {
            output =
                pdm::runner::run_checks(config, pdm::runner::CheckKind::transform);
        } else if (verify->parsed()) {
            output = pdm::runner::run_verify(config);
        } else if (list_profiles->parsed()) {
            output = pdm::runner::run_list_profiles();
        }
        return emit(output, config.out);
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return pdm::runner::exit_usage;
    } catch (const std::exception& e) {
        std::cerr << "numeric failure: " << e.what() << "\n";
        return pdm::runner::exit_numeric;
    }
}
