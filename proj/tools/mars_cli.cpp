// mars: run the adaptive EIN integrator on a bundled model, dump stability
// oracles, or run the acceptance checks.

#include "acceptance.hpp"
#include "mars/driver/config.hpp"
#include "mars/driver/run.hpp"
#include "mars/error.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <iomanip>
#include <iostream>
#include <optional>

namespace {

using namespace mars;
using namespace mars::driver;

int cmd_run(const std::string& model_name, const std::string& config_path, const std::optional<std::string>& out,
            const std::optional<std::uint64_t>& seed, const std::optional<double>& t_end, bool explicit_scheme,
            bool fixed_lambda) {
    RunConfig cfg;
    try {
        const ModelKind kind = parse_model_kind(model_name);
        cfg = validate_config(kind, config_path.empty() ? RawConfig{} : read_config_file(config_path));
        if (seed) {
            cfg.seed = *seed;
        }
        if (t_end) {
            if (!(*t_end > 0.0)) {
                throw ConfigError("t_end: must be positive");
            }
            cfg.t_end = *t_end;
        }
        cfg.explicit_scheme = explicit_scheme;
        cfg.fixed_lambda = fixed_lambda;
        if (out) {
            cfg.out_dir = *out;
        }
        if (const char* env = std::getenv("MARS_OUT"); env && *env) {
            cfg.out_dir = env;
        }
    } catch (const ConfigError& e) {
        std::cerr << "invalid configuration:\n" << e.what() << '\n';
        return kExitValidation;
    }

    try {
        const RunOutcome outcome = run(cfg, std::cerr);
        std::cerr << outcome.status << ": " << outcome.steps << " steps, t=" << outcome.time << ", output in "
                  << outcome.out_dir.string() << '\n';
        return outcome.exit_code;
    } catch (const ConfigError& e) {
        std::cerr << "invalid configuration:\n" << e.what() << '\n';
        return kExitValidation;
    }
}

int cmd_oracle(const std::string& model_name, const std::string& config_path) {
    try {
        const ModelKind kind = parse_model_kind(model_name);
        const RunConfig cfg = validate_config(kind, config_path.empty() ? RawConfig{} : read_config_file(config_path));
        const auto model = make_model(cfg);
        const State state = model->initial_state();
        const StabilityOracle oracle = model->oracle(state);
        const Grid& grid = model->grid();

        std::cout << std::setprecision(17);
        std::cout << "# model=" << model->name() << "\n# dt=" << model->dt() << "\n# ke=" << oracle.ke << '\n';
        for (const auto& [key, value] : model->diagnostics(state)) {
            std::cout << "# diag." << key << '=' << value << '\n';
        }
        const bool two_d = grid.rank() == 2;
        std::cout << (two_d ? "kx,ky,e,lambda_c\n" : "k,e,lambda_c\n");
        for (std::size_t i = 0; i < grid.size(); ++i) {
            if (two_d) {
                std::cout << mode_frequency(i / grid.ny(), grid.nx()) << ',' << mode_frequency(i % grid.ny(), grid.ny());
            } else {
                std::cout << mode_frequency(i, grid.nx());
            }
            std::cout << ',' << oracle.e[i] << ',' << oracle.lambda_c[i] << '\n';
        }
        return kExitOk;
    } catch (const ConfigError& e) {
        std::cerr << "invalid configuration:\n" << e.what() << '\n';
        return kExitValidation;
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Adaptive explicit-implicit-null integrator for stiff PDEs"};
    app.require_subcommand(1);

    std::string model;
    std::string config;
    std::optional<std::string> out;
    std::optional<std::uint64_t> seed;
    std::optional<double> t_end;
    bool explicit_scheme = false;
    bool fixed_lambda = false;

    auto* run = app.add_subcommand("run", "integrate a model and write snapshots");
    run->add_option("--model", model, "thinfilm, ks2d or heleshaw")->required();
    run->add_option("--config", config, "key = value file (empty for defaults)")->required();
    run->add_option("--out", out, "output directory (MARS_OUT overrides)");
    run->add_option("--seed", seed, "random seed");
    run->add_option("--t-end", t_end, "final time");
    auto* explicit_flag = run->add_flag("--explicit", explicit_scheme, "lambda = 0, no adaptation");
    run->add_flag("--fixed-lambda", fixed_lambda, "keep the initial lambda")->excludes(explicit_flag);

    std::string oracle_model;
    std::string oracle_config;
    auto* oracle = app.add_subcommand("oracle", "print e(k), lambda_c(k) and k_e for the initial state");
    oracle->add_option("--model", oracle_model, "thinfilm, ks2d or heleshaw")->required();
    oracle->add_option("--config", oracle_config, "key = value file");

    auto* check = app.add_subcommand("check", "run the acceptance checks");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : mars::driver::kExitValidation;
    }

    if (*run) {
        return cmd_run(model, config, out, seed, t_end, explicit_scheme, fixed_lambda);
    }
    if (*oracle) {
        return cmd_oracle(oracle_model, oracle_config);
    }
    if (*check) {
        const auto results = mars::acceptance::run_all(std::cout);
        return mars::acceptance::all_passed(results) ? 0 : 1;
    }
    return 0;
}
