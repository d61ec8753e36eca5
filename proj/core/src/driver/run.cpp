#include "mars/driver/run.hpp"

#include "mars/error.hpp"
#include "mars/random.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>

namespace mars::driver {

namespace {

DampingSpectrum starting_lambda(const Model& model, const State& state, LambdaMode mode) {
    if (mode == LambdaMode::zero) {
        return DampingSpectrum(model.grid());
    }
    return model.initial_lambda(state);
}

std::string text(double v) {
    std::array<char, 32> buf{};
    const auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), v);
    return std::string(buf.data(), ptr);
}

}  // namespace

Simulation::Simulation(const Model& model, ControllerConfig controller, SimulationOptions options)
    : Simulation(model, model.initial_state(), DampingSpectrum(model.grid()), controller, options) {
    lambda_ = starting_lambda(model_, state_, options_.mode);
}

Simulation::Simulation(const Model& model, State initial, DampingSpectrum lambda, ControllerConfig controller,
                       SimulationOptions options)
    : model_(model),
      controller_(controller),
      options_(options),
      stepper_(model.grid()),
      rhs_(model.rhs()),
      state_(std::move(initial)),
      lambda_(std::move(lambda)),
      noise_(model.grid().size(), 0.0) {
    controller_.validate();
    if (lambda_.grid() != model.grid()) {
        throw ConfigError("lambda grid does not match the model grid");
    }
}

StepReport Simulation::step() {
    StepReport report;
    const double dt = model_.dt();
    while (true) {
        RichardsonResult result = stepper_.richardson_step(state_, rhs_, lambda_, dt, steps_);
        NoiseMeasure eps = noise_from_error(stepper_.transform(), result.error, options_.n_half);

        if (options_.mode == LambdaMode::adaptive) {
            const double worst = *std::max_element(eps.begin(), eps.end());
            lambda_ = update_lambda(lambda_, eps, controller_);
            if (options_.reject_steps && worst > options_.reject_factor * controller_.epsilon_u &&
                report.rejections < options_.max_rejections) {
                ++report.rejections;
                report.step_accepted = false;
                continue;
            }
        }

        state_ = std::move(result.state);
        noise_ = eps;
        ++steps_;
        report.step = steps_;
        report.time = state_.time;
        report.error = std::move(result.error);
        report.noise = std::move(eps);
        return report;
    }
}

Snapshot Simulation::snapshot() const {
    const Grid& grid = model_.grid();
    const StabilityOracle oracle = model_.oracle(state_);
    Snapshot s;
    s.model = model_.name();
    s.step = steps_;
    s.time = state_.time;
    s.nx = grid.nx();
    s.ny = grid.ny();
    s.ke = oracle.ke;
    s.diagnostics = model_.diagnostics(state_);
    s.component_names = model_.component_names();
    s.components = model_.output_components(state_);
    s.lambda.assign(lambda_.values().begin(), lambda_.values().end());
    s.epsilon = noise_;
    s.lambda_c = oracle.lambda_c;
    return s;
}

std::map<std::string, std::string> resolved_parameters(const RunConfig& c) {
    std::map<std::string, std::string> p{
        {"model", to_string(c.model)},
        {"dt", text(c.dt())},
        {"epsilon_u", text(c.controller.epsilon_u)},
        {"t_end", text(c.t_end)},
        {"snapshot_every", std::to_string(c.snapshot_every)},
        {"seed", std::to_string(c.seed)},
        {"n_half", std::to_string(c.n_half)},
        {"up_factor", text(c.controller.up_factor)},
        {"down_factor", text(c.controller.down_factor)},
        {"lambda_floor", text(c.controller.lambda_floor)},
        {"zero_seed", c.controller.zero_seed ? text(*c.controller.zero_seed) : "none"},
        {"reject_steps", c.reject_steps ? "true" : "false"},
        {"reject_factor", text(c.reject_factor)},
        {"max_rejections", std::to_string(c.max_rejections)},
        {"lambda_mode", c.explicit_scheme ? "zero" : (c.fixed_lambda ? "fixed" : "adaptive")},
    };
    switch (c.model) {
        case ModelKind::thinfilm:
            p["N"] = std::to_string(c.thinfilm.n);
            p["A"] = text(c.thinfilm.amplitude);
            p["h0"] = text(c.thinfilm.h0);
            break;
        case ModelKind::ks2d:
            p["nx"] = std::to_string(c.ks2d.nx);
            p["ny"] = std::to_string(c.ks2d.ny);
            p["nu"] = text(c.ks2d.nu);
            p["amplitude"] = text(c.ks2d.amplitude);
            break;
        case ModelKind::heleshaw:
            p["N"] = std::to_string(c.heleshaw.n);
            p["S"] = text(c.heleshaw.surface_tension);
            p["R"] = text(c.heleshaw.gravity);
            p["noise_amplitude"] = text(c.heleshaw.noise_amplitude);
            break;
    }
    return p;
}

RunOutcome run(const RunConfig& config, std::ostream& log) {
    RunOutcome outcome;
    outcome.out_dir = config.out_dir;

    const std::unique_ptr<Model> model = make_model(config);
    SimulationOptions options;
    options.mode = config.explicit_scheme ? LambdaMode::zero
                                          : (config.fixed_lambda ? LambdaMode::fixed : LambdaMode::adaptive);
    options.n_half = config.n_half;
    options.reject_steps = config.reject_steps;
    options.reject_factor = config.reject_factor;
    options.max_rejections = config.max_rejections;
    Simulation sim(*model, config.controller, options);

    Manifest manifest;
    manifest.model = model->name();
    manifest.config = config.raw;
    manifest.resolved = resolved_parameters(config);
    manifest.seed = config.seed;
    manifest.rng_algorithm = PortableRandom::kAlgorithm;
    manifest.warnings = config.warnings;
    SnapshotWriter writer(config.out_dir, manifest);

    for (const auto& w : config.warnings) {
        log << "warning: " << w << '\n';
    }

    const double dt = model->dt();
    const auto total = static_cast<std::size_t>(std::ceil(config.t_end / dt - 1e-9));
    log << model->name() << ": " << total << " steps of dt=" << dt << " to t=" << config.t_end << '\n';
    writer.write(sim.snapshot());

    auto fail = [&](const std::string& kind, int code, const std::string& message) {
        outcome.exit_code = code;
        outcome.status = kind;
        outcome.message = message;
        outcome.steps = sim.steps();
        outcome.time = sim.state().time;
        log << "error (" << kind << ") at step " << sim.steps() << ", t=" << sim.state().time << ": " << message
            << '\n';
        writer.write(sim.snapshot());
        writer.write_error({kind, message, sim.steps(), sim.state().time, code});
        writer.finish(kind);
        return outcome;
    };

    try {
        while (sim.steps() < total) {
            sim.step();
            if (sim.steps() % config.snapshot_every == 0 || sim.steps() == total) {
                writer.write(sim.snapshot());
                const auto& eps = sim.last_noise();
                log << "step " << sim.steps() << " t=" << sim.state().time
                    << " max_eps=" << *std::max_element(eps.begin(), eps.end()) << '\n';
            }
        }
    } catch (const BlowUpError& e) {
        return fail("blowup", kExitBlowUp, e.what());
    } catch (const NumericalCorruptionError& e) {
        return fail("blowup", kExitBlowUp, e.what());
    } catch (const RuptureError& e) {
        return fail("rupture", kExitRupture, e.what());
    } catch (const ProximityError& e) {
        return fail("proximity", kExitProximity, e.what());
    } catch (const GeometryError& e) {
        return fail("proximity", kExitProximity, e.what());
    }

    writer.finish("completed");
    outcome.status = "completed";
    outcome.steps = sim.steps();
    outcome.time = sim.state().time;
    return outcome;
}

}  // namespace mars::driver
