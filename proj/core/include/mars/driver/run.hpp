#pragma once

#include "mars/controller.hpp"
#include "mars/driver/config.hpp"
#include "mars/driver/snapshot.hpp"
#include "mars/model.hpp"
#include "mars/noise.hpp"
#include "mars/stepper.hpp"

#include <cstddef>
#include <filesystem>
#include <optional>
#include <ostream>
#include <string>

namespace mars::driver {

inline constexpr int kExitOk = 0;
inline constexpr int kExitValidation = 2;
inline constexpr int kExitBlowUp = 3;
inline constexpr int kExitRupture = 4;
inline constexpr int kExitProximity = 5;

enum class LambdaMode {
    adaptive,  ///< controller updates lambda once per macro step
    fixed,     ///< initial lambda kept throughout
    zero,      ///< lambda = 0: plain explicit Richardson steps
};

struct SimulationOptions {
    LambdaMode mode = LambdaMode::adaptive;
    int n_half = 2;
    bool reject_steps = false;
    double reject_factor = 100.0;
    std::size_t max_rejections = 20;
};

/// Diagnostics of one macro step.
struct StepReport {
    std::size_t step = 0;  ///< steps completed after this one
    double time = 0.0;
    std::vector<RealField> error;  ///< Richardson estimator u1 - u2
    NoiseMeasure noise;
    bool step_accepted = true;    ///< false if any attempt was rejected first
    std::size_t rejections = 0;
};

/// One simulation pipeline: richardson_step -> noise -> update_lambda.
class Simulation {
public:
    Simulation(const Model& model, ControllerConfig controller, SimulationOptions options = {});
    /// Starts from a given state and lambda instead of the model's.
    Simulation(const Model& model, State initial, DampingSpectrum lambda, ControllerConfig controller,
               SimulationOptions options = {});

    /// Advances one macro step; model errors propagate and leave the
    /// simulation at the last good state.
    StepReport step();

    const Model& model() const noexcept { return model_; }
    const State& state() const noexcept { return state_; }
    const DampingSpectrum& lambda() const noexcept { return lambda_; }
    const NoiseMeasure& last_noise() const noexcept { return noise_; }
    std::size_t steps() const noexcept { return steps_; }

    /// Current fields, lambda, last noise and oracle data.
    Snapshot snapshot() const;

private:
    const Model& model_;
    ControllerConfig controller_;
    SimulationOptions options_;
    EinStepper stepper_;
    RhsEvaluator rhs_;
    State state_;
    DampingSpectrum lambda_;
    NoiseMeasure noise_;
    std::size_t steps_ = 0;
};

/// Every effective parameter as text, for the manifest.
std::map<std::string, std::string> resolved_parameters(const RunConfig& config);

struct RunOutcome {
    int exit_code = kExitOk;
    std::string status;  ///< completed, blowup, rupture, proximity
    std::string message;
    std::size_t steps = 0;
    double time = 0.0;
    std::filesystem::path out_dir;
};

/// Runs to t_end, writing snapshots every `snapshot_every` steps plus the
/// initial and final state. Errors end the run with a final snapshot of the
/// last good state and error.json; they are reported through the outcome,
/// not thrown.
RunOutcome run(const RunConfig& config, std::ostream& log);

}  // namespace mars::driver
