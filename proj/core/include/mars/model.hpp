#pragma once

#include "mars/controller.hpp"
#include "mars/grid.hpp"
#include "mars/stepper.hpp"

#include <map>
#include <string>
#include <vector>

namespace mars {

/// Analytic stability data for the current state, on the full index grid.
struct StabilityOracle {
    std::vector<double> e;         ///< linearized stiff spectrum e(k)
    std::vector<double> lambda_c;  ///< 2 e(k) / 3
    double ke = 0.0;               ///< explicit stability boundary
};

/// What the driver needs from a stiff model problem.
class Model {
public:
    virtual ~Model() = default;

    virtual std::string name() const = 0;
    virtual const Grid& grid() const = 0;
    virtual double dt() const = 0;
    /// Names of the state components, e.g. {"h"} or {"x", "y"}.
    virtual std::vector<std::string> component_names() const = 0;

    virtual State initial_state() const = 0;
    virtual RhsEvaluator rhs() const = 0;
    virtual DampingSpectrum initial_lambda(const State& state) const = 0;
    virtual StabilityOracle oracle(const State& state) const = 0;
    virtual ControllerConfig default_controller() const = 0;

    /// Per-snapshot scalars (interface length, extrema, ...).
    virtual std::map<std::string, double> diagnostics(const State&) const { return {}; }

    /// Components as written to snapshots (e.g. x with its linear ramp restored).
    virtual std::vector<RealField> output_components(const State& state) const { return state.components; }
};

}  // namespace mars
