#include "mars/stepper.hpp"

#include "mars/error.hpp"

#include <cmath>
#include <string>

namespace mars {

DampingSpectrum::DampingSpectrum(const Grid& grid) : grid_(grid), values_(grid.size(), 0.0) {}

DampingSpectrum::DampingSpectrum(const Grid& grid, std::vector<double> values)
    : grid_(grid), values_(std::move(values)) {
    if (values_.size() != grid_.size()) {
        throw ConfigError("damping spectrum size does not match grid");
    }
    if (values_[0] != 0.0) {
        throw ConfigError("damping spectrum must vanish at the mean mode");
    }
    for (std::size_t k = 0; k < values_.size(); ++k) {
        if (!(values_[k] >= 0.0) || !std::isfinite(values_[k])) {
            throw ConfigError("damping spectrum must be finite and nonnegative (index " + std::to_string(k) + ")");
        }
        if (values_[k] != values_[grid_.mirror(k)]) {
            throw ConfigError("damping spectrum is not symmetric at index " + std::to_string(k));
        }
    }
}

void DampingSpectrum::set_pair(std::size_t k, double value) {
    if (k == 0) {
        return;
    }
    values_[k] = value;
    values_[grid_.mirror(k)] = value;
}

EinStepper::EinStepper(const Grid& grid) : transform_(grid) {}

namespace {

void check_finite(const RealField& f, const char* what, std::size_t step) {
    for (double v : f) {
        if (!std::isfinite(v)) {
            throw BlowUpError(std::string("non-finite ") + what, step);
        }
    }
}

}  // namespace

State EinStepper::ein_step(const State& state, const RhsEvaluator& rhs, const DampingSpectrum& lambda, double dt,
                           std::size_t step_index) const {
    if (!(dt > 0.0) || !std::isfinite(dt)) {
        throw ConfigError("time step must be positive");
    }
    const Grid& g = grid();
    if (!(lambda.grid() == g)) {
        throw ConfigError("damping spectrum grid does not match the state grid");
    }
    std::vector<RealField> f = rhs(state);
    if (f.size() != state.components.size()) {
        throw ConfigError("right-hand side returned the wrong number of components");
    }

    State next{{}, state.time + dt};
    next.components.reserve(state.components.size());
    const double inv_dt = 1.0 / dt;
    for (std::size_t c = 0; c < f.size(); ++c) {
        check_finite(f[c], "right-hand side", step_index);
        SpectralField u_hat = transform_.forward(state.components[c]);
        const SpectralField f_hat = transform_.forward(f[c]);
        for (std::size_t k = 0; k < u_hat.coefficients.size(); ++k) {
            u_hat[k] += f_hat[k] / (inv_dt + lambda[k]);
        }
        RealField u = transform_.inverse(u_hat);
        for (double v : u) {
            if (!std::isfinite(v) || std::abs(v) > kBlowUpCeiling) {
                throw BlowUpError("state exceeded blow-up ceiling", step_index);
            }
        }
        next.components.push_back(std::move(u));
    }
    return next;
}

RichardsonResult richardson_combine(const State& full_step, const State& half_steps) {
    RichardsonResult out;
    out.state.time = half_steps.time;
    for (std::size_t c = 0; c < full_step.components.size(); ++c) {
        const RealField& u1 = full_step.components[c];
        const RealField& u2 = half_steps.components[c];
        RealField extrapolated(u1.size());
        RealField error(u1.size());
        for (std::size_t j = 0; j < u1.size(); ++j) {
            extrapolated[j] = 2.0 * u2[j] - u1[j];
            error[j] = u1[j] - u2[j];
        }
        out.state.components.push_back(std::move(extrapolated));
        out.error.push_back(std::move(error));
    }
    return out;
}

RichardsonResult EinStepper::richardson_step(const State& state, const RhsEvaluator& rhs,
                                             const DampingSpectrum& lambda, double dt,
                                             std::size_t step_index) const {
    const State full = ein_step(state, rhs, lambda, dt, step_index);
    const State half = ein_step(state, rhs, lambda, 0.5 * dt, step_index);
    State two_halves = ein_step(half, rhs, lambda, 0.5 * dt, step_index);
    two_halves.time = state.time + dt;
    return richardson_combine(full, two_halves);
}

double linear_stability_factor(double e, double lambda, double dt) {
    auto one_step = [&](double h) { return 1.0 - e * h / (1.0 + lambda * h); };
    const double half = one_step(0.5 * dt);
    return 2.0 * half * half - one_step(dt);
}

}  // namespace mars
