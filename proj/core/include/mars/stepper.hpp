#pragma once

#include "mars/grid.hpp"
#include "mars/spectral.hpp"

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

namespace mars {

/// Simulation state: one or more real components on a common grid.
struct State {
    std::vector<RealField> components;
    double time = 0.0;
};

/// Right-hand side f(u, t); must be deterministic.
using RhsEvaluator = std::function<std::vector<RealField>(const State&)>;

/// Nonnegative per-mode damping lambda(k), symmetric under k -> -k, zero at the mean mode.
class DampingSpectrum {
public:
    /// All-zero spectrum (explicit scheme).
    explicit DampingSpectrum(const Grid& grid);
    /// Validates nonnegativity, symmetry and lambda(0) == 0.
    DampingSpectrum(const Grid& grid, std::vector<double> values);

    const Grid& grid() const noexcept { return grid_; }
    std::span<const double> values() const noexcept { return values_; }
    double operator[](std::size_t k) const { return values_[k]; }
    std::size_t size() const noexcept { return values_.size(); }

    /// Sets a conjugate pair at once so symmetry cannot be broken.
    void set_pair(std::size_t k, double value);

private:
    Grid grid_;
    std::vector<double> values_;
};

struct RichardsonResult {
    State state;                  ///< 2 u2 - u1
    std::vector<RealField> error;  ///< E = u1 - u2, per component
};

/// Explicit-implicit-null step diagonal in Fourier space.
class EinStepper {
public:
    /// Any |u| above this aborts the run.
    static constexpr double kBlowUpCeiling = 1e8;

    explicit EinStepper(const Grid& grid);

    const Grid& grid() const noexcept { return transform_.grid(); }
    const FourierTransform& transform() const noexcept { return transform_; }

    /// u_k <- u_k + f_k / (1/dt + lambda(k)) for every component.
    State ein_step(const State& state, const RhsEvaluator& rhs, const DampingSpectrum& lambda, double dt,
                   std::size_t step_index = 0) const;

    /// One step of dt and two of dt/2 with the same lambda.
    RichardsonResult richardson_step(const State& state, const RhsEvaluator& rhs, const DampingSpectrum& lambda,
                                     double dt, std::size_t step_index = 0) const;

private:
    FourierTransform transform_;
};

/// Combines a full step u1 and a double half step u2 into (2 u2 - u1, u1 - u2).
RichardsonResult richardson_combine(const State& full_step, const State& half_steps);

/// Amplification factor of the Richardson-extrapolated EIN scheme for u' = -e u.
double linear_stability_factor(double e, double lambda, double dt);

}  // namespace mars
