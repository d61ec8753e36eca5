#pragma once

#include "mars/grid.hpp"
#include "mars/noise.hpp"
#include "mars/stepper.hpp"

#include <functional>
#include <optional>
#include <span>
#include <vector>

namespace mars {

struct ControllerConfig {
    double epsilon_u = 1e-8;     ///< noise threshold
    double up_factor = 1.2;      ///< applied when eps(k) > epsilon_u
    double down_factor = 1.02;   ///< lambda divided by this otherwise
    double lambda_floor = 0.0;
    /// Value given to a mode stuck at lambda = 0 that reports noise.
    /// Unset means multiplication only (zero stays zero).
    std::optional<double> zero_seed;

    /// Throws ConfigError naming the offending field.
    void validate() const;
};

/// Multiplicative per-mode update; each conjugate pair is updated once
/// from the larger of its two noise values. The mean mode stays at zero.
DampingSpectrum update_lambda(const DampingSpectrum& lambda, const NoiseMeasure& eps, const ControllerConfig& cfg);

/// (2/3) e pointwise: marginal damping of the second-order scheme.
std::vector<double> lambda_critical(std::span<const double> e);

/// Explicit stability boundary from a table e(k), k = 0, 1, ..., increasing
/// on the searched range: the crossing of e = 2/dt, linearly interpolated
/// between integer modes. Returns the last index if e < 2/dt everywhere.
double explicit_boundary_ke(std::span<const double> e_of_k, double dt);

/// Same crossing for a continuous (e.g. small-k) form of e, by bisection on [0, k_max].
double explicit_boundary_ke(const std::function<double(double)>& e_of_k, double dt, double k_max);

/// lambda(k) = lambda0 * |k|^power with |k| the signed-wavenumber magnitude
/// (Euclidean in 2D); lambda at the mean mode is 0.
DampingSpectrum init_power_law(double lambda0, double power, const Grid& grid);

}  // namespace mars
