#include "mars/controller.hpp"

#include "mars/error.hpp"

#include <algorithm>
#include <cmath>

namespace mars {

void ControllerConfig::validate() const {
    if (!(epsilon_u > 0.0) || !std::isfinite(epsilon_u)) {
        throw ConfigError("epsilon_u must be positive");
    }
    if (!(up_factor > 1.0) || !std::isfinite(up_factor)) {
        throw ConfigError("up_factor must be > 1");
    }
    if (!(down_factor > 1.0) || !std::isfinite(down_factor)) {
        throw ConfigError("down_factor must be > 1");
    }
    if (!(lambda_floor >= 0.0) || !std::isfinite(lambda_floor)) {
        throw ConfigError("lambda_floor must be >= 0");
    }
    if (zero_seed && (!(*zero_seed >= 0.0) || !std::isfinite(*zero_seed))) {
        throw ConfigError("zero_seed must be >= 0");
    }
}

DampingSpectrum update_lambda(const DampingSpectrum& lambda, const NoiseMeasure& eps, const ControllerConfig& cfg) {
    const Grid& grid = lambda.grid();
    if (eps.size() != lambda.size()) {
        throw ConfigError("noise measure does not match damping spectrum");
    }
    DampingSpectrum out = lambda;
    for (std::size_t k = 1; k < lambda.size(); ++k) {
        const std::size_t partner = grid.mirror(k);
        if (partner < k) {
            continue;  // pair already handled
        }
        const double noise = std::max(eps[k], eps[partner]);
        double value = lambda[k];
        if (noise > cfg.epsilon_u) {
            value = (value == 0.0 && cfg.zero_seed) ? *cfg.zero_seed : value * cfg.up_factor;
        } else {
            value /= cfg.down_factor;
        }
        out.set_pair(k, std::max(value, cfg.lambda_floor));
    }
    return out;
}

std::vector<double> lambda_critical(std::span<const double> e) {
    std::vector<double> out(e.size());
    std::transform(e.begin(), e.end(), out.begin(), [](double v) { return 2.0 * v / 3.0; });
    return out;
}

double explicit_boundary_ke(std::span<const double> e_of_k, double dt) {
    const double limit = 2.0 / dt;
    for (std::size_t k = 1; k < e_of_k.size(); ++k) {
        if (e_of_k[k] >= limit) {
            const double lo = e_of_k[k - 1];
            const double hi = e_of_k[k];
            return static_cast<double>(k - 1) + (limit - lo) / (hi - lo);
        }
    }
    return e_of_k.empty() ? 0.0 : static_cast<double>(e_of_k.size() - 1);
}

double explicit_boundary_ke(const std::function<double(double)>& e_of_k, double dt, double k_max) {
    const double limit = 2.0 / dt;
    if (e_of_k(k_max) < limit) {
        return k_max;
    }
    double lo = 0.0;
    double hi = k_max;
    for (int it = 0; it < 200 && hi - lo > 1e-14 * k_max; ++it) {
        const double mid = 0.5 * (lo + hi);
        (e_of_k(mid) < limit ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
}

DampingSpectrum init_power_law(double lambda0, double power, const Grid& grid) {
    if (!(lambda0 >= 0.0) || !(power >= 0.0)) {
        throw ConfigError("power-law damping needs lambda0 >= 0 and power >= 0");
    }
    std::vector<double> values(grid.size(), 0.0);
    for (std::size_t ix = 0; ix < grid.nx(); ++ix) {
        const auto kx = static_cast<double>(mode_frequency(ix, grid.nx()));
        for (std::size_t iy = 0; iy < grid.ny(); ++iy) {
            const auto ky = grid.ny() == 1 ? 0.0 : static_cast<double>(mode_frequency(iy, grid.ny()));
            const double magnitude = std::hypot(kx, ky);
            values[grid.index(ix, iy)] = magnitude == 0.0 ? 0.0 : lambda0 * std::pow(magnitude, power);
        }
    }
    return DampingSpectrum(grid, std::move(values));
}

}  // namespace mars
