#include "mars/thin_film.hpp"

#include "mars/error.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

namespace mars::thin_film {

using std::numbers::pi;

double max_growth_height() { return std::pow(2.0, -0.25) / std::sqrt(2.0 * pi); }

RealField rhs(std::span<const double> h, double dx) {
    const std::size_t n = h.size();
    for (std::size_t j = 0; j < n; ++j) {
        if (!(h[j] > 0.0)) {
            throw RuptureError("film ruptured: h[" + std::to_string(j) + "] = " + std::to_string(h[j]));
        }
    }
    const double dx2 = dx * dx;
    const double dx3 = dx2 * dx;
    const double dx4 = dx2 * dx2;
    RealField f(n);
    for (std::size_t j = 0; j < n; ++j) {
        const double hm2 = h[(j + n - 2) % n];
        const double hm1 = h[(j + n - 1) % n];
        const double h0 = h[j];
        const double hp1 = h[(j + 1) % n];
        const double hp2 = h[(j + 2) % n];

        const double d1 = (hp1 - hm1) / (2.0 * dx);
        const double d2 = (hp1 - 2.0 * h0 + hm1) / dx2;
        const double d3 = (-hm2 + 2.0 * hm1 - 2.0 * hp1 + hp2) / (2.0 * dx3);
        const double d4 = (hm2 - 4.0 * hm1 + 6.0 * h0 - 4.0 * hp1 + hp2) / dx4;

        f[j] = -h0 * h0 * h0 * d4 - 3.0 * h0 * h0 * d1 * d3 - d2 / h0 + d1 * d1 / (h0 * h0);
    }
    return f;
}

RealField stiff_operator(std::span<const double> u, double hbar, double dx) {
    const std::size_t n = u.size();
    const double coeff = -hbar * hbar * hbar / (dx * dx * dx * dx);
    RealField f(n);
    for (std::size_t j = 0; j < n; ++j) {
        f[j] = coeff * (u[(j + n - 2) % n] - 4.0 * u[(j + n - 1) % n] + 6.0 * u[j] - 4.0 * u[(j + 1) % n] +
                        u[(j + 2) % n]);
    }
    return f;
}

State initial_condition(const Params& params) {
    RealField h(params.n);
    for (std::size_t j = 0; j < params.n; ++j) {
        const double x = static_cast<double>(j) / static_cast<double>(params.n);
        h[j] = params.h0 + params.amplitude * std::cos(2.0 * pi * x);
    }
    return State{{std::move(h)}, 0.0};
}

double dispersion(double k, double h0) { return -h0 * h0 * h0 * std::pow(k, 4) + k * k / h0; }

double e_theory(long k, double hbar, std::size_t n) {
    const double dx = 1.0 / static_cast<double>(n);
    const double da = 2.0 * pi / static_cast<double>(n);
    const double kd = static_cast<double>(k) * da;
    // cos 2x - 4 cos x + 3 = 8 sin^4(x/2), written without cancellation at small k
    const double s = std::sin(0.5 * kd);
    return 16.0 * hbar * hbar * hbar / std::pow(dx, 4) * s * s * s * s;
}

double lambda0_bound(double hbar) { return 32.0 / 3.0 * std::pow(pi, 4) * hbar * hbar * hbar; }

double ke_small_k(double hbar, double dt) { return std::pow(2.0 / (dt * hbar * hbar * hbar), 0.25) / (2.0 * pi); }

Model::Model(Params params) : params_(params), grid_(Grid::line(params.n, 1.0)) {
    if (!(params_.dt > 0.0)) {
        throw ConfigError("dt must be positive");
    }
    if (!(params_.h0 > 0.0)) {
        throw ConfigError("h0 must be positive");
    }
}

State Model::initial_state() const { return initial_condition(params_); }

RhsEvaluator Model::rhs() const {
    const double dx = grid_.dx();
    return [dx](const State& s) { return std::vector<RealField>{thin_film::rhs(s.components[0], dx)}; };
}

DampingSpectrum Model::initial_lambda(const State& state) const {
    const RealField& h = state.components[0];
    const double hmax = *std::max_element(h.begin(), h.end());
    return init_power_law(lambda0_bound(hmax), 4.0, grid_);
}

StabilityOracle Model::oracle(const State& state) const {
    const RealField& h = state.components[0];
    const double hbar = *std::max_element(h.begin(), h.end());
    StabilityOracle out;
    out.e.resize(grid_.size());
    for (std::size_t k = 0; k < grid_.size(); ++k) {
        out.e[k] = e_theory(mode_frequency(k, grid_.nx()), hbar, grid_.nx());
    }
    out.lambda_c = lambda_critical(out.e);
    out.ke = ke_small_k(hbar, params_.dt);
    return out;
}

ControllerConfig Model::default_controller() const {
    ControllerConfig cfg;
    cfg.epsilon_u = params_.epsilon_u;
    cfg.zero_seed = 2.0 / (3.0 * params_.dt);
    return cfg;
}

std::map<std::string, double> Model::diagnostics(const State& state) const {
    const auto [lo, hi] = std::minmax_element(state.components[0].begin(), state.components[0].end());
    double mean = 0.0;
    for (double v : state.components[0]) {
        mean += v;
    }
    mean /= static_cast<double>(state.components[0].size());
    return {{"h_min", *lo}, {"h_max", *hi}, {"h_mean", mean}};
}

}  // namespace mars::thin_film
