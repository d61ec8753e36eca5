#pragma once

#include "mars/model.hpp"

#include <cstddef>
#include <span>

namespace mars::thin_film {

/// Film height of the fastest-growing mode at k = 2 pi: 2^(-1/4) (2 pi)^(-1/2).
double max_growth_height();

struct Params {
    std::size_t n = 128;
    double amplitude = 0.01;
    double h0 = max_growth_height();
    double dt = 1e-4;
    double epsilon_u = 1e-8;
};

/// Centered-difference right-hand side of
///   h_t = -(h^3 h_xxx + h_x / h)_x
/// in its expanded four-term form on a periodic grid of spacing dx.
/// Throws RuptureError if any h <= 0.
RealField rhs(std::span<const double> h, double dx);

/// Stiff part alone, frozen at height hbar: -hbar^3 * (fourth difference) / dx^4.
RealField stiff_operator(std::span<const double> u, double hbar, double dx);

/// h_j = h0 + A cos(2 pi j / N) on [0, 1).
State initial_condition(const Params& params);

/// Growth rate of exp(i k x + omega t) about a flat film h0 (continuum).
double dispersion(double k, double h0);

/// Discrete stiff spectrum 2 hbar^3/dx^4 (cos 2 k da - 4 cos k da + 3), da = 2 pi / n.
double e_theory(long k, double hbar, std::size_t n);

/// (32/3) pi^4 hbar^3: smallest lambda0 with lambda0 k^4 >= 2 e(k) / 3 for all k.
double lambda0_bound(double hbar);

/// Small-k estimate (1/2pi) (2 / (dt hbar^3))^(1/4).
double ke_small_k(double hbar, double dt);

class Model final : public mars::Model {
public:
    explicit Model(Params params);

    const Params& params() const noexcept { return params_; }

    std::string name() const override { return "thinfilm"; }
    const Grid& grid() const override { return grid_; }
    double dt() const override { return params_.dt; }
    std::vector<std::string> component_names() const override { return {"h"}; }

    State initial_state() const override;
    RhsEvaluator rhs() const override;
    /// lambda0 k^4 with lambda0 from the maximum initial height.
    DampingSpectrum initial_lambda(const State& state) const override;
    /// Uses hbar = max_j h_j.
    StabilityOracle oracle(const State& state) const override;
    ControllerConfig default_controller() const override;
    std::map<std::string, double> diagnostics(const State& state) const override;

private:
    Params params_;
    Grid grid_;
};

}  // namespace mars::thin_film
