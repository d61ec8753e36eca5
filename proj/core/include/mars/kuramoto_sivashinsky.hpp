#pragma once

#include "mars/model.hpp"

#include <cstddef>
#include <cstdint>
#include <span>

namespace mars::kuramoto_sivashinsky {

/// 2D Kuramoto-Sivashinsky u_t = -N(u) - lap u - nu lap^2 u on [0, 2 pi]^2.
struct Params {
    std::size_t nx = 128;
    std::size_t ny = 128;
    double nu = 0.2;
    double dt = 0.01;
    double epsilon_u = 1e-5;
    double amplitude = 1e-3;
    std::uint64_t seed = 1;
};

/// Five-point periodic Laplacian.
RealField laplacian(std::span<const double> u, const Grid& grid);

/// 1/2 (|grad u|^2 - <|grad u|^2>) with centered gradients; zero grid mean.
RealField nonlinearity(std::span<const double> u, const Grid& grid);

/// -N(u) - lap u - nu lap(lap u).
RealField rhs(std::span<const double> u, const Grid& grid, double nu);

/// Stiff part alone: -nu lap(lap u).
RealField stiff_operator(std::span<const double> u, const Grid& grid, double nu);

/// Discrete spectrum of nu lap^2 for signed wavenumbers (kx, ky).
double e_theory(long kx, long ky, const Grid& grid, double nu);

/// Small-k form nu (kx^2 + ky^2)^2.
double e_small_k(double kx, double ky, double nu);

/// Zero-mean uniform noise of the given amplitude, reproducible from seed.
State initial_condition(const Params& params);

class Model final : public mars::Model {
public:
    explicit Model(Params params);

    const Params& params() const noexcept { return params_; }

    std::string name() const override { return "ks2d"; }
    const Grid& grid() const override { return grid_; }
    double dt() const override { return params_.dt; }
    std::vector<std::string> component_names() const override { return {"u"}; }

    State initial_state() const override;
    RhsEvaluator rhs() const override;
    /// 2 e_s(k) / 3 from the small-k form.
    DampingSpectrum initial_lambda(const State& state) const override;
    /// Full 2D e(k); ke along the k_y = 0 slice from the small-k form.
    StabilityOracle oracle(const State& state) const override;
    ControllerConfig default_controller() const override;
    std::map<std::string, double> diagnostics(const State& state) const override;

private:
    Params params_;
    Grid grid_;
};

}  // namespace mars::kuramoto_sivashinsky
