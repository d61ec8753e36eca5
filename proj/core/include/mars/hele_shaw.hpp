#pragma once

#include "mars/model.hpp"

#include <cstddef>
#include <cstdint>
#include <span>

namespace mars::hele_shaw {

/// Marker chain z_j = x_j + i y_j at alpha_j = 2 pi j / N with
/// x(alpha + 2 pi) = x(alpha) + x_period. The interface uses x_period = 1;
/// closed curves (test harnesses) use 0.
struct InterfaceCurve {
    RealField x;
    RealField y;
    double x_period = 1.0;

    std::size_t size() const noexcept { return x.size(); }
};

struct Params {
    std::size_t n = 1024;
    double dt = 3.125e-5;
    double surface_tension = 0.1;  ///< S
    /// R. Negative puts the denser fluid on top (Rayleigh-Taylor unstable)
    /// for gamma = S kappa_alpha - R y_alpha.
    double gravity = -50.0;
    double epsilon_u = 1e-10;
    double noise_amplitude = 1e-7;
    std::uint64_t seed = 1;
};

/// Centered alpha-derivatives of the chain.
struct CurveDerivatives {
    RealField x_a, y_a, x_aa, y_aa, s_a;
};

CurveDerivatives derivatives(const InterfaceCurve& curve);

/// (x_a y_aa - y_a x_aa) / s_a^3. Throws GeometryError where s_a vanishes.
RealField curvature(const InterfaceCurve& curve);

/// gamma = S kappa_alpha - R y_alpha.
RealField sheet_strength(const InterfaceCurve& curve, double surface_tension, double gravity);

/// cot(pi w), stable for large |Im w|.
Complex periodic_cot(Complex w);

struct Velocity {
    RealField u;
    RealField v;
};

/// Alternate-point quadrature u_j - i v_j = -(2 pi i / N) sum_{j+l odd} gamma_l cot(pi (z_j - z_l)).
/// Throws ProximityError if an opposite-parity pair is closer than min_distance
/// (periodic distance).
Velocity birkhoff_rott_velocity(const InterfaceCurve& curve, std::span<const double> gamma,
                                double min_distance = 1e-8);

/// Equal-arclength tangential velocity
///   T(alpha) = int_0^alpha theta_a U - (alpha / 2 pi) int_0^{2 pi} theta_a U,  theta_a = s_a kappa,
/// by the trapezoid rule; T(0) = 0.
RealField tangential_redistribution(const InterfaceCurve& curve, std::span<const double> normal_velocity);

/// Interface length: trapezoid rule on s_alpha.
double arclength(const InterfaceCurve& curve);

/// Marker velocity U n + T s with the equal-arclength T.
/// Proximity guard: 0.25 * (mean marker spacing).
Velocity marker_velocity(const InterfaceCurve& curve, double surface_tension, double gravity);

/// (S N^3 / L^3)(1 - cos x) sin x, x = 2 pi |k| / N, clamped at 0.
double e_theory(long k, double length, double surface_tension, std::size_t n);

/// (S / 3)(2 pi k / L)^3.
double lambda_c_hs(double k, double length, double surface_tension);

/// (L / 2 pi)(4 / (S dt))^(1/3).
double ke_hs(double length, double surface_tension, double dt);

/// Periodic state (x deviation from the ramp, y) <-> curve.
State to_state(const InterfaceCurve& curve, double time = 0.0);
InterfaceCurve to_curve(const State& state);

/// Flat interface plus uniform white noise on y.
InterfaceCurve initial_curve(const Params& params);

class Model final : public mars::Model {
public:
    explicit Model(Params params);

    const Params& params() const noexcept { return params_; }

    std::string name() const override { return "heleshaw"; }
    const Grid& grid() const override { return grid_; }
    double dt() const override { return params_.dt; }
    std::vector<std::string> component_names() const override { return {"x", "y"}; }

    State initial_state() const override;
    RhsEvaluator rhs() const override;
    /// (S/3)(2 pi k / L)^3 for the initial length.
    DampingSpectrum initial_lambda(const State& state) const override;
    /// Full discrete spectrum at the current length.
    StabilityOracle oracle(const State& state) const override;
    ControllerConfig default_controller() const override;
    std::map<std::string, double> diagnostics(const State& state) const override;
    std::vector<RealField> output_components(const State& state) const override;

private:
    Params params_;
    Grid grid_;
};

}  // namespace mars::hele_shaw
