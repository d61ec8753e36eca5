#include "mars/hele_shaw.hpp"

#include "mars/error.hpp"
#include "mars/random.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

namespace mars::hele_shaw {

using std::numbers::pi;

namespace {

double ramp(const InterfaceCurve& curve, std::size_t j) {
    return curve.x_period * static_cast<double>(j) / static_cast<double>(curve.size());
}

// Largest |y| for which exp(-2 pi y) products stay far from overflow.
constexpr double kFastKernelMaxHeight = 50.0;

}  // namespace

CurveDerivatives derivatives(const InterfaceCurve& curve) {
    const std::size_t n = curve.size();
    if (curve.y.size() != n || n < 8) {
        throw ConfigError("interface needs matching x, y arrays of at least 8 markers");
    }
    const double da = 2.0 * pi / static_cast<double>(n);
    CurveDerivatives d{RealField(n), RealField(n), RealField(n), RealField(n), RealField(n)};
    for (std::size_t j = 0; j < n; ++j) {
        const std::size_t jm = (j + n - 1) % n;
        const std::size_t jp = (j + 1) % n;
        // x across the seam carries the period shift.
        const double xm = curve.x[jm] - (j == 0 ? curve.x_period : 0.0);
        const double xp = curve.x[jp] + (j == n - 1 ? curve.x_period : 0.0);
        d.x_a[j] = (xp - xm) / (2.0 * da);
        d.y_a[j] = (curve.y[jp] - curve.y[jm]) / (2.0 * da);
        d.x_aa[j] = (xp - 2.0 * curve.x[j] + xm) / (da * da);
        d.y_aa[j] = (curve.y[jp] - 2.0 * curve.y[j] + curve.y[jm]) / (da * da);
        d.s_a[j] = std::hypot(d.x_a[j], d.y_a[j]);
    }
    return d;
}

RealField curvature(const InterfaceCurve& curve) {
    const CurveDerivatives d = derivatives(curve);
    RealField kappa(curve.size());
    for (std::size_t j = 0; j < kappa.size(); ++j) {
        const double s = d.s_a[j];
        if (!(s > 1e-300)) {
            throw GeometryError("degenerate parametrization: s_alpha = 0 at marker " + std::to_string(j));
        }
        kappa[j] = (d.x_a[j] * d.y_aa[j] - d.y_a[j] * d.x_aa[j]) / (s * s * s);
    }
    return kappa;
}

RealField sheet_strength(const InterfaceCurve& curve, double surface_tension, double gravity) {
    const std::size_t n = curve.size();
    const double da = 2.0 * pi / static_cast<double>(n);
    const RealField kappa = curvature(curve);
    RealField gamma(n);
    for (std::size_t j = 0; j < n; ++j) {
        const std::size_t jm = (j + n - 1) % n;
        const std::size_t jp = (j + 1) % n;
        const double kappa_a = (kappa[jp] - kappa[jm]) / (2.0 * da);
        const double y_a = (curve.y[jp] - curve.y[jm]) / (2.0 * da);
        gamma[j] = surface_tension * kappa_a - gravity * y_a;
    }
    return gamma;
}

Complex periodic_cot(Complex w) {
    // cot(pi(a + ib)) = (sin 2 pi a - i sinh 2 pi b) / (2 sinh^2 pi b + 2 sin^2 pi a)
    const double a = w.real();
    const double b = w.imag();
    if (std::abs(b) > 20.0) {
        // |cot + i sign(b)| <= 2 exp(-2 pi |b|) < 1e-50
        return {0.0, b > 0.0 ? -1.0 : 1.0};
    }
    const double sa = std::sin(pi * a);
    const double ca = std::cos(pi * a);
    const double sb = std::sinh(pi * b);
    const double cb = std::cosh(pi * b);
    const double denom = 2.0 * (sb * sb + sa * sa);
    return {2.0 * sa * ca / denom, -2.0 * sb * cb / denom};
}

Velocity birkhoff_rott_velocity(const InterfaceCurve& curve, std::span<const double> gamma, double min_distance) {
    const std::size_t n = curve.size();
    if (n % 2 != 0) {
        throw ConfigError("alternate-point quadrature needs an even number of markers");
    }
    if (curve.x_period != 1.0) {
        throw ConfigError("Birkhoff-Rott kernel assumes horizontal period 1");
    }
    if (gamma.size() != n) {
        throw ConfigError("sheet strength does not match the curve");
    }
    const double min_d2 = min_distance * min_distance;
    const double max_height = std::abs(*std::max_element(curve.y.begin(), curve.y.end(),
                                                         [](double p, double q) { return std::abs(p) < std::abs(q); }));
    const bool fast = max_height < kFastKernelMaxHeight;

    // e_j = exp(2 pi i z_j); cot(pi (z_j - z_l)) = i (e_j + e_l) / (e_j - e_l).
    RealField er(n), ei(n);
    if (fast) {
        for (std::size_t j = 0; j < n; ++j) {
            const double mag = std::exp(-2.0 * pi * curve.y[j]);
            er[j] = mag * std::cos(2.0 * pi * curve.x[j]);
            ei[j] = mag * std::sin(2.0 * pi * curve.x[j]);
        }
    }

    Velocity vel{RealField(n), RealField(n)};
    for (std::size_t j = 0; j < n; ++j) {
        double acc_re = 0.0;
        double acc_im = 0.0;
        for (std::size_t l = (j + 1) % 2; l < n; l += 2) {
            double dx = curve.x[j] - curve.x[l];
            dx -= std::round(dx);
            const double dy = curve.y[j] - curve.y[l];
            if (dx * dx + dy * dy < min_d2) {
                throw ProximityError("markers " + std::to_string(j) + " and " + std::to_string(l) +
                                     " closer than " + std::to_string(min_distance));
            }
            double c_re;
            double c_im;
            if (fast) {
                const double nr = er[j] + er[l];
                const double ni = ei[j] + ei[l];
                const double dr = er[j] - er[l];
                const double di = ei[j] - ei[l];
                const double inv = 1.0 / (dr * dr + di * di);
                const double qr = (nr * dr + ni * di) * inv;
                const double qi = (ni * dr - nr * di) * inv;
                c_re = -qi;  // multiply by i
                c_im = qr;
            } else {
                const Complex c = periodic_cot({dx, dy});
                c_re = c.real();
                c_im = c.imag();
            }
            acc_re += gamma[l] * c_re;
            acc_im += gamma[l] * c_im;
        }
        // -(2 pi i / N) * acc
        const double scale = 2.0 * pi / static_cast<double>(n);
        const double w_re = scale * acc_im;
        const double w_im = -scale * acc_re;
        vel.u[j] = w_re;
        vel.v[j] = -w_im;
    }
    return vel;
}

RealField tangential_redistribution(const InterfaceCurve& curve, std::span<const double> normal_velocity) {
    const std::size_t n = curve.size();
    const double da = 2.0 * pi / static_cast<double>(n);
    const CurveDerivatives d = derivatives(curve);
    const RealField kappa = curvature(curve);
    RealField g(n);
    double mean = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
        g[j] = d.s_a[j] * kappa[j] * normal_velocity[j];
        mean += g[j];
    }
    mean /= static_cast<double>(n);
    RealField t(n, 0.0);
    for (std::size_t j = 1; j < n; ++j) {
        t[j] = t[j - 1] + 0.5 * da * ((g[j - 1] - mean) + (g[j] - mean));
    }
    return t;
}

double arclength(const InterfaceCurve& curve) {
    const CurveDerivatives d = derivatives(curve);
    double sum = 0.0;
    for (double s : d.s_a) {
        sum += s;
    }
    return sum * 2.0 * pi / static_cast<double>(curve.size());
}

Velocity marker_velocity(const InterfaceCurve& curve, double surface_tension, double gravity) {
    const std::size_t n = curve.size();
    const RealField gamma = sheet_strength(curve, surface_tension, gravity);
    const double guard = 0.25 * arclength(curve) / static_cast<double>(n);
    const Velocity br = birkhoff_rott_velocity(curve, gamma, guard);
    const CurveDerivatives d = derivatives(curve);

    RealField normal(n);
    for (std::size_t j = 0; j < n; ++j) {
        const double nx = -d.y_a[j] / d.s_a[j];
        const double ny = d.x_a[j] / d.s_a[j];
        normal[j] = br.u[j] * nx + br.v[j] * ny;
    }
    const RealField tangential = tangential_redistribution(curve, normal);

    Velocity out{RealField(n), RealField(n)};
    for (std::size_t j = 0; j < n; ++j) {
        const double nx = -d.y_a[j] / d.s_a[j];
        const double ny = d.x_a[j] / d.s_a[j];
        const double tx = d.x_a[j] / d.s_a[j];
        const double ty = d.y_a[j] / d.s_a[j];
        out.u[j] = normal[j] * nx + tangential[j] * tx;
        out.v[j] = normal[j] * ny + tangential[j] * ty;
    }
    return out;
}

double e_theory(long k, double length, double surface_tension, std::size_t n) {
    const double nn = static_cast<double>(n);
    const double x = 2.0 * pi * static_cast<double>(std::labs(k)) / nn;
    const double value = surface_tension * nn * nn * nn / (length * length * length) * (1.0 - std::cos(x)) * std::sin(x);
    return std::max(value, 0.0);
}

double lambda_c_hs(double k, double length, double surface_tension) {
    const double q = 2.0 * pi * k / length;
    return surface_tension / 3.0 * q * q * q;
}

double ke_hs(double length, double surface_tension, double dt) {
    return length / (2.0 * pi) * std::cbrt(4.0 / (surface_tension * dt));
}

State to_state(const InterfaceCurve& curve, double time) {
    State s{{RealField(curve.size()), curve.y}, time};
    for (std::size_t j = 0; j < curve.size(); ++j) {
        s.components[0][j] = curve.x[j] - ramp(curve, j);
    }
    return s;
}

InterfaceCurve to_curve(const State& state) {
    InterfaceCurve c{state.components.at(0), state.components.at(1), 1.0};
    for (std::size_t j = 0; j < c.size(); ++j) {
        c.x[j] += ramp(c, j);
    }
    return c;
}

InterfaceCurve initial_curve(const Params& params) {
    PortableRandom rng(params.seed);
    InterfaceCurve c{RealField(params.n), RealField(params.n), 1.0};
    for (std::size_t j = 0; j < params.n; ++j) {
        c.x[j] = ramp(c, j);
        c.y[j] = params.noise_amplitude * rng.uniform(-1.0, 1.0);
    }
    return c;
}

Model::Model(Params params) : params_(params), grid_(Grid::line(params.n, 1.0)) {
    if (!(params_.surface_tension > 0.0)) {
        throw ConfigError("S must be positive");
    }
    if (!(params_.dt > 0.0)) {
        throw ConfigError("dt must be positive");
    }
}

State Model::initial_state() const { return to_state(initial_curve(params_)); }

RhsEvaluator Model::rhs() const {
    return [s = params_.surface_tension, r = params_.gravity](const State& state) {
        Velocity v = marker_velocity(to_curve(state), s, r);
        return std::vector<RealField>{std::move(v.u), std::move(v.v)};
    };
}

DampingSpectrum Model::initial_lambda(const State& state) const {
    const double length = arclength(to_curve(state));
    return init_power_law(lambda_c_hs(1.0, length, params_.surface_tension), 3.0, grid_);
}

StabilityOracle Model::oracle(const State& state) const {
    const double length = arclength(to_curve(state));
    StabilityOracle out;
    out.e.resize(grid_.size());
    for (std::size_t k = 0; k < grid_.size(); ++k) {
        out.e[k] = e_theory(mode_frequency(k, grid_.nx()), length, params_.surface_tension, grid_.nx());
    }
    out.lambda_c = lambda_critical(out.e);
    out.ke = ke_hs(length, params_.surface_tension, params_.dt);
    return out;
}

ControllerConfig Model::default_controller() const {
    ControllerConfig cfg;
    cfg.epsilon_u = params_.epsilon_u;
    cfg.zero_seed = 2.0 / (3.0 * params_.dt);
    return cfg;
}

std::map<std::string, double> Model::diagnostics(const State& state) const {
    const InterfaceCurve c = to_curve(state);
    const CurveDerivatives d = derivatives(c);
    const auto [lo, hi] = std::minmax_element(d.s_a.begin(), d.s_a.end());
    double ymax = 0.0;
    for (double v : c.y) {
        ymax = std::max(ymax, std::abs(v));
    }
    return {{"length", arclength(c)}, {"y_max_abs", ymax}, {"s_alpha_ratio", *hi / *lo}};
}

std::vector<RealField> Model::output_components(const State& state) const {
    InterfaceCurve c = to_curve(state);
    return {std::move(c.x), std::move(c.y)};
}

}  // namespace mars::hele_shaw
