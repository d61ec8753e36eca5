#include "mars/kuramoto_sivashinsky.hpp"

#include "mars/error.hpp"
#include "mars/random.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace mars::kuramoto_sivashinsky {

using std::numbers::pi;

RealField laplacian(std::span<const double> u, const Grid& grid) {
    const std::size_t nx = grid.nx();
    const std::size_t ny = grid.ny();
    const double cx = 1.0 / (grid.dx() * grid.dx());
    const double cy = 1.0 / (grid.dy() * grid.dy());
    RealField out(u.size());
    for (std::size_t ix = 0; ix < nx; ++ix) {
        const std::size_t xm = (ix + nx - 1) % nx;
        const std::size_t xp = (ix + 1) % nx;
        for (std::size_t iy = 0; iy < ny; ++iy) {
            const std::size_t ym = (iy + ny - 1) % ny;
            const std::size_t yp = (iy + 1) % ny;
            const double c = u[grid.index(ix, iy)];
            out[grid.index(ix, iy)] = cx * (u[grid.index(xm, iy)] - 2.0 * c + u[grid.index(xp, iy)]) +
                                      cy * (u[grid.index(ix, ym)] - 2.0 * c + u[grid.index(ix, yp)]);
        }
    }
    return out;
}

RealField nonlinearity(std::span<const double> u, const Grid& grid) {
    const std::size_t nx = grid.nx();
    const std::size_t ny = grid.ny();
    const double hx = 0.5 / grid.dx();
    const double hy = 0.5 / grid.dy();
    RealField g(u.size());
    double mean = 0.0;
    for (std::size_t ix = 0; ix < nx; ++ix) {
        const std::size_t xm = (ix + nx - 1) % nx;
        const std::size_t xp = (ix + 1) % nx;
        for (std::size_t iy = 0; iy < ny; ++iy) {
            const std::size_t ym = (iy + ny - 1) % ny;
            const std::size_t yp = (iy + 1) % ny;
            const double ux = hx * (u[grid.index(xp, iy)] - u[grid.index(xm, iy)]);
            const double uy = hy * (u[grid.index(ix, yp)] - u[grid.index(ix, ym)]);
            g[grid.index(ix, iy)] = ux * ux + uy * uy;
            mean += g[grid.index(ix, iy)];
        }
    }
    mean /= static_cast<double>(g.size());
    for (double& v : g) {
        v = 0.5 * (v - mean);
    }
    return g;
}

RealField stiff_operator(std::span<const double> u, const Grid& grid, double nu) {
    RealField out = laplacian(laplacian(u, grid), grid);
    for (double& v : out) {
        v *= -nu;
    }
    return out;
}

RealField rhs(std::span<const double> u, const Grid& grid, double nu) {
    const RealField lap = laplacian(u, grid);
    const RealField bilap = laplacian(lap, grid);
    RealField f = nonlinearity(u, grid);
    for (std::size_t i = 0; i < f.size(); ++i) {
        f[i] = -f[i] - lap[i] - nu * bilap[i];
    }
    return f;
}

double e_theory(long kx, long ky, const Grid& grid, double nu) {
    const double dx = grid.dx();
    const double dy = grid.dy();
    const double a = static_cast<double>(kx) * dx;
    const double b = static_cast<double>(ky) * dy;
    // The x, y and cross terms sum to 16 (sin^2(a/2)/dx^2 + sin^2(b/2)/dy^2)^2.
    const double sa = std::sin(0.5 * a);
    const double sb = std::sin(0.5 * b);
    const double q = sa * sa / (dx * dx) + sb * sb / (dy * dy);
    return 16.0 * nu * q * q;
}

double e_small_k(double kx, double ky, double nu) {
    const double k2 = kx * kx + ky * ky;
    return nu * k2 * k2;
}

State initial_condition(const Params& params) {
    PortableRandom rng(params.seed);
    RealField u(params.nx * params.ny);
    double mean = 0.0;
    for (double& v : u) {
        v = params.amplitude * rng.uniform(-1.0, 1.0);
        mean += v;
    }
    mean /= static_cast<double>(u.size());
    for (double& v : u) {
        v -= mean;
    }
    return State{{std::move(u)}, 0.0};
}

Model::Model(Params params)
    : params_(params), grid_(Grid::plane(params.nx, params.ny, 2.0 * pi, 2.0 * pi)) {
    if (!(params_.nu > 0.0)) {
        throw ConfigError("nu must be positive");
    }
    if (!(params_.dt > 0.0)) {
        throw ConfigError("dt must be positive");
    }
}

State Model::initial_state() const { return initial_condition(params_); }

RhsEvaluator Model::rhs() const {
    return [grid = grid_, nu = params_.nu](const State& s) {
        return std::vector<RealField>{kuramoto_sivashinsky::rhs(s.components[0], grid, nu)};
    };
}

DampingSpectrum Model::initial_lambda(const State&) const {
    // (2/3) nu |k|^4; wavenumbers are integers on [0, 2 pi].
    return init_power_law(2.0 * params_.nu / 3.0, 4.0, grid_);
}

StabilityOracle Model::oracle(const State&) const {
    StabilityOracle out;
    out.e.resize(grid_.size());
    for (std::size_t ix = 0; ix < grid_.nx(); ++ix) {
        for (std::size_t iy = 0; iy < grid_.ny(); ++iy) {
            out.e[grid_.index(ix, iy)] =
                e_theory(mode_frequency(ix, grid_.nx()), mode_frequency(iy, grid_.ny()), grid_, params_.nu);
        }
    }
    out.lambda_c = lambda_critical(out.e);
    out.ke = std::pow(2.0 / (params_.nu * params_.dt), 0.25);
    return out;
}

ControllerConfig Model::default_controller() const {
    ControllerConfig cfg;
    cfg.epsilon_u = params_.epsilon_u;
    cfg.zero_seed = 2.0 / (3.0 * params_.dt);
    return cfg;
}

std::map<std::string, double> Model::diagnostics(const State& state) const {
    const RealField& u = state.components[0];
    double mean = 0.0;
    double max_abs = 0.0;
    for (double v : u) {
        mean += v;
        max_abs = std::max(max_abs, std::abs(v));
    }
    return {{"u_mean", mean / static_cast<double>(u.size())}, {"u_max_abs", max_abs}};
}

}  // namespace mars::kuramoto_sivashinsky
