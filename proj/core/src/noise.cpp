#include "mars/noise.hpp"

#include "mars/error.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace mars {

std::vector<double> smoothing_weights(int n_half) {
    if (n_half < 1) {
        throw ConfigError("smoothing half-width must be >= 1");
    }
    std::vector<int> nodes;
    for (int m = -n_half; m <= n_half; ++m) {
        if (m != 0) {
            nodes.push_back(m);
        }
    }
    std::vector<double> weights(nodes.size());
    for (std::size_t a = 0; a < nodes.size(); ++a) {
        double w = 1.0;
        for (std::size_t b = 0; b < nodes.size(); ++b) {
            if (a != b) {
                w *= (0.0 - nodes[b]) / static_cast<double>(nodes[a] - nodes[b]);
            }
        }
        weights[a] = w;
    }
    return weights;
}

RealField smooth_1d(std::span<const double> error, int n_half) {
    const std::vector<double> weights = smoothing_weights(n_half);
    const auto n = static_cast<long>(error.size());
    if (n < 2 * n_half + 1) {
        throw ConfigError("grid of " + std::to_string(n) + " points too small for smoothing half-width " +
                          std::to_string(n_half));
    }
    RealField out(error.size(), 0.0);
    for (long j = 0; j < n; ++j) {
        double acc = 0.0;
        std::size_t w = 0;
        for (long m = -n_half; m <= n_half; ++m) {
            if (m == 0) {
                continue;
            }
            acc += weights[w++] * error[static_cast<std::size_t>(((j + m) % n + n) % n)];
        }
        out[static_cast<std::size_t>(j)] = acc;
    }
    return out;
}

RealField smooth_2d(std::span<const double> error, const Grid& grid) {
    if (error.size() != grid.size()) {
        throw ConfigError("error field does not match grid");
    }
    const std::size_t nx = grid.nx();
    const std::size_t ny = grid.ny();
    RealField out(error.size());
    for (std::size_t ix = 0; ix < nx; ++ix) {
        const std::size_t xm = (ix + nx - 1) % nx;
        const std::size_t xp = (ix + 1) % nx;
        for (std::size_t iy = 0; iy < ny; ++iy) {
            const std::size_t ym = (iy + ny - 1) % ny;
            const std::size_t yp = (iy + 1) % ny;
            out[grid.index(ix, iy)] = 0.25 * (error[grid.index(ix, ym)] + error[grid.index(xp, iy)] +
                                              error[grid.index(ix, yp)] + error[grid.index(xm, iy)]);
        }
    }
    return out;
}

NoiseMeasure noise_spectrum(const FourierTransform& transform, std::span<const double> error,
                            std::span<const double> smoothed) {
    if (error.size() != smoothed.size()) {
        throw ConfigError("error and smoothed error differ in size");
    }
    // The transform is linear: one FFT of the difference suffices.
    RealField diff(error.size());
    for (std::size_t j = 0; j < diff.size(); ++j) {
        diff[j] = error[j] - smoothed[j];
    }
    const SpectralField spec = transform.forward(diff);
    NoiseMeasure eps(spec.coefficients.size());
    for (std::size_t k = 0; k < eps.size(); ++k) {
        eps[k] = std::abs(spec[k]);
    }
    return eps;
}

NoiseMeasure noise_spectrum_max(const NoiseMeasure& a, const NoiseMeasure& b) {
    if (a.size() != b.size()) {
        throw ConfigError("noise measures differ in size");
    }
    NoiseMeasure out(a.size());
    for (std::size_t k = 0; k < a.size(); ++k) {
        out[k] = std::max(a[k], b[k]);
    }
    return out;
}

NoiseMeasure noise_from_error(const FourierTransform& transform, const std::vector<RealField>& error, int n_half) {
    const Grid& grid = transform.grid();
    NoiseMeasure result;
    for (const RealField& component : error) {
        const RealField smoothed = grid.rank() == 1 ? smooth_1d(component, n_half) : smooth_2d(component, grid);
        NoiseMeasure eps = noise_spectrum(transform, component, smoothed);
        result = result.empty() ? std::move(eps) : noise_spectrum_max(result, eps);
    }
    return result;
}

}  // namespace mars
