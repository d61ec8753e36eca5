#pragma once

// Slow reference implementations used to check the library.

#include "mars/grid.hpp"
#include "mars/random.hpp"

#include <cmath>
#include <complex>
#include <numbers>
#include <span>
#include <vector>

namespace oracle {

using Complex = std::complex<double>;

/// Unnormalized forward DFT by direct O(n^2) summation.
inline std::vector<Complex> naive_dft(std::span<const double> f) {
    const std::size_t n = f.size();
    std::vector<Complex> out(n);
    for (std::size_t k = 0; k < n; ++k) {
        Complex acc = 0.0;
        for (std::size_t j = 0; j < n; ++j) {
            const double arg = -2.0 * std::numbers::pi * static_cast<double>((k * j) % n) / static_cast<double>(n);
            acc += f[j] * Complex(std::cos(arg), std::sin(arg));
        }
        out[k] = acc;
    }
    return out;
}

/// Real part of the inverse DFT (1/n normalization), by direct summation.
inline std::vector<double> naive_idft_real(const std::vector<Complex>& c) {
    const std::size_t n = c.size();
    std::vector<double> out(n);
    for (std::size_t j = 0; j < n; ++j) {
        Complex acc = 0.0;
        for (std::size_t k = 0; k < n; ++k) {
            const double arg = 2.0 * std::numbers::pi * static_cast<double>((k * j) % n) / static_cast<double>(n);
            acc += c[k] * Complex(std::cos(arg), std::sin(arg));
        }
        out[j] = acc.real() / static_cast<double>(n);
    }
    return out;
}

/// m-th derivative of a periodic field on [0, length) by Fourier differentiation.
inline std::vector<double> spectral_derivative(std::span<const double> f, int m, double length) {
    const std::size_t n = f.size();
    std::vector<Complex> c = naive_dft(f);
    for (std::size_t k = 0; k < n; ++k) {
        const long w = mars::mode_frequency(k, n);
        if (2 * static_cast<std::size_t>(std::labs(w)) == n && m % 2 == 1) {
            c[k] = 0.0;  // odd derivatives of the Nyquist mode are not representable
            continue;
        }
        const Complex ik(0.0, 2.0 * std::numbers::pi * static_cast<double>(w) / length);
        c[k] *= std::pow(ik, m);
    }
    return naive_idft_real(c);
}

/// 2D version on row-major (ix * ny + iy) data.
inline std::vector<Complex> naive_dft_2d(std::span<const double> f, std::size_t nx, std::size_t ny) {
    std::vector<Complex> out(nx * ny);
    for (std::size_t kx = 0; kx < nx; ++kx) {
        for (std::size_t ky = 0; ky < ny; ++ky) {
            Complex acc = 0.0;
            for (std::size_t ix = 0; ix < nx; ++ix) {
                for (std::size_t iy = 0; iy < ny; ++iy) {
                    const double arg = -2.0 * std::numbers::pi *
                                       (static_cast<double>((kx * ix) % nx) / static_cast<double>(nx) +
                                        static_cast<double>((ky * iy) % ny) / static_cast<double>(ny));
                    acc += f[ix * ny + iy] * Complex(std::cos(arg), std::sin(arg));
                }
            }
            out[kx * ny + ky] = acc;
        }
    }
    return out;
}

/// Value at x of the interpolating polynomial through (xs, ys), by Neville's scheme.
inline double neville(std::vector<double> xs, std::vector<double> ys, double x) {
    const std::size_t m = xs.size();
    for (std::size_t level = 1; level < m; ++level) {
        for (std::size_t i = 0; i + level < m; ++i) {
            ys[i] = ((x - xs[i + level]) * ys[i] + (xs[i] - x) * ys[i + 1]) / (xs[i] - xs[i + level]);
        }
    }
    return ys[0];
}

inline std::vector<double> random_field(std::size_t n, std::uint64_t seed, double lo = -1.0, double hi = 1.0) {
    mars::PortableRandom rng(seed);
    std::vector<double> f(n);
    for (double& v : f) {
        v = rng.uniform(lo, hi);
    }
    return f;
}

/// Sum of a few low Fourier modes: smooth and periodic.
inline std::vector<double> smooth_field(std::size_t n, double offset, double amplitude) {
    std::vector<double> f(n);
    for (std::size_t j = 0; j < n; ++j) {
        const double x = 2.0 * std::numbers::pi * static_cast<double>(j) / static_cast<double>(n);
        f[j] = offset + amplitude * (std::cos(x) + 0.3 * std::sin(2.0 * x + 0.4) + 0.1 * std::cos(3.0 * x));
    }
    return f;
}

inline double max_abs_diff(std::span<const double> a, std::span<const double> b) {
    double m = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        m = std::max(m, std::abs(a[i] - b[i]));
    }
    return m;
}

}  // namespace oracle
