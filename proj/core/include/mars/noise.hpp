#pragma once

#include "mars/grid.hpp"
#include "mars/spectral.hpp"

#include <span>
#include <vector>

namespace mars {

/// |FFT(E) - FFT(Ebar)| per wavenumber index.
using NoiseMeasure = std::vector<double>;

/// Weights of the degree-(2 n_half - 1) Lagrange polynomial through the
/// offsets -n_half..-1, 1..n_half, evaluated at offset 0. Ordered by offset.
std::vector<double> smoothing_weights(int n_half);

/// Periodic leave-one-out polynomial smoothing. n_half = 2 gives
/// (-E[j-2] + 4E[j-1] + 4E[j+1] - E[j+2]) / 6.
RealField smooth_1d(std::span<const double> error, int n_half = 2);

/// Mean of the four edge neighbours on a periodic nx x ny grid.
RealField smooth_2d(std::span<const double> error, const Grid& grid);

NoiseMeasure noise_spectrum(const FourierTransform& transform, std::span<const double> error,
                            std::span<const double> smoothed);

/// Componentwise max of two noise measures (modulus taken first).
NoiseMeasure noise_spectrum_max(const NoiseMeasure& a, const NoiseMeasure& b);

/// Smoothing chosen by grid rank, then noise_spectrum; max over components.
NoiseMeasure noise_from_error(const FourierTransform& transform, const std::vector<RealField>& error,
                              int n_half = 2);

}  // namespace mars
