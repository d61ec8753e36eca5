#pragma once

#include "mars/grid.hpp"

#include <complex>
#include <memory>
#include <span>
#include <vector>

namespace mars {

using Complex = std::complex<double>;

/// Full (not half-spectrum) complex coefficients of a field on `grid`.
struct SpectralField {
    Grid grid;
    std::vector<Complex> coefficients;

    Complex& operator[](std::size_t i) { return coefficients[i]; }
    const Complex& operator[](std::size_t i) const { return coefficients[i]; }
};

struct InverseDiagnostics {
    /// max |Im| of the inverse relative to max |value|.
    double relative_imaginary_residue = 0.0;
    /// residue exceeded the flag tolerance and was discarded.
    bool flagged = false;
};

/// Forward/inverse DFT on a fixed grid.
///
/// Forward is unnormalized, inverse carries 1/(nx*ny). Plans are created
/// once with FFTW_ESTIMATE, so repeated transforms are bitwise reproducible.
/// Not safe to share one instance between threads; create one per thread.
class FourierTransform {
public:
    static constexpr double kSymmetryFlagTolerance = 1e-10;
    static constexpr double kSymmetryErrorTolerance = 1e-6;

    explicit FourierTransform(const Grid& grid);
    ~FourierTransform();
    FourierTransform(FourierTransform&&) noexcept;
    FourierTransform& operator=(FourierTransform&&) noexcept;
    FourierTransform(const FourierTransform&) = delete;
    FourierTransform& operator=(const FourierTransform&) = delete;

    const Grid& grid() const noexcept;

    SpectralField forward(std::span<const double> field) const;

    /// Throws NumericalCorruptionError when the imaginary residue of the
    /// result exceeds kSymmetryErrorTolerance (relative).
    RealField inverse(const SpectralField& spectrum, InverseDiagnostics* diagnostics = nullptr) const;

private:
    struct Impl;
    std::unique_ptr<Impl> impl_;
};

}  // namespace mars
