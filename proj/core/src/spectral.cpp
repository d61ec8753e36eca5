#include "mars/spectral.hpp"

#include "mars/error.hpp"

#include <fftw3.h>

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstring>
#include <string>

namespace mars {

namespace {

void check_axis(std::size_t n, double length, const char* axis) {
    if (n < 8 || !std::has_single_bit(n)) {
        throw ConfigError(std::string("grid size along ") + axis + " must be a power of two >= 8, got " +
                          std::to_string(n));
    }
    if (!(length > 0.0) || !std::isfinite(length)) {
        throw ConfigError(std::string("grid length along ") + axis + " must be positive");
    }
}

}  // namespace

Grid Grid::line(std::size_t n, double length) {
    check_axis(n, length, "x");
    return Grid(n, 1, length, 1.0);
}

Grid Grid::plane(std::size_t nx, std::size_t ny, double lx, double ly) {
    check_axis(nx, lx, "x");
    check_axis(ny, ly, "y");
    return Grid(nx, ny, lx, ly);
}

std::size_t Grid::mirror(std::size_t flat) const noexcept {
    const std::size_t ix = flat / ny_;
    const std::size_t iy = flat % ny_;
    return index((nx_ - ix) % nx_, (ny_ - iy) % ny_);
}

long mode_frequency(std::size_t k_index, std::size_t n) {
    if (n == 0 || k_index >= n) {
        throw std::out_of_range("mode index " + std::to_string(k_index) + " out of range for n = " +
                                std::to_string(n));
    }
    const auto k = static_cast<long>(k_index);
    const auto nn = static_cast<long>(n);
    return k <= nn / 2 ? k : k - nn;
}

struct FourierTransform::Impl {
    Grid grid;
    fftw_complex* buffer = nullptr;
    fftw_plan forward_plan = nullptr;
    fftw_plan backward_plan = nullptr;

    explicit Impl(const Grid& g) : grid(g) {
        buffer = fftw_alloc_complex(g.size());
        const int nx = static_cast<int>(g.nx());
        const int ny = static_cast<int>(g.ny());
        if (g.rank() == 1) {
            forward_plan = fftw_plan_dft_1d(nx, buffer, buffer, FFTW_FORWARD, FFTW_ESTIMATE);
            backward_plan = fftw_plan_dft_1d(nx, buffer, buffer, FFTW_BACKWARD, FFTW_ESTIMATE);
        } else {
            forward_plan = fftw_plan_dft_2d(nx, ny, buffer, buffer, FFTW_FORWARD, FFTW_ESTIMATE);
            backward_plan = fftw_plan_dft_2d(nx, ny, buffer, buffer, FFTW_BACKWARD, FFTW_ESTIMATE);
        }
    }

    ~Impl() {
        fftw_destroy_plan(forward_plan);
        fftw_destroy_plan(backward_plan);
        fftw_free(buffer);
    }

    Impl(const Impl&) = delete;
    Impl& operator=(const Impl&) = delete;
};

FourierTransform::FourierTransform(const Grid& grid) : impl_(std::make_unique<Impl>(grid)) {}
FourierTransform::~FourierTransform() = default;
FourierTransform::FourierTransform(FourierTransform&&) noexcept = default;
FourierTransform& FourierTransform::operator=(FourierTransform&&) noexcept = default;

const Grid& FourierTransform::grid() const noexcept { return impl_->grid; }

SpectralField FourierTransform::forward(std::span<const double> field) const {
    const std::size_t n = impl_->grid.size();
    if (field.size() != n) {
        throw ConfigError("field has " + std::to_string(field.size()) + " samples, grid expects " +
                          std::to_string(n));
    }
    fftw_complex* buf = impl_->buffer;
    for (std::size_t i = 0; i < n; ++i) {
        buf[i][0] = field[i];
        buf[i][1] = 0.0;
    }
    fftw_execute(impl_->forward_plan);
    SpectralField out{impl_->grid, std::vector<Complex>(n)};
    std::memcpy(static_cast<void*>(out.coefficients.data()), buf, n * sizeof(fftw_complex));
    return out;
}

RealField FourierTransform::inverse(const SpectralField& spectrum, InverseDiagnostics* diagnostics) const {
    const std::size_t n = impl_->grid.size();
    if (!(spectrum.grid == impl_->grid) || spectrum.coefficients.size() != n) {
        throw ConfigError("spectrum does not match the transform grid");
    }
    fftw_complex* buf = impl_->buffer;
    std::memcpy(buf, spectrum.coefficients.data(), n * sizeof(fftw_complex));
    fftw_execute(impl_->backward_plan);

    const double scale = 1.0 / static_cast<double>(n);
    RealField out(n);
    double max_abs = 0.0;
    double max_imag = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        out[i] = buf[i][0] * scale;
        const double im = std::abs(buf[i][1] * scale);
        max_imag = std::max(max_imag, im);
        max_abs = std::max({max_abs, std::abs(out[i]), im});
    }
    const double residue = max_abs > 0.0 ? max_imag / max_abs : 0.0;
    if (diagnostics != nullptr) {
        diagnostics->relative_imaginary_residue = residue;
        diagnostics->flagged = residue > kSymmetryFlagTolerance;
    }
    if (!(residue <= kSymmetryErrorTolerance)) {
        throw NumericalCorruptionError("inverse transform: imaginary residue " + std::to_string(residue) +
                                       " exceeds conjugate-symmetry tolerance");
    }
    return out;
}

}  // namespace mars
