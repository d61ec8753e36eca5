#pragma once

#include <cstddef>
#include <vector>

namespace mars {

/// Real scalar samples on a grid, row-major: index = ix * ny + iy.
using RealField = std::vector<double>;

/// Uniform periodic grid in one or two dimensions.
///
/// A one-dimensional grid has ny == 1. Sizes must be powers of two and
/// at least 8 points along every resolved axis.
class Grid {
public:
    static Grid line(std::size_t n, double length);
    static Grid plane(std::size_t nx, std::size_t ny, double lx, double ly);

    std::size_t rank() const noexcept { return ny_ == 1 ? 1 : 2; }
    std::size_t nx() const noexcept { return nx_; }
    std::size_t ny() const noexcept { return ny_; }
    std::size_t size() const noexcept { return nx_ * ny_; }
    double lx() const noexcept { return lx_; }
    double ly() const noexcept { return ly_; }
    double dx() const noexcept { return lx_ / static_cast<double>(nx_); }
    double dy() const noexcept { return ly_ / static_cast<double>(ny_); }

    std::size_t index(std::size_t ix, std::size_t iy = 0) const noexcept { return ix * ny_ + iy; }

    /// Flat index of the conjugate partner (-k mod n, componentwise).
    std::size_t mirror(std::size_t flat) const noexcept;

    bool operator==(const Grid&) const = default;

private:
    Grid(std::size_t nx, std::size_t ny, double lx, double ly)
        : nx_(nx), ny_(ny), lx_(lx), ly_(ly) {}

    std::size_t nx_;
    std::size_t ny_;
    double lx_;
    double ly_;
};

/// Signed wavenumber for a DFT index: [0, n) -> [-n/2 + 1, n/2].
long mode_frequency(std::size_t k_index, std::size_t n);

}  // namespace mars
