#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "fpls/vec3.hpp"

namespace fpls {

using Field = std::vector<double>;

/// Uniform cell-centered cubic lattice on [-L, L]^3 with midpoint quadrature.
///
/// Cells are indexed x-fastest: index(a,b,c) = a + n*(b + n*c), and the
/// center of cell (a,b,c) is (-L + (a+1/2) h, ...), h = 2L/n. The cell
/// count per axis must be even so that the lattice is symmetric under
/// v -> -v (every cell center has its mirror on the grid).
class VelocityGrid {
public:
    VelocityGrid(int n_per_axis, double extent);

    int n_per_axis() const { return n_; }
    double extent() const { return extent_; }
    double spacing() const { return h_; }
    std::size_t total_cells() const { return static_cast<std::size_t>(n_) * n_ * n_; }
    double cell_volume() const { return h_ * h_ * h_; }

    /// Center coordinate of cell k along one axis, k in [0, n).
    double coord(int k) const { return -extent_ + (k + 0.5) * h_; }
    /// Face coordinate k in [0, n]; faces 0 and n are the domain boundary.
    double face(int k) const { return -extent_ + k * h_; }

    std::size_t index(int a, int b, int c) const {
        return static_cast<std::size_t>(a) +
               static_cast<std::size_t>(n_) * (static_cast<std::size_t>(b) +
               static_cast<std::size_t>(n_) * static_cast<std::size_t>(c));
    }
    Vec3 center(int a, int b, int c) const { return {coord(a), coord(b), coord(c)}; }

    /// Index of the mirror cell of i under v -> -v.
    std::size_t reflect(std::size_t i) const;

    /// Midpoint quadrature sum(field) * h^3. Summation pairs each cell with
    /// its mirror so that integrate(F) == integrate(F(-v)) exactly, and odd
    /// integrands cancel to zero; compensated summation keeps the result
    /// deterministic and accurate. Throws on wrong size or non-finite input.
    double integrate(std::span<const double> field) const;

    /// Quadrature of field * w per cell (same pairing and compensation).
    double integrate_weighted(std::span<const double> field, std::span<const double> w) const;

private:
    int n_;
    double extent_;
    double h_;
};

} // namespace fpls
