#pragma once

#include <cstddef>
#include <vector>

#include "zetalab/numerics.hpp"

namespace zetalab {

/// Closed rectangle [sigma_lo, sigma_hi] x [t_lo, t_hi].
struct Rect {
    double sigma_lo = 0.0;
    double sigma_hi = 0.0;
    double t_lo = 0.0;
    double t_hi = 0.0;

    double width() const { return sigma_hi - sigma_lo; }
    double height() const { return t_hi - t_lo; }
    bool contains(const Rect& inner) const {
        return sigma_lo <= inner.sigma_lo && inner.sigma_hi <= sigma_hi && t_lo <= inner.t_lo && inner.t_hi <= t_hi;
    }
    /// Throws DomainError unless finite with sigma_lo <= sigma_hi and t_lo <= t_hi.
    void validate() const;

    bool operator==(const Rect&) const = default;
};

/// Tensor grid of points sigma_a + i t_b. Point index = a * ts.size() + b.
struct RectGrid {
    std::vector<double> sigmas;
    std::vector<double> ts;

    std::size_t size() const { return sigmas.size() * ts.size(); }
    Complex point(std::size_t i) const { return {sigmas[i / ts.size()], ts[i % ts.size()]}; }
    std::vector<Complex> points() const;

    /// n x n equally spaced points including the corners (n = 1 gives the centre).
    static RectGrid uniform(const Rect& rect, int n);
    static RectGrid single(Complex s);

    bool operator==(const RectGrid&) const = default;
};

/// Several grids evaluated together; values are concatenated in order.
using GridSet = std::vector<RectGrid>;

std::size_t total_points(const GridSet& grids);

/// Smallest real part and largest |imaginary part| over the grid set translated by i*shift.
struct GridExtent {
    double sigma_min;
    double sigma_max;
    double t_min;
    double t_max;
};

GridExtent extent(const GridSet& grids);

}  // namespace zetalab
