#include "zetalab/grid.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "zetalab/errors.hpp"

namespace zetalab {

void Rect::validate() const {
    if (!std::isfinite(sigma_lo) || !std::isfinite(sigma_hi) || !std::isfinite(t_lo) || !std::isfinite(t_hi))
        throw DomainError("rectangle: non-finite bounds");
    if (sigma_lo > sigma_hi || t_lo > t_hi) throw DomainError("rectangle: empty (lo > hi)");
}

std::vector<Complex> RectGrid::points() const {
    std::vector<Complex> out;
    out.reserve(size());
    for (double s : sigmas)
        for (double t : ts) out.emplace_back(s, t);
    return out;
}

RectGrid RectGrid::uniform(const Rect& rect, int n) {
    rect.validate();
    if (n < 1) throw DomainError("grid density must be >= 1");
    RectGrid g;
    auto axis = [n](double lo, double hi) {
        std::vector<double> v(n);
        if (n == 1) {
            v[0] = 0.5 * (lo + hi);
            return v;
        }
        for (int i = 0; i < n; ++i) v[i] = (i == n - 1) ? hi : lo + (hi - lo) * i / (n - 1);
        return v;
    };
    g.sigmas = axis(rect.sigma_lo, rect.sigma_hi);
    g.ts = axis(rect.t_lo, rect.t_hi);
    return g;
}

RectGrid RectGrid::single(Complex s) { return RectGrid{{s.real()}, {s.imag()}}; }

std::size_t total_points(const GridSet& grids) {
    std::size_t n = 0;
    for (const auto& g : grids) n += g.size();
    return n;
}

GridExtent extent(const GridSet& grids) {
    GridExtent e{std::numeric_limits<double>::infinity(), -std::numeric_limits<double>::infinity(),
                 std::numeric_limits<double>::infinity(), -std::numeric_limits<double>::infinity()};
    for (const auto& g : grids) {
        for (double s : g.sigmas) {
            e.sigma_min = std::min(e.sigma_min, s);
            e.sigma_max = std::max(e.sigma_max, s);
        }
        for (double t : g.ts) {
            e.t_min = std::min(e.t_min, t);
            e.t_max = std::max(e.t_max, t);
        }
    }
    return e;
}

}  // namespace zetalab
