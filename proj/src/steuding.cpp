#include <algorithm>
#include <cmath>
#include <limits>

#include "zetalab/errors.hpp"
#include "zetalab/primes.hpp"
#include "zetalab/shift_scan.hpp"
#include "zetalab/zetas.hpp"

namespace zetalab {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

/// (1/|K|) sum_{k in K} |phi(sigma + i k h)|^2 over k = 0..N, skipping shifts that hit a pole.
double discrete_mean_square(const EulerProductSpec& spec, double sigma, const SteudingOptions& opt) {
    if (!spec.has_continuation() && sigma <= 1.0) return kNaN;
    const auto f = ShiftedFunction::phi(spec, {RectGrid::single({sigma, 0.0})}, opt.h, opt.acc);
    std::vector<std::int64_t> ks;
    for (std::int64_t k = 0; k <= opt.shifts; ++k)
        if (!f.hits_pole(k)) ks.push_back(k);
    std::vector<double> sq(ks.size());
    f.for_each_shift(ks, [&](std::size_t i, std::int64_t, std::span<const Complex> v) { sq[i] = std::norm(v[0]); });
    double sum = 0.0;
    for (double v : sq) sum += v;
    return sum / static_cast<double>(ks.size());
}

}  // namespace

SteudingReport steuding_check(const EulerProductSpec& spec, double x, const std::vector<double>& sigma_grid,
                              const SteudingOptions& options) {
    if (!(x >= 100.0) || !std::isfinite(x)) throw DomainError("steuding_check: x must be at least 100");
    if (options.shifts < 0 || !(options.h > 0.0) || !(options.tolerance > 0.0))
        throw DomainError("steuding_check: need shifts >= 0, h > 0, tolerance > 0");
    if (!spec.has_continuation() && static_cast<double>(spec.prime_bound()) < x)
        throw InsufficientDataError("steuding_check: the spec stores factors only up to " +
                                    std::to_string(spec.prime_bound()) + " < x");
    for (double s : sigma_grid)
        if (!std::isfinite(s)) throw DomainError("steuding_check: non-finite sigma in grid");

    const auto up_to = static_cast<std::uint64_t>(std::floor(x));
    const auto coeffs = dirichlet_coefficients(spec, up_to);

    SteudingReport rep;
    rep.x_used = static_cast<double>(up_to);
    rep.degree_l = spec.degree();

    const auto primes = primes_up_to(up_to);
    double kappa = 0.0;
    for (auto p : primes) kappa += std::norm(coeffs[p]);
    rep.kappa_estimate = kappa / static_cast<double>(primes.size());

    bool growth = spec.growth_ok();
    for (std::uint64_t m = 1; m <= up_to && growth; ++m)
        growth = std::abs(coeffs[m]) <= std::pow(static_cast<double>(m), 0.25) * (1.0 + 1e-12);
    rep.coefficient_growth_ok = growth;

    rep.sigma_grid = sigma_grid;
    std::sort(rep.sigma_grid.begin(), rep.sigma_grid.end());
    for (double sigma : rep.sigma_grid) {
        rep.mean_squares.push_back(discrete_mean_square(spec, sigma, options));
        rep.comparators.push_back(sigma > 0.5 ? mean_square_comparator(coeffs, sigma) : kNaN);
    }

    // smallest grid sigma from which every larger grid sigma matches the comparator
    std::optional<double> star;
    for (std::size_t i = rep.sigma_grid.size(); i-- > 0;) {
        const double ms = rep.mean_squares[i];
        const double cmp = rep.comparators[i];
        if (!(std::abs(ms / cmp - 1.0) <= options.tolerance)) break;
        star = rep.sigma_grid[i];
    }
    if (star && *star < 1.0) rep.sigma_star_estimate = star;
    return rep;
}

}  // namespace zetalab
