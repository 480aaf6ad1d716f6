#include "zetalab/universality.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "zetalab/errors.hpp"

namespace zetalab {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

CompactTarget empty_target(const Rect& region, int density) {
    if (density < 1) throw DomainError("target: grid density must be >= 1");
    CompactTarget t;
    t.region = region;
    t.density = density;
    t.grid = RectGrid::uniform(region, density);
    return t;
}

std::vector<double> scan_distances(const ShiftedFunction& f, const std::vector<std::int64_t>& ks,
                                   const CompactTarget& target) {
    std::vector<double> out(ks.size());
    f.for_each_shift(ks, [&](std::size_t i, std::int64_t, std::span<const Complex> v) {
        out[i] = sup_distance(v, target);
    });
    return out;
}

}  // namespace

StripBounds phi_strip(const EulerProductSpec& spec) { return {spec.sigma_star().value_or(0.5), 1.0}; }

StripBounds zeta_strip() { return {0.5, 1.0}; }

void validate_region(const Rect& region, const StripBounds& strip) {
    try {
        region.validate();
    } catch (const DomainError& e) {
        throw RegionError(e.what());
    }
    if (!(region.sigma_lo > strip.sigma_lo) || !(region.sigma_hi < strip.sigma_hi))
        throw RegionError("target rectangle must satisfy " + std::to_string(strip.sigma_lo) + " < sigma_lo and sigma_hi < " +
                          std::to_string(strip.sigma_hi));
}

CompactTarget target_from_polynomial(const std::vector<Complex>& coeffs, const Rect& region, int density,
                                     bool exp_wrap, const StripBounds& strip) {
    if (coeffs.empty()) throw DomainError("target_from_polynomial: no coefficients");
    for (const auto& c : coeffs) require_finite(c, "target_from_polynomial");
    validate_region(region, strip);
    auto t = empty_target(region, density);
    t.samples.reserve(t.grid.size());
    for (std::size_t i = 0; i < t.grid.size(); ++i) {
        const Complex s = t.grid.point(i);
        Complex p{};
        for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) p = p * s + *it;
        t.samples.push_back(exp_wrap ? std::exp(p) : p);
    }
    if (exp_wrap) {
        t.requires_nonvanishing = true;
        for (const auto& z : t.samples)
            if (!(std::abs(z) > 0.0) || !std::isfinite(std::abs(z)))
                throw DomainError("target_from_polynomial: e^p underflows or overflows on the grid");
    }
    return t;
}

CompactTarget target_from_shift(const EulerProductSpec& spec, std::int64_t k0, double h, const Rect& region,
                                int density, const AccuracyBudget& acc) {
    if (k0 < 0) throw DomainError("target_from_shift: k0 must be >= 0");
    validate_region(region, phi_strip(spec));
    auto t = empty_target(region, density);
    t.samples = ShiftedFunction::phi(spec, {t.grid}, h, acc).values_at(k0);
    t.requires_nonvanishing =
        std::all_of(t.samples.begin(), t.samples.end(), [](Complex z) { return std::abs(z) > 0.0; });
    return t;
}

CompactTarget target_from_shift(const ZetaContext& ctx, std::int64_t k0, double h, const Rect& region, int density,
                                const AccuracyBudget& acc) {
    if (k0 < 0) throw DomainError("target_from_shift: k0 must be >= 0");
    validate_region(region, zeta_strip());
    auto t = empty_target(region, density);
    t.samples = ShiftedFunction::periodic_hurwitz(ctx.seq, ctx.alpha, {t.grid}, h, acc).values_at(k0);
    return t;
}

double sup_distance(std::span<const Complex> values, const CompactTarget& target) {
    if (values.size() != target.samples.size())
        throw GridMismatchError("sup_distance: " + std::to_string(values.size()) + " values for " +
                                std::to_string(target.samples.size()) + " target samples");
    double d = 0.0;
    for (std::size_t i = 0; i < values.size(); ++i) d = std::max(d, std::abs(values[i] - target.samples[i]));
    return d;
}

double sup_distance(const ShiftedFunction& f, std::int64_t k, const CompactTarget& target) {
    if (f.grids().size() != 1 || !(f.grids().front() == target.grid))
        throw GridMismatchError("sup_distance: function is not sampled on the target grid");
    if (f.hits_pole(k)) throw PoleError("sup_distance: shift k = " + std::to_string(k) + " meets a pole");
    return sup_distance(f.values_at(k), target);
}

std::vector<DensityReport> epsilon_sweep(const EulerProductSpec& spec, const ZetaContext& zeta,
                                         const CompactTarget& target_phi, const CompactTarget& target_zeta,
                                         const IndependenceSpec& ind, std::int64_t n,
                                         const std::vector<double>& epsilons, const DensityOptions& options) {
    if (n < 0) throw DomainError("density: N must be >= 0");
    if (epsilons.empty()) throw DomainError("epsilon_sweep: no epsilon given");
    for (std::size_t i = 0; i < epsilons.size(); ++i) {
        if (!(epsilons[i] > 0.0)) throw DomainError("epsilon_sweep: epsilons must be positive");
        if (i > 0 && !(epsilons[i] > epsilons[i - 1])) throw DomainError("epsilon_sweep: epsilons must increase strictly");
    }
    if (!target_phi.requires_nonvanishing)
        throw DomainError("density: the phi target must be non-vanishing on its rectangle");
    if (target_phi.samples.size() != target_phi.grid.size() || target_zeta.samples.size() != target_zeta.grid.size())
        throw GridMismatchError("density: target samples do not match their grids");

    const auto regime = resolve_independence(ind, options.alpha_class);
    if (regime.regime == Regime::unknown && options.strict)
        throw RegimeError("density: independence regime is unknown (" +
                          (regime.warnings.empty() ? std::string("no detail") : regime.warnings.front()) + ")");
    const EulerProductSpec phi_spec = regime.prime_set ? modified_phi(spec, *regime.prime_set) : spec;
    validate_region(target_phi.region, phi_strip(phi_spec));
    validate_region(target_zeta.region, zeta_strip());

    const auto f = ShiftedFunction::phi(phi_spec, {target_phi.grid}, ind.h, options.acc);
    const auto g = ShiftedFunction::periodic_hurwitz(zeta.seq, zeta.alpha, {target_zeta.grid}, ind.h, options.acc);

    std::vector<std::int64_t> ks, excluded;
    for (std::int64_t k = 0; k <= n; ++k) (f.hits_pole(k) || g.hits_pole(k) ? excluded : ks).push_back(k);
    const auto d1 = scan_distances(f, ks, target_phi);
    const auto d2 = scan_distances(g, ks, target_zeta);

    std::vector<DensityReport> out;
    for (double eps : epsilons) {
        DensityReport rep;
        rep.n = n;
        rep.h = ind.h;
        rep.epsilon = eps;
        rep.regime = regime.regime;
        rep.warnings = regime.warnings;
        rep.excluded_k = excluded;
        for (std::size_t i = 0; i < ks.size(); ++i)
            if (d1[i] < eps && d2[i] < eps) ++rep.hits;
        rep.density = static_cast<double>(rep.hits) / (static_cast<double>(n) + 1.0);
        if (options.keep_stream) {
            rep.dist_phi.assign(static_cast<std::size_t>(n) + 1, kNaN);
            rep.dist_zeta.assign(static_cast<std::size_t>(n) + 1, kNaN);
            for (std::size_t i = 0; i < ks.size(); ++i) {
                rep.dist_phi[static_cast<std::size_t>(ks[i])] = d1[i];
                rep.dist_zeta[static_cast<std::size_t>(ks[i])] = d2[i];
            }
        }
        out.push_back(std::move(rep));
    }
    return out;
}

DensityReport joint_density(const EulerProductSpec& spec, const ZetaContext& zeta, const CompactTarget& target_phi,
                            const CompactTarget& target_zeta, const IndependenceSpec& ind, std::int64_t n,
                            double epsilon, const DensityOptions& options) {
    return epsilon_sweep(spec, zeta, target_phi, target_zeta, ind, n, {epsilon}, options).front();
}

}  // namespace zetalab
