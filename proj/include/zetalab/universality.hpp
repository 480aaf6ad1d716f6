#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "zetalab/grid.hpp"
#include "zetalab/shift_scan.hpp"
#include "zetalab/torus.hpp"
#include "zetalab/zetas.hpp"

namespace zetalab {

/// Open strip sigma_lo < Re s < sigma_hi that a target rectangle must sit in.
struct StripBounds {
    double sigma_lo = 0.5;
    double sigma_hi = 1.0;
};

/// sigma* < Re s < 1 for phi. Custom specs carry no sigma*, so the universal lower bound 1/2 is used.
StripBounds phi_strip(const EulerProductSpec& spec);
/// 1/2 < Re s < 1.
StripBounds zeta_strip();

/// RegionError unless the rectangle is valid and strictly inside the strip.
void validate_region(const Rect& region, const StripBounds& strip);

struct ZetaContext {
    double alpha = 1.0;
    PeriodicSequence seq{std::vector<Complex>{1.0}};
};

struct CompactTarget {
    Rect region;
    int density = 64;
    RectGrid grid;
    std::vector<Complex> samples;  // indexed like grid.point(i)
    bool requires_nonvanishing = false;
};

/// Samples p(s) = sum_j coeffs[j] s^j, or e^{p(s)} when exp_wrap (then flagged non-vanishing).
CompactTarget target_from_polynomial(const std::vector<Complex>& coeffs, const Rect& region, int density,
                                     bool exp_wrap, const StripBounds& strip);

/// The function's own values at shift k0 h, taken from the same shift engine the density scan
/// uses, so the distance at k = k0 is exactly 0. The phi target is flagged non-vanishing only
/// if no sample is 0.
CompactTarget target_from_shift(const EulerProductSpec& spec, std::int64_t k0, double h, const Rect& region,
                                int density, const AccuracyBudget& acc = {1e-10, 10'000'000});
CompactTarget target_from_shift(const ZetaContext& ctx, std::int64_t k0, double h, const Rect& region, int density,
                                const AccuracyBudget& acc = {1e-10, 10'000'000});

/// max_i |values[i] - target.samples[i]|; GridMismatchError on a size mismatch.
double sup_distance(std::span<const Complex> values, const CompactTarget& target);
/// Same with the values of f at shift k. f must be built on {target.grid}; PoleError at a pole.
double sup_distance(const ShiftedFunction& f, std::int64_t k, const CompactTarget& target);

struct DensityOptions {
    AlphaClass alpha_class = AlphaClass::transcendental_assumed;
    bool strict = false;  // RegimeError when the regime is unknown
    bool keep_stream = false;
    AccuracyBudget acc{1e-10, 10'000'000};
};

struct DensityReport {
    std::int64_t n = 0;
    double h = 0.0;
    double epsilon = 0.0;
    std::int64_t hits = 0;
    double density = 0.0;  // hits / (N + 1)
    Regime regime = Regime::full_independence;
    std::vector<std::int64_t> excluded_k;
    std::vector<std::string> warnings;
    // per-k sup-distances (NaN at excluded k); filled when keep_stream is set
    std::vector<double> dist_phi;
    std::vector<double> dist_zeta;
};

/// One pass over k = 0..N computing both sup-distances, then one report per epsilon (strictly
/// increasing). In the rational regime phi is replaced by phi_h. Shifts whose grid meets a pole
/// are excluded and listed. target_phi must be flagged non-vanishing.
std::vector<DensityReport> epsilon_sweep(const EulerProductSpec& spec, const ZetaContext& zeta,
                                         const CompactTarget& target_phi, const CompactTarget& target_zeta,
                                         const IndependenceSpec& ind, std::int64_t n,
                                         const std::vector<double>& epsilons, const DensityOptions& options = {});

DensityReport joint_density(const EulerProductSpec& spec, const ZetaContext& zeta, const CompactTarget& target_phi,
                            const CompactTarget& target_zeta, const IndependenceSpec& ind, std::int64_t n,
                            double epsilon, const DensityOptions& options = {});

}  // namespace zetalab
