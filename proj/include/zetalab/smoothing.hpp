#pragma once

#include <cstdint>
#include <vector>

#include "zetalab/grid.hpp"
#include "zetalab/numerics.hpp"
#include "zetalab/shift_scan.hpp"
#include "zetalab/zetas.hpp"

namespace zetalab {

struct SmoothingParams {
    std::int64_t n = 1;
    double sigma_hat = 0.75;
    double a = 0.75;  // contour abscissa
    /// DomainError unless n >= 1, sigma_hat > 1/2 and a > 1/2.
    void validate() const;
};

/// v1(m, n) = exp(-(m/n)^sigma_hat).
double weight_v1(std::int64_t m, const SmoothingParams& params);
/// v2(m, n, alpha) = exp(-((m + alpha)/(n + alpha))^sigma_hat).
double weight_v2(std::int64_t m, double alpha, const SmoothingParams& params);

/// A smoothed series truncated to a finite sum sum_j coeffs[j] exp(-s lambdas[j]), with a bound on
/// the dropped part valid for Re s >= sigma_min.
struct SmoothedSeries {
    std::vector<Complex> coeffs;
    std::vector<double> lambdas;
    double sigma_min = 0.0;
    double tail_bound = 0.0;

    Complex operator()(Complex s) const;
};

/// Terms of phi_n(s) = sum c_m v1(m, n) m^{-s} for Re s >= sigma_min > 1/2. Registry members have
/// |c_m| <= 1; for custom specs the tail bound assumes |c_m| <= C m^{1/4} with C fitted on the
/// computed range (the same growth proxy the Steuding check uses).
SmoothedSeries smoothed_phi_series(const EulerProductSpec& spec, const SmoothingParams& params, double sigma_min,
                                   const AccuracyBudget& acc = {});

/// Terms of zeta_n(s, alpha; B) = sum b_m v2(m, n, alpha) (m + alpha)^{-s}.
SmoothedSeries smoothed_zeta_series(double alpha, const PeriodicSequence& seq, const SmoothingParams& params,
                                    double sigma_min, const AccuracyBudget& acc = {});

Complex phi_n(Complex s, const EulerProductSpec& spec, const SmoothingParams& params, const AccuracyBudget& acc = {});
Complex zeta_n(Complex s, double alpha, const PeriodicSequence& seq, const SmoothingParams& params,
               const AccuracyBudget& acc = {});

/// l_n(z) = (z/a) Gamma(z/a) N^z with N = n (phi) or n + alpha (zeta).
Complex kernel_l(Complex z, double big_n, double a);

struct ContourCheck {
    double residual = 0.0;
    Complex series_value;
    Complex integral_value;
    double quadrature_error = 0.0;
    double truncation = 0.0;
};

/// |series value - (1/2 pi i) int_{a - iT}^{a + iT} F(s + z) l_n(z) dz / z|.
///
/// The kernel inverts to exp(-(m/n)^a), so the identity holds only with sigma_hat = a;
/// other values are rejected. Needs Re s + a > 1 and T >= 10.
ContourCheck contour_check_phi(Complex s, const EulerProductSpec& spec, const SmoothingParams& params, double t_c,
                               const AccuracyBudget& acc = {1e-10, 200000});
ContourCheck contour_check_zeta(Complex s, double alpha, const PeriodicSequence& seq, const SmoothingParams& params,
                                double t_c, const AccuracyBudget& acc = {1e-10, 200000});

/// Region with exhausting compacts K_1 c K_2 c ... c K_L: K_l is the region shrunk on each side
/// by (axis length / 4) 2^{1-l}; each K_l is sampled on a density x density grid.
struct MetricSpec {
    Rect region;
    int levels = 8;
    int density = 64;

    void validate() const;
    Rect compact(int level) const;  // level in 1..levels
    GridSet grids() const;
    std::size_t size() const;  // total sample count over all levels

    bool operator==(const MetricSpec&) const = default;
};

/// sum_l 2^{-l} d_l / (1 + d_l), d_l = max over the K_l grid of |f - g|. Samples are laid out
/// level by level as in MetricSpec::grids().
double rho_distance(std::span<const Complex> f, std::span<const Complex> g, const MetricSpec& spec);

/// max of the two component distances.
double joint_rho(std::span<const Complex> f1, std::span<const Complex> g1, std::span<const Complex> f2,
                 std::span<const Complex> g2, const MetricSpec& spec1, const MetricSpec& spec2);

struct ShiftAverageOptions {
    double h = 1.0;
    std::int64_t shifts = 1000;  // N
    SmoothingParams params;
    AccuracyBudget acc{1e-10, 10'000'000};
};

/// (1/(N+1)) sum_{k<=N} joint_rho((phi, zeta)(s + ikh), (phi_n, zeta_n)(s + ikh)).
double avg_shift_distance(const EulerProductSpec& spec, const PeriodicSequence& seq, double alpha,
                          const MetricSpec& metric_phi, const MetricSpec& metric_zeta,
                          const ShiftAverageOptions& options);

}  // namespace zetalab
