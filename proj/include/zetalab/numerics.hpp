#pragma once

#include <complex>
#include <cstdint>
#include <functional>

namespace zetalab {

using Complex = std::complex<double>;

/// Points s = sigma + i t. Any operation rejects non-finite components.
using ComplexPoint = Complex;

/// Distance from a pole below which evaluation is refused.
inline constexpr double kPoleGuard = 1e-9;

struct AccuracyBudget {
    double abs_tol = 1e-12;
    std::int64_t max_terms = 10'000'000;

    /// Throws DomainError unless abs_tol >= 1e-15 and max_terms >= 1.
    void validate() const;
};

void require_finite(Complex z, const char* what);

/// Gamma function (Lanczos, g = 7, with reflection for Re z < 1/2).
/// Relative error is below 1e-12 for |z| <= 100. PoleError at non-positive integers.
Complex gamma(Complex z);

/// Euler-Maclaurin pieces shared by every Hurwitz-type evaluator in the library.
///
/// For x = N + beta the tail
///   T(s, x) = x^{1-s}/(s-1) + x^{-s}/2 + sum_{j=1}^{12} B_{2j}/(2j)! (s)_{2j-1} x^{-s-2j+1}
/// satisfies zeta(s, beta) = sum_{m<N} (m+beta)^{-s} + T(s, N+beta) + R with
///   |R| <= 4 |(s)_{24}| / (2 pi)^{24} * x^{-(sigma+23)} / (sigma+23).
namespace em {

inline constexpr int kOrder = 12;  // Bernoulli numbers up to B_24
inline constexpr std::int64_t kMinTerms = 10;

double remainder_bound(Complex s, double x);

/// Smallest N >= kMinTerms with remainder_bound(s, N + beta) <= tol.
std::int64_t cutoff(Complex s, double beta, double tol);

/// T(s, x). With drop_pole the term 1/(s-1) is subtracted in a cancellation-free
/// way, so the result stays finite at s = 1.
Complex tail(Complex s, double x, bool drop_pole);

/// (e^w - 1) / w, accurate for small |w|.
Complex expm1_over(Complex w);

}  // namespace em

/// Hurwitz zeta zeta(s, alpha) continued to s != 1 by Euler-Maclaurin.
/// alpha may be any positive real (the library's own shifted uses need alpha + 1).
Complex hurwitz_zeta(Complex s, double alpha, const AccuracyBudget& acc = {});

/// zeta(s, alpha) - 1/(s-1); entire in s.
Complex hurwitz_zeta_regularized(Complex s, double alpha, const AccuracyBudget& acc = {});

/// Riemann zeta; identical to hurwitz_zeta(s, 1, acc).
Complex riemann_zeta(Complex s, const AccuracyBudget& acc = {});

struct QuadratureResult {
    Complex value;
    double error_estimate = 0.0;
    std::int64_t panels = 0;
};

using RealToComplex = std::function<Complex(double)>;

/// Globally adaptive Gauss-Kronrod (7/15) quadrature on [a, b].
/// Splits the worst panel until the summed error estimate is <= acc.abs_tol;
/// AccuracyError once acc.max_terms panels are in use.
QuadratureResult integrate_segment_detailed(const RealToComplex& f, double a, double b,
                                            const AccuracyBudget& acc, int initial_panels = 1);

Complex integrate_segment(const RealToComplex& f, double a, double b, const AccuracyBudget& acc);

}  // namespace zetalab
