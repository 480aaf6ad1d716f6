#pragma once

// Reference values computed without touching the library's evaluators.

#include <cmath>
#include <complex>
#include <cstdint>
#include <functional>
#include <vector>

namespace oracle {

using Complex = std::complex<double>;

/// sum_{m>=1} m^{-s} for real s > 1: 10^6 direct terms plus Euler-Maclaurin
/// correction of the tail to two terms (error far below 1e-15 for s >= 1.5).
inline double zeta_series(double s) {
    const std::int64_t n = 1'000'000;
    long double sum = 0.0L;
    for (std::int64_t m = n; m >= 1; --m) sum += std::pow(static_cast<long double>(m), -static_cast<long double>(s));
    const long double x = n;
    // sum_{m>n} m^{-s} = x^{1-s}/(s-1) - x^{-s}/2 + s x^{-s-1}/12 + O(x^{-s-3})
    sum += std::pow(x, 1.0L - s) / (s - 1.0L) - 0.5L * std::pow(x, -static_cast<long double>(s)) +
           s * std::pow(x, -s - 1.0L) / 12.0L;
    return static_cast<double>(sum);
}

/// Alternating series sum_{m>=0} (-1)^m f(m) for positive decreasing f, averaged over
/// two consecutive partial sums (error below f(n)/2 ... in practice far smaller).
inline double alternating(const std::function<double(std::int64_t)>& f, std::int64_t n = 2'000'000) {
    long double sum = 0.0L;
    for (std::int64_t m = n - 1; m >= 0; --m) sum += ((m % 2) ? -1.0L : 1.0L) * f(m);
    const long double next = ((n % 2) ? -1.0L : 1.0L) * f(n);
    return static_cast<double>(sum + 0.5L * next);
}

/// sum_{m>=0} b_{m mod k} (m + alpha)^{-s} for sigma > 1: k * blocks direct terms, then
/// each residue class tail sum_{n>=N} (k n + l + alpha)^{-s} by its first three
/// Euler-Maclaurin terms (error O(|s|^3 N^{-sigma-3})).
inline Complex periodic_series(Complex s, double alpha, const std::vector<Complex>& b, std::int64_t blocks = 200'000) {
    const auto k = static_cast<std::int64_t>(b.size());
    Complex sum;
    for (std::int64_t m = k * blocks - 1; m >= 0; --m)
        sum += b[static_cast<std::size_t>(m % k)] * std::exp(-s * std::log(static_cast<double>(m) + alpha));
    const double kd = static_cast<double>(k);
    for (std::int64_t l = 0; l < k; ++l) {
        const double x = static_cast<double>(blocks) + (static_cast<double>(l) + alpha) / kd;
        const Complex xs = std::exp(-s * std::log(x));
        const Complex tail = x * xs / (s - 1.0) + 0.5 * xs + s * xs / (12.0 * x);
        sum += b[static_cast<std::size_t>(l)] * std::exp(-s * std::log(kd)) * tail;
    }
    return sum;
}

}  // namespace oracle
