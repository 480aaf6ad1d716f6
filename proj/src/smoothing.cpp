#include "zetalab/smoothing.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "zetalab/errors.hpp"

namespace zetalab {

void SmoothingParams::validate() const {
    if (n < 1) throw DomainError("smoothing: n must be >= 1");
    if (!(sigma_hat > 0.5) || !std::isfinite(sigma_hat)) throw DomainError("smoothing: sigma_hat must exceed 1/2");
    if (!(a > 0.5) || !std::isfinite(a)) throw DomainError("smoothing: a must exceed 1/2");
}

double weight_v1(std::int64_t m, const SmoothingParams& params) {
    params.validate();
    if (m < 1) throw DomainError("weight_v1: m must be >= 1");
    return std::exp(-std::pow(static_cast<double>(m) / static_cast<double>(params.n), params.sigma_hat));
}

double weight_v2(std::int64_t m, double alpha, const SmoothingParams& params) {
    params.validate();
    if (m < 0) throw DomainError("weight_v2: m must be >= 0");
    if (!(alpha > 0.0 && alpha <= 1.0)) throw DomainError("weight_v2: alpha must lie in (0, 1]");
    const double n = static_cast<double>(params.n);
    return std::exp(-std::pow((static_cast<double>(m) + alpha) / (n + alpha), params.sigma_hat));
}

Complex SmoothedSeries::operator()(Complex s) const {
    require_finite(s, "smoothed series");
    if (s.real() < sigma_min) throw DomainError("smoothed series: Re s below the certified abscissa");
    Complex sum;
    for (std::size_t j = 0; j < coeffs.size(); ++j) sum += coeffs[j] * std::exp(-s * lambdas[j]);
    return sum;
}

namespace {

/// Upper bound for C x^{gamma - sigma} int_x^inf exp(-(u/n)^b) du, with the incomplete gamma
/// integral bounded by y^{c-1} e^{-y} (1 + max(0, c - 1)/y), y = (x/n)^b, c = 1/b.
double tail_estimate(double x, double n, double b, double sigma, double gamma_exp, double c) {
    const double y = std::pow(x / n, b);
    const double cc = 1.0 / b;
    const double incomplete = std::pow(y, cc - 1.0) * std::exp(-y) * (1.0 + std::max(0.0, cc - 1.0) / y);
    return c * std::pow(x, gamma_exp - sigma) * (n / b) * incomplete;
}

void check_sigma_min(double sigma_min) {
    if (!(sigma_min > 0.5) || !std::isfinite(sigma_min))
        throw DomainError("smoothed series: certified only for Re s > 1/2");
}

template <class Bound>
std::int64_t choose_terms(std::int64_t n, const AccuracyBudget& acc, Bound&& bound) {
    std::int64_t hi = std::max<std::int64_t>(n, 2);
    while (bound(hi) > 0.5 * acc.abs_tol) {
        if (hi > acc.max_terms) {
            std::ostringstream os;
            os << "smoothed series: more than " << acc.max_terms << " terms needed for abs_tol " << acc.abs_tol;
            throw AccuracyError(os.str());
        }
        hi *= 2;
    }
    std::int64_t lo = hi / 2;
    while (hi - lo > 1) {
        const std::int64_t mid = lo + (hi - lo) / 2;
        (bound(mid) > 0.5 * acc.abs_tol ? lo : hi) = mid;
    }
    if (hi > acc.max_terms) throw AccuracyError("smoothed series: term budget exceeded");
    return hi;
}

}  // namespace

SmoothedSeries smoothed_phi_series(const EulerProductSpec& spec, const SmoothingParams& params, double sigma_min,
                                   const AccuracyBudget& acc) {
    params.validate();
    acc.validate();
    check_sigma_min(sigma_min);
    const double n = static_cast<double>(params.n);
    const bool registry = spec.has_continuation();
    const double growth = registry ? 0.0 : 0.25;

    std::int64_t terms;
    std::vector<Complex> c;
    double scale = 1.0;
    if (registry) {
        terms = choose_terms(params.n, acc, [&](std::int64_t m) {
            return tail_estimate(static_cast<double>(m), n, params.sigma_hat, sigma_min, 0.0, 1.0);
        });
        c = dirichlet_coefficients(spec, static_cast<std::uint64_t>(terms));
    } else {
        // refit C on each candidate range until the bound holds with the fitted C
        std::int64_t guess = params.n;
        for (;;) {
            c = dirichlet_coefficients(spec, static_cast<std::uint64_t>(guess));
            scale = 1.0;
            for (std::size_t m = 1; m < c.size(); ++m)
                scale = std::max(scale, std::abs(c[m]) * std::pow(static_cast<double>(m), -growth));
            terms = choose_terms(params.n, acc, [&](std::int64_t m) {
                return tail_estimate(static_cast<double>(m), n, params.sigma_hat, sigma_min, growth, scale);
            });
            if (terms <= guess) break;
            guess = terms;
        }
    }
    SmoothedSeries out;
    out.sigma_min = sigma_min;
    out.tail_bound = tail_estimate(static_cast<double>(terms), n, params.sigma_hat, sigma_min, growth, scale);
    for (std::int64_t m = 1; m <= terms; ++m) {
        const Complex cm = c[static_cast<std::size_t>(m)];
        if (cm == Complex{}) continue;
        out.coeffs.push_back(cm * weight_v1(m, params));
        out.lambdas.push_back(std::log(static_cast<double>(m)));
    }
    return out;
}

SmoothedSeries smoothed_zeta_series(double alpha, const PeriodicSequence& seq, const SmoothingParams& params,
                                    double sigma_min, const AccuracyBudget& acc) {
    params.validate();
    acc.validate();
    check_sigma_min(sigma_min);
    if (!(alpha > 0.0 && alpha <= 1.0)) throw DomainError("zeta_n: alpha must lie in (0, 1]");
    double bmax = 0.0;
    for (const auto& b : seq.values()) bmax = std::max(bmax, std::abs(b));
    const double n_alpha = static_cast<double>(params.n) + alpha;
    const std::int64_t terms = choose_terms(params.n, acc, [&](std::int64_t m) {
        return tail_estimate(static_cast<double>(m) + alpha, n_alpha, params.sigma_hat, sigma_min, 0.0, bmax);
    });
    SmoothedSeries out;
    out.sigma_min = sigma_min;
    out.tail_bound =
        tail_estimate(static_cast<double>(terms) + alpha, n_alpha, params.sigma_hat, sigma_min, 0.0, bmax);
    for (std::int64_t m = 0; m <= terms; ++m) {
        const Complex b = seq[static_cast<std::uint64_t>(m)];
        if (b == Complex{}) continue;
        out.coeffs.push_back(b * weight_v2(m, alpha, params));
        out.lambdas.push_back(std::log(static_cast<double>(m) + alpha));
    }
    return out;
}

Complex phi_n(Complex s, const EulerProductSpec& spec, const SmoothingParams& params, const AccuracyBudget& acc) {
    require_finite(s, "phi_n");
    return smoothed_phi_series(spec, params, s.real(), acc)(s);
}

Complex zeta_n(Complex s, double alpha, const PeriodicSequence& seq, const SmoothingParams& params,
               const AccuracyBudget& acc) {
    require_finite(s, "zeta_n");
    return smoothed_zeta_series(alpha, seq, params, s.real(), acc)(s);
}

Complex kernel_l(Complex z, double big_n, double a) {
    return gamma(1.0 + z / a) * std::exp(z * std::log(big_n));
}

namespace {

ContourCheck run_contour(Complex s, const std::function<Complex(Complex)>& f, Complex series, double big_n,
                         const SmoothingParams& params, double t_c, const AccuracyBudget& acc) {
    const double a = params.a;
    const double log_n = std::log(big_n);
    // (1/2 pi i) int F(s+z) Gamma(z/a)/a N^z dz along z = a + iy, dz = i dy
    auto integrand = [&](double y) {
        const Complex z(a, y);
        return f(s + z) * gamma(1.0 + Complex(0.0, y / a)) * std::exp(z * log_n) / (2.0 * std::numbers::pi * a);
    };
    const int panels = std::max(8, static_cast<int>(std::ceil(2.0 * t_c * (log_n + 1.0) / std::numbers::pi)));
    const auto q = integrate_segment_detailed(integrand, -t_c, t_c, acc, panels);
    ContourCheck out;
    out.series_value = series;
    out.integral_value = q.value;
    out.quadrature_error = q.error_estimate;
    out.truncation = t_c;
    out.residual = std::abs(series - q.value);
    return out;
}

void check_contour_inputs(Complex s, const SmoothingParams& params, double t_c) {
    params.validate();
    require_finite(s, "contour_check");
    if (params.sigma_hat != params.a)
        throw DomainError("contour_check: the kernel inverts to exp(-(m/n)^a), so sigma_hat must equal a");
    if (!(t_c >= 10.0) || !std::isfinite(t_c)) throw DomainError("contour_check: truncation T must be >= 10");
    if (!(s.real() + params.a > 1.0)) throw DomainError("contour_check: needs Re s + a > 1");
    if (!(s.real() > 0.5)) throw DomainError("contour_check: the smoothed series needs Re s > 1/2");
}

}  // namespace

ContourCheck contour_check_phi(Complex s, const EulerProductSpec& spec, const SmoothingParams& params, double t_c,
                               const AccuracyBudget& acc) {
    check_contour_inputs(s, params, t_c);
    const AccuracyBudget inner{1e-13, 10'000'000};
    const Complex series = phi_n(s, spec, params, inner);
    return run_contour(s, [&](Complex w) { return phi_value(w, spec, inner); }, series,
                       static_cast<double>(params.n), params, t_c, acc);
}

ContourCheck contour_check_zeta(Complex s, double alpha, const PeriodicSequence& seq, const SmoothingParams& params,
                                double t_c, const AccuracyBudget& acc) {
    check_contour_inputs(s, params, t_c);
    const AccuracyBudget inner{1e-13, 10'000'000};
    const Complex series = zeta_n(s, alpha, seq, params, inner);
    return run_contour(s, [&](Complex w) { return periodic_hurwitz(w, alpha, seq, inner); }, series,
                       static_cast<double>(params.n) + alpha, params, t_c, acc);
}

// ---------------------------------------------------------------------------
// Metric
// ---------------------------------------------------------------------------

void MetricSpec::validate() const {
    region.validate();
    if (!(region.width() > 0.0) || !(region.height() > 0.0))
        throw DomainError("metric: region must have non-empty interior");
    if (levels < 1) throw DomainError("metric: levels must be >= 1");
    if (density < 1) throw DomainError("metric: grid density must be >= 1");
}

Rect MetricSpec::compact(int level) const {
    if (level < 1 || level > levels) throw DomainError("metric: level out of range");
    const double f = 0.25 * std::ldexp(1.0, 1 - level);
    const double ms = region.width() * f;
    const double mt = region.height() * f;
    return {region.sigma_lo + ms, region.sigma_hi - ms, region.t_lo + mt, region.t_hi - mt};
}

GridSet MetricSpec::grids() const {
    validate();
    GridSet out;
    for (int l = 1; l <= levels; ++l) out.push_back(RectGrid::uniform(compact(l), density));
    return out;
}

std::size_t MetricSpec::size() const {
    return static_cast<std::size_t>(levels) * static_cast<std::size_t>(density) * static_cast<std::size_t>(density);
}

double rho_distance(std::span<const Complex> f, std::span<const Complex> g, const MetricSpec& spec) {
    spec.validate();
    if (f.size() != spec.size() || g.size() != spec.size()) {
        std::ostringstream os;
        os << "rho_distance: samples have " << f.size() << " and " << g.size() << " points, metric grids need "
           << spec.size();
        throw GridMismatchError(os.str());
    }
    const std::size_t per = static_cast<std::size_t>(spec.density) * static_cast<std::size_t>(spec.density);
    double rho = 0.0;
    for (int l = 0; l < spec.levels; ++l) {
        double d = 0.0;
        for (std::size_t i = l * per; i < (l + 1) * per; ++i) d = std::max(d, std::abs(f[i] - g[i]));
        rho += std::ldexp(1.0, -(l + 1)) * d / (1.0 + d);
    }
    return rho;
}

double joint_rho(std::span<const Complex> f1, std::span<const Complex> g1, std::span<const Complex> f2,
                 std::span<const Complex> g2, const MetricSpec& spec1, const MetricSpec& spec2) {
    return std::max(rho_distance(f1, g1, spec1), rho_distance(f2, g2, spec2));
}

namespace {

std::vector<double> per_shift_rho(const ShiftedFunction& f, const ShiftedFunction& g,
                                  const std::vector<std::int64_t>& ks, const MetricSpec& metric) {
    std::vector<double> out(ks.size());
    for_each_shift_pair(f, g, ks,
                        [&](std::size_t i, std::int64_t, std::span<const Complex> a, std::span<const Complex> b) {
                            out[i] = rho_distance(a, b, metric);
                        });
    return out;
}

void require_no_poles(const ShiftedFunction& f, const std::vector<std::int64_t>& ks, const char* what) {
    for (auto k : ks)
        if (f.hits_pole(k))
            throw PoleError(std::string("avg_shift_distance: the ") + what + " region meets the pole at shift k = " +
                            std::to_string(k));
}

}  // namespace

double avg_shift_distance(const EulerProductSpec& spec, const PeriodicSequence& seq, double alpha,
                          const MetricSpec& metric_phi, const MetricSpec& metric_zeta,
                          const ShiftAverageOptions& options) {
    options.params.validate();
    metric_phi.validate();
    metric_zeta.validate();
    const auto ks = shift_range(options.shifts);
    const double h = options.h;

    const auto phi = ShiftedFunction::phi(spec, metric_phi.grids(), h, options.acc);
    require_no_poles(phi, ks, "phi");
    const auto pser = smoothed_phi_series(spec, options.params, extent(metric_phi.grids()).sigma_min, options.acc);
    const auto phi_smooth = ShiftedFunction::finite_series(pser.coeffs, pser.lambdas, metric_phi.grids(), h);
    const auto zeta = ShiftedFunction::periodic_hurwitz(seq, alpha, metric_zeta.grids(), h, options.acc);
    require_no_poles(zeta, ks, "zeta");
    const auto zser = smoothed_zeta_series(alpha, seq, options.params, extent(metric_zeta.grids()).sigma_min, options.acc);
    const auto zeta_smooth = ShiftedFunction::finite_series(zser.coeffs, zser.lambdas, metric_zeta.grids(), h);

    const auto r1 = per_shift_rho(phi, phi_smooth, ks, metric_phi);
    const auto r2 = per_shift_rho(zeta, zeta_smooth, ks, metric_zeta);
    double sum = 0.0;
    for (std::size_t i = 0; i < ks.size(); ++i) sum += std::max(r1[i], r2[i]);
    return sum / static_cast<double>(ks.size());
}

}  // namespace zetalab
