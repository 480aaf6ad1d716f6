#include "zetalab/numerics.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <queue>
#include <sstream>
#include <vector>

#include "zetalab/errors.hpp"

namespace zetalab {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kTwoPi = 2.0 * std::numbers::pi;

// B_{2j} / (2j)! for j = 1..12.
constexpr std::array<double, em::kOrder> bernoulli_over_factorial() {
    constexpr std::array<double, em::kOrder> num = {
        1.0, -1.0, 1.0, -1.0, 5.0, -691.0, 7.0, -3617.0, 43867.0, -174611.0, 854513.0, -236364091.0};
    constexpr std::array<double, em::kOrder> den = {6.0,    30.0,  42.0,  30.0,  66.0,  2730.0,
                                                    6.0,    510.0, 798.0, 330.0, 138.0, 2730.0};
    std::array<double, em::kOrder> out{};
    double fact = 1.0;
    int k = 0;
    for (int j = 1; j <= em::kOrder; ++j) {
        while (k < 2 * j) {
            ++k;
            fact *= k;
        }
        out[j - 1] = num[j - 1] / den[j - 1] / fact;
    }
    return out;
}

constexpr auto kBernoulli = bernoulli_over_factorial();

constexpr std::array<double, 9> kLanczos = {
    0.99999999999980993,  676.5203681218851,     -1259.1392167224028,
    771.32342877765313,   -176.61502916214059,   12.507343278686905,
    -0.13857109526572012, 9.9843695780195716e-6, 1.5056327351493116e-7};
constexpr double kLanczosG = 7.0;

Complex gamma_right(Complex z) {
    // Re z >= 1/2
    z -= 1.0;
    Complex x = kLanczos[0];
    for (std::size_t i = 1; i < kLanczos.size(); ++i) x += kLanczos[i] / (z + static_cast<double>(i));
    const Complex t = z + kLanczosG + 0.5;
    return std::sqrt(kTwoPi) * std::exp((z + 0.5) * std::log(t) - t) * x;
}

double log_abs_pochhammer(Complex s, int n) {
    double acc = 0.0;
    for (int i = 0; i < n; ++i) acc += std::log(std::abs(s + static_cast<double>(i)));
    return acc;
}

}  // namespace

void AccuracyBudget::validate() const {
    if (!(abs_tol >= 1e-15) || !std::isfinite(abs_tol))
        throw DomainError("accuracy budget: abs_tol must be a finite value >= 1e-15");
    if (max_terms < 1) throw DomainError("accuracy budget: max_terms must be >= 1");
}

void require_finite(Complex z, const char* what) {
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) {
        std::ostringstream os;
        os << what << ": non-finite argument";
        throw DomainError(os.str());
    }
}

Complex gamma(Complex z) {
    require_finite(z, "gamma");
    if (z.real() <= 0.5) {
        const double nearest = std::round(z.real());
        if (nearest <= 0.0 && std::abs(z - Complex(nearest, 0.0)) < kPoleGuard)
            throw PoleError("gamma: argument at a pole (non-positive integer)");
    }
    if (z.real() < 0.5) return kPi / (std::sin(kPi * z) * gamma_right(1.0 - z));
    return gamma_right(z);
}

namespace em {

double remainder_bound(Complex s, double x) {
    const double expo = s.real() + 2.0 * kOrder - 1.0;
    const double log_bound = std::log(4.0) + log_abs_pochhammer(s, 2 * kOrder) -
                             2.0 * kOrder * std::log(kTwoPi) - expo * std::log(x) - std::log(expo);
    return std::exp(log_bound);
}

std::int64_t cutoff(Complex s, double beta, double tol) {
    const double expo = s.real() + 2.0 * kOrder - 1.0;
    const double log_c = std::log(4.0) + log_abs_pochhammer(s, 2 * kOrder) -
                         2.0 * kOrder * std::log(kTwoPi) - std::log(expo);
    const double x_needed = std::exp((log_c - std::log(tol)) / expo);
    double n = std::ceil(x_needed - beta);
    if (!(n >= static_cast<double>(kMinTerms))) n = static_cast<double>(kMinTerms);
    if (n > 9.0e15) return std::numeric_limits<std::int64_t>::max();
    auto terms = static_cast<std::int64_t>(n);
    // Guard against rounding in the closed form.
    while (remainder_bound(s, static_cast<double>(terms) + beta) > tol) ++terms;
    return terms;
}

Complex expm1_over(Complex w) {
    if (std::abs(w) < 1e-3) return 1.0 + w * (0.5 + w * (1.0 / 6.0 + w * (1.0 / 24.0 + w / 120.0)));
    return (std::exp(w) - 1.0) / w;
}

Complex tail(Complex s, double x, bool drop_pole) {
    const double log_x = std::log(x);
    const Complex x_pow = std::exp(-s * log_x);  // x^{-s}
    Complex pole_term;
    if (drop_pole) {
        // (x^{1-s} - 1)/(s-1) = -log x * (e^{(1-s) log x} - 1)/((1-s) log x)
        pole_term = -log_x * expm1_over((1.0 - s) * log_x);
    } else {
        pole_term = x * x_pow / (s - 1.0);
    }
    Complex sum = pole_term + 0.5 * x_pow;
    const double inv_x2 = 1.0 / (x * x);
    Complex term = s * x_pow / x;  // (s)_1 x^{-s-1}
    for (int j = 1; j <= kOrder; ++j) {
        sum += kBernoulli[j - 1] * term;
        const double a = 2.0 * j - 1.0;
        term *= (s + a) * (s + a + 1.0) * inv_x2;
    }
    return sum;
}

}  // namespace em

namespace {

Complex hurwitz_impl(Complex s, double alpha, const AccuracyBudget& acc, bool drop_pole) {
    require_finite(s, "hurwitz_zeta");
    acc.validate();
    if (!(alpha > 0.0) || !std::isfinite(alpha)) throw DomainError("hurwitz_zeta: alpha must be positive");
    if (!drop_pole && std::abs(s - 1.0) < kPoleGuard) throw PoleError("hurwitz_zeta: s = 1 is a pole");
    if (s.real() + 2.0 * em::kOrder - 1.0 <= 1.0)
        throw DomainError("hurwitz_zeta: real part too negative for the Euler-Maclaurin evaluator");
    const std::int64_t n = em::cutoff(s, alpha, 0.5 * acc.abs_tol);
    if (n > acc.max_terms) {
        std::ostringstream os;
        os << "hurwitz_zeta: " << n << " terms needed for abs_tol " << acc.abs_tol << " exceed max_terms "
           << acc.max_terms;
        throw AccuracyError(os.str());
    }
    Complex main;
    for (std::int64_t m = 0; m < n; ++m) main += std::exp(-s * std::log(static_cast<double>(m) + alpha));
    return main + em::tail(s, static_cast<double>(n) + alpha, drop_pole);
}

}  // namespace

Complex hurwitz_zeta(Complex s, double alpha, const AccuracyBudget& acc) {
    return hurwitz_impl(s, alpha, acc, false);
}

Complex hurwitz_zeta_regularized(Complex s, double alpha, const AccuracyBudget& acc) {
    return hurwitz_impl(s, alpha, acc, true);
}

Complex riemann_zeta(Complex s, const AccuracyBudget& acc) { return hurwitz_zeta(s, 1.0, acc); }

namespace {

constexpr std::array<double, 8> kXgk = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
constexpr std::array<double, 8> kWgk = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
constexpr std::array<double, 4> kWg = {0.129484966168869693270611432679082,
                                       0.279705391489276667901467771423780,
                                       0.381830050505118944950369775488975,
                                       0.417959183673469387755102040816327};

struct Panel {
    double a, b;
    Complex value;
    double error;
    bool operator<(const Panel& other) const { return error < other.error; }
};

Panel gauss_kronrod(const RealToComplex& f, double a, double b) {
    const double center = 0.5 * (a + b);
    const double half = 0.5 * (b - a);
    const Complex fc = f(center);
    Complex kronrod = kWgk[7] * fc;
    Complex gauss = kWg[3] * fc;
    for (int j = 0; j < 7; ++j) {
        const double dx = half * kXgk[j];
        const Complex sum = f(center - dx) + f(center + dx);
        kronrod += kWgk[j] * sum;
        if (j % 2 == 1) gauss += kWg[j / 2] * sum;
    }
    kronrod *= half;
    gauss *= half;
    const Complex v = kronrod;
    require_finite(v, "integrate_segment");
    return Panel{a, b, v, std::abs(kronrod - gauss)};
}

}  // namespace

QuadratureResult integrate_segment_detailed(const RealToComplex& f, double a, double b,
                                            const AccuracyBudget& acc, int initial_panels) {
    acc.validate();
    if (!(a < b) || !std::isfinite(a) || !std::isfinite(b))
        throw DomainError("integrate_segment: requires finite a < b");
    initial_panels = std::max(1, initial_panels);
    std::priority_queue<Panel> heap;
    double total_error = 0.0;
    const double width = (b - a) / initial_panels;
    for (int i = 0; i < initial_panels; ++i) {
        const double lo = a + width * i;
        const double hi = (i + 1 == initial_panels) ? b : a + width * (i + 1);
        Panel p = gauss_kronrod(f, lo, hi);
        total_error += p.error;
        heap.push(p);
    }
    std::int64_t panels = initial_panels;
    while (total_error > acc.abs_tol) {
        if (panels >= acc.max_terms) {
            std::ostringstream os;
            os << "integrate_segment: error estimate " << total_error << " above " << acc.abs_tol << " after "
               << panels << " panels";
            throw AccuracyError(os.str());
        }
        const Panel worst = heap.top();
        heap.pop();
        const double mid = 0.5 * (worst.a + worst.b);
        if (!(worst.a < mid && mid < worst.b))
            throw AccuracyError("integrate_segment: panel width underflow");
        Panel left = gauss_kronrod(f, worst.a, mid);
        Panel right = gauss_kronrod(f, mid, worst.b);
        total_error += left.error + right.error - worst.error;
        heap.push(left);
        heap.push(right);
        ++panels;
    }
    // Recompute the total in a fixed order so the result does not depend on heap layout.
    std::vector<Panel> all;
    all.reserve(heap.size());
    while (!heap.empty()) {
        all.push_back(heap.top());
        heap.pop();
    }
    std::sort(all.begin(), all.end(), [](const Panel& x, const Panel& y) { return x.a < y.a; });
    QuadratureResult out;
    double err = 0.0;
    for (const auto& p : all) {
        out.value += p.value;
        err += p.error;
    }
    out.error_estimate = err;
    out.panels = panels;
    return out;
}

Complex integrate_segment(const RealToComplex& f, double a, double b, const AccuracyBudget& acc) {
    return integrate_segment_detailed(f, a, b, acc).value;
}

}  // namespace zetalab
