#include "zetalab/torus.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "zetalab/errors.hpp"
#include "zetalab/grid.hpp"
#include "zetalab/parallel.hpp"
#include "zetalab/primes.hpp"
#include "zetalab/rng.hpp"
#include "zetalab/shift_scan.hpp"

namespace zetalab {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr long double kTwoPiL = 2.0L * std::numbers::pi_v<long double>;

double reduce_angle(long double x) {
    long double r = std::fmod(x, kTwoPiL);
    if (r < 0) r += kTwoPiL;
    const auto d = static_cast<double>(r);
    return d < kTwoPi ? d : 0.0;
}

long double frac(long double x) {
    const long double f = x - std::floor(x);
    return f < 1.0L ? f : 0.0L;
}

TorusPoint draw(Xoshiro256pp rng, std::uint64_t p_max, std::uint64_t m_max) {
    if (p_max < 1 || m_max < 1) throw DomainError("sample_torus: truncation bounds must be >= 1");
    TorusPoint w;
    w.p_max = p_max;
    w.m_max = m_max;
    w.primes = primes_up_to(p_max);
    w.omega1.resize(w.primes.size());
    for (auto& a : w.omega1) a = rng.angle();
    w.omega2.resize(m_max + 1);
    for (auto& a : w.omega2) a = rng.angle();
    return w;
}

}  // namespace

double TorusPoint::angle1(std::uint64_t p) const {
    if (p > p_max) throw TruncationError("torus point stores primes only up to " + std::to_string(p_max));
    const auto it = std::lower_bound(primes.begin(), primes.end(), p);
    if (it == primes.end() || *it != p) throw DomainError("angle1: " + std::to_string(p) + " is not prime");
    return omega1[static_cast<std::size_t>(it - primes.begin())];
}

double TorusPoint::angle2(std::uint64_t m) const {
    if (m > m_max) throw TruncationError("torus point stores indices only up to " + std::to_string(m_max));
    return omega2[m];
}

TorusPoint TorusPoint::identity(std::uint64_t p_max, std::uint64_t m_max) {
    if (p_max < 1 || m_max < 1) throw DomainError("TorusPoint: truncation bounds must be >= 1");
    TorusPoint w;
    w.p_max = p_max;
    w.m_max = m_max;
    w.primes = primes_up_to(p_max);
    w.omega1.assign(w.primes.size(), 0.0);
    w.omega2.assign(m_max + 1, 0.0);
    return w;
}

TorusPoint sample_torus(std::uint64_t seed, std::uint64_t p_max, std::uint64_t m_max) {
    auto w = draw(Xoshiro256pp(seed), p_max, m_max);
    w.seed = seed;
    return w;
}

TorusPoint sample_torus_stream(std::uint64_t seed, std::uint64_t stream, std::uint64_t p_max, std::uint64_t m_max) {
    auto w = draw(Xoshiro256pp::stream(seed, stream), p_max, m_max);
    w.seed = seed;
    w.stream = stream;
    return w;
}

double omega1_angle(const TorusPoint& omega, std::uint64_t m) {
    if (m < 1) throw DomainError("omega1_of_integer: m must be >= 1");
    long double total = 0.0L;
    for (std::size_t j = 0; j < omega.primes.size() && m > 1; ++j) {
        const auto p = omega.primes[j];
        if (p * p > m) break;
        int v = 0;
        while (m % p == 0) {
            m /= p;
            ++v;
        }
        total += static_cast<long double>(v) * omega.omega1[j];
    }
    if (m > 1) total += omega.angle1(m);  // remaining factor is prime
    return reduce_angle(total);
}

Complex omega1_of_integer(const TorusPoint& omega, std::uint64_t m) { return std::polar(1.0, omega1_angle(omega, m)); }

TorusPoint rotate(const TorusPoint& omega, double h, double alpha) {
    if (!std::isfinite(h) || !(alpha > 0.0)) throw DomainError("rotate: need finite h and alpha > 0");
    TorusPoint out = omega;
    out.seed = 0;
    out.stream.reset();
    for (std::size_t j = 0; j < out.primes.size(); ++j)
        out.omega1[j] = reduce_angle(static_cast<long double>(out.omega1[j]) -
                                     static_cast<long double>(h) * std::log(static_cast<long double>(out.primes[j])));
    for (std::size_t m = 0; m < out.omega2.size(); ++m)
        out.omega2[m] = reduce_angle(static_cast<long double>(out.omega2[m]) -
                                     static_cast<long double>(h) * std::log(static_cast<long double>(m) + alpha));
    return out;
}

// ---------------------------------------------------------------------------

RandomizedSeries RandomizedSeries::phi(Complex s, const EulerProductSpec& spec, std::uint64_t trunc) {
    require_finite(s, "randomized_phi");
    if (!(s.real() > 0.5)) throw DomainError("randomized_phi: Re s must exceed 1/2");
    if (trunc < 1) throw DomainError("randomized_phi: truncation must be >= 1");
    const auto c = dirichlet_coefficients(spec, trunc);
    RandomizedSeries r;
    r.on_primes_ = true;
    for (std::uint64_t k = 1; k <= trunc; ++k) {
        if (c[k] == Complex{}) continue;
        r.index_.push_back(k);
        r.term_.push_back(c[k] * std::exp(-s * std::log(static_cast<double>(k))));
    }
    return r;
}

RandomizedSeries RandomizedSeries::zeta(Complex s, double alpha, const PeriodicSequence& seq, std::uint64_t trunc) {
    require_finite(s, "randomized_zeta");
    if (!(s.real() > 0.5)) throw DomainError("randomized_zeta: Re s must exceed 1/2");
    if (!(alpha > 0.0 && alpha <= 1.0)) throw DomainError("randomized_zeta: alpha must lie in (0, 1]");
    RandomizedSeries r;
    for (std::uint64_t m = 0; m <= trunc; ++m) {
        if (seq[m] == Complex{}) continue;
        r.index_.push_back(m);
        r.term_.push_back(seq[m] * std::exp(-s * std::log(static_cast<double>(m) + alpha)));
    }
    return r;
}

Complex RandomizedSeries::operator()(const TorusPoint& omega) const {
    Complex sum{};
    if (!on_primes_) {
        if (!index_.empty() && index_.back() > omega.m_max)
            throw TruncationError("randomized_zeta: truncation exceeds the torus point's M_max");
        for (std::size_t j = 0; j < index_.size(); ++j) sum += term_[j] * std::polar(1.0, omega.omega2[index_[j]]);
        return sum;
    }
    // omega1(k) angles for all k up to the truncation, built multiplicatively
    const std::uint64_t top = index_.empty() ? 1 : index_.back();
    std::vector<long double> angle(top + 1, 0.0L);
    std::vector<std::uint32_t> spf(top + 1, 0);
    std::size_t next_prime = 0;
    for (std::uint64_t k = 2; k <= top; ++k) {
        if (spf[k] == 0) {
            if (k > omega.p_max) throw TruncationError("randomized_phi: coefficient index has a prime factor above P_max");
            angle[k] = omega.omega1[next_prime++];
            for (std::uint64_t j = k * k; j <= top; j += k)
                if (spf[j] == 0) spf[j] = static_cast<std::uint32_t>(k);
        } else {
            angle[k] = angle[k / spf[k]] + angle[spf[k]];
        }
    }
    for (std::size_t j = 0; j < index_.size(); ++j) sum += term_[j] * std::polar(1.0, reduce_angle(angle[index_[j]]));
    return sum;
}

Complex randomized_phi(Complex s, const TorusPoint& omega, const EulerProductSpec& spec, std::uint64_t trunc) {
    return RandomizedSeries::phi(s, spec, trunc)(omega);
}

Complex randomized_zeta(Complex s, double alpha, const TorusPoint& omega, const PeriodicSequence& seq,
                        std::uint64_t trunc) {
    if (trunc > omega.m_max) throw TruncationError("randomized_zeta: truncation exceeds the torus point's M_max");
    return RandomizedSeries::zeta(s, alpha, seq, trunc)(omega);
}

// ---------------------------------------------------------------------------

std::string to_string(IndependenceMode m) { return m == IndependenceMode::generic_real_h ? "generic_real_h" : "rational_exp"; }

std::string to_string(AlphaClass c) {
    switch (c) {
        case AlphaClass::transcendental_assumed: return "transcendental_assumed";
        case AlphaClass::rational: return "rational";
        case AlphaClass::algebraic_assumed: return "algebraic_assumed";
    }
    return "";
}

std::string to_string(Regime r) {
    switch (r) {
        case Regime::full_independence: return "full_independence";
        case Regime::rational_exp: return "rational_exp";
        case Regime::unknown: return "unknown";
    }
    return "";
}

IndependenceMode independence_mode_from_string(const std::string& s) {
    if (s == "generic_real_h") return IndependenceMode::generic_real_h;
    if (s == "rational_exp") return IndependenceMode::rational_exp;
    throw DomainError("unknown independence mode '" + s + "'");
}

AlphaClass alpha_class_from_string(const std::string& s) {
    for (auto c : {AlphaClass::transcendental_assumed, AlphaClass::rational, AlphaClass::algebraic_assumed})
        if (to_string(c) == s) return c;
    throw DomainError("unknown alpha class '" + s + "'");
}

Regime regime_from_string(const std::string& s) {
    for (auto r : {Regime::full_independence, Regime::rational_exp, Regime::unknown})
        if (to_string(r) == s) return r;
    throw DomainError("unknown regime '" + s + "'");
}

IndependenceSpec IndependenceSpec::generic(double h) {
    IndependenceSpec spec{IndependenceMode::generic_real_h, h, std::nullopt};
    spec.validate();
    return spec;
}

IndependenceSpec IndependenceSpec::rational(std::uint64_t a, std::uint64_t b) {
    const auto set = prime_set_for_rational_h(a, b);
    return {IndependenceMode::rational_exp, set.h, RationalPair{a, b}};
}

void IndependenceSpec::validate() const {
    if (!(h > 0.0) || !std::isfinite(h)) throw DomainError("IndependenceSpec: h must be positive and finite");
    if (mode == IndependenceMode::generic_real_h) return;
    if (!rational_pair) throw DomainError("IndependenceSpec: rational_exp mode needs the pair (a, b)");
    const auto set = prime_set_for_rational_h(rational_pair->a, rational_pair->b);
    if (std::abs(h - set.h) > 8.0 * std::numeric_limits<double>::epsilon() * set.h)
        throw DomainError("IndependenceSpec: h differs from 2 pi / log(a/b)");
}

RegimeReport resolve_independence(const IndependenceSpec& ind, AlphaClass alpha_class) {
    ind.validate();
    RegimeReport rep;
    if (ind.mode == IndependenceMode::rational_exp) {
        rep.regime = Regime::rational_exp;
        rep.prime_set = prime_set_for_rational_h(ind.rational_pair->a, ind.rational_pair->b);
        if (alpha_class == AlphaClass::rational)
            rep.warnings.push_back("rational alpha: the modified-function theorem assumes a transcendental alpha");
        return rep;
    }
    switch (alpha_class) {
        case AlphaClass::transcendental_assumed:
            rep.regime = Regime::full_independence;
            break;
        case AlphaClass::rational:
            rep.regime = Regime::unknown;
            rep.warnings.push_back("rational alpha: log(m + alpha) are dependent over Q; no theorem covers this case");
            break;
        case AlphaClass::algebraic_assumed:
            rep.regime = Regime::unknown;
            rep.warnings.push_back(
                "algebraic alpha: independence needs an arithmetic condition on alpha and h that is not checkable");
            break;
    }
    return rep;
}

// ---------------------------------------------------------------------------

bool FrequencyVector::is_zero() const {
    return std::all_of(k_entries.begin(), k_entries.end(), [](const auto& e) { return e.second == 0; }) &&
           std::all_of(l_entries.begin(), l_entries.end(), [](const auto& e) { return e.second == 0; });
}

void FrequencyVector::validate() const {
    for (const auto& [p, k] : k_entries) {
        const auto divs = p >= 2 ? prime_divisors(p) : std::vector<std::uint64_t>{};
        if (divs.size() != 1 || divs[0] != p) throw DomainError("FrequencyVector: " + std::to_string(p) + " is not prime");
    }
}

namespace {

/// r with prod p^{k_p} = (a/b)^r, if the prime part is such a power.
std::optional<std::int64_t> power_of_ratio(const FrequencyVector& freq, const RationalPair& pair) {
    std::map<std::uint64_t, std::int64_t> target;  // exponents of a/b
    for (auto [n, sign] : {std::pair{pair.a, 1}, std::pair{pair.b, -1}})
        for (auto p : prime_divisors(n)) {
            std::int64_t v = 0;
            for (auto x = n; x % p == 0; x /= p) ++v;
            target[p] = sign * v;
        }
    std::optional<std::int64_t> r;
    for (const auto& [p, k] : freq.k_entries) {
        if (k == 0) continue;
        const auto it = target.find(p);
        if (it == target.end() || k % it->second != 0) return std::nullopt;
        const auto q = k / it->second;
        if (r && *r != q) return std::nullopt;
        r = q;
    }
    const auto ratio = r.value_or(0);
    for (const auto& [p, v] : target) {
        const auto it = freq.k_entries.find(p);
        if ((it == freq.k_entries.end() ? 0 : it->second) != ratio * v) return std::nullopt;
    }
    return ratio;
}

/// 1 - e^{-2 pi i x} for x in turns, without cancellation.
Complex one_minus_phase(long double turns) {
    const double y = static_cast<double>(kTwoPiL * frac(turns));
    const double half = std::sin(0.5 * y);
    return {2.0 * half * half, std::sin(y)};
}

}  // namespace

FourierValue fourier_gN(const FrequencyVector& freq, std::int64_t n, const IndependenceSpec& ind, double alpha) {
    if (n < 0) throw DomainError("fourier_gN: N must be >= 0");
    if (!(alpha > 0.0 && alpha <= 1.0)) throw DomainError("fourier_gN: alpha must lie in (0, 1]");
    freq.validate();
    ind.validate();

    long double theta = 0.0L;
    for (const auto& [p, k] : freq.k_entries) theta += k * std::log(static_cast<long double>(p));
    for (const auto& [m, l] : freq.l_entries) theta += l * std::log(static_cast<long double>(m) + alpha);

    FourierValue out;
    out.theta = static_cast<double>(theta);
    long double turns;
    const bool primes_only = std::all_of(freq.l_entries.begin(), freq.l_entries.end(),
                                         [](const auto& e) { return e.second == 0; });
    if (ind.mode == IndependenceMode::rational_exp) {
        const auto& pair = *ind.rational_pair;
        if (primes_only && power_of_ratio(freq, pair)) {
            out.obstruction = !freq.is_zero();
            turns = 0.0L;
        } else {
            turns = theta / std::log(static_cast<long double>(pair.a) / static_cast<long double>(pair.b));
        }
    } else {
        turns = static_cast<long double>(ind.h) * theta / kTwoPiL;
    }
    turns = frac(turns);
    out.turns = static_cast<double>(turns);
    out.resonant = turns == 0.0L;

    const long double count = static_cast<long double>(n) + 1.0L;
    Complex sum{};
    for (std::int64_t k = 0; k <= n; ++k) {
        const double y = static_cast<double>(kTwoPiL * frac(k * turns));
        sum += Complex(std::cos(y), -std::sin(y));
    }
    out.direct = sum / static_cast<double>(count);

    if (out.resonant) {
        out.closed_form = 1.0;
        out.bound = std::numeric_limits<double>::infinity();
    } else {
        const Complex den = one_minus_phase(turns);
        out.closed_form = one_minus_phase(count * turns) / (static_cast<double>(count) * den);
        out.bound = 2.0 / (static_cast<double>(count) * std::abs(den));
    }
    return out;
}

// ---------------------------------------------------------------------------

double ks_uniform(std::vector<double> sample) {
    if (sample.empty()) throw DomainError("ks_uniform: empty sample");
    std::sort(sample.begin(), sample.end());
    const double n = static_cast<double>(sample.size());
    double d = 0.0;
    for (std::size_t i = 0; i < sample.size(); ++i) {
        const double x = std::clamp(sample[i], 0.0, 1.0);
        d = std::max({d, (static_cast<double>(i) + 1.0) / n - x, x - static_cast<double>(i) / n});
    }
    return d;
}

double ks_two_sample(std::vector<double> a, std::vector<double> b) {
    if (a.empty() || b.empty()) throw DomainError("ks_two_sample: empty sample");
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    const double na = static_cast<double>(a.size()), nb = static_cast<double>(b.size());
    std::size_t i = 0, j = 0;
    double d = 0.0;
    while (i < a.size() && j < b.size()) {
        const double x = std::min(a[i], b[j]);
        while (i < a.size() && a[i] == x) ++i;
        while (j < b.size() && b[j] == x) ++j;
        d = std::max(d, std::abs(static_cast<double>(i) / na - static_cast<double>(j) / nb));
    }
    return d;
}

EquidistributionReport equidistribution_stat(const Marginal& coord, const IndependenceSpec& ind, double alpha,
                                             std::int64_t n) {
    if (n < 100) throw DomainError("equidistribution_stat: N must be >= 100");
    ind.validate();
    long double log_value;
    if (coord.prime) {
        const auto divs = coord.index >= 2 ? prime_divisors(coord.index) : std::vector<std::uint64_t>{};
        if (divs.size() != 1 || divs[0] != coord.index)
            throw DomainError("equidistribution_stat: " + std::to_string(coord.index) + " is not prime");
        log_value = std::log(static_cast<long double>(coord.index));
    } else {
        if (!(alpha > 0.0 && alpha <= 1.0)) throw DomainError("equidistribution_stat: alpha must lie in (0, 1]");
        log_value = std::log(static_cast<long double>(coord.index) + alpha);
    }
    long double step;
    if (ind.mode == IndependenceMode::rational_exp) {
        const auto& pair = *ind.rational_pair;
        step = log_value / std::log(static_cast<long double>(pair.a) / static_cast<long double>(pair.b));
        // p^r = (a/b)^q exactly only when a/b is a power of p
        if (coord.prime) {
            FrequencyVector f;
            f.k_entries[coord.index] = 1;
            if (power_of_ratio(f, pair)) step = 1.0L;
        }
    } else {
        step = static_cast<long double>(ind.h) * log_value / kTwoPiL;
    }

    std::vector<double> x(static_cast<std::size_t>(n) + 1);
    for (std::int64_t k = 0; k <= n; ++k) {
        double v = static_cast<double>(frac(k * step));
        if (v < 1e-9 || v > 1.0 - 1e-9) v = 0.0;
        x[static_cast<std::size_t>(k)] = v;
    }
    EquidistributionReport rep;
    rep.n = n;
    std::vector<double> sorted = x;
    std::sort(sorted.begin(), sorted.end());
    rep.distinct_points = static_cast<std::size_t>(std::unique(sorted.begin(), sorted.end()) - sorted.begin());
    rep.degenerate = 2 * rep.distinct_points <= static_cast<std::size_t>(n) + 1;
    rep.statistic = ks_uniform(std::move(x));
    return rep;
}

std::string to_string(Which w) {
    switch (w) {
        case Which::phi: return "phi";
        case Which::zeta: return "zeta";
        case Which::joint: return "joint";
    }
    return "";
}

Which which_from_string(const std::string& s) {
    for (auto w : {Which::phi, Which::zeta, Which::joint})
        if (to_string(w) == s) return w;
    throw DomainError("unknown component '" + s + "'");
}

DistCompareReport compare_samples(const std::vector<Complex>& a, const std::vector<Complex>& b) {
    auto part = [](const std::vector<Complex>& v, auto f) {
        std::vector<double> out(v.size());
        std::transform(v.begin(), v.end(), out.begin(), f);
        return out;
    };
    auto re = [](Complex z) { return z.real(); };
    auto im = [](Complex z) { return z.imag(); };
    auto mod = [](Complex z) { return std::abs(z); };
    DistCompareReport rep;
    rep.ks_re = ks_two_sample(part(a, re), part(b, re));
    rep.ks_im = ks_two_sample(part(a, im), part(b, im));
    rep.ks_abs = ks_two_sample(part(a, mod), part(b, mod));
    rep.statistic = std::max({rep.ks_re, rep.ks_im, rep.ks_abs});
    return rep;
}

DistCompareReport distribution_compare(Complex s, Which which, const IndependenceSpec& ind,
                                       const EulerProductSpec& spec, const PeriodicSequence& seq, double alpha,
                                       const DistCompareOptions& options) {
    require_finite(s, "distribution_compare");
    ind.validate();
    options.acc.validate();
    if (options.shifts < 0 || options.torus_samples < 1)
        throw DomainError("distribution_compare: need N >= 0 and at least one torus sample");

    const bool rational = ind.mode == IndependenceMode::rational_exp;
    const EulerProductSpec phi_spec =
        rational ? modified_phi(spec, prime_set_for_rational_h(ind.rational_pair->a, ind.rational_pair->b)) : spec;
    const bool want_phi = which != Which::zeta;
    const bool want_zeta = which != Which::phi;
    const GridSet grid{RectGrid::single(s)};
    const auto ks = shift_range(options.shifts);
    const auto n_samples = static_cast<std::size_t>(options.torus_samples);

    auto shift_values = [&](const ShiftedFunction& f) {
        std::vector<Complex> out(ks.size());
        f.for_each_shift(ks, [&](std::size_t i, std::int64_t, std::span<const Complex> v) { out[i] = v[0]; });
        return out;
    };

    std::vector<Complex> phi_shift, zeta_shift, phi_random(n_samples), zeta_random(n_samples);
    std::optional<RandomizedSeries> phi_series, zeta_series;
    if (want_phi) {
        phi_shift = shift_values(ShiftedFunction::phi(phi_spec, grid, ind.h, options.acc));
        phi_series = RandomizedSeries::phi(s, phi_spec, options.p_max);
    }
    if (want_zeta) {
        zeta_shift = shift_values(ShiftedFunction::periodic_hurwitz(seq, alpha, grid, ind.h, options.acc));
        zeta_series = RandomizedSeries::zeta(s, alpha, seq, options.m_max);
    }
    parallel_for(n_samples, [&](std::size_t i) {
        const auto omega = sample_torus_stream(options.seed, i, options.p_max, options.m_max);
        if (phi_series) phi_random[i] = (*phi_series)(omega);
        if (zeta_series) zeta_random[i] = (*zeta_series)(omega);
    });

    DistCompareReport rep;
    if (want_phi) rep = compare_samples(phi_shift, phi_random);
    if (want_zeta) {
        const auto z = compare_samples(zeta_shift, zeta_random);
        if (want_phi) {
            rep.ks_re = std::max(rep.ks_re, z.ks_re);
            rep.ks_im = std::max(rep.ks_im, z.ks_im);
            rep.ks_abs = std::max(rep.ks_abs, z.ks_abs);
            rep.statistic = std::max(rep.statistic, z.statistic);
        } else {
            rep = z;
        }
    }
    rep.regime = rational ? Regime::rational_exp : Regime::full_independence;
    return rep;
}

}  // namespace zetalab
