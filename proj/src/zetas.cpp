#include "zetalab/zetas.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "zetalab/errors.hpp"
#include "zetalab/primes.hpp"

namespace zetalab {

// ---------------------------------------------------------------------------
// PeriodicSequence
// ---------------------------------------------------------------------------

namespace {

bool has_period(const std::vector<Complex>& v, std::size_t d) {
    for (std::size_t i = d; i < v.size(); ++i)
        if (v[i] != v[i % d]) return false;
    return true;
}

std::size_t minimal_period(const std::vector<Complex>& v) {
    const std::size_t k = v.size();
    for (std::size_t d = 1; d < k; ++d)
        if (k % d == 0 && has_period(v, d)) return d;
    return k;
}

void validate_values(const std::vector<Complex>& values) {
    if (values.empty()) throw DomainError("PeriodicSequence: empty period");
    bool any_nonzero = false;
    for (const auto& v : values) {
        require_finite(v, "PeriodicSequence");
        if (v != Complex{}) any_nonzero = true;
    }
    if (!any_nonzero) throw DomainError("PeriodicSequence: all values are zero");
}

}  // namespace

PeriodicSequence::PeriodicSequence(std::vector<Complex> values) : values_(std::move(values)) {
    validate_values(values_);
    const std::size_t d = minimal_period(values_);
    if (d != values_.size()) {
        std::ostringstream os;
        os << "PeriodicSequence: period " << values_.size() << " is not minimal (values repeat with period " << d
           << ")";
        throw DomainError(os.str());
    }
}

PeriodicSequence PeriodicSequence::reduced(std::vector<Complex> values) {
    validate_values(values);
    values.resize(minimal_period(values));
    return PeriodicSequence(std::move(values));
}

Complex PeriodicSequence::residue() const {
    Complex sum;
    for (const auto& v : values_) sum += v;
    return sum / static_cast<double>(values_.size());
}

bool PeriodicSequence::is_entire() const {
    double scale = 0.0;
    for (const auto& v : values_) scale = std::max(scale, std::abs(v));
    return std::abs(residue()) <= 1e-14 * scale;
}

ResidueInfo residue_of(const PeriodicSequence& seq) { return {seq.residue(), seq.is_entire()}; }

Complex periodic_hurwitz(Complex s, double alpha, const PeriodicSequence& seq, const AccuracyBudget& acc) {
    require_finite(s, "periodic_hurwitz");
    acc.validate();
    if (!(alpha > 0.0 && alpha <= 1.0)) throw DomainError("periodic_hurwitz: alpha must lie in (0, 1]");
    const bool entire = seq.is_entire();
    if (!entire && std::abs(s - 1.0) < kPoleGuard)
        throw PoleError("periodic_hurwitz: s = 1 is a pole (non-zero residue)");
    const auto k = static_cast<double>(seq.period());
    double weight = 0.0;
    for (const auto& b : seq.values()) weight += std::abs(b);
    const double k_pow_sigma = std::pow(k, s.real());
    AccuracyBudget per_class = acc;
    per_class.abs_tol = std::max(1e-15, acc.abs_tol * std::min(1.0, k_pow_sigma) / weight);

    Complex sum;
    for (std::size_t l = 0; l < seq.period(); ++l) {
        const Complex b = seq.values()[l];
        if (b == Complex{}) continue;
        sum += b * hurwitz_zeta_regularized(s, (static_cast<double>(l) + alpha) / k, per_class);
    }
    const Complex k_pow = std::exp(-s * std::log(k));
    Complex value = k_pow * sum;
    if (!entire) value += seq.residue() * k * k_pow / (s - 1.0);
    return value;
}

// ---------------------------------------------------------------------------
// EulerProductSpec
// ---------------------------------------------------------------------------

std::string to_string(Family f) {
    switch (f) {
        case Family::riemann: return "riemann";
        case Family::dirichlet_l: return "dirichlet_l";
        case Family::custom: return "custom";
    }
    return "custom";
}

Family family_from_string(const std::string& name) {
    if (name == "riemann") return Family::riemann;
    if (name == "dirichlet_l") return Family::dirichlet_l;
    if (name == "custom") return Family::custom;
    throw DomainError("unknown function family '" + name + "'");
}

EulerProductSpec EulerProductSpec::riemann(std::uint64_t prime_bound) {
    EulerProductSpec spec;
    spec.family_ = Family::riemann;
    spec.prime_bound_ = prime_bound;
    for (auto p : primes_up_to(prime_bound)) spec.factors_.emplace_hint(spec.factors_.end(), p, FactorList{{1.0, 1}});
    return spec;
}

EulerProductSpec EulerProductSpec::dirichlet_l(int modulus, int index, std::uint64_t prime_bound) {
    EulerProductSpec spec;
    spec.family_ = Family::dirichlet_l;
    spec.character_.emplace(modulus, index);
    spec.prime_bound_ = prime_bound;
    for (auto p : primes_up_to(prime_bound)) {
        const Complex chi = (*spec.character_)(p);
        if (chi != Complex{}) spec.factors_.emplace_hint(spec.factors_.end(), p, FactorList{{chi, 1}});
    }
    return spec;
}

EulerProductSpec EulerProductSpec::custom(FactorTableMap factors, GrowthConstants growth, std::uint64_t prime_bound) {
    if (!(growth.c1 > 0.0) || !(growth.alpha_g >= 0.0) || !(growth.beta_g >= 0.0))
        throw DomainError("EulerProductSpec: growth constants need c1 > 0, alpha_g >= 0, beta_g >= 0");
    const FactorTable table(std::max<std::uint64_t>(prime_bound, 2));
    for (auto& [p, list] : factors) {
        if (p > prime_bound || !table.is_prime(p))
            throw DomainError("EulerProductSpec: factor key " + std::to_string(p) +
                              " is not a prime within the stored bound");
        for (const auto& f : list) {
            require_finite(f.coefficient, "EulerProductSpec");
            if (f.exponent < 1) throw DomainError("EulerProductSpec: factor exponents must be positive");
        }
    }
    // drop empty lists so structurally equal specs compare equal
    std::erase_if(factors, [](const auto& kv) { return kv.second.empty(); });
    EulerProductSpec spec;
    spec.family_ = Family::custom;
    spec.factors_ = std::move(factors);
    spec.growth_ = growth;
    spec.prime_bound_ = prime_bound;
    return spec;
}

FactorList EulerProductSpec::local_factors(std::uint64_t p) const {
    if (removed_.count(p)) return {};
    if (p <= prime_bound_) {
        auto it = factors_.find(p);
        return it == factors_.end() ? FactorList{} : it->second;
    }
    switch (family_) {
        case Family::riemann: return {{1.0, 1}};
        case Family::dirichlet_l: {
            const Complex chi = (*character_)(p);
            if (chi == Complex{}) return {};
            return {{chi, 1}};
        }
        case Family::custom: return {};
    }
    return {};
}

EulerProductSpec EulerProductSpec::without_primes(const std::vector<std::uint64_t>& primes) const {
    EulerProductSpec out = *this;
    for (auto p : primes) {
        if (out.removed_.count(p)) continue;
        FactorList carried = out.local_factors(p);
        out.factors_.erase(p);
        if (!carried.empty()) out.removed_.emplace(p, std::move(carried));
    }
    return out;
}

std::optional<PeriodicSequence> EulerProductSpec::continuation_sequence() const {
    switch (family_) {
        case Family::riemann: return PeriodicSequence({1.0});
        case Family::dirichlet_l: {
            const int q = character_->modulus();
            std::vector<Complex> values(q);
            for (int m = 0; m < q; ++m) values[m] = (*character_)(static_cast<std::uint64_t>(m + 1));
            return PeriodicSequence::reduced(std::move(values));
        }
        case Family::custom: return std::nullopt;
    }
    return std::nullopt;
}

std::optional<double> EulerProductSpec::sigma_star() const {
    if (family_ == Family::custom) return std::nullopt;
    return 0.5;
}

std::optional<double> EulerProductSpec::sigma0() const {
    if (family_ == Family::custom) return std::nullopt;
    return 0.5;
}

int EulerProductSpec::degree() const {
    std::size_t d = 0;
    for (const auto& [p, list] : factors_) d = std::max(d, list.size());
    return static_cast<int>(d);
}

bool EulerProductSpec::growth_ok() const {
    for (const auto& [p, list] : factors_) {
        const double pd = static_cast<double>(p);
        if (static_cast<double>(list.size()) > growth_.c1 * std::pow(pd, growth_.alpha_g) * (1.0 + 1e-12))
            return false;
        for (const auto& f : list)
            if (std::abs(f.coefficient) > std::pow(pd, growth_.beta_g) * (1.0 + 1e-12)) return false;
    }
    return true;
}

// ---------------------------------------------------------------------------
// Evaluation
// ---------------------------------------------------------------------------

namespace {

Complex local_product(Complex s, double log_p, const FactorList& list) {
    Complex prod = 1.0;
    for (const auto& f : list) prod *= 1.0 - f.coefficient * std::exp(-static_cast<double>(f.exponent) * s * log_p);
    return prod;
}

Complex continuation_value(Complex s, const EulerProductSpec& spec, const AccuracyBudget& acc) {
    const auto seq = spec.continuation_sequence();
    const Complex removed = removed_factor_product(s, spec);
    // the removed product is bounded by prod (1 + p^{-sigma}) <= a small constant for the few removed primes
    AccuracyBudget inner = acc;
    inner.abs_tol = std::max(1e-15, acc.abs_tol / std::max(1.0, std::abs(removed)));
    return periodic_hurwitz(s, 1.0, *seq, inner) * removed;
}

}  // namespace

Complex removed_factor_product(Complex s, const EulerProductSpec& spec) {
    Complex prod = 1.0;
    const Complex shifted = s + spec.shift();
    for (const auto& [p, list] : spec.removed()) prod *= local_product(shifted, std::log(static_cast<double>(p)), list);
    return prod;
}

MatsumotoValue matsumoto_eval(Complex s, const EulerProductSpec& spec, const AccuracyBudget& acc) {
    require_finite(s, "matsumoto_eval");
    acc.validate();
    const double sigma = s.real();
    if (sigma <= 1.0) {
        if (!spec.has_continuation())
            throw DomainError("matsumoto_eval: sigma <= 1 needs a continuation; custom specs only have the product");
        return {continuation_value(s, spec, acc), acc.abs_tol, "continuation", 0};
    }
    const Complex shifted = s + spec.shift();
    Complex inverse = 1.0;  // 1 / phi
    std::uint64_t used = 0;
    for (const auto& [p, list] : spec.factors()) {
        inverse *= local_product(shifted, std::log(static_cast<double>(p)), list);
        ++used;
    }
    const Complex value = 1.0 / inverse;
    // sum_{p > P} C1 p^{-sigma} <= 1.26 sigma C1 P^{1-sigma} / ((sigma - 1) log P)  (pi(x) < 1.26 x / log x)
    const double bound_p = static_cast<double>(std::max<std::uint64_t>(spec.prime_bound(), 2));
    double log_tail = 1.26 * sigma * spec.growth().c1 * std::pow(bound_p, 1.0 - sigma) / ((sigma - 1.0) * std::log(bound_p));
    log_tail *= 1.0 + std::pow(bound_p, -sigma);  // -log(1-x) <= x/(1-x)
    const double tail = std::abs(value) * std::expm1(log_tail);
    if (tail > acc.abs_tol) {
        std::ostringstream os;
        os << "matsumoto_eval: Euler product tail bound " << tail << " exceeds abs_tol " << acc.abs_tol
           << " (primes <= " << spec.prime_bound() << ")";
        throw AccuracyError(os.str());
    }
    return {value, tail, "euler_product", used};
}

Complex phi_value(Complex s, const EulerProductSpec& spec, const AccuracyBudget& acc) {
    require_finite(s, "phi_value");
    acc.validate();
    if (spec.has_continuation()) return continuation_value(s, spec, acc);
    return matsumoto_eval(s, spec, acc).value;
}

std::vector<Complex> dirichlet_coefficients(const EulerProductSpec& spec, std::uint64_t up_to) {
    if (up_to < 1) throw DomainError("dirichlet_coefficients: M must be >= 1");
    if (spec.has_continuation() && spec.removed().empty() && spec.shift() == 0.0) {
        // registry members are completely multiplicative with a(m) = chi(m)
        std::vector<Complex> c(up_to + 1, Complex{});
        for (std::uint64_t m = 1; m <= up_to; ++m)
            c[m] = spec.family() == Family::riemann ? Complex(1.0) : (*spec.character())(m);
        return c;
    }
    const FactorTable table(std::max<std::uint64_t>(up_to, 2));
    std::vector<Complex> c(up_to + 1, Complex{});
    c[1] = 1.0;
    // local series e_r(p) for p^r <= M, stored per prime
    std::vector<std::vector<Complex>> local(up_to + 1);
    for (std::uint64_t p = 2; p <= up_to; ++p) {
        if (!table.is_prime(p)) continue;
        int degree = 0;
        for (std::uint64_t q = p; q <= up_to; q *= p) {
            ++degree;
            if (q > up_to / p) break;
        }
        std::vector<Complex> series(degree + 1, Complex{});
        series[0] = 1.0;
        for (const auto& f : spec.local_factors(p)) {
            // multiply by 1/(1 - a X^f): new[r] = old[r] + a new[r - f]
            for (int r = f.exponent; r <= degree; ++r) series[r] += f.coefficient * series[r - f.exponent];
        }
        local[p] = std::move(series);
    }
    for (std::uint64_t n = 2; n <= up_to; ++n) {
        const std::uint64_t p = table.smallest_factor(n);
        std::uint64_t rest = n;
        int e = 0;
        while (rest % p == 0) {
            rest /= p;
            ++e;
        }
        c[n] = local[p][e] * c[rest];
    }
    const double shift = spec.shift();
    if (shift != 0.0)
        for (std::uint64_t n = 2; n <= up_to; ++n) c[n] *= std::pow(static_cast<double>(n), -shift);
    return c;
}

ModifiedPrimeSet prime_set_for_rational_h(std::uint64_t a, std::uint64_t b) {
    if (a < 1 || b < 1) throw DomainError("prime_set_for_rational_h: a and b must be positive");
    if (a == b) throw DomainError("prime_set_for_rational_h: a/b = 1 gives no finite step h");
    if (gcd(a, b) != 1) throw DomainError("prime_set_for_rational_h: a and b must be coprime");
    if (a < b) throw DomainError("prime_set_for_rational_h: exp(2 pi / h) > 1 for h > 0, so a > b is required");
    ModifiedPrimeSet out;
    out.a = a;
    out.b = b;
    auto pa = prime_divisors(a);
    auto pb = prime_divisors(b);
    out.primes = pa;
    out.primes.insert(out.primes.end(), pb.begin(), pb.end());
    std::sort(out.primes.begin(), out.primes.end());
    out.h = 2.0 * std::numbers::pi / std::log(static_cast<double>(a) / static_cast<double>(b));
    return out;
}

EulerProductSpec modified_phi(const EulerProductSpec& spec, const ModifiedPrimeSet& prime_set) {
    return spec.without_primes(prime_set.primes);
}

double mean_square_comparator(const std::vector<Complex>& coeffs, double sigma) {
    if (coeffs.size() < 3) throw DomainError("mean_square_comparator: need coefficients up to at least m = 2");
    if (!(sigma > 0.5)) throw DomainError("mean_square_comparator: sigma must exceed 1/2");
    const std::size_t x = coeffs.size() - 1;
    double sum = 0.0;
    for (std::size_t m = 1; m <= x; ++m) sum += std::norm(coeffs[m]) * std::pow(static_cast<double>(m), -2.0 * sigma);
    double density = 0.0;
    std::size_t count = 0;
    for (std::size_t m = x / 2 + 1; m <= x; ++m, ++count) density += std::norm(coeffs[m]);
    density /= static_cast<double>(std::max<std::size_t>(count, 1));
    const double xd = static_cast<double>(x);
    // integral of density * u^{-2 sigma} over (x + 1/2, inf)
    sum += density * std::pow(xd + 0.5, 1.0 - 2.0 * sigma) / (2.0 * sigma - 1.0);
    return sum;
}

}  // namespace zetalab
