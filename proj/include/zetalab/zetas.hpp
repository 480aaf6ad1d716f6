#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "zetalab/characters.hpp"
#include "zetalab/numerics.hpp"

namespace zetalab {

// ---------------------------------------------------------------------------
// Periodic coefficient sequences
// ---------------------------------------------------------------------------

/// Periodic sequence b_0, b_1, ... given by one period of minimal length.
class PeriodicSequence {
public:
    /// Throws DomainError when values is empty, all zero, non-finite, or when
    /// the given period is not minimal.
    explicit PeriodicSequence(std::vector<Complex> values);

    /// Accepts any period and shrinks it to the minimal one.
    static PeriodicSequence reduced(std::vector<Complex> values);

    std::size_t period() const { return values_.size(); }
    const std::vector<Complex>& values() const { return values_; }
    Complex operator[](std::uint64_t m) const { return values_[m % values_.size()]; }

    /// b = (1/k) sum b_l, the residue at s = 1.
    Complex residue() const;
    /// True when the residue vanishes (up to rounding in the mean).
    bool is_entire() const;

    bool operator==(const PeriodicSequence&) const = default;

private:
    std::vector<Complex> values_;
};

struct ResidueInfo {
    Complex residue;
    bool is_entire;
};

ResidueInfo residue_of(const PeriodicSequence& seq);

/// zeta(s, alpha; B) = k^{-s} sum_l b_l zeta(s, (l + alpha)/k), continued to s != 1
/// (to all s when the residue vanishes).
Complex periodic_hurwitz(Complex s, double alpha, const PeriodicSequence& seq, const AccuracyBudget& acc = {});

// ---------------------------------------------------------------------------
// Polynomial Euler products
// ---------------------------------------------------------------------------

enum class Family { riemann, dirichlet_l, custom };

std::string to_string(Family f);
Family family_from_string(const std::string& name);

/// One factor (1 - a p^{-f s})^{-1} of the local product at p.
struct LocalFactor {
    Complex coefficient;
    int exponent = 1;
    bool operator==(const LocalFactor&) const = default;
};

using FactorList = std::vector<LocalFactor>;
using FactorTableMap = std::map<std::uint64_t, FactorList>;

/// g(m) <= c1 p_m^{alpha_g}, |a_m^{(j)}| <= p_m^{beta_g}.
struct GrowthConstants {
    double c1 = 1.0;
    double alpha_g = 0.0;
    double beta_g = 0.0;
    bool operator==(const GrowthConstants&) const = default;
};

inline constexpr std::uint64_t kDefaultPrimeBound = 1'000'000;

/// A polynomial Euler product phi~(s) = prod_p prod_j (1 - a_j(p) p^{-f_j s})^{-1}
/// together with its shifted form phi(s) = phi~(s + alpha_g + beta_g).
///
/// Factors are stored for every prime p <= prime_bound (a prime with no entry has
/// local factor 1). Registry members (Riemann zeta, Dirichlet L-functions mod q <= 20)
/// regenerate factors beyond the stored range and carry a continuation into the
/// critical strip; custom specs do not.
class EulerProductSpec {
public:
    static EulerProductSpec riemann(std::uint64_t prime_bound = kDefaultPrimeBound);
    static EulerProductSpec dirichlet_l(int modulus, int index, std::uint64_t prime_bound = kDefaultPrimeBound);
    static EulerProductSpec custom(FactorTableMap factors, GrowthConstants growth, std::uint64_t prime_bound);

    Family family() const { return family_; }
    const std::optional<DirichletCharacter>& character() const { return character_; }
    const FactorTableMap& factors() const { return factors_; }
    const GrowthConstants& growth() const { return growth_; }
    std::uint64_t prime_bound() const { return prime_bound_; }
    /// Primes whose Euler factors were removed, with the factors they carried.
    const FactorTableMap& removed() const { return removed_; }

    double shift() const { return growth_.alpha_g + growth_.beta_g; }
    bool has_continuation() const { return family_ != Family::custom; }

    /// Local factors at p; empty for removed primes and for primes without a factor.
    FactorList local_factors(std::uint64_t p) const;

    /// Copy with the Euler factors at the given primes removed.
    EulerProductSpec without_primes(const std::vector<std::uint64_t>& primes) const;

    /// Coefficient sequence b_m = a(m + 1) of the registry continuation (alpha = 1).
    std::optional<PeriodicSequence> continuation_sequence() const;

    /// Registry metadata. sigma_star is 1/2 for registry members; sigma0 is the abscissa
    /// beyond which the continuation has finite order mean square (any value above 1/2
    /// works for them, 1/2 is stored as the infimum). Custom specs carry none.
    std::optional<double> sigma_star() const;
    std::optional<double> sigma0() const;

    /// Largest number of factors at one stored prime (the degree l of the product).
    int degree() const;

    /// Stored factors respect the growth constants.
    bool growth_ok() const;

    bool operator==(const EulerProductSpec&) const = default;

private:
    EulerProductSpec() = default;

    Family family_ = Family::custom;
    std::optional<DirichletCharacter> character_;
    FactorTableMap factors_;
    GrowthConstants growth_;
    std::uint64_t prime_bound_ = 0;
    FactorTableMap removed_;
};

/// Product over the factors removed from spec, prod_{p removed} prod_j (1 - a p^{-f(s+shift)}),
/// i.e. phi(s) = phi_h(s) * this^{-1}.
Complex removed_factor_product(Complex s, const EulerProductSpec& spec);

struct MatsumotoValue {
    Complex value;
    double tail_bound = 0.0;
    std::string method;  // "euler_product" or "continuation"
    std::uint64_t primes_used = 0;
};

/// phi(s) = phi~(s + alpha_g + beta_g). For sigma > 1 the truncated product over the
/// stored primes with a certified tail bound; for sigma <= 1 the registry continuation.
MatsumotoValue matsumoto_eval(Complex s, const EulerProductSpec& spec, const AccuracyBudget& acc = {});

/// phi(s) by the cheapest certified route: the continuation for registry members,
/// the Euler product otherwise.
Complex phi_value(Complex s, const EulerProductSpec& spec, const AccuracyBudget& acc = {});

/// c_0 .. c_M of phi(s) = sum c_m m^{-s} (c_0 = 0 is padding so c[m] is the m-th coefficient).
std::vector<Complex> dirichlet_coefficients(const EulerProductSpec& spec, std::uint64_t up_to);

struct ModifiedPrimeSet {
    std::uint64_t a = 0;
    std::uint64_t b = 0;
    std::vector<std::uint64_t> primes;  // prime divisors of a*b, increasing
    double h = 0.0;                     // 2 pi / log(a/b)
};

/// exp(2 pi / h) = a/b in lowest terms with a > b >= 1.
ModifiedPrimeSet prime_set_for_rational_h(std::uint64_t a, std::uint64_t b);

/// The modified function phi_h: Euler factors at primes in P_h removed.
EulerProductSpec modified_phi(const EulerProductSpec& spec, const ModifiedPrimeSet& prime_set);

struct SteudingOptions {
    std::int64_t shifts = 2000;  // N in the discrete mean square (k = 0..N)
    double h = 1.0;
    double tolerance = 0.10;
    AccuracyBudget acc{1e-8, 10'000'000};
};

struct SteudingReport {
    double kappa_estimate = 0.0;
    double x_used = 0.0;
    int degree_l = 0;
    bool coefficient_growth_ok = false;
    std::optional<double> sigma_star_estimate;
    std::vector<double> sigma_grid;
    std::vector<double> mean_squares;  // discrete mean square at each grid sigma (NaN if not evaluable)
    std::vector<double> comparators;   // sum |a(m)|^2 m^{-2 sigma}
};

SteudingReport steuding_check(const EulerProductSpec& spec, double x, const std::vector<double>& sigma_grid,
                              const SteudingOptions& options = {});

/// sum_{m >= 1} |a(m)|^2 m^{-2 sigma}: exact sum over m <= x plus a density tail.
double mean_square_comparator(const std::vector<Complex>& coeffs, double sigma);

}  // namespace zetalab
