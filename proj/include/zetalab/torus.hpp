#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "zetalab/numerics.hpp"
#include "zetalab/zetas.hpp"

namespace zetalab {

/// A point of the torus truncated to the primes p <= p_max and the indices 0 <= m <= m_max.
///
/// Angles live in [0, 2 pi). A sampled point remembers how it was drawn (seed and optional
/// stream index), which is enough to regenerate every angle.
struct TorusPoint {
    std::uint64_t seed = 0;
    std::optional<std::uint64_t> stream;
    std::uint64_t p_max = 0;
    std::uint64_t m_max = 0;
    std::vector<std::uint64_t> primes;  // increasing, all primes <= p_max
    std::vector<double> omega1;         // omega1[j] is the angle at primes[j]
    std::vector<double> omega2;         // omega2[m], m = 0..m_max

    /// Angle at the prime p; TruncationError beyond p_max, DomainError if p is not prime.
    double angle1(std::uint64_t p) const;
    double angle2(std::uint64_t m) const;

    /// The identity element (all angles 0) with the given bounds.
    static TorusPoint identity(std::uint64_t p_max, std::uint64_t m_max);

    bool operator==(const TorusPoint&) const = default;
};

/// i.i.d. uniform angles from Xoshiro256pp(seed): primes in increasing order, then m = 0..m_max.
TorusPoint sample_torus(std::uint64_t seed, std::uint64_t p_max, std::uint64_t m_max);

/// As sample_torus but drawn from the child stream (seed, stream); used for sample i of a batch.
TorusPoint sample_torus_stream(std::uint64_t seed, std::uint64_t stream, std::uint64_t p_max, std::uint64_t m_max);

/// Angle of omega1(m) = prod omega1(p)^{v_p(m)}, reduced to [0, 2 pi).
double omega1_angle(const TorusPoint& omega, std::uint64_t m);
/// omega1(m) as a unit complex number. TruncationError if m has a prime factor above p_max.
Complex omega1_of_integer(const TorusPoint& omega, std::uint64_t m);

/// The rotation Phi_h: omega1(p) -> omega1(p) p^{-ih}, omega2(m) -> omega2(m) (m + alpha)^{-ih}.
TorusPoint rotate(const TorusPoint& omega, double h, double alpha);

/// sum_{k <= trunc} c_k omega1(k) k^{-s}. Needs Re s > 1/2; the truncation is only certified
/// for Re s > 1 (see randomized_certified).
Complex randomized_phi(Complex s, const TorusPoint& omega, const EulerProductSpec& spec, std::uint64_t trunc);

/// sum_{m <= trunc} b_m omega2(m) (m + alpha)^{-s}. TruncationError if trunc > m_max.
Complex randomized_zeta(Complex s, double alpha, const TorusPoint& omega, const PeriodicSequence& seq,
                        std::uint64_t trunc);

inline bool randomized_certified(Complex s) { return s.real() > 1.0; }

/// The same randomized sums evaluated for many torus points at one fixed s; the powers
/// k^{-s} and coefficients are computed once.
class RandomizedSeries {
public:
    static RandomizedSeries phi(Complex s, const EulerProductSpec& spec, std::uint64_t trunc);
    static RandomizedSeries zeta(Complex s, double alpha, const PeriodicSequence& seq, std::uint64_t trunc);

    Complex operator()(const TorusPoint& omega) const;

private:
    bool on_primes_ = false;
    std::vector<std::uint64_t> index_;  // k (phi) or m (zeta) of each non-zero term
    std::vector<Complex> term_;         // coefficient times k^{-s}
};

// ---------------------------------------------------------------------------
// Independence regimes
// ---------------------------------------------------------------------------

enum class IndependenceMode { generic_real_h, rational_exp };
enum class AlphaClass { transcendental_assumed, rational, algebraic_assumed };
enum class Regime { full_independence, rational_exp, unknown };

std::string to_string(IndependenceMode m);
std::string to_string(AlphaClass c);
std::string to_string(Regime r);
IndependenceMode independence_mode_from_string(const std::string& s);
AlphaClass alpha_class_from_string(const std::string& s);
Regime regime_from_string(const std::string& s);

struct RationalPair {
    std::uint64_t a = 0;
    std::uint64_t b = 0;
    bool operator==(const RationalPair&) const = default;
};

struct IndependenceSpec {
    IndependenceMode mode = IndependenceMode::generic_real_h;
    double h = 1.0;
    std::optional<RationalPair> rational_pair;

    static IndependenceSpec generic(double h);
    /// h = 2 pi / log(a/b).
    static IndependenceSpec rational(std::uint64_t a, std::uint64_t b);

    /// DomainError unless h > 0 is finite and, in rational mode, the pair is coprime with
    /// a > b >= 1 and h equals 2 pi / log(a/b) to a few ulps.
    void validate() const;

    bool operator==(const IndependenceSpec&) const = default;
};

struct RegimeReport {
    Regime regime = Regime::unknown;
    std::optional<ModifiedPrimeSet> prime_set;
    std::vector<std::string> warnings;
};

/// Records the caller's declaration; independence is never decided numerically. A rational pair
/// is the only thing that can refute it, and it yields P_h.
RegimeReport resolve_independence(const IndependenceSpec& ind, AlphaClass alpha_class);

// ---------------------------------------------------------------------------
// Fourier transform of the shift measure
// ---------------------------------------------------------------------------

struct FrequencyVector {
    std::map<std::uint64_t, std::int64_t> k_entries;  // prime -> k_p
    std::map<std::uint64_t, std::int64_t> l_entries;  // m -> l_m

    bool is_zero() const;
    /// DomainError for a non-prime key in k_entries.
    void validate() const;
};

struct FourierValue {
    Complex direct;
    Complex closed_form;
    double theta = 0.0;     // sum k_p log p + sum l_m log(m + alpha)
    double turns = 0.0;     // h theta / 2 pi reduced to [0, 1)
    bool resonant = false;  // h theta is a multiple of 2 pi
    /// true when resonance comes from prod p^{k_p} = (a/b)^r, detected in exact arithmetic
    bool obstruction = false;
    /// 2 / ((N + 1) |1 - e^{-i h theta}|); infinite when resonant
    double bound = 0.0;
};

/// g_N = (1/(N+1)) sum_{k=0}^{N} exp(-i k h theta), computed term by term and by the geometric
/// closed form. In the rational regime a frequency with all l_m = 0 whose prime part is a power
/// of a/b is recognised exactly, and both values are then exactly 1.
FourierValue fourier_gN(const FrequencyVector& freq, std::int64_t n, const IndependenceSpec& ind, double alpha);

// ---------------------------------------------------------------------------
// Statistics
// ---------------------------------------------------------------------------

/// One coordinate of the torus: a prime p (angle k h log p) or an index m (angle k h log(m + alpha)).
struct Marginal {
    bool prime = true;
    std::uint64_t index = 2;

    static Marginal of_prime(std::uint64_t p) { return {true, p}; }
    static Marginal of_index(std::uint64_t m) { return {false, m}; }
};

struct EquidistributionReport {
    double statistic = 0.0;  // KS distance to the uniform law on [0, 1)
    std::int64_t n = 0;
    std::size_t distinct_points = 0;
    bool degenerate = false;  // at most half of the N + 1 points are distinct
};

/// KS distance of {k h log p / 2 pi mod 1}_{k <= N} from uniform. Values within 1e-9 of an
/// integer count as 0. In the rational regime the step is log p / log(a/b) turns, so exact
/// resonances land on exact multiples. DomainError for N < 100.
EquidistributionReport equidistribution_stat(const Marginal& coord, const IndependenceSpec& ind, double alpha,
                                             std::int64_t n);

/// KS distance to uniform on [0, 1) of the given sample.
double ks_uniform(std::vector<double> sample);
/// Two-sample KS distance sup |F_a - F_b|.
double ks_two_sample(std::vector<double> a, std::vector<double> b);

enum class Which { phi, zeta, joint };
std::string to_string(Which w);
Which which_from_string(const std::string& s);

struct DistCompareOptions {
    std::int64_t shifts = 10'000;         // N
    std::int64_t torus_samples = 10'000;
    std::uint64_t seed = 1;
    std::uint64_t p_max = 10'000;
    std::uint64_t m_max = 10'000;
    AccuracyBudget acc{1e-10, 10'000'000};
};

struct DistCompareReport {
    double ks_re = 0.0;
    double ks_im = 0.0;
    double ks_abs = 0.0;
    double statistic = 0.0;  // largest of the three (over both components for joint)
    Regime regime = Regime::full_independence;
};

/// Compares the shift values F(s + ikh), k = 0..N, with randomized values F(s, omega) over
/// torus samples (sample i drawn from stream (seed, i)). phi is truncated at p_max and zeta at
/// m_max. In the rational regime phi is replaced by phi_h.
DistCompareReport distribution_compare(Complex s, Which which, const IndependenceSpec& ind,
                                       const EulerProductSpec& spec, const PeriodicSequence& seq, double alpha,
                                       const DistCompareOptions& options);

/// Statistics of two explicit sample sets (used for self-comparison and by the CLI).
DistCompareReport compare_samples(const std::vector<Complex>& a, const std::vector<Complex>& b);

}  // namespace zetalab
