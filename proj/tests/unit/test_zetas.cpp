#include <doctest.h>

#include <cmath>
#include <numbers>

#include "oracles.hpp"
#include "zetalab/errors.hpp"
#include "zetalab/primes.hpp"
#include "zetalab/rng.hpp"
#include "zetalab/zetas.hpp"

using namespace zetalab;
using std::numbers::pi;

namespace {

constexpr double kCatalan = 0.91596559417721901505;

double alternating_inverse_square(double alpha) {
    return oracle::alternating([alpha](std::int64_t m) { return 1.0 / ((m + alpha) * (m + alpha)); });
}

}  // namespace

TEST_CASE("periodic sequences enforce minimal periods") {
    CHECK_THROWS_AS(PeriodicSequence({}), DomainError);
    CHECK_THROWS_AS(PeriodicSequence({0.0, 0.0}), DomainError);
    CHECK_THROWS_AS(PeriodicSequence({1.0, -1.0, 1.0, -1.0}), DomainError);
    CHECK_THROWS_AS(PeriodicSequence({Complex(std::nan(""), 0.0)}), DomainError);
    CHECK(PeriodicSequence::reduced({1.0, -1.0, 1.0, -1.0}) == PeriodicSequence({1.0, -1.0}));
    CHECK(PeriodicSequence({1.0, 2.0, 1.0}).period() == 3);
}

TEST_CASE("residues") {
    CHECK(residue_of(PeriodicSequence({1.0, -1.0})).residue == Complex(0.0));
    CHECK(residue_of(PeriodicSequence({1.0, -1.0})).is_entire);
    CHECK(residue_of(PeriodicSequence({1.0})).residue == Complex(1.0));
    const auto r = residue_of(PeriodicSequence({2.0, Complex(0.0, 1.0), -1.0}));
    CHECK(std::abs(r.residue - Complex(1.0, 1.0) / 3.0) < 1e-16);
    CHECK_FALSE(r.is_entire);
}

TEST_CASE("periodic hurwitz collapses to hurwitz for period one") {
    Xoshiro256pp rng(5);
    const PeriodicSequence one({1.0});
    for (int i = 0; i < 50; ++i) {
        const Complex s(0.5 + 2.0 * rng.uniform01(), -40.0 + 80.0 * rng.uniform01());
        const double alpha = 0.05 + 0.95 * rng.uniform01();
        CHECK(std::abs(periodic_hurwitz(s, alpha, one) - hurwitz_zeta(s, alpha)) < 1e-11);
    }
}

TEST_CASE("periodic hurwitz against alternating series") {
    const PeriodicSequence alt({1.0, -1.0});
    CHECK(std::abs(periodic_hurwitz(2.0, 1.0, alt) - pi * pi / 12.0) < 1e-8);
    CHECK(std::abs(periodic_hurwitz(2.0, 0.7, alt) - alternating_inverse_square(0.7)) < 1e-8);
    // entire case: s = 1 is accepted; eta(1) = log 2
    CHECK(std::abs(periodic_hurwitz(1.0, 1.0, alt) - std::log(2.0)) < 1e-10);
    CHECK_THROWS_AS(periodic_hurwitz(1.0, 1.0, PeriodicSequence({1.0, 2.0})), PoleError);
    CHECK_THROWS_AS(periodic_hurwitz(2.0, 1.5, alt), DomainError);
}

TEST_CASE("continuation versus direct series at sigma = 2") {
    Xoshiro256pp rng(21);
    for (int trial = 0; trial < 6; ++trial) {
        const auto k = 1 + static_cast<std::size_t>(rng.next() % 6);
        std::vector<Complex> b(k);
        for (auto& v : b) v = Complex(2.0 * rng.uniform01() - 1.0, 2.0 * rng.uniform01() - 1.0);
        const auto seq = PeriodicSequence::reduced(b);
        for (double alpha : {0.3, 0.7071, 0.9}) {
            const Complex s(2.0, 10.0 * rng.uniform01());
            const Complex ref = oracle::periodic_series(s, alpha, seq.values(), 20'000);
            CHECK(std::abs(periodic_hurwitz(s, alpha, seq) - ref) < 1e-8);
        }
    }
}

TEST_CASE("euler products against series oracles") {
    const AccuracyBudget acc{1e-6, 10'000'000};
    const auto zeta = EulerProductSpec::riemann();
    const auto mv = matsumoto_eval(3.0, zeta, acc);
    CHECK(mv.method == "euler_product");
    CHECK(std::abs(mv.value - oracle::zeta_series(3.0)) < 1e-6);
    CHECK(mv.tail_bound <= 1e-6);

    // Catalan's constant
    const auto chi4 = EulerProductSpec::dirichlet_l(4, 1, 1'000'000);
    const double catalan = oracle::alternating([](std::int64_t m) { return 1.0 / ((2.0 * m + 1) * (2.0 * m + 1)); });
    CHECK(std::abs(catalan - kCatalan) < 1e-12);
    CHECK(std::abs(phi_value(2.0, chi4) - kCatalan) < 1e-8);
    CHECK(std::abs(matsumoto_eval(2.0, chi4, AccuracyBudget{1e-5, 10'000'000}).value - kCatalan) < 1e-5);

    // the product at sigma = 2 cannot be certified to 1e-8 with primes <= 10^6
    CHECK_THROWS_AS(matsumoto_eval(2.0, zeta, AccuracyBudget{1e-8, 10'000'000}), AccuracyError);
    // below sigma = 1 the registry continuation takes over
    CHECK(matsumoto_eval(Complex(0.7, 3.0), zeta).method == "continuation");
    CHECK(std::abs(matsumoto_eval(Complex(0.7, 3.0), zeta).value - riemann_zeta(Complex(0.7, 3.0))) < 1e-12);
}

TEST_CASE("custom specs") {
    FactorTableMap two{{2, {{1.0, 1}}}, {3, {}}};
    const auto spec = EulerProductSpec::custom(two, {1.0, 0.0, 0.0}, 100);
    CHECK(spec.factors().count(3) == 0);  // empty factor is the factor 1
    // primes beyond the stored bound may carry factors, so the tail bound is large
    const auto mv = matsumoto_eval(2.0, spec, AccuracyBudget{0.1, 100});
    CHECK(std::abs(mv.value - 4.0 / 3.0) < 1e-12);
    CHECK(mv.tail_bound > 1e-3);
    CHECK_THROWS_AS(matsumoto_eval(2.0, spec), AccuracyError);
    CHECK_THROWS_AS(matsumoto_eval(0.9, spec), DomainError);
    CHECK_THROWS_AS(EulerProductSpec::custom({{4, {{1.0, 1}}}}, {}, 100), DomainError);
    CHECK_THROWS_AS(EulerProductSpec::custom({{101, {{1.0, 1}}}}, {}, 100), DomainError);

    const auto c = dirichlet_coefficients(spec, 1000);
    for (std::uint64_t m = 1; m <= 1000; ++m) {
        const bool power_of_two = (m & (m - 1)) == 0;
        CHECK(c[m] == Complex(power_of_two ? 1.0 : 0.0));
    }

    // growth bound violated on the stored range
    const auto big = EulerProductSpec::custom({{2, {{3.0, 1}}}}, {1.0, 0.0, 1.0}, 10);
    CHECK_FALSE(big.growth_ok());
    CHECK(EulerProductSpec::custom({{2, {{2.0, 1}}}}, {1.0, 0.0, 1.0}, 10).growth_ok());
}

TEST_CASE("shifted products: phi(s) = phi~(s + alpha_g + beta_g)") {
    const auto base = EulerProductSpec::custom({{2, {{1.0, 1}}}, {3, {{0.5, 2}}}}, {1.0, 0.0, 0.0}, 10);
    const auto shifted = EulerProductSpec::custom(base.factors(), {1.0, 0.25, 0.5}, 10);
    const Complex s(1.5, 2.0);
    const AccuracyBudget loose{1.0, 100};
    CHECK(std::abs(matsumoto_eval(s, shifted, loose).value - matsumoto_eval(s + 0.75, base, loose).value) < 1e-13);
    const auto cb = dirichlet_coefficients(base, 200);
    const auto cs = dirichlet_coefficients(shifted, 200);
    for (std::uint64_t m = 1; m <= 200; ++m)
        CHECK(std::abs(cs[m] - cb[m] * std::pow(static_cast<double>(m), -0.75)) < 1e-15);
}

TEST_CASE("dirichlet coefficients of registry members") {
    const auto zc = dirichlet_coefficients(EulerProductSpec::riemann(1000), 5000);
    for (std::uint64_t m = 1; m <= 5000; ++m) CHECK(zc[m] == Complex(1.0));
    const auto chi = DirichletCharacter(4, 1);
    const auto lc = dirichlet_coefficients(EulerProductSpec::dirichlet_l(4, 1, 1000), 5000);
    for (std::uint64_t m = 1; m <= 5000; ++m) {
        const double direct = (m % 2 == 0) ? 0.0 : ((m % 4 == 1) ? 1.0 : -1.0);
        CHECK(lc[m] == Complex(direct));
        CHECK(lc[m] == chi(m));
    }
}

TEST_CASE("coefficients are multiplicative") {
    // degree-two product with complex coefficients and a repeated factor
    FactorTableMap f;
    for (auto p : primes_up_to(60)) f[p] = {{Complex(0.5, 0.3), 1}, {Complex(-0.2, 0.7), 2}};
    const auto spec = EulerProductSpec::custom(f, {2.0, 0.0, 0.0}, 60);
    const std::uint64_t M = 3000;
    const auto c = dirichlet_coefficients(spec, M);
    CHECK(c[1] == Complex(1.0));
    for (std::uint64_t m = 2; m <= 60; ++m)
        for (std::uint64_t n = 2; m * n <= M; ++n)
            if (gcd(m, n) == 1) CHECK(std::abs(c[m * n] - c[m] * c[n]) < 1e-14);

    // per-prime expansion by brute force: coefficient of X^r in prod_j 1/(1 - a_j X^{f_j})
    auto brute = [](Complex a1, Complex a2, int r) {
        Complex sum;
        for (int i = 0; i <= r; ++i)
            for (int j = 0; i + 2 * j <= r; ++j)
                if (i + 2 * j == r) sum += std::pow(a1, i) * std::pow(a2, j);
        return sum;
    };
    const Complex a1(0.5, 0.3), a2(-0.2, 0.7);
    for (int r = 0; r <= 10; ++r) CHECK(std::abs(c[1u << r] - brute(a1, a2, r)) < 1e-14);
    CHECK(std::abs(c[27] - brute(a1, a2, 3)) < 1e-14);
}

TEST_CASE("rational step prime sets") {
    auto ps = prime_set_for_rational_h(2, 1);
    CHECK(ps.primes == std::vector<std::uint64_t>{2});
    CHECK(std::abs(ps.h - 2.0 * pi / std::log(2.0)) < 1e-15);
    CHECK(prime_set_for_rational_h(3, 2).primes == std::vector<std::uint64_t>{2, 3});
    CHECK(prime_set_for_rational_h(10, 9).primes == std::vector<std::uint64_t>{2, 3, 5});
    CHECK_THROWS_AS(prime_set_for_rational_h(4, 2), DomainError);
    CHECK_THROWS_AS(prime_set_for_rational_h(3, 3), DomainError);
}

TEST_CASE("modified functions remove Euler factors") {
    const auto zeta = EulerProductSpec::riemann();
    const auto zh = modified_phi(zeta, prime_set_for_rational_h(2, 1));
    // sum over odd m of m^{-2}
    double odd = 0.0;
    for (std::int64_t m = 1999999; m >= 1; m -= 2) odd += 1.0 / (static_cast<double>(m) * m);
    odd += 1.0 / (2.0 * 2'000'000.0);  // tail ~ int_{2e6}^inf dx / (2 x^2)
    CHECK(std::abs(phi_value(2.0, zh) - odd) < 1e-8);
    CHECK(std::abs(phi_value(2.0, zh) - 0.75 * pi * pi / 6.0) < 1e-10);

    CHECK(modified_phi(zeta, ModifiedPrimeSet{}) == zeta);

    const auto chi = EulerProductSpec::dirichlet_l(4, 1, 1000);
    const auto removed = chi.without_primes({2, 3});
    CHECK(chi.factors().size() - removed.factors().size() == 1);  // chi_4(2) = 0 carries no factor
    CHECK(removed.removed().size() == 1);

    // explicit construction gives the same spec
    CHECK(modified_phi(zeta, prime_set_for_rational_h(3, 2)) == zeta.without_primes({2, 3}));

    // phi(s) = phi_h(s) * prod_{p in P_h} local factor, every registry spec at sigma = 2
    const auto ps = prime_set_for_rational_h(10, 3);
    std::vector<EulerProductSpec> specs{zeta};
    for (int q = 3; q <= 20; ++q)
        for (int idx = 0; idx < DirichletCharacter::count(q); ++idx) specs.push_back(EulerProductSpec::dirichlet_l(q, idx, 1000));
    for (const auto& spec : specs) {
        const Complex s(2.0, 1.3);
        const auto mod = modified_phi(spec, ps);
        Complex local = 1.0;
        for (auto p : ps.primes)
            for (const auto& f : spec.local_factors(p)) local /= 1.0 - f.coefficient * std::pow(static_cast<double>(p), -s * double(f.exponent));
        CHECK(std::abs(phi_value(s, spec) - phi_value(s, mod) * local) < 1e-10);
    }
}

TEST_CASE("steuding metadata") {
    const auto zeta = EulerProductSpec::riemann(100);
    CHECK(zeta.degree() == 1);
    CHECK(zeta.sigma_star() == 0.5);
    CHECK_FALSE(EulerProductSpec::custom({}, {}, 10).sigma_star().has_value());
    const auto c = dirichlet_coefficients(zeta, 20000);
    CHECK(std::abs(mean_square_comparator(c, 1.0) - pi * pi / 6.0) < 1e-8);
}
