// Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any criterion fails.
// Oracles here are written independently of the library paths they check.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <functional>
#include <iostream>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include "zetalab/cli.hpp"
#include "zetalab/io.hpp"
#include "zetalab/numerics.hpp"
#include "zetalab/rng.hpp"
#include "zetalab/shift_scan.hpp"
#include "zetalab/smoothing.hpp"
#include "zetalab/torus.hpp"
#include "zetalab/universality.hpp"
#include "zetalab/zetas.hpp"

using namespace zetalab;
using std::numbers::pi;

namespace {

struct Outcome {
    bool pass = false;
    std::string detail;
};

std::string fmt(const char* f, auto... xs) {
    char buf[512];
    std::snprintf(buf, sizeof buf, f, xs...);
    return buf;
}

// sum_{j >= j0} (k j + c)^{-2} by Euler-Maclaurin with three correction terms
long double tail_inv_square(long double k, long double c, long double j0) {
    const long double x = k * j0 + c;
    return 1.0L / (k * x) + 0.5L / (x * x) + k / (6.0L * x * x * x) - k * k * k / (30.0L * x * x * x * x * x);
}

// sum_{m >= 0} b_m (m + alpha)^{-2}, one residue class at a time
Complex periodic_series_oracle(const std::vector<Complex>& b, double alpha) {
    const long double k = static_cast<long double>(b.size());
    const std::int64_t j_max = 100'000;
    long double re = 0.0L, im = 0.0L;
    for (std::size_t l = 0; l < b.size(); ++l) {
        const long double c = static_cast<long double>(l) + alpha;
        long double s = 0.0L;
        for (std::int64_t j = j_max - 1; j >= 0; --j) {
            const long double x = k * static_cast<long double>(j) + c;
            s += 1.0L / (x * x);
        }
        s += tail_inv_square(k, c, static_cast<long double>(j_max));
        re += static_cast<long double>(b[l].real()) * s;
        im += static_cast<long double>(b[l].imag()) * s;
    }
    return {static_cast<double>(re), static_cast<double>(im)};
}

Outcome special_functions() {
    const double zeta2 = std::abs(hurwitz_zeta(2.0, 1.0) - pi * pi / 6);
    // zeta(s, alpha) - zeta(s, alpha + 1) = alpha^{-s}, measured relative to max(1, |alpha^{-s}|)
    Xoshiro256pp rng(20240601);
    double worst = 0.0;
    for (int i = 0; i < 200; ++i) {
        const double sigma = 0.6 + 2.4 * rng.uniform01();
        const double t = -50.0 + 100.0 * rng.uniform01();
        const double alpha = 1.0 - rng.uniform01();  // (0, 1]
        const Complex s(sigma, t);
        const Complex term = std::exp(-s * std::log(alpha));
        const Complex lhs = hurwitz_zeta(s, alpha) - hurwitz_zeta(s, alpha + 1.0);
        worst = std::max(worst, std::abs(lhs - term) / std::max(1.0, std::abs(term)));
    }
    return {zeta2 < 1e-10 && worst < 1e-9, fmt("|zeta(2,1) - pi^2/6| = %.2e, worst recurrence residual %.2e", zeta2, worst)};
}

Outcome continuation() {
    Xoshiro256pp rng(77);
    double worst = 0.0;
    for (int i = 0; i < 20; ++i) {
        const auto period = 1 + static_cast<std::size_t>(rng.next() % 6);
        std::vector<Complex> b(period);
        for (auto& x : b) x = {2.0 * rng.uniform01() - 1.0, 2.0 * rng.uniform01() - 1.0};
        const auto seq = PeriodicSequence::reduced(b);
        for (double alpha : {0.3, 0.7071, 0.9}) {
            const Complex v = periodic_hurwitz(2.0, alpha, seq);
            worst = std::max(worst, std::abs(v - periodic_series_oracle(b, alpha)));
        }
    }
    return {worst < 1e-8, fmt("worst |continuation - direct series| over 60 cases = %.2e", worst)};
}

Outcome euler_products() {
    const AccuracyBudget acc{1e-8, 10'000'000};
    const auto z = matsumoto_eval(3.0, EulerProductSpec::riemann(1'000'000), acc);
    const auto l = matsumoto_eval(3.0, EulerProductSpec::dirichlet_l(4, 1, 1'000'000), acc);
    // series oracles: zeta(3) by a direct sum plus Euler-Maclaurin tail, L(3, chi_4) by paired terms
    long double zs = 0.0L;
    const std::int64_t m_max = 1'000'000;
    for (std::int64_t m = m_max - 1; m >= 1; --m) zs += 1.0L / (static_cast<long double>(m) * m * m);
    const long double x = m_max;
    zs += 1.0L / (2 * x * x) + 1.0L / (2 * x * x * x) + 1.0L / (4 * x * x * x * x);
    long double ls = 0.0L;
    for (std::int64_t j = m_max; j >= 0; --j) {
        const long double a = 4.0L * j + 1, c = 4.0L * j + 3;
        ls += 1.0L / (a * a * a) - 1.0L / (c * c * c);
    }
    const double ez = std::abs(z.value - static_cast<double>(zs));
    const double el = std::abs(l.value - static_cast<double>(ls));
    const bool product = z.method == "euler_product" && l.method == "euler_product";
    return {product && ez < 1e-6 && el < 1e-6,
            fmt("zeta(3): %.2e, L(3, chi_4): %.2e, primes used %llu, method %s", ez, el,
                static_cast<unsigned long long>(z.primes_used), z.method.c_str())};
}

Outcome fourier() {
    Xoshiro256pp rng(4242);
    const std::vector<std::uint64_t> primes{2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47};
    const auto generic = IndependenceSpec::generic(1.0);
    double worst = 0.0, largest = 0.0;
    for (int i = 0; i < 100; ++i) {
        FrequencyVector f;
        const int support = 1 + static_cast<int>(rng.next() % 5);
        while (static_cast<int>(f.k_entries.size() + f.l_entries.size()) < support) {
            auto v = static_cast<std::int64_t>(rng.next() % 10) - 5;
            if (v >= 0) ++v;  // nonzero in [-5, 5]
            if (rng.next() % 2) f.k_entries[primes[rng.next() % primes.size()]] = v;
            else f.l_entries[rng.next() % 50] = v;
        }
        const auto g = fourier_gN(f, 10'000, generic, 0.7071);
        worst = std::max(worst, std::abs(g.direct - g.closed_form));
        largest = std::max({largest, std::abs(g.direct), std::abs(g.closed_form)});
    }
    // exp(2 pi / h) = 3/2: the frequency k_3 = 1, k_2 = -1 is invisible to every shift
    FrequencyVector witness;
    witness.k_entries = {{3, 1}, {2, -1}};
    const auto w = fourier_gN(witness, 10'000, IndependenceSpec::rational(3, 2), 0.7071);
    const bool exact = w.obstruction && w.direct == Complex(1.0) && w.closed_form == Complex(1.0);
    return {worst < 1e-10 && largest <= 1.0 + 1e-12 && exact,
            fmt("worst |direct - closed| = %.2e, max |g_N| = %.17g, witness g_N = %g%+gi (obstruction %d)", worst,
                largest, w.direct.real(), w.direct.imag(), int(w.obstruction))};
}

Outcome mean_square() {
    const auto f = ShiftedFunction::phi(EulerProductSpec::riemann(), {RectGrid::single(0.9)}, 1.0, {1e-10, 10'000'000});
    const auto ks = shift_range(100'000);
    std::vector<double> sq(ks.size());
    f.for_each_shift(ks, [&](std::size_t i, std::int64_t, std::span<const Complex> v) { sq[i] = std::norm(v[0]); });
    const double comparator = riemann_zeta(1.8).real();
    std::vector<double> running;
    double acc = 0.0;
    for (std::size_t k = 0; k < sq.size(); ++k) {
        acc += sq[k];
        if (k == 1000 || k == 10'000 || k == 100'000) running.push_back(acc / static_cast<double>(k + 1));
    }
    const double rel = std::abs(running.back() / comparator - 1.0);
    // bounded: every running mean stays within a factor 2 of the comparator
    bool bounded = true;
    for (double r : running) bounded = bounded && r > 0.5 * comparator && r < 2.0 * comparator;
    return {rel < 0.10 && bounded,
            fmt("N=1e5 mean %.6f vs sum m^-1.8 = %.6f (rel %.3f); running means %.4f %.4f %.4f", running.back(),
                comparator, rel, running[0], running[1], running[2])};
}

Outcome smoothing() {
    const auto zeta = EulerProductSpec::riemann();
    const PeriodicSequence one({1.0});
    const MetricSpec metric{{0.6, 0.9, -1.0, 1.0}, 3, 4};
    ShiftAverageOptions opt;
    opt.shifts = 1000;
    std::vector<double> avg;
    for (std::int64_t n : {10, 100, 1000}) {
        opt.params.n = n;
        avg.push_back(avg_shift_distance(zeta, one, 0.7, metric, metric, opt));
    }
    const bool monotone = avg[1] <= 1.1 * avg[0] && avg[2] <= 1.1 * avg[1];
    const SmoothingParams p{100, 1.5, 1.5};
    const double r1 = contour_check_phi(2.0, EulerProductSpec::riemann(1000), p, 60.0).residual;
    const double r2 = contour_check_zeta(2.0, 0.7, one, p, 60.0).residual;
    return {monotone && r1 < 1e-6 && r2 < 1e-6,
            fmt("averages n=10,100,1000: %.4f %.4f %.4f; contour residuals %.2e %.2e", avg[0], avg[1], avg[2], r1, r2)};
}

Outcome equidistribution() {
    const auto r = equidistribution_stat(Marginal::of_prime(2), IndependenceSpec::generic(1.0), 0.5, 1'000'000);
    const auto d = equidistribution_stat(Marginal::of_prime(2), IndependenceSpec::generic(2 * pi / std::log(2.0)), 0.5,
                                         1'000'000);
    return {r.statistic < 0.01 && !r.degenerate && d.degenerate,
            fmt("KS(p=2, h=1) = %.2e; h=2pi/log 2: %zu distinct points, degenerate %d", r.statistic, d.distinct_points,
                int(d.degenerate))};
}

Outcome distribution() {
    DistCompareOptions opt;
    opt.shifts = 10'000;
    opt.torus_samples = 10'000;
    opt.seed = 8;
    const auto run = [&] {
        return distribution_compare(0.8, Which::zeta, IndependenceSpec::generic(1.0), EulerProductSpec::riemann(),
                                    PeriodicSequence({1.0}), 0.7, opt);
    };
    const auto a = run(), b = run();
    const bool same = a.ks_re == b.ks_re && a.ks_im == b.ks_im && a.ks_abs == b.ks_abs;
    return {a.ks_abs < 0.05 && same,
            fmt("modulus KS = %.6f (re %.6f, im %.6f), seed %llu, rerun identical %d", a.ks_abs, a.ks_re, a.ks_im,
                static_cast<unsigned long long>(opt.seed), int(same))};
}

Outcome universality() {
    const auto spec = EulerProductSpec::riemann();
    const ZetaContext zeta{0.7, PeriodicSequence({1.0})};
    const Rect region{0.6, 0.9, -1.0, 1.0};
    const std::int64_t n = 1000, k0 = 17;
    const auto ind = IndependenceSpec::generic(1.0);
    const auto tp = target_from_shift(spec, k0, ind.h, region, 4);
    const auto tz = target_from_shift(zeta, k0, ind.h, region, 4);
    DensityOptions opt;
    opt.keep_stream = true;
    const std::vector<double> eps{1e-3, 1e-2, 0.1, 0.5, 1.0, 2.0};
    const auto sweep = epsilon_sweep(spec, zeta, tp, tz, ind, n, eps, opt);
    bool monotone = true;
    for (std::size_t i = 1; i < sweep.size(); ++i) monotone = monotone && sweep[i].hits >= sweep[i - 1].hits;
    const bool self = sweep[0].hits >= 1 && sweep[0].density >= 1.0 / (n + 1) && sweep[0].dist_phi[k0] == 0.0 &&
                      sweep[0].dist_zeta[k0] == 0.0;

    // rational regime exp(2 pi / h) = 2: the scan must equal the one on the explicit spec without p = 2
    const auto rational = IndependenceSpec::rational(2, 1);
    const auto phi_h = modified_phi(spec, prime_set_for_rational_h(2, 1));
    const auto tph = target_from_shift(phi_h, k0, rational.h, region, 4);
    const auto tzh = target_from_shift(zeta, k0, rational.h, region, 4);
    const auto swapped = epsilon_sweep(spec, zeta, tph, tzh, rational, 300, {0.5}, opt)[0];
    const auto explicit_run =
        epsilon_sweep(phi_h, zeta, tph, tzh, IndependenceSpec::generic(rational.h), 300, {0.5}, opt)[0];
    bool identical = swapped.regime == Regime::rational_exp && swapped.dist_phi.size() == explicit_run.dist_phi.size();
    for (std::size_t k = 0; identical && k < swapped.dist_phi.size(); ++k)
        identical = std::memcmp(&swapped.dist_phi[k], &explicit_run.dist_phi[k], sizeof(double)) == 0 &&
                    std::memcmp(&swapped.dist_zeta[k], &explicit_run.dist_zeta[k], sizeof(double)) == 0;
    identical = identical && swapped.hits == explicit_run.hits;

    // exploratory: constant targets near the mean values (1 for phi, 0.25 for the Hurwitz part), N = 1e5
    const Rect small{0.7, 0.8, -0.05, 0.05};
    const auto cp = target_from_polynomial({0.0}, small, 2, true, phi_strip(spec));  // e^0 = 1
    const auto cz = target_from_polynomial({0.25}, small, 2, false, zeta_strip());
    const auto explore = joint_density(spec, zeta, cp, cz, ind, 100'000, 0.5);
    const auto report = io::density_report_to_json(explore, std::nullopt);
    bool well_formed = true;
    for (const char* key : {"N", "h", "epsilon", "hits", "density", "regime", "excluded_k", "seed"})
        well_formed = well_formed && report.contains(key);
    well_formed = well_formed && explore.n == 100'000 && explore.density >= 0.0 && explore.density <= 1.0;

    return {monotone && self && identical && well_formed,
            fmt("hits over eps 1e-3..2: %lld..%lld (monotone %d), self-hit %d, rational swap identical %d, "
                "exploratory N=1e5 eps=0.5 density %.5f (%lld hits)",
                static_cast<long long>(sweep.front().hits), static_cast<long long>(sweep.back().hits), int(monotone),
                int(self), int(identical), explore.density, static_cast<long long>(explore.hits))};
}

std::string cli_payload(const std::string& cmd, const std::string& params) {
    std::ostringstream out, err;
    std::vector<std::string> args{cmd, "--params", params};
    if (cmd != "fourier" && cmd != "check") args.insert(args.end(), {"--seed", "11"});
    const int code = run_cli(args, out, err);
    return std::to_string(code) + "\n" + out.str();
}

Outcome determinism() {
    const std::vector<std::pair<std::string, std::string>> runs{
        {"eval", R"({"function": {"family": "hurwitz", "alpha": 0.7}, "s": [1.5, 2], "randomized": {"P_max": 100, "M_max": 2000}})"},
        {"density", R"({"phi": {"family": "riemann"}, "zeta": {"alpha": 0.7}, "independence": {"mode": "generic_real_h", "h": 1},
          "targets": {"phi": {"type": "shift", "k0": 5, "region": [0.6, 0.9, -1, 1], "density": 3},
                      "zeta": {"type": "shift", "k0": 5, "region": [0.6, 0.9, -1, 1], "density": 3}}, "N": 300, "epsilon": 0.3})"},
        {"sweep", R"({"phi": {"family": "dirichlet_l", "modulus": 5, "index": 1}, "zeta": {"alpha": 0.3, "sequence": [1, -1]},
          "independence": {"mode": "rational_exp", "a": 3, "b": 1},
          "targets": {"phi": {"type": "polynomial", "coeffs": [0.1], "region": [0.7, 0.8, 0, 0.5], "density": 3},
                      "zeta": {"type": "polynomial", "coeffs": [0.5, [0, 1]], "region": [0.7, 0.8, 0, 0.5], "density": 3}},
          "N": 300, "epsilons": [0.5, 1, 2]})"},
        {"fourier", R"({"frequency": {"k": {"2": 1}, "l": {"3": -2}}, "N": [10, 1000], "alpha": 0.3, "independence": {"h": 1}})"},
        {"meansquare", R"({"function": {"family": "hurwitz", "alpha": 0.7}, "sigma": 1.2, "mode": "random", "N": 500, "M_max": 500, "P_max": 10})"},
        {"diststats", R"({"mode": "compare", "point": [0.8, 0], "which": "joint", "N": 500, "samples": 500, "P_max": 500, "M_max": 500,
          "phi": {"family": "riemann"}, "zeta": {"alpha": 0.7}, "independence": {"h": 1}})"},
        {"check", R"({"function": {"family": "riemann"}, "x": 1000, "shifts": 200, "sigma_grid": [1.5, 2]})"}};
    std::string first, second, single;
    std::size_t failures = 0;
    for (const auto& [cmd, params] : runs) {
        const auto payload = cli_payload(cmd, params);
        failures += payload.front() != '0';  // payloads start with the exit code
        first += payload;
    }
    for (const auto& [cmd, params] : runs) second += cli_payload(cmd, params);
    // and once more on one worker thread
    const char* prior = std::getenv("ZETALAB_THREADS");
    const std::string saved = prior ? prior : "";
    setenv("ZETALAB_THREADS", "1", 1);
    for (const auto& [cmd, params] : runs) single += cli_payload(cmd, params);
    if (prior) setenv("ZETALAB_THREADS", saved.c_str(), 1);
    else unsetenv("ZETALAB_THREADS");
    return {first == second && first == single && failures == 0,
            fmt("%zu commands, %zu payload bytes, rerun identical %d, single-thread identical %d, failed commands %zu",
                runs.size(), first.size(), int(first == second), int(first == single), failures)};
}

}  // namespace

int main(int argc, char** argv) {
    // optional arguments pick criteria by number; default is all of them
    std::vector<bool> selected(10, argc == 1);
    for (int a = 1; a < argc; ++a) {
        const int id = std::atoi(argv[a]);
        if (id >= 1 && id <= 10) selected[id - 1] = true;
    }
    const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria{
        {"special-function accuracy", special_functions},
        {"periodic continuation vs direct series", continuation},
        {"Euler product vs Dirichlet series", euler_products},
        {"Fourier transform of the shift measure", fourier},
        {"mean-square comparator", mean_square},
        {"smoothing", smoothing},
        {"equidistribution", equidistribution},
        {"distribution comparison", distribution},
        {"universality guarantees", universality},
        {"determinism", determinism}};
    int failed = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        if (!selected[i]) continue;
        const auto start = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = criteria[i].second();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        failed += !o.pass;
        std::cout << (o.pass ? "PASS" : "FAIL") << " criterion " << i + 1 << " (" << criteria[i].first
                  << "): " << o.detail << fmt(" [%.1f s]", secs) << std::endl;
    }
    return failed == 0 ? 0 : 1;
}
