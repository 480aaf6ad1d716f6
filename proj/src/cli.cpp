#include "zetalab/cli.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <fstream>
#include <iostream>
#include <sstream>

#include "zetalab/errors.hpp"
#include "zetalab/io.hpp"
#include "zetalab/parallel.hpp"
#include "zetalab/shift_scan.hpp"

namespace zetalab {

namespace {

using io::Json;

const Json& need(const Json& cfg, const char* key, const std::string& cmd) {
    if (!cfg.contains(key)) throw DomainError(cmd + ": missing \"" + key + "\"");
    return cfg.at(key);
}

double get_double(const Json& cfg, const char* key, double fallback) {
    if (!cfg.contains(key)) return fallback;
    if (!cfg[key].is_number()) throw DomainError(std::string("\"") + key + "\" must be a number");
    return cfg[key].get<double>();
}

std::int64_t get_int(const Json& cfg, const char* key, std::int64_t fallback) {
    if (!cfg.contains(key)) return fallback;
    if (!cfg[key].is_number_integer()) throw DomainError(std::string("\"") + key + "\" must be an integer");
    return cfg[key].get<std::int64_t>();
}

std::uint64_t get_count(const Json& cfg, const char* key, std::uint64_t fallback) {
    const auto v = get_int(cfg, key, static_cast<std::int64_t>(fallback));
    if (v < 0) throw DomainError(std::string("\"") + key + "\" must be non-negative");
    return static_cast<std::uint64_t>(v);
}

AccuracyBudget budget(const Json& cfg) {
    AccuracyBudget acc{get_double(cfg, "abs_tol", 1e-10), get_int(cfg, "max_terms", 10'000'000)};
    acc.validate();
    return acc;
}

std::uint64_t seed_of(const Json& cfg, const std::string& cmd) {
    if (!cfg.contains("seed") || cfg["seed"].is_null()) throw DomainError(cmd + ": stochastic runs need a seed");
    return get_count(cfg, "seed", 0);
}

std::optional<std::uint64_t> optional_seed(const Json& cfg) {
    if (!cfg.contains("seed") || cfg["seed"].is_null()) return std::nullopt;
    return get_count(cfg, "seed", 0);
}

std::string csv_line(std::initializer_list<std::string> cells) {
    std::string line;
    for (const auto& c : cells) line += (line.empty() ? "" : ",") + c;
    return line + "\n";
}

std::string num(double x) { return std::isnan(x) ? "nan" : io::format_double(x); }

/// Evaluates a function at one point by its certified route.
Complex evaluate(const io::FunctionSpec& f, Complex s, const AccuracyBudget& acc) {
    if (const auto* ctx = std::get_if<ZetaContext>(&f)) return periodic_hurwitz(s, ctx->alpha, ctx->seq, acc);
    return phi_value(s, std::get<EulerProductSpec>(f), acc);
}

ShiftedFunction shifted(const io::FunctionSpec& f, GridSet grids, double h, const AccuracyBudget& acc) {
    if (const auto* ctx = std::get_if<ZetaContext>(&f))
        return ShiftedFunction::periodic_hurwitz(ctx->seq, ctx->alpha, std::move(grids), h, acc);
    return ShiftedFunction::phi(std::get<EulerProductSpec>(f), std::move(grids), h, acc);
}

// ---------------------------------------------------------------------------

CommandOutput cmd_eval(const Json& cfg) {
    io::check_keys(cfg, {"function", "s", "abs_tol", "max_terms", "smoothing", "randomized", "seed"}, "eval");
    const auto f = io::function_from_json(need(cfg, "function", "eval"));
    const Complex s = io::complex_from_json(need(cfg, "s", "eval"), "eval.s");
    const auto acc = budget(cfg);
    Json trunc;
    Complex value;
    if (cfg.contains("randomized")) {
        const auto& r = cfg["randomized"];
        io::check_keys(r, {"P_max", "M_max", "trunc"}, "eval.randomized");
        const auto seed = seed_of(cfg, "eval");
        const auto p_max = get_count(r, "P_max", 10'000), m_max = get_count(r, "M_max", 10'000);
        const auto omega = sample_torus(seed, p_max, m_max);
        std::uint64_t n;
        if (const auto* ctx = std::get_if<ZetaContext>(&f)) {
            n = get_count(r, "trunc", m_max);
            value = randomized_zeta(s, ctx->alpha, omega, ctx->seq, n);
        } else {
            n = get_count(r, "trunc", p_max);
            value = randomized_phi(s, omega, std::get<EulerProductSpec>(f), n);
        }
        trunc = {{"method", "randomized_series"}, {"terms", n}, {"certified", randomized_certified(s)},
                 {"torus", io::torus_point_to_json(omega)}};
    } else if (cfg.contains("smoothing")) {
        const auto& sm = cfg["smoothing"];
        io::check_keys(sm, {"n", "sigma_hat", "a"}, "eval.smoothing");
        SmoothingParams p;
        p.n = get_int(sm, "n", 1);
        p.sigma_hat = get_double(sm, "sigma_hat", 0.75);
        p.a = get_double(sm, "a", p.sigma_hat);
        const auto series = std::holds_alternative<ZetaContext>(f)
                                ? smoothed_zeta_series(std::get<ZetaContext>(f).alpha, std::get<ZetaContext>(f).seq, p,
                                                       s.real(), acc)
                                : smoothed_phi_series(std::get<EulerProductSpec>(f), p, s.real(), acc);
        value = series(s);
        trunc = {{"method", "smoothed_series"}, {"terms", series.coeffs.size()}, {"tail_bound", series.tail_bound},
                 {"n", p.n}, {"sigma_hat", p.sigma_hat}};
    } else if (const auto* spec = std::get_if<EulerProductSpec>(&f); spec && !spec->has_continuation()) {
        const auto m = matsumoto_eval(s, *spec, acc);
        value = m.value;
        trunc = {{"method", m.method}, {"primes_used", m.primes_used}, {"tail_bound", m.tail_bound}};
    } else {
        value = evaluate(f, s, acc);
        trunc = {{"method", "euler_maclaurin"}};
    }
    Json j{{"function", io::function_name(f)},
           {"s", io::complex_to_json(s)},
           {"value", io::complex_to_json(value)},
           {"abs_tol", acc.abs_tol},
           {"truncation", trunc}};
    std::string csv = csv_line({"function", "s_re", "s_im", "value_re", "value_im"}) +
                      csv_line({io::function_name(f), num(s.real()), num(s.imag()), num(value.real()), num(value.imag())});
    return {j, csv};
}

// ---------------------------------------------------------------------------

struct DensitySetup {
    EulerProductSpec phi = EulerProductSpec::riemann(2);
    ZetaContext zeta;
    IndependenceSpec ind;
    CompactTarget t_phi, t_zeta;
    DensityOptions options;
    std::int64_t n = 0;
};

CompactTarget target_from_json(const Json& j, const std::string& slot, const DensitySetup& s) {
    const std::string where = "targets." + slot;
    io::check_keys(j, {"type", "coeffs", "exp_wrap", "region", "density", "k0"}, where);
    const std::string type = j.value("type", "polynomial");
    const Rect region = io::rect_from_json(need(j, "region", where));
    const int density = static_cast<int>(get_int(j, "density", 64));
    if (type == "polynomial") {
        std::vector<Complex> coeffs;
        const auto& cj = need(j, "coeffs", where);
        if (!cj.is_array()) throw DomainError(where + ".coeffs: expected a list");
        for (const auto& c : cj) coeffs.push_back(io::complex_from_json(c, where + ".coeffs"));
        const bool wrap = j.value("exp_wrap", slot == "phi");
        const auto strip = slot == "phi" ? phi_strip(s.phi) : zeta_strip();
        return target_from_polynomial(coeffs, region, density, wrap, strip);
    }
    if (type == "shift") {
        const auto k0 = get_int(j, "k0", 0);
        return slot == "phi" ? target_from_shift(s.phi, k0, s.ind.h, region, density, s.options.acc)
                             : target_from_shift(s.zeta, k0, s.ind.h, region, density, s.options.acc);
    }
    throw DomainError(where + ": unknown target type '" + type + "'");
}

DensitySetup density_setup(const Json& cfg, const std::string& cmd, bool sweep) {
    if (sweep)
        io::check_keys(cfg, {"phi", "zeta", "independence", "alpha_class", "strict", "targets", "N", "epsilons",
                             "abs_tol", "max_terms", "seed", "stream_out"},
                       cmd);
    else
        io::check_keys(cfg, {"phi", "zeta", "independence", "alpha_class", "strict", "targets", "N", "epsilon",
                             "abs_tol", "max_terms", "seed", "stream_out"},
                       cmd);
    DensitySetup s;
    s.phi = io::spec_from_json(need(cfg, "phi", cmd));
    s.zeta = io::zeta_context_from_json(need(cfg, "zeta", cmd));
    s.ind = io::independence_from_json(need(cfg, "independence", cmd));
    s.options.alpha_class = alpha_class_from_string(cfg.value("alpha_class", "transcendental_assumed"));
    s.options.strict = cfg.value("strict", false);
    s.options.acc = budget(cfg);
    s.options.keep_stream = true;
    s.n = get_int(cfg, "N", 100'000);
    // shift targets of the phi slot follow the function the scan will use
    const auto regime = resolve_independence(s.ind, s.options.alpha_class);
    DensitySetup target_ctx = s;
    if (regime.prime_set) target_ctx.phi = modified_phi(s.phi, *regime.prime_set);
    const auto& tj = need(cfg, "targets", cmd);
    io::check_keys(tj, {"phi", "zeta"}, cmd + ".targets");
    s.t_phi = target_from_json(need(tj, "phi", cmd + ".targets"), "phi", target_ctx);
    s.t_zeta = target_from_json(need(tj, "zeta", cmd + ".targets"), "zeta", target_ctx);
    return s;
}

double epsilon_from_json(const Json& j) {
    if (j.is_string() && (j == "inf" || j == "infinity")) return std::numeric_limits<double>::infinity();
    if (!j.is_number()) throw DomainError("epsilon must be a number or \"inf\"");
    return j.get<double>();
}

std::string stream_csv(const DensityReport& r) {
    std::string csv = csv_line({"k", "dist_phi", "dist_zeta"});
    for (std::size_t k = 0; k < r.dist_phi.size(); ++k)
        csv += csv_line({std::to_string(k), num(r.dist_phi[k]), num(r.dist_zeta[k])});
    return csv;
}

void write_stream(const Json& cfg, const DensityReport& r) {
    if (!cfg.contains("stream_out")) return;
    std::ofstream f(cfg["stream_out"].get<std::string>());
    if (!f) throw DomainError("cannot write " + cfg["stream_out"].get<std::string>());
    f << stream_csv(r);
}

CommandOutput cmd_density(const Json& cfg) {
    const auto s = density_setup(cfg, "density", false);
    const double eps = epsilon_from_json(need(cfg, "epsilon", "density"));
    const auto rep = joint_density(s.phi, s.zeta, s.t_phi, s.t_zeta, s.ind, s.n, eps, s.options);
    write_stream(cfg, rep);
    return {io::density_report_to_json(rep, optional_seed(cfg)), stream_csv(rep)};
}

CommandOutput cmd_sweep(const Json& cfg) {
    const auto s = density_setup(cfg, "sweep", true);
    const auto& ej = need(cfg, "epsilons", "sweep");
    if (!ej.is_array()) throw DomainError("sweep.epsilons: expected a list");
    std::vector<double> eps;
    for (const auto& e : ej) eps.push_back(epsilon_from_json(e));
    const auto reps = epsilon_sweep(s.phi, s.zeta, s.t_phi, s.t_zeta, s.ind, s.n, eps, s.options);
    write_stream(cfg, reps.front());
    Json list = Json::array();
    std::string csv = csv_line({"epsilon", "hits", "density"});
    for (const auto& r : reps) {
        list.push_back(io::density_report_to_json(r, optional_seed(cfg)));
        csv += csv_line({num(r.epsilon), std::to_string(r.hits), num(r.density)});
    }
    return {Json{{"reports", list}}, csv};
}

// ---------------------------------------------------------------------------

CommandOutput cmd_fourier(const Json& cfg) {
    io::check_keys(cfg, {"frequency", "N", "independence", "alpha"}, "fourier");
    const auto& fj = need(cfg, "frequency", "fourier");
    io::check_keys(fj, {"k", "l"}, "fourier.frequency");
    FrequencyVector freq;
    auto entries = [](const Json& j, const std::string& where) {
        std::map<std::uint64_t, std::int64_t> out;
        if (!j.is_object()) throw DomainError(where + ": expected an object");
        for (const auto& [key, v] : j.items()) {
            if (!v.is_number_integer()) throw DomainError(where + ": entries must be integers");
            std::size_t used = 0;
            unsigned long long idx = 0;
            try {
                idx = std::stoull(key, &used);
            } catch (const std::exception&) {
                used = 0;
            }
            if (used == 0 || used != key.size()) throw DomainError(where + ": key \"" + key + "\" is not an integer");
            out[idx] = v.get<std::int64_t>();
        }
        return out;
    };
    if (fj.contains("k")) freq.k_entries = entries(fj["k"], "fourier.frequency.k");
    if (fj.contains("l")) freq.l_entries = entries(fj["l"], "fourier.frequency.l");
    const auto ind = io::independence_from_json(need(cfg, "independence", "fourier"));
    const double alpha = get_double(cfg, "alpha", 1.0);

    std::vector<std::int64_t> ns;
    const auto& nj = need(cfg, "N", "fourier");
    if (nj.is_array())
        for (const auto& n : nj) ns.push_back(n.get<std::int64_t>());
    else
        ns.push_back(nj.get<std::int64_t>());

    Json rows = Json::array();
    std::string csv = csv_line({"N", "direct_re", "direct_im", "closed_re", "closed_im", "abs_diff", "bound"});
    FourierValue last;
    for (auto n : ns) {
        last = fourier_gN(freq, n, ind, alpha);
        rows.push_back(io::fourier_to_json(last, n));
        csv += csv_line({std::to_string(n), num(last.direct.real()), num(last.direct.imag()), num(last.closed_form.real()),
                         num(last.closed_form.imag()), num(std::abs(last.direct - last.closed_form)),
                         std::isfinite(last.bound) ? num(last.bound) : "inf"});
    }
    Json j{{"rows", rows},
           {"theta", last.theta},
           {"resonant", last.resonant},
           {"obstruction", last.obstruction},
           {"independence", io::independence_to_json(ind)}};
    return {j, csv};
}

// ---------------------------------------------------------------------------

/// sum |a(m)|^2 m^{-2 sigma} (phi) or sum |b_m|^2 (m + alpha)^{-2 sigma} (zeta).
std::optional<double> comparator(const io::FunctionSpec& f, double sigma, const AccuracyBudget& acc) {
    if (!(sigma > 0.5)) return std::nullopt;
    auto squared = [](const PeriodicSequence& seq) {
        std::vector<Complex> v;
        for (const auto& b : seq.values()) v.push_back(std::norm(b));
        return PeriodicSequence::reduced(std::move(v));
    };
    if (const auto* ctx = std::get_if<ZetaContext>(&f))
        return periodic_hurwitz(2.0 * sigma, ctx->alpha, squared(ctx->seq), acc).real();
    const auto& spec = std::get<EulerProductSpec>(f);
    if (spec.has_continuation() && spec.removed().empty())
        return periodic_hurwitz(2.0 * sigma, 1.0, squared(*spec.continuation_sequence()), acc).real();
    const std::uint64_t x = spec.has_continuation() ? 100'000 : std::min<std::uint64_t>(spec.prime_bound(), 100'000);
    return mean_square_comparator(dirichlet_coefficients(spec, std::max<std::uint64_t>(x, 2)), sigma);
}

CommandOutput cmd_meansquare(const Json& cfg) {
    io::check_keys(cfg, {"function", "sigma", "mode", "T", "N", "h", "seed", "P_max", "M_max", "abs_tol", "max_terms"},
                   "meansquare");
    const auto f = io::function_from_json(need(cfg, "function", "meansquare"));
    const double sigma = get_double(cfg, "sigma", 2.0);
    if (!std::isfinite(sigma)) throw DomainError("meansquare: sigma must be finite");
    const std::string mode = cfg.value("mode", "discrete");
    const auto acc = budget(cfg);
    Json j{{"function", io::function_name(f)}, {"sigma", sigma}, {"mode", mode}};
    double value = 0.0;
    if (mode == "continuous") {
        const double t = get_double(cfg, "T", 100.0);
        if (!(t >= 0.0) || !std::isfinite(t)) throw DomainError("meansquare: T must be >= 0");
        if (t == 0.0) {
            value = std::norm(evaluate(f, sigma, acc));
        } else {
            const AccuracyBudget quad{std::max(acc.abs_tol, 1e-10) * t, 200'000};
            const auto r = integrate_segment_detailed(
                [&](double y) { return Complex(std::norm(evaluate(f, Complex(sigma, y), acc))); }, 0.0, t, quad,
                static_cast<int>(std::max(1.0, std::ceil(t))));
            value = r.value.real() / t;
        }
        j["T"] = t;
    } else if (mode == "discrete") {
        const auto n = get_int(cfg, "N", 10'000);
        const double h = get_double(cfg, "h", 1.0);
        const auto fn = shifted(f, {RectGrid::single(sigma)}, h, acc);
        const auto ks = shift_range(n);
        std::vector<double> sq(ks.size());
        for (auto k : ks)
            if (fn.hits_pole(k)) throw PoleError("meansquare: shift k = " + std::to_string(k) + " meets a pole");
        fn.for_each_shift(ks, [&](std::size_t i, std::int64_t, std::span<const Complex> v) { sq[i] = std::norm(v[0]); });
        for (double x : sq) value += x;
        value /= static_cast<double>(ks.size());
        j["N"] = n;
        j["h"] = h;
    } else if (mode == "random") {
        const auto n = get_int(cfg, "N", 10'000);
        if (n < 0) throw DomainError("meansquare: N must be >= 0");
        const auto seed = seed_of(cfg, "meansquare");
        const auto p_max = get_count(cfg, "P_max", 10'000), m_max = get_count(cfg, "M_max", 10'000);
        const auto* ctx = std::get_if<ZetaContext>(&f);
        const auto series = ctx ? RandomizedSeries::zeta(sigma, ctx->alpha, ctx->seq, m_max)
                                : RandomizedSeries::phi(sigma, std::get<EulerProductSpec>(f), p_max);
        std::vector<double> sq(static_cast<std::size_t>(n) + 1);
        parallel_for(sq.size(), [&](std::size_t i) { sq[i] = std::norm(series(sample_torus_stream(seed, i, p_max, m_max))); });
        for (double x : sq) value += x;
        value /= static_cast<double>(sq.size());
        j["N"] = n;
        j["seed"] = seed;
        j["P_max"] = p_max;
        j["M_max"] = m_max;
    } else {
        throw DomainError("meansquare: mode must be continuous, discrete or random");
    }
    j["value"] = value;
    const auto cmp = comparator(f, sigma, acc);
    j["comparator"] = cmp ? Json(*cmp) : Json(nullptr);
    std::string csv = csv_line({"function", "sigma", "mode", "value", "comparator"}) +
                      csv_line({io::function_name(f), num(sigma), mode, num(value), cmp ? num(*cmp) : "nan"});
    return {j, csv};
}

// ---------------------------------------------------------------------------

CommandOutput cmd_diststats(const Json& cfg) {
    const std::string mode = cfg.value("mode", "equidistribution");
    Json j{{"mode", mode}};
    std::string csv;
    if (mode == "equidistribution") {
        io::check_keys(cfg, {"mode", "coordinate", "independence", "alpha", "N", "seed"}, "diststats");
        const auto& cj = need(cfg, "coordinate", "diststats");
        io::check_keys(cj, {"prime", "index"}, "diststats.coordinate");
        if (cj.contains("prime") == cj.contains("index"))
            throw DomainError("diststats.coordinate: give exactly one of prime, index");
        const Marginal coord = cj.contains("prime") ? Marginal::of_prime(get_count(cj, "prime", 2))
                                                    : Marginal::of_index(get_count(cj, "index", 0));
        const auto ind = io::independence_from_json(need(cfg, "independence", "diststats"));
        const double alpha = get_double(cfg, "alpha", 1.0);
        const auto n = get_int(cfg, "N", 100'000);
        const auto r = equidistribution_stat(coord, ind, alpha, n);
        j["statistic"] = r.statistic;
        j["N"] = n;
        j["degenerate"] = r.degenerate;
        j["distinct_points"] = r.distinct_points;
        j["params"] = {{"coordinate", cj}, {"independence", io::independence_to_json(ind)}, {"alpha", alpha}};
        j["seed"] = nullptr;
        csv = csv_line({"statistic", "N", "degenerate", "distinct_points"}) +
              csv_line({num(r.statistic), std::to_string(n), r.degenerate ? "true" : "false",
                        std::to_string(r.distinct_points)});
        return {j, csv};
    }
    io::check_keys(cfg, {"mode", "point", "which", "N", "samples", "seed", "seed_b", "phi", "zeta", "independence",
                         "P_max", "M_max", "abs_tol", "max_terms"},
                   "diststats");
    const Complex s = io::complex_from_json(need(cfg, "point", "diststats"), "diststats.point");
    const auto which = which_from_string(cfg.value("which", "zeta"));
    const auto spec = cfg.contains("phi") ? io::spec_from_json(cfg["phi"]) : EulerProductSpec::riemann();
    const auto zeta = cfg.contains("zeta") ? io::zeta_context_from_json(cfg["zeta"]) : ZetaContext{};
    DistCompareOptions opt;
    opt.seed = seed_of(cfg, "diststats");
    opt.torus_samples = get_int(cfg, "samples", 10'000);
    opt.p_max = get_count(cfg, "P_max", 10'000);
    opt.m_max = get_count(cfg, "M_max", 10'000);
    opt.acc = budget(cfg);
    DistCompareReport r;
    Json params{{"point", io::complex_to_json(s)}, {"which", to_string(which)}, {"samples", opt.torus_samples},
                {"P_max", opt.p_max}, {"M_max", opt.m_max}};
    if (which != Which::zeta) params["phi"] = io::spec_to_json(spec);
    if (which != Which::phi) params["zeta"] = io::zeta_context_to_json(zeta);
    if (mode == "compare") {
        const auto ind = io::independence_from_json(need(cfg, "independence", "diststats"));
        opt.shifts = get_int(cfg, "N", 10'000);
        r = distribution_compare(s, which, ind, spec, zeta.seq, zeta.alpha, opt);
        params["independence"] = io::independence_to_json(ind);
        j["N"] = opt.shifts;
    } else if (mode == "torus_vs_torus") {
        // two torus sample sets; identical seeds give identical sets
        const auto seed_b = get_count(cfg, "seed_b", opt.seed);
        auto draw = [&](std::uint64_t seed) {
            std::vector<Complex> v(static_cast<std::size_t>(opt.torus_samples));
            const auto series = which == Which::phi ? RandomizedSeries::phi(s, spec, opt.p_max)
                                                    : RandomizedSeries::zeta(s, zeta.alpha, zeta.seq, opt.m_max);
            parallel_for(v.size(), [&](std::size_t i) { v[i] = series(sample_torus_stream(seed, i, opt.p_max, opt.m_max)); });
            return v;
        };
        if (which == Which::joint) throw DomainError("diststats: torus_vs_torus compares one component");
        r = compare_samples(draw(opt.seed), draw(seed_b));
        j["seed_b"] = seed_b;
        j["N"] = opt.torus_samples;
    } else {
        throw DomainError("diststats: mode must be equidistribution, compare or torus_vs_torus");
    }
    j["statistic"] = r.statistic;
    j["ks_re"] = r.ks_re;
    j["ks_im"] = r.ks_im;
    j["ks_abs"] = r.ks_abs;
    j["regime"] = to_string(r.regime);
    j["params"] = params;
    j["seed"] = opt.seed;
    csv = csv_line({"statistic", "ks_re", "ks_im", "ks_abs"}) +
          csv_line({num(r.statistic), num(r.ks_re), num(r.ks_im), num(r.ks_abs)});
    return {j, csv};
}

// ---------------------------------------------------------------------------

CommandOutput cmd_check(const Json& cfg) {
    io::check_keys(cfg, {"function", "x", "sigma_grid", "shifts", "h", "tolerance", "abs_tol", "max_terms"}, "check");
    const auto spec = io::spec_from_json(need(cfg, "function", "check"));
    const double x = get_double(cfg, "x", 10'000.0);
    std::vector<double> grid{0.55, 0.6, 0.7, 0.8, 0.9, 1.1, 1.5, 2.0};
    if (cfg.contains("sigma_grid")) {
        grid.clear();
        for (const auto& v : cfg["sigma_grid"]) grid.push_back(v.get<double>());
    }
    SteudingOptions opt;
    opt.shifts = get_int(cfg, "shifts", opt.shifts);
    opt.h = get_double(cfg, "h", opt.h);
    opt.tolerance = get_double(cfg, "tolerance", opt.tolerance);
    opt.acc = {get_double(cfg, "abs_tol", opt.acc.abs_tol), get_int(cfg, "max_terms", opt.acc.max_terms)};
    const auto r = steuding_check(spec, x, grid, opt);
    auto j = io::steuding_report_to_json(r);
    j["function"] = io::function_name(spec);
    std::string csv = csv_line({"sigma", "mean_square", "comparator"});
    for (std::size_t i = 0; i < r.sigma_grid.size(); ++i)
        csv += csv_line({num(r.sigma_grid[i]), num(r.mean_squares[i]), num(r.comparators[i])});
    return {j, csv};
}

int exit_code_for(const std::exception& e, std::string& kind) {
    if (dynamic_cast<const RegimeError*>(&e)) return kind = "RegimeError", kExitRegime;
    if (dynamic_cast<const AccuracyError*>(&e)) return kind = "AccuracyError", kExitAccuracy;
    if (dynamic_cast<const PoleError*>(&e)) return kind = "PoleError", kExitDomain;
    if (dynamic_cast<const TruncationError*>(&e)) return kind = "TruncationError", kExitDomain;
    if (dynamic_cast<const RegionError*>(&e)) return kind = "RegionError", kExitDomain;
    if (dynamic_cast<const InsufficientDataError*>(&e)) return kind = "InsufficientDataError", kExitDomain;
    if (dynamic_cast<const GridMismatchError*>(&e)) return kind = "GridMismatchError", kExitDomain;
    if (dynamic_cast<const DomainError*>(&e)) return kind = "DomainError", kExitDomain;
    if (dynamic_cast<const nlohmann::json::exception*>(&e)) return kind = "ConfigError", kExitDomain;
    return kind = "Error", kExitFailure;
}

}  // namespace

CommandOutput run_command(const std::string& command, const nlohmann::json& config) {
    if (command == "eval") return cmd_eval(config);
    if (command == "density") return cmd_density(config);
    if (command == "sweep") return cmd_sweep(config);
    if (command == "fourier") return cmd_fourier(config);
    if (command == "meansquare") return cmd_meansquare(config);
    if (command == "diststats") return cmd_diststats(config);
    if (command == "check") return cmd_check(config);
    throw DomainError("unknown command '" + command + "'");
}

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"zetalab: zeta families, discrete shifts and universality densities"};
    app.require_subcommand(1);
    std::string config_path, out_path, format, params;
    std::optional<std::uint64_t> seed;
    bool strict = false;
    const char* names[] = {"eval", "density", "sweep", "fourier", "meansquare", "diststats", "check"};
    for (const char* name : names) {
        auto* sub = app.add_subcommand(name);
        sub->add_option("--config", config_path, "JSON config (a command block, or a document with one block per command)");
        sub->add_option("--params", params, "inline JSON merged over the config block");
        sub->add_option("--seed", seed, "seed for stochastic commands");
        sub->add_option("--out", out_path, "write the payload here instead of stdout");
        sub->add_option("--format", format, "json or csv")->check(CLI::IsMember({"json", "csv"}));
        sub->add_flag("--strict", strict, "fail when the independence regime is unknown");
    }
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp& e) {
        out << app.help();
        return kExitOk;
    } catch (const CLI::CallForAllHelp& e) {
        out << app.help();
        return kExitOk;
    } catch (const CLI::ParseError& e) {
        err << "usage error: " << e.what() << "\n";
        return kExitDomain;
    }
    const std::string command = app.get_subcommands().front()->get_name();

    try {
        Json block = Json::object();
        if (!config_path.empty()) {
            std::ifstream f(config_path);
            if (!f) throw DomainError("cannot read config " + config_path);
            Json doc = Json::parse(f);
            block = doc.is_object() && doc.contains(command) && doc[command].is_object() ? doc[command] : doc;
        }
        if (!params.empty()) block.merge_patch(Json::parse(params));
        if (seed) {
            if (command == "fourier" || command == "check") throw DomainError("--seed: " + command + " is deterministic");
            block["seed"] = *seed;
        }
        if (strict) {
            if (command != "density" && command != "sweep") throw DomainError("--strict applies to density and sweep");
            block["strict"] = true;
        }
        const auto result = run_command(command, block);
        const bool csv = format.empty() ? command == "fourier" : format == "csv";
        const std::string payload = csv ? result.csv : result.json.dump() + "\n";
        if (out_path.empty()) {
            out << payload;
        } else {
            std::ofstream f(out_path, std::ios::binary);
            if (!f) throw DomainError("cannot write " + out_path);
            f << payload;
        }
        return kExitOk;
    } catch (const std::exception& e) {
        std::string kind;
        const int code = exit_code_for(e, kind);
        err << kind << ": " << e.what() << "\n";
        return code;
    }
}

}  // namespace zetalab
