#include "zetalab/io.hpp"

#include <algorithm>
#include <cmath>

#include "zetalab/errors.hpp"

namespace zetalab::io {

namespace {

double number(const Json& j, const std::string& where) {
    if (!j.is_number()) throw DomainError(where + ": expected a number");
    return j.get<double>();
}

std::uint64_t count(const Json& j, const std::string& where) {
    if (!j.is_number_integer() || j.get<std::int64_t>() < 0)
        throw DomainError(where + ": expected a non-negative integer");
    return j.get<std::uint64_t>();
}

const Json& required(const Json& j, const char* key, const std::string& where) {
    if (!j.contains(key)) throw DomainError(where + ": missing \"" + key + "\"");
    return j.at(key);
}

std::uint64_t prime_key(const std::string& key, const std::string& where) {
    std::size_t used = 0;
    unsigned long long p = 0;
    try {
        p = std::stoull(key, &used);
    } catch (const std::exception&) {
        used = 0;
    }
    if (used != key.size() || key.empty()) throw DomainError(where + ": key \"" + key + "\" is not an integer");
    return p;
}

}  // namespace

std::string format_double(double x) { return Json(x).dump(); }

void check_keys(const Json& j, std::initializer_list<const char*> allowed, const std::string& where) {
    if (!j.is_object()) throw DomainError(where + ": expected an object");
    for (const auto& [key, value] : j.items())
        if (std::none_of(allowed.begin(), allowed.end(), [&](const char* a) { return key == a; }))
            throw DomainError(where + ": unknown key \"" + key + "\"");
}

Complex complex_from_json(const Json& j, const std::string& where) {
    Complex z;
    if (j.is_number()) {
        z = j.get<double>();
    } else if (j.is_array() && j.size() == 2 && j[0].is_number() && j[1].is_number()) {
        z = {j[0].get<double>(), j[1].get<double>()};
    } else {
        throw DomainError(where + ": expected a number or [re, im]");
    }
    require_finite(z, where.c_str());
    return z;
}

Json complex_to_json(Complex z) { return Json::array({z.real(), z.imag()}); }

EulerProductSpec spec_from_json(const Json& j) {
    const std::string where = "function";
    check_keys(j, {"family", "prime_bound", "modulus", "index", "factors", "growth", "remove_primes"}, where);
    const auto family = family_from_string(required(j, "family", where).get<std::string>());
    const std::uint64_t bound =
        j.contains("prime_bound") ? count(j["prime_bound"], where + ".prime_bound") : kDefaultPrimeBound;
    EulerProductSpec spec = EulerProductSpec::riemann(2);
    switch (family) {
        case Family::riemann:
            check_keys(j, {"family", "prime_bound", "remove_primes"}, where);
            spec = EulerProductSpec::riemann(bound);
            break;
        case Family::dirichlet_l:
            check_keys(j, {"family", "prime_bound", "modulus", "index", "remove_primes"}, where);
            spec = EulerProductSpec::dirichlet_l(static_cast<int>(count(required(j, "modulus", where), where + ".modulus")),
                                                 static_cast<int>(count(required(j, "index", where), where + ".index")),
                                                 bound);
            break;
        case Family::custom: {
            check_keys(j, {"family", "prime_bound", "factors", "growth", "remove_primes"}, where);
            FactorTableMap factors;
            const auto& fj = required(j, "factors", where);
            if (!fj.is_object()) throw DomainError(where + ".factors: expected an object keyed by prime");
            for (const auto& [key, list] : fj.items()) {
                const auto p = prime_key(key, where + ".factors");
                if (!list.is_array()) throw DomainError(where + ".factors." + key + ": expected a list");
                for (const auto& f : list) {
                    check_keys(f, {"a", "f"}, where + ".factors." + key);
                    const auto e = f.contains("f") ? count(f["f"], where + ".factors.f") : 1;
                    factors[p].push_back({complex_from_json(required(f, "a", where), where + ".factors.a"),
                                          static_cast<int>(e)});
                }
            }
            GrowthConstants g;
            if (j.contains("growth")) {
                const auto& gj = j["growth"];
                check_keys(gj, {"c1", "alpha_g", "beta_g"}, where + ".growth");
                if (gj.contains("c1")) g.c1 = number(gj["c1"], where + ".growth.c1");
                if (gj.contains("alpha_g")) g.alpha_g = number(gj["alpha_g"], where + ".growth.alpha_g");
                if (gj.contains("beta_g")) g.beta_g = number(gj["beta_g"], where + ".growth.beta_g");
            }
            spec = EulerProductSpec::custom(std::move(factors), g, required(j, "prime_bound", where).get<std::uint64_t>());
            break;
        }
    }
    if (j.contains("remove_primes")) {
        const auto& rp = j["remove_primes"];
        if (!rp.is_array()) throw DomainError(where + ".remove_primes: expected a list");
        std::vector<std::uint64_t> primes;
        for (const auto& p : rp) primes.push_back(count(p, where + ".remove_primes"));
        spec = spec.without_primes(primes);
    }
    return spec;
}

Json spec_to_json(const EulerProductSpec& spec) {
    Json j;
    j["family"] = to_string(spec.family());
    j["prime_bound"] = spec.prime_bound();
    if (spec.family() == Family::dirichlet_l) {
        j["modulus"] = spec.character()->modulus();
        j["index"] = spec.character()->index();
    }
    if (spec.family() == Family::custom) {
        FactorTableMap all = spec.factors();
        for (const auto& [p, list] : spec.removed()) all[p] = list;
        Json fj = Json::object();
        for (const auto& [p, list] : all) {
            Json lj = Json::array();
            for (const auto& f : list) lj.push_back({{"a", complex_to_json(f.coefficient)}, {"f", f.exponent}});
            fj[std::to_string(p)] = lj;
        }
        j["factors"] = fj;
        j["growth"] = {{"c1", spec.growth().c1}, {"alpha_g", spec.growth().alpha_g}, {"beta_g", spec.growth().beta_g}};
    }
    if (!spec.removed().empty()) {
        Json rp = Json::array();
        for (const auto& [p, list] : spec.removed()) rp.push_back(p);
        j["remove_primes"] = rp;
    }
    return j;
}

PeriodicSequence sequence_from_json(const Json& j) {
    if (!j.is_array()) throw DomainError("sequence: expected a list");
    std::vector<Complex> values;
    for (const auto& v : j) values.push_back(complex_from_json(v, "sequence"));
    return PeriodicSequence::reduced(std::move(values));
}

Json sequence_to_json(const PeriodicSequence& seq) {
    Json j = Json::array();
    for (const auto& v : seq.values()) j.push_back(complex_to_json(v));
    return j;
}

ZetaContext zeta_context_from_json(const Json& j) {
    check_keys(j, {"family", "alpha", "sequence"}, "zeta");
    ZetaContext ctx;
    ctx.alpha = number(required(j, "alpha", "zeta"), "zeta.alpha");
    if (!(ctx.alpha > 0.0 && ctx.alpha <= 1.0)) throw DomainError("zeta.alpha must lie in (0, 1]");
    if (j.contains("sequence")) ctx.seq = sequence_from_json(j["sequence"]);
    return ctx;
}

Json zeta_context_to_json(const ZetaContext& ctx) { return {{"alpha", ctx.alpha}, {"sequence", sequence_to_json(ctx.seq)}}; }

FunctionSpec function_from_json(const Json& j) {
    if (!j.is_object()) throw DomainError("function: expected an object");
    const std::string family = j.value("family", "");
    if (family == "hurwitz") {
        if (j.contains("sequence")) throw DomainError("function: hurwitz takes no sequence (use periodic_hurwitz)");
        return zeta_context_from_json(j);
    }
    if (family == "periodic_hurwitz") {
        if (!j.contains("sequence")) throw DomainError("function: periodic_hurwitz needs \"sequence\"");
        return zeta_context_from_json(j);
    }
    return spec_from_json(j);
}

std::string function_name(const FunctionSpec& f) {
    if (const auto* ctx = std::get_if<ZetaContext>(&f)) return ctx->seq.period() == 1 && ctx->seq[0] == Complex(1.0)
                                                                   ? "hurwitz"
                                                                   : "periodic_hurwitz";
    const auto& spec = std::get<EulerProductSpec>(f);
    std::string name = to_string(spec.family());
    if (!spec.removed().empty()) name += "_modified";
    return name;
}

IndependenceSpec independence_from_json(const Json& j) {
    const std::string where = "independence";
    check_keys(j, {"mode", "h", "a", "b"}, where);
    const auto mode = independence_mode_from_string(j.value("mode", "generic_real_h"));
    if (mode == IndependenceMode::rational_exp) {
        // rational steps are entered only as the pair (a, b)
        if (j.contains("h")) throw DomainError(where + ": give rational_exp as (a, b), not as a decimal h");
        return IndependenceSpec::rational(count(required(j, "a", where), where + ".a"),
                                          count(required(j, "b", where), where + ".b"));
    }
    if (j.contains("a") || j.contains("b")) throw DomainError(where + ": (a, b) needs mode rational_exp");
    return IndependenceSpec::generic(number(required(j, "h", where), where + ".h"));
}

Json independence_to_json(const IndependenceSpec& ind) {
    Json j{{"mode", to_string(ind.mode)}, {"h", ind.h}};
    if (ind.rational_pair) {
        j["a"] = ind.rational_pair->a;
        j["b"] = ind.rational_pair->b;
    }
    return j;
}

Rect rect_from_json(const Json& j) {
    if (!j.is_array() || j.size() != 4) throw DomainError("region: expected [sigma_lo, sigma_hi, t_lo, t_hi]");
    Rect r{number(j[0], "region"), number(j[1], "region"), number(j[2], "region"), number(j[3], "region")};
    r.validate();
    return r;
}

Json rect_to_json(const Rect& r) { return Json::array({r.sigma_lo, r.sigma_hi, r.t_lo, r.t_hi}); }

MetricSpec metric_from_json(const Json& j) {
    check_keys(j, {"region", "levels", "density"}, "metric");
    MetricSpec m;
    m.region = rect_from_json(required(j, "region", "metric"));
    if (j.contains("levels")) m.levels = static_cast<int>(count(j["levels"], "metric.levels"));
    if (j.contains("density")) m.density = static_cast<int>(count(j["density"], "metric.density"));
    m.validate();
    return m;
}

Json metric_to_json(const MetricSpec& m) {
    return {{"region", rect_to_json(m.region)}, {"levels", m.levels}, {"density", m.density}};
}

Json torus_point_to_json(const TorusPoint& w, bool explicit_angles) {
    Json j{{"P_max", w.p_max}, {"M_max", w.m_max}};
    const bool regenerable =
        w == (w.stream ? sample_torus_stream(w.seed, *w.stream, w.p_max, w.m_max) : sample_torus(w.seed, w.p_max, w.m_max));
    if (regenerable && !explicit_angles) {
        j["seed"] = w.seed;
        if (w.stream) j["stream"] = *w.stream;
        return j;
    }
    Json a1 = Json::object();
    for (std::size_t i = 0; i < w.primes.size(); ++i) a1[std::to_string(w.primes[i])] = w.omega1[i];
    j["omega1"] = a1;
    j["omega2"] = w.omega2;
    return j;
}

TorusPoint torus_point_from_json(const Json& j) {
    const std::string where = "torus_point";
    check_keys(j, {"seed", "stream", "P_max", "M_max", "omega1", "omega2"}, where);
    const auto p_max = count(required(j, "P_max", where), where + ".P_max");
    const auto m_max = count(required(j, "M_max", where), where + ".M_max");
    if (j.contains("seed")) {
        const auto seed = count(j["seed"], where + ".seed");
        return j.contains("stream") ? sample_torus_stream(seed, count(j["stream"], where + ".stream"), p_max, m_max)
                                    : sample_torus(seed, p_max, m_max);
    }
    auto w = TorusPoint::identity(p_max, m_max);
    const auto& a1 = required(j, "omega1", where);
    const auto& a2 = required(j, "omega2", where);
    if (!a1.is_object() || a1.size() != w.primes.size() || !a2.is_array() || a2.size() != w.omega2.size())
        throw DomainError(where + ": angle arrays do not match P_max / M_max");
    auto angle = [&](const Json& v) {
        const double a = number(v, where);
        if (!(a >= 0.0 && a < 2.0 * std::numbers::pi)) throw DomainError(where + ": angles must lie in [0, 2 pi)");
        return a;
    };
    for (std::size_t i = 0; i < w.primes.size(); ++i) {
        const auto key = std::to_string(w.primes[i]);
        if (!a1.contains(key)) throw DomainError(where + ": missing angle for prime " + key);
        w.omega1[i] = angle(a1[key]);
    }
    for (std::size_t m = 0; m < w.omega2.size(); ++m) w.omega2[m] = angle(a2[m]);
    return w;
}

Json density_report_to_json(const DensityReport& r, std::optional<std::uint64_t> seed) {
    Json j{{"N", r.n},           {"h", r.h},
           {"epsilon", r.epsilon}, {"hits", r.hits},
           {"density", r.density}, {"regime", to_string(r.regime)},
           {"excluded_k", r.excluded_k}, {"warnings", r.warnings}};
    j["seed"] = seed ? Json(*seed) : Json(nullptr);
    if (std::isinf(r.epsilon)) j["epsilon"] = "inf";
    return j;
}

Json steuding_report_to_json(const SteudingReport& r) {
    Json j{{"kappa_estimate", r.kappa_estimate},
           {"x_used", r.x_used},
           {"degree_l", r.degree_l},
           {"coefficient_growth_ok", r.coefficient_growth_ok},
           {"sigma_grid", r.sigma_grid},
           {"mean_squares", r.mean_squares},
           {"comparators", r.comparators}};
    j["sigma_star_estimate"] = r.sigma_star_estimate ? Json(*r.sigma_star_estimate) : Json(nullptr);
    return j;
}

Json fourier_to_json(const FourierValue& v, std::int64_t n) {
    Json j{{"N", n},
           {"direct", complex_to_json(v.direct)},
           {"closed_form", complex_to_json(v.closed_form)},
           {"abs_diff", std::abs(v.direct - v.closed_form)},
           {"theta", v.theta},
           {"turns", v.turns},
           {"resonant", v.resonant},
           {"obstruction", v.obstruction}};
    j["bound"] = std::isfinite(v.bound) ? Json(v.bound) : Json(nullptr);
    return j;
}

}  // namespace zetalab::io
