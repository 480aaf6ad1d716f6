#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <sstream>

#include "zetalab/cli.hpp"
#include "zetalab/errors.hpp"
#include "zetalab/io.hpp"

using namespace zetalab;
using io::Json;
using std::numbers::pi;

namespace {

struct Run {
    int code;
    std::string out;
    std::string err;
};

Run run(std::vector<std::string> args) {
    std::ostringstream out, err;
    const int code = run_cli(args, out, err);
    return {code, out.str(), err.str()};
}

Run run_params(const std::string& cmd, const Json& params, std::vector<std::string> extra = {}) {
    std::vector<std::string> args{cmd, "--params", params.dump()};
    args.insert(args.end(), extra.begin(), extra.end());
    return run(args);
}

Complex value_of(const Json& j) { return {j["value"][0].get<double>(), j["value"][1].get<double>()}; }

Json density_config(const Json& independence, int n, double eps) {
    return {{"phi", {{"family", "riemann"}}},
            {"zeta", {{"alpha", 0.7}}},
            {"independence", independence},
            {"targets",
             {{"phi", {{"type", "shift"}, {"k0", 17}, {"region", {0.6, 0.9, -1.0, 1.0}}, {"density", 4}}},
              {"zeta", {{"type", "shift"}, {"k0", 17}, {"region", {0.6, 0.9, -1.0, 1.0}}, {"density", 4}}}}},
            {"N", n},
            {"epsilon", eps}};
}

std::filesystem::path temp_path(const std::string& name) {
    return std::filesystem::temp_directory_path() / ("zetalab_test_" + name);
}

}  // namespace

TEST_CASE("cli eval") {
    auto r = run_params("eval", {{"function", {{"family", "riemann"}}}, {"s", {2.0, 0.0}}});
    REQUIRE(r.code == 0);
    auto j = Json::parse(r.out);
    CHECK(std::abs(value_of(j) - pi * pi / 6) < 1e-10);
    CHECK(j["function"] == "riemann");
    CHECK(j.contains("abs_tol"));
    CHECK(j.contains("truncation"));

    r = run_params("eval", {{"function", {{"family", "periodic_hurwitz"}, {"alpha", 1.0}, {"sequence", {1, -1}}}},
                            {"s", 2.0}});
    REQUIRE(r.code == 0);
    CHECK(std::abs(value_of(Json::parse(r.out)) - pi * pi / 12) < 1e-8);

    r = run_params("eval", {{"function", {{"family", "riemann"}}}, {"s", {1.0, 0.0}}});
    CHECK(r.code == 2);
    CHECK(r.err.find("PoleError") != std::string::npos);

    // randomized evaluation needs a seed and records it
    const Json rnd{{"function", {{"family", "hurwitz"}, {"alpha", 0.7}}},
                   {"s", {1.5, 0.0}},
                   {"randomized", {{"P_max", 100}, {"M_max", 1000}}}};
    CHECK(run_params("eval", rnd).code == 2);
    r = run_params("eval", rnd, {"--seed", "9"});
    REQUIRE(r.code == 0);
    CHECK(Json::parse(r.out)["truncation"]["torus"]["seed"] == 9);
    CHECK(run_params("eval", rnd, {"--seed", "9"}).out == r.out);

    r = run_params("eval", {{"function", {{"family", "riemann"}}}, {"s", {2.0, 0.0}},
                            {"smoothing", {{"n", 1000}, {"sigma_hat", 0.75}}}});
    REQUIRE(r.code == 0);
    CHECK(std::abs(value_of(Json::parse(r.out)) - pi * pi / 6) < 0.05);

    // custom products refuse an accuracy they cannot certify
    const Json custom{{"family", "custom"}, {"prime_bound", 100}, {"factors", {{"2", {{{"a", 0.5}, {"f", 1}}}}}}};
    r = run_params("eval", {{"function", custom}, {"s", 1.5}, {"abs_tol", 1e-12}});
    CHECK(r.code == 3);
    CHECK(r.err.find("AccuracyError") != std::string::npos);

    r = run_params("eval", {{"function", {{"family", "riemann"}}}, {"s", 2.0}}, {"--format", "csv"});
    CHECK(r.out.rfind("function,s_re,s_im,value_re,value_im\nriemann,2.0,0.0,", 0) == 0);

    CHECK(run_params("eval", {{"function", {{"family", "riemann"}}}, {"s", 2.0}, {"extra", 1}}).code == 2);
    CHECK(run({"nonsense"}).code == 2);
    CHECK(run({"eval", "--format", "xml"}).code == 2);
    CHECK(run({"--help"}).code == 0);
}

TEST_CASE("cli density and sweep") {
    const auto generic = Json{{"mode", "generic_real_h"}, {"h", 1.0}};
    auto r = run_params("density", density_config(generic, 100, 1e-4));
    REQUIRE(r.code == 0);
    auto j = Json::parse(r.out);
    CHECK(j["hits"].get<int>() >= 1);
    CHECK(j["density"].get<double>() >= 1.0 / 101);
    for (const char* key : {"N", "h", "epsilon", "hits", "density", "regime", "seed", "excluded_k"}) CHECK(j.contains(key));
    CHECK(run_params("density", density_config(generic, 100, 1e-4)).out == r.out);

    r = run_params("density", density_config({{"mode", "rational_exp"}, {"a", 2}, {"b", 1}}, 40, 1e-4));
    REQUIRE(r.code == 0);
    CHECK(Json::parse(r.out)["regime"] == "rational_exp");
    CHECK(run_params("density", density_config({{"mode", "rational_exp"}, {"h", 9.0}}, 10, 1e-4)).code == 2);

    auto strict = density_config(generic, 10, 0.5);
    strict["alpha_class"] = "rational";
    CHECK(run_params("density", strict, {"--strict"}).code == 4);
    CHECK(run_params("density", strict).code == 0);

    auto sweep = density_config(generic, 60, 0.0);
    sweep.erase("epsilon");
    sweep["epsilons"] = {0.5, 1.0, 2.0, "inf"};
    r = run_params("sweep", sweep);
    REQUIRE(r.code == 0);
    j = Json::parse(r.out);
    REQUIRE(j["reports"].size() == 4);
    for (std::size_t i = 1; i < 4; ++i)
        CHECK(j["reports"][i]["density"].get<double>() >= j["reports"][i - 1]["density"].get<double>());
    CHECK(j["reports"][3]["density"] == 1.0);

    // the CSV stream has one row per shift
    r = run_params("density", density_config(generic, 30, 1e-4), {"--format", "csv"});
    REQUIRE(r.code == 0);
    CHECK(std::count(r.out.begin(), r.out.end(), '\n') == 32);
}

TEST_CASE("cli fourier") {
    const auto generic = Json{{"mode", "generic_real_h"}, {"h", 1.0}};
    auto r = run_params("fourier", {{"frequency", Json::object()}, {"N", {0, 10, 1000}}, {"independence", generic}});
    REQUIRE(r.code == 0);
    std::istringstream lines(r.out);
    std::string line;
    std::getline(lines, line);
    CHECK(line == "N,direct_re,direct_im,closed_re,closed_im,abs_diff,bound");
    while (std::getline(lines, line)) CHECK(line.find(",1.0,0.0,1.0,0.0,0.0,inf") != std::string::npos);

    r = run_params("fourier",
                   {{"frequency", {{"k", {{"3", 2}}}, {"l", {{"1", -1}}}}},
                    {"N", {100, 201, 403}},
                    {"alpha", 0.7071},
                    {"independence", generic}},
                   {"--format", "json"});
    REQUIRE(r.code == 0);
    const auto rows = Json::parse(r.out)["rows"];
    for (const auto& row : rows) CHECK(row["abs_diff"].get<double>() < 1e-10);
    // N -> 2N + 1 halves the bound column
    CHECK(rows[1]["bound"].get<double>() == doctest::Approx(rows[0]["bound"].get<double>() / 2).epsilon(1e-12));
    CHECK(rows[2]["bound"].get<double>() == doctest::Approx(rows[1]["bound"].get<double>() / 2).epsilon(1e-12));

    CHECK(run_params("fourier", {{"frequency", {{"k", {{"4", 1}}}}}, {"N", 10}, {"independence", generic}}).code == 2);
    CHECK(run_params("fourier", {{"frequency", {{"k", {{"x", 1}}}}}, {"N", 10}, {"independence", generic}}).code == 2);
    r = run_params("fourier", {{"frequency", Json::object()}, {"N", 10}, {"independence", generic}}, {"--seed", "1"});
    CHECK(r.code == 2);
    CHECK(r.err.find("deterministic") != std::string::npos);
}

TEST_CASE("cli meansquare") {
    auto r = run_params("meansquare", {{"function", {{"family", "riemann"}}}, {"sigma", 2.0}, {"mode", "discrete"},
                                       {"N", 10000}, {"h", 1.0}});
    REQUIRE(r.code == 0);
    auto j = Json::parse(r.out);
    CHECK(std::abs(j["value"].get<double>() / (std::pow(pi, 4) / 90) - 1) < 0.02);
    CHECK(std::abs(j["comparator"].get<double>() - riemann_zeta(4.0).real()) < 1e-10);

    for (double sigma : {0.7, 1.3}) {
        r = run_params("meansquare", {{"function", {{"family", "riemann"}}}, {"sigma", sigma}, {"N", 0}});
        REQUIRE(r.code == 0);
        j = Json::parse(r.out);
        CHECK(j["value"].get<double>() == doctest::Approx(std::norm(riemann_zeta(sigma))).epsilon(1e-12));
        CHECK(std::abs(j["comparator"].get<double>() - riemann_zeta(2 * sigma).real()) < 1e-10);
    }
    r = run_params("meansquare",
                   {{"function", {{"family", "riemann"}}}, {"sigma", 1.3}, {"mode", "continuous"}, {"T", 0.0}});
    REQUIRE(r.code == 0);
    CHECK(Json::parse(r.out)["value"].get<double>() == doctest::Approx(std::norm(riemann_zeta(1.3))).epsilon(1e-12));

    r = run_params("meansquare",
                   {{"function", {{"family", "riemann"}}}, {"sigma", 2.0}, {"mode", "continuous"}, {"T", 200.0}});
    REQUIRE(r.code == 0);
    CHECK(std::abs(Json::parse(r.out)["value"].get<double>() / riemann_zeta(4.0).real() - 1) < 0.05);

    // random mode: E|phi(sigma, omega)|^2 is the comparator; a seed is mandatory
    const Json rnd{{"function", {{"family", "hurwitz"}, {"alpha", 0.7}}}, {"sigma", 1.5}, {"mode", "random"},
                   {"N", 2000}, {"M_max", 2000}, {"P_max", 10}};
    CHECK(run_params("meansquare", rnd).code == 2);
    r = run_params("meansquare", rnd, {"--seed", "5"});
    REQUIRE(r.code == 0);
    j = Json::parse(r.out);
    CHECK(std::abs(j["value"].get<double>() / j["comparator"].get<double>() - 1) < 0.1);
    CHECK(run_params("meansquare", rnd, {"--seed", "5"}).out == r.out);

    CHECK(run_params("meansquare", {{"function", {{"family", "riemann"}}}, {"sigma", 1.0}, {"N", 3}}).code == 2);
    CHECK(run_params("meansquare", {{"function", {{"family", "riemann"}}}, {"mode", "bogus"}}).code == 2);
}

TEST_CASE("cli diststats and check") {
    auto r = run_params("diststats", {{"coordinate", {{"prime", 2}}},
                                      {"independence", {{"mode", "generic_real_h"}, {"h", 2 * pi / std::log(2.0)}}},
                                      {"N", 1000}});
    REQUIRE(r.code == 0);
    CHECK(Json::parse(r.out)["degenerate"] == true);

    r = run_params("diststats",
                   {{"coordinate", {{"prime", 2}}}, {"independence", {{"mode", "generic_real_h"}, {"h", 1.0}}}, {"N", 1000000}});
    REQUIRE(r.code == 0);
    CHECK(Json::parse(r.out)["statistic"].get<double>() < 0.01);

    const Json self{{"mode", "torus_vs_torus"}, {"point", {0.8, 0.0}}, {"which", "zeta"}, {"zeta", {{"alpha", 0.7}}},
                    {"samples", 10000}, {"P_max", 10}, {"M_max", 200}};
    r = run_params("diststats", self, {"--seed", "3"});
    REQUIRE(r.code == 0);
    CHECK(Json::parse(r.out)["statistic"] == 0.0);
    auto other = self;
    other["seed_b"] = 4;
    r = run_params("diststats", other, {"--seed", "3"});
    REQUIRE(r.code == 0);
    CHECK(Json::parse(r.out)["statistic"].get<double>() > 0.0);

    const Json cmp{{"mode", "compare"}, {"point", {1.2, 0.0}}, {"which", "joint"}, {"N", 200}, {"samples", 200},
                   {"P_max", 200}, {"M_max", 200}, {"phi", {{"family", "riemann"}, {"prime_bound", 1000}}},
                   {"zeta", {{"alpha", 0.7}}}, {"independence", {{"mode", "generic_real_h"}, {"h", 1.0}}}};
    CHECK(run_params("diststats", cmp).code == 2);
    r = run_params("diststats", cmp, {"--seed", "1"});
    REQUIRE(r.code == 0);
    CHECK(run_params("diststats", cmp, {"--seed", "1"}).out == r.out);

    r = run_params("check", {{"function", {{"family", "riemann"}}}, {"x", 1000}, {"shifts", 100}, {"sigma_grid", {1.5, 2.0}}});
    REQUIRE(r.code == 0);
    auto j = Json::parse(r.out);
    CHECK(j["kappa_estimate"] == 1.0);
    CHECK(j["coefficient_growth_ok"] == true);
}

TEST_CASE("cli config files and output") {
    const auto cfg = temp_path("config.json");
    const auto out = temp_path("out.json");
    {
        std::ofstream f(cfg);
        f << Json{{"eval", {{"function", {{"family", "riemann"}}}, {"s", 3.0}}},
                  {"fourier", {{"frequency", Json::object()}, {"N", 5}, {"independence", {{"h", 1.0}}}}}}
                 .dump();
    }
    auto r = run({"eval", "--config", cfg.string(), "--out", out.string()});
    REQUIRE(r.code == 0);
    CHECK(r.out.empty());
    std::ifstream in(out);
    const auto j = Json::parse(in);
    CHECK(std::abs(value_of(j) - riemann_zeta(3.0)) < 1e-10);

    // flags override file values
    r = run({"eval", "--config", cfg.string(), "--params", R"({"s": 4})"});
    REQUIRE(r.code == 0);
    CHECK(std::abs(value_of(Json::parse(r.out)) - std::pow(pi, 4) / 90) < 1e-10);

    CHECK(run({"fourier", "--config", cfg.string()}).code == 0);
    CHECK(run({"eval", "--config", temp_path("missing.json").string()}).code == 2);
    std::filesystem::remove(cfg);
    std::filesystem::remove(out);
}

TEST_CASE("json round trips") {
    for (const auto& spec : {EulerProductSpec::riemann(1000), EulerProductSpec::dirichlet_l(5, 2, 1000),
                             EulerProductSpec::riemann(1000).without_primes({2, 3}),
                             EulerProductSpec::custom({{2, {{0.5, 1}, {Complex(0, 0.25), 2}}}, {7, {{-1.0, 1}}}},
                                                      {1.0, 0.0, 0.5}, 50)
                                 .without_primes({7})})
        CHECK(io::spec_from_json(io::spec_to_json(spec)) == spec);

    const auto w = sample_torus_stream(5, 2, 30, 20);
    const auto compact = io::torus_point_to_json(w);
    CHECK_FALSE(compact.contains("omega2"));
    CHECK(io::torus_point_from_json(compact) == w);
    const auto rotated = rotate(w, 0.5, 0.3);
    const auto expl = io::torus_point_to_json(rotated);
    CHECK(expl.contains("omega2"));
    CHECK(io::torus_point_from_json(expl).omega1 == rotated.omega1);
    CHECK(io::torus_point_from_json(expl).omega2 == rotated.omega2);

    const auto ind = IndependenceSpec::rational(3, 2);
    CHECK(io::independence_from_json({{"mode", "rational_exp"}, {"a", 3}, {"b", 2}}) == ind);
    CHECK_THROWS_AS(io::independence_from_json({{"mode", "rational_exp"}, {"h", 1.0}}), DomainError);

    const MetricSpec m{{0.6, 0.9, -1, 1}, 3, 8};
    CHECK(io::metric_from_json(io::metric_to_json(m)) == m);
    CHECK(io::sequence_from_json(io::sequence_to_json(PeriodicSequence({1.0, Complex(0, 2)}))) ==
          PeriodicSequence({1.0, Complex(0, 2)}));
    CHECK(io::sequence_from_json(Json::array({1, 1, 1})).period() == 1);
    CHECK_THROWS_AS(io::complex_from_json("x", "z"), DomainError);
    CHECK_THROWS_AS(io::rect_from_json(Json::array({1, 0, 0, 1})), DomainError);
}
