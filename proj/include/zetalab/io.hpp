#pragma once

#include <string>
#include <variant>

#include <json.hpp>

#include "zetalab/smoothing.hpp"
#include "zetalab/torus.hpp"
#include "zetalab/universality.hpp"
#include "zetalab/zetas.hpp"

namespace zetalab::io {

using Json = nlohmann::json;

/// Parsing problems (wrong type, missing or unknown keys) surface as DomainError.

/// Accepts a number or [re, im]; writes [re, im].
Complex complex_from_json(const Json& j, const std::string& where);
Json complex_to_json(Complex z);

/// Throws DomainError naming the first key of j not in allowed.
void check_keys(const Json& j, std::initializer_list<const char*> allowed, const std::string& where);

/// {"family": "riemann" | "dirichlet_l" | "custom", "prime_bound", "modulus", "index",
///  "factors": {"p": [{"a": z, "f": 1}, ...]}, "growth": {"c1", "alpha_g", "beta_g"}, "remove_primes": [...]}
EulerProductSpec spec_from_json(const Json& j);
Json spec_to_json(const EulerProductSpec& spec);

PeriodicSequence sequence_from_json(const Json& j);
Json sequence_to_json(const PeriodicSequence& seq);

/// {"alpha": a, "sequence": [...]}; a missing sequence means B = (1).
ZetaContext zeta_context_from_json(const Json& j);
Json zeta_context_to_json(const ZetaContext& ctx);

/// A phi spec or a Hurwitz-type function ({"family": "hurwitz" | "periodic_hurwitz", "alpha", "sequence"}).
using FunctionSpec = std::variant<EulerProductSpec, ZetaContext>;
FunctionSpec function_from_json(const Json& j);
std::string function_name(const FunctionSpec& f);

/// {"mode": "generic_real_h", "h": h} or {"mode": "rational_exp", "a": a, "b": b}.
IndependenceSpec independence_from_json(const Json& j);
Json independence_to_json(const IndependenceSpec& ind);

/// [sigma_lo, sigma_hi, t_lo, t_hi]
Rect rect_from_json(const Json& j);
Json rect_to_json(const Rect& r);

MetricSpec metric_from_json(const Json& j);
Json metric_to_json(const MetricSpec& m);

/// Compact form {"seed", "stream"?, "P_max", "M_max"} when the point is a regenerable sample,
/// explicit angle arrays otherwise (or when explicit is requested).
Json torus_point_to_json(const TorusPoint& w, bool explicit_angles = false);
TorusPoint torus_point_from_json(const Json& j);

Json density_report_to_json(const DensityReport& r, std::optional<std::uint64_t> seed);
Json steuding_report_to_json(const SteudingReport& r);
Json fourier_to_json(const FourierValue& v, std::int64_t n);

/// Writes a double the way the JSON output does (shortest round-trip form).
std::string format_double(double x);

}  // namespace zetalab::io
