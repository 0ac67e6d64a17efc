#pragma once

// JSON serialization of queries and reports, suite config parsing, and the
// plain-text coefficient format: one coefficient per line as "re im", the
// line number minus one being the index.

#include <bohr/harness.hpp>
#include <bohr/inequality.hpp>
#include <bohr/operators.hpp>
#include <bohr/radius.hpp>
#include <bohr/series.hpp>
#include <bohr/weights.hpp>

#include <nlohmann/json.hpp>

#include <charconv>
#include <cmath>
#include <cstdio>
#include <istream>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

namespace bohr {

using json = nlohmann::ordered_json;

inline constexpr const char* tool_version = "1.0.0";

/// 17 significant digits, enough to round-trip any double.
inline std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

// ---------------------------------------------------------------------------
// Coefficient files

inline void write_coefficients(std::ostream& os, const CoefficientSeries& s) {
  for (const auto& c : s.coefficients()) os << format_double(c.real()) << ' ' << format_double(c.imag()) << '\n';
}

namespace detail {

inline std::string_view trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

inline double parse_double(std::string_view tok, int line) {
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
  if (ec != std::errc{} || ptr != tok.data() + tok.size())
    throw std::invalid_argument("line " + std::to_string(line) + ": cannot parse '" + std::string(tok) + "'");
  return v;
}

}  // namespace detail

inline CoefficientSeries read_coefficients(std::istream& is) {
  std::vector<complex> c;
  std::string raw;
  int line = 0, blank_run = 0;
  while (std::getline(is, raw)) {
    ++line;
    const auto s = detail::trim(raw);
    if (s.empty()) {
      ++blank_run;
      continue;
    }
    if (blank_run > 0) throw std::invalid_argument("line " + std::to_string(line) + ": blank line inside coefficient list");
    const auto sep = s.find_first_of(" \t");
    if (sep == std::string_view::npos)
      throw std::invalid_argument("line " + std::to_string(line) + ": expected two fields \"re im\"");
    const double re = detail::parse_double(s.substr(0, sep), line);
    const double im = detail::parse_double(detail::trim(s.substr(sep)), line);
    c.emplace_back(re, im);
  }
  if (c.empty()) throw std::invalid_argument("coefficient file holds no coefficients");
  return CoefficientSeries(std::move(c));
}

// ---------------------------------------------------------------------------
// Weight families

struct FamilyArgs {
  int N = 1;
  double beta = 1.0;
  double alpha = 0.0;
  int m = 1;
  double delta = 0.0;
};

inline WeightFamily make_family(const std::string& name, const FamilyArgs& a) {
  WeightFamily f;
  if (name == "power-tail") f = PowerTail{a.N};
  else if (name == "even") f = EvenPowers{};
  else if (name == "odd") f = OddPowers{};
  else if (name == "linear-plus-one") f = LinearPlusOne{a.N};
  else if (name == "linear") f = Linear{a.N};
  else if (name == "quadratic") f = Quadratic{a.N};
  else if (name == "beta-cesaro") f = BetaCesaro{a.beta};
  else if (name == "alpha-cesaro") f = AlphaCesaro{a.alpha};
  else if (name == "bernardi") f = Bernardi{a.m, a.delta};
  else throw std::invalid_argument("unknown weight family '" + name + "'");
  validate(f);
  return f;
}

inline json family_to_json(const WeightFamily& family) {
  json j;
  j["name"] = family_name(family);
  std::visit(
      [&j](const auto& f) {
        using T = std::decay_t<decltype(f)>;
        if constexpr (detail::is_threshold_family<T>) j["N"] = f.N;
        else if constexpr (std::is_same_v<T, BetaCesaro>) j["beta"] = f.beta;
        else if constexpr (std::is_same_v<T, AlphaCesaro>) j["alpha"] = f.alpha;
        else if constexpr (std::is_same_v<T, Bernardi>) {
          j["m"] = f.m;
          j["delta"] = f.delta;
        }
      },
      family);
  return j;
}

inline WeightFamily family_from_json(const json& j) {
  if (!j.is_object() || !j.contains("name") || !j["name"].is_string())
    throw std::invalid_argument("family entry needs a string \"name\"");
  FamilyArgs a;
  auto num = [&j](const char* key, auto& out) {
    if (!j.contains(key)) return;
    if (!j[key].is_number()) throw std::invalid_argument(std::string("family field \"") + key + "\" must be a number");
    using T = std::decay_t<decltype(out)>;
    if constexpr (std::is_integral_v<T>) {
      if (!j[key].is_number_integer()) throw std::invalid_argument(std::string("family field \"") + key + "\" must be an integer");
    }
    out = j[key].get<T>();
  };
  num("N", a.N);
  num("beta", a.beta);
  num("alpha", a.alpha);
  num("m", a.m);
  num("delta", a.delta);
  return make_family(j["name"].get<std::string>(), a);
}

inline OperatorSpec operator_from_family(const WeightFamily& f) {
  if (const auto* b = std::get_if<BetaCesaro>(&f)) return *b;
  if (const auto* a = std::get_if<AlphaCesaro>(&f)) return *a;
  if (const auto* l = std::get_if<Bernardi>(&f)) return *l;
  throw std::invalid_argument(describe(f) + " is not an operator family");
}

// ---------------------------------------------------------------------------
// Results

inline json complex_to_json(complex c) { return json::array({c.real(), c.imag()}); }

inline json finite_or_null(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }

inline json to_json(const RadiusResult& r) {
  return json{{"radius", r.radius},
              {"bracket", json::array({r.bracket.lo, r.bracket.hi})},
              {"residual", r.residual},
              {"sharp_window_ok", r.sharp_window_ok},
              {"evaluations", r.evaluations}};
}

inline json to_json(const BoundedFunction& f) {
  return std::visit(
      [](const auto& fn) -> json {
        using T = std::decay_t<decltype(fn)>;
        if constexpr (std::is_same_v<T, Extremal>) {
          return json{{"kind", "extremal"}, {"gamma", fn.domain.gamma()}, {"a", fn.a}};
        } else if constexpr (std::is_same_v<T, BlaschkeComposed>) {
          json zs = json::array();
          for (const auto& z : fn.zeros) zs.push_back(complex_to_json(z));
          return json{{"kind", "blaschke"},
                      {"gamma", fn.domain.gamma()},
                      {"zeros", zs},
                      {"rotation", complex_to_json(fn.rotation)}};
        } else {
          json cs = json::array();
          for (const auto& c : fn.series.coefficients()) cs.push_back(complex_to_json(c));
          return json{{"kind", "coefficients"}, {"coefficients", cs}};
        }
      },
      f);
}

inline json to_json(const BohrReport& r) {
  return json{{"radii", r.radii},
              {"bohr_sums", r.bohr_sums},
              {"phi0_values", r.phi0_values},
              {"truncation_bounds", r.truncation_bounds},
              {"max_excess", finite_or_null(r.max_excess)},
              {"tolerance", r.tolerance},
              {"membership_violation", r.membership_violation},
              {"pass", r.pass}};
}

inline json to_json(const SharpnessEvidence& e) {
  return json{{"r", e.r},
              {"a", e.a},
              {"margin", e.margin},
              {"first_order_prediction", e.first_order_prediction},
              {"window_ok", e.window_ok},
              {"one_minus_a", e.one_minus_a},
              {"richardson_ratios", e.richardson_ratios},
              {"decrease_factors", e.decrease_factors},
              {"richardson_ok", e.richardson_ok},
              {"status", e.status}};
}

inline json to_json(const SuiteCell& c) {
  json j;
  j["query"] = json{{"family", family_to_json(c.family)}, {"gamma", c.gamma}, {"p", c.p}};
  j["radius"] = c.radius ? json(c.radius->radius) : json(nullptr);
  if (c.skipped()) j["skipped"] = c.skip_reason;
  j["n_pass"] = c.n_pass;
  j["n_fail"] = c.n_fail;
  j["worst_excess"] = finite_or_null(c.worst_excess);
  j["worst_function_descriptor"] = c.worst_function ? to_json(*c.worst_function) : json(nullptr);
  if (c.worst_function) j["worst_sample"] = c.worst_sample;
  if (!c.controls.empty()) {
    json ctl = json::array();
    for (const auto& x : c.controls)
      ctl.push_back(json{{"descriptor", x.descriptor},
                         {"max_excess", finite_or_null(x.max_excess)},
                         {"membership_violation", x.membership_violation},
                         {"failed", x.failed}});
    j["negative_controls"] = ctl;
  }
  if (c.sharpness) j["sharpness"] = to_json(*c.sharpness);
  return j;
}

inline json to_json(const SuiteReport& r) {
  json cells = json::array();
  for (const auto& c : r.cells) cells.push_back(to_json(c));
  return json{{"kind", r.kind},
              {"seed", r.seed},
              {"cells", cells},
              {"overall_pass", r.overall_pass},
              {"controls_detected", r.controls_detected}};
}

// ---------------------------------------------------------------------------
// Suite config: {seed, samples_per_cell, gamma_grid, p_grid, families[], tolerance}
// plus optional grid_points, truncation_order, negative_controls.

inline json to_json(const SuiteConfig& c) {
  json fams = json::array();
  for (const auto& f : c.families) fams.push_back(family_to_json(f));
  return json{{"seed", c.seed},
              {"samples_per_cell", c.samples_per_cell},
              {"gamma_grid", c.gamma_grid},
              {"p_grid", c.p_grid},
              {"families", fams},
              {"tolerance", c.tolerance},
              {"grid_points", c.grid_points},
              {"truncation_order", c.truncation_order},
              {"negative_controls", c.negative_controls}};
}

inline SuiteConfig suite_config_from_json(const json& j) {
  if (!j.is_object()) throw std::invalid_argument("suite config must be a JSON object");
  for (const char* key : {"seed", "samples_per_cell", "gamma_grid", "p_grid", "families", "tolerance"})
    if (!j.contains(key)) throw std::invalid_argument(std::string("suite config is missing \"") + key + "\"");
  static const std::vector<std::string> known{"seed",     "samples_per_cell", "gamma_grid",      "p_grid",
                                              "families", "tolerance",        "grid_points",     "truncation_order",
                                              "negative_controls"};
  for (const auto& [key, _] : j.items())
    if (std::find(known.begin(), known.end(), key) == known.end())
      throw std::invalid_argument("unknown suite config key \"" + key + "\"");

  SuiteConfig c;
  try {
    if (!j["seed"].is_number_unsigned() && !(j["seed"].is_number_integer() && j["seed"].get<long long>() >= 0))
      throw std::invalid_argument("seed must be a non-negative integer");
    c.seed = j["seed"].get<std::uint64_t>();
    if (!j["samples_per_cell"].is_number_integer()) throw std::invalid_argument("samples_per_cell must be an integer");
    c.samples_per_cell = j["samples_per_cell"].get<int>();
    auto grid = [&](const char* key) {
      if (!j[key].is_array()) throw std::invalid_argument(std::string(key) + " must be an array of numbers");
      std::vector<double> v;
      for (const auto& x : j[key]) {
        if (!x.is_number()) throw std::invalid_argument(std::string(key) + " must be an array of numbers");
        v.push_back(x.get<double>());
      }
      return v;
    };
    c.gamma_grid = grid("gamma_grid");
    c.p_grid = grid("p_grid");
    if (!j["families"].is_array()) throw std::invalid_argument("families must be an array");
    c.families.clear();
    for (const auto& f : j["families"]) c.families.push_back(family_from_json(f));
    if (!j["tolerance"].is_number()) throw std::invalid_argument("tolerance must be a number");
    c.tolerance = j["tolerance"].get<double>();
    if (j.contains("grid_points")) c.grid_points = j["grid_points"].get<int>();
    if (j.contains("truncation_order")) c.truncation_order = j["truncation_order"].get<int>();
    if (j.contains("negative_controls")) c.negative_controls = j["negative_controls"].get<bool>();
  } catch (const nlohmann::json::exception& e) {
    throw std::invalid_argument(std::string("malformed suite config: ") + e.what());
  }
  validate(c);
  return c;
}

}  // namespace bohr
