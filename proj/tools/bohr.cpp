// bohr: command-line front end for the Bohr radius library.
//
// Exit codes: 0 success or pass, 1 verification failure, 2 usage error,
// 3 no root in (0, 1).

#include <bohr/bohr.hpp>
#include <bohr/io.hpp>

#include <CLI11.hpp>

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace {

using bohr::json;

constexpr int exit_fail = 1;
constexpr int exit_usage = 2;
constexpr int exit_no_root = 3;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string command_echo(int argc, char** argv) {
  std::string s;
  for (int i = 1; i < argc; ++i) {
    if (i > 1) s += ' ';
    s += argv[i];
  }
  return s;
}

json record(const std::string& command, const json& parameters, std::optional<std::uint64_t> seed = std::nullopt) {
  json j;
  j["command"] = command;
  j["version"] = bohr::tool_version;
  j["seed"] = seed ? json(*seed) : json(nullptr);
  j["parameters"] = parameters;
  return j;
}

void emit(const json& j) { std::cout << j.dump(2) << '\n'; }

bohr::complex parse_complex(std::string s) {
  s.erase(std::remove_if(s.begin(), s.end(), [](unsigned char c) { return std::isspace(c); }), s.end());
  if (s.empty()) throw UsageError("empty complex number");
  auto number = [](const std::string& t) {
    std::size_t pos = 0;
    double v = 0.0;
    try {
      v = std::stod(t, &pos);
    } catch (const std::exception&) {
      throw UsageError("cannot parse number '" + t + "'");
    }
    if (pos != t.size()) throw UsageError("cannot parse number '" + t + "'");
    return v;
  };
  if (s.back() != 'i') return number(s);
  s.pop_back();
  std::size_t split = std::string::npos;
  for (std::size_t i = s.size(); i-- > 1;)
    if ((s[i] == '+' || s[i] == '-') && s[i - 1] != 'e' && s[i - 1] != 'E') {
      split = i;
      break;
    }
  auto imag = [&](const std::string& t) { return t.empty() || t == "+" ? 1.0 : t == "-" ? -1.0 : number(t); };
  if (split == std::string::npos) return {0.0, imag(s)};
  return {number(s.substr(0, split)), imag(s.substr(split))};
}

bohr::CoefficientSeries read_coefficient_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot open coefficient file '" + path + "'");
  try {
    return bohr::read_coefficients(in);
  } catch (const std::invalid_argument& e) {
    throw UsageError(path + ": " + e.what());
  }
}

struct ParsedFunction {
  bohr::BoundedFunction function;
  std::optional<std::uint64_t> seed;
};

// constant:<c> | extremal:<a> | blaschke:<seed> | blaschke:<z1,z2,...> | coeffs:<file>
ParsedFunction parse_function(const std::string& desc, bohr::DomainParams domain) {
  const auto colon = desc.find(':');
  if (colon == std::string::npos) throw UsageError("function descriptor needs the form kind:value");
  const std::string kind = desc.substr(0, colon);
  const std::string value = desc.substr(colon + 1);
  if (kind == "constant") return {bohr::Raw{bohr::CoefficientSeries{parse_complex(value)}}, std::nullopt};
  if (kind == "extremal") return {bohr::Extremal(domain, std::real(parse_complex(value))), std::nullopt};
  if (kind == "coeffs") return {bohr::Raw{read_coefficient_file(value)}, std::nullopt};
  if (kind == "blaschke") {
    if (!value.empty() && std::all_of(value.begin(), value.end(), [](unsigned char c) { return std::isdigit(c); })) {
      const std::uint64_t seed = std::stoull(value);
      bohr::Rng rng(seed, 0);
      return {bohr::random_bounded_function(domain, rng), seed};
    }
    std::vector<bohr::complex> zeros;
    std::stringstream ss(value);
    for (std::string tok; std::getline(ss, tok, ',');) zeros.push_back(parse_complex(tok));
    return {bohr::BlaschkeComposed(domain, std::move(zeros)), std::nullopt};
  }
  throw UsageError("unknown function kind '" + kind + "'");
}

struct FamilyOptions {
  std::string name = "power-tail";
  std::vector<int> N{1};
  std::vector<double> beta{1.0};
  std::vector<double> alpha{0.0};
  std::vector<int> m{1};
  std::vector<double> delta{0.0};

  void add(CLI::App* app, bool multi) {
    app->add_option("--family", name, "Weight family")
        ->check(CLI::IsMember({"power-tail", "even", "odd", "linear-plus-one", "linear", "quadratic", "beta-cesaro",
                               "alpha-cesaro", "bernardi"}));
    auto* n = app->add_option("--N", N, "Threshold N");
    auto* b = app->add_option("--beta", beta, "beta-Cesaro parameter");
    auto* a = app->add_option("--alpha", alpha, "alpha-Cesaro parameter");
    auto* mm = app->add_option("--m", m, "Bernardi m");
    auto* d = app->add_option("--delta", delta, "Bernardi delta");
    for (auto* o : {n, b, a, mm, d}) multi ? o->expected(1, 1000) : o->expected(1);
  }

  // Every combination of the listed parameter values that the family uses.
  std::vector<bohr::WeightFamily> expand() const {
    std::vector<bohr::FamilyArgs> args;
    if (name == "power-tail" || name == "linear-plus-one" || name == "linear" || name == "quadratic")
      for (int v : N) args.push_back({.N = v});
    else if (name == "beta-cesaro")
      for (double v : beta) args.push_back({.beta = v});
    else if (name == "alpha-cesaro")
      for (double v : alpha) args.push_back({.alpha = v});
    else if (name == "bernardi")
      for (int mv : m)
        for (double dv : delta) args.push_back({.m = mv, .delta = dv});
    else
      args.push_back({});
    std::vector<bohr::WeightFamily> out;
    for (const auto& a : args) {
      try {
        out.push_back(bohr::make_family(name, a));
      } catch (const std::invalid_argument& e) {
        throw UsageError(e.what());
      }
    }
    return out;
  }

  bohr::WeightFamily single() const { return expand().front(); }
};

bohr::DomainParams domain_or_usage(double gamma) {
  try {
    return bohr::DomainParams(gamma);
  } catch (const std::exception& e) {
    throw UsageError(e.what());
  }
}

void check_p(double p) {
  if (!(p > 0.0 && p <= 2.0)) throw UsageError("p must lie in (0, 2]");
}

// ---------------------------------------------------------------------------

int cmd_radius(const std::string& echo, const FamilyOptions& fo, double gamma, double p, double tol) {
  const auto family = fo.single();
  const auto domain = domain_or_usage(gamma);
  check_p(p);
  if (!(tol > 0.0)) throw UsageError("tol must be positive");
  const auto res = bohr::minimal_root(bohr::RadiusQuery{family, domain, p}, tol);
  json j = record(echo, json{{"family", bohr::family_to_json(family)}, {"gamma", gamma}, {"p", p}, {"tol", tol}});
  const json fields = bohr::to_json(res);
  for (const auto& [k, v] : fields.items()) j[k] = v;
  j["tolerance"] = tol;
  emit(j);
  return 0;
}

std::vector<double> range(double lo, double hi, double step) {
  if (!(step > 0.0)) throw UsageError("step must be positive");
  std::vector<double> v;
  for (long i = 0;; ++i) {
    const double x = lo + static_cast<double>(i) * step;
    if (x > hi + 1e-9 * step) break;
    v.push_back(x);
  }
  return v;
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string q = "\"";
  for (char c : s) q += c == '"' ? std::string("\"\"") : std::string(1, c);
  return q + '"';
}

struct TableRow {
  bohr::WeightFamily family;
  double gamma, p;
  std::optional<bohr::RadiusResult> result;
  std::string error;
};

int cmd_table(const FamilyOptions& fo, std::vector<double> gammas, std::vector<double> ps, double tol,
              const std::string& format) {
  const auto families = fo.expand();
  std::vector<TableRow> rows;
  for (double g : gammas)
    for (double p : ps)
      for (const auto& f : families) rows.push_back({f, g, p, std::nullopt, {}});
  bohr::detail::parallel_for(rows.size(), [&](std::size_t i) {
    auto& row = rows[i];
    try {
      row.result = bohr::minimal_root(bohr::RadiusQuery{row.family, bohr::DomainParams(row.gamma), row.p}, tol);
    } catch (const std::exception& e) {
      row.error = e.what();
    }
  });

  if (format == "csv") {
    std::cout << "family,params,gamma,p,radius,residual,sharp_window_ok,error\n";
    for (const auto& r : rows) {
      std::cout << bohr::family_name(r.family) << ',' << csv_field(bohr::family_params(r.family)) << ','
                << bohr::format_double(r.gamma) << ',' << bohr::format_double(r.p) << ',';
      if (r.result)
        std::cout << bohr::format_double(r.result->radius) << ',' << bohr::format_double(r.result->residual) << ','
                  << (r.result->sharp_window_ok ? "true" : "false") << ',';
      else
        std::cout << ",,,";
      std::cout << csv_field(r.error) << '\n';
    }
  } else {
    for (const auto& r : rows) {
      json j{{"family", bohr::family_name(r.family)},
             {"params", bohr::family_params(r.family)},
             {"gamma", r.gamma},
             {"p", r.p},
             {"radius", r.result ? json(r.result->radius) : json(nullptr)},
             {"residual", r.result ? json(r.result->residual) : json(nullptr)},
             {"sharp_window_ok", r.result ? json(r.result->sharp_window_ok) : json(nullptr)},
             {"tolerance", tol},
             {"version", bohr::tool_version}};
      if (r.result) j["bracket"] = json::array({r.result->bracket.lo, r.result->bracket.hi});
      j["error"] = r.error.empty() ? json(nullptr) : json(r.error);
      std::cout << j.dump() << '\n';
    }
  }
  return 0;
}

int cmd_verify(const std::string& echo, const std::string& fn_desc, const FamilyOptions& fo, double gamma, double p,
               int grid, int order, double r_beyond, double check_tol) {
  const auto family = fo.single();
  const auto domain = domain_or_usage(gamma);
  check_p(p);
  if (grid < 2) throw UsageError("grid needs at least 2 points");
  if (order < 1) throw UsageError("order must be >= 1");
  if (!(r_beyond >= 0.0)) throw UsageError("r-beyond must be >= 0");
  ParsedFunction fn = [&] {
    try {
      return parse_function(fn_desc, domain);
    } catch (const UsageError&) {
      throw;
    } catch (const std::exception& e) {
      throw UsageError(e.what());
    }
  }();
  const bohr::RadiusQuery q{family, domain, p};
  const auto root = bohr::minimal_root(q);
  const double upto = root.radius + r_beyond;
  if (!(upto < 1.0)) throw UsageError("radius + r-beyond must stay below 1");
  const auto rep = bohr::verify_up_to_radius(fn.function, q, upto, grid, order, check_tol);
  json j = record(echo,
                  json{{"function", fn_desc},
                       {"family", bohr::family_to_json(family)},
                       {"gamma", gamma},
                       {"p", p},
                       {"grid", grid},
                       {"order", order},
                       {"r_beyond", r_beyond}},
                  fn.seed);
  j["function"] = bohr::to_json(fn.function);
  j["radius"] = bohr::to_json(root);
  j["verified_up_to"] = upto;
  j["truncation_order"] = order;
  j["report"] = bohr::to_json(rep);
  j["pass"] = rep.pass;
  emit(j);
  return rep.pass ? 0 : exit_fail;
}

struct OperatorOptions {
  std::optional<double> beta, alpha;
  std::vector<double> bernardi;
  std::string in, out;
  double r = 0.5;
  double gamma = 0.0, p = 1.0, tol = 1e-12;

  bohr::OperatorSpec spec() const {
    const int given = (beta ? 1 : 0) + (alpha ? 1 : 0) + (bernardi.empty() ? 0 : 1);
    if (given != 1) throw UsageError("give exactly one of --beta-cesaro, --alpha-cesaro, --bernardi");
    bohr::OperatorSpec s;
    if (beta) s = bohr::BetaCesaro{*beta};
    else if (alpha) s = bohr::AlphaCesaro{*alpha};
    else {
      const double m = bernardi[0];
      if (m != std::floor(m) || std::abs(m) > 1e6) throw UsageError("Bernardi m must be an integer");
      s = bohr::Bernardi{static_cast<int>(m), bernardi[1]};
    }
    try {
      bohr::validate(s);
    } catch (const std::exception& e) {
      throw UsageError(e.what());
    }
    return s;
  }
};

json operator_params(const bohr::OperatorSpec& s) { return bohr::family_to_json(bohr::weight_family(s)); }

int cmd_operator_apply(const std::string& echo, const OperatorOptions& o) {
  const auto spec = o.spec();
  const auto in = read_coefficient_file(o.in);
  bohr::CoefficientSeries out;
  try {
    out = bohr::apply_coefficient_form(spec, in);
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  if (o.out.empty() || o.out == "-") {
    bohr::write_coefficients(std::cout, out);
    return 0;
  }
  std::ofstream os(o.out);
  if (!os) throw UsageError("cannot write '" + o.out + "'");
  bohr::write_coefficients(os, out);
  os.close();
  json j = record(echo, json{{"operator", operator_params(spec)}, {"in", o.in}, {"out", o.out}});
  j["order"] = out.order();
  emit(j);
  return 0;
}

int cmd_operator_bound(const std::string& echo, const OperatorOptions& o) {
  const auto spec = o.spec();
  if (!(o.r > 0.0 && o.r < 1.0)) throw UsageError("r must lie in (0, 1)");
  json j = record(echo, json{{"operator", operator_params(spec)}, {"r", o.r}});
  j["bound"] = bohr::operator_bound(spec, o.r);
  emit(j);
  return 0;
}

int cmd_operator_radius(const std::string& echo, const OperatorOptions& o) {
  const auto spec = o.spec();
  const auto domain = domain_or_usage(o.gamma);
  check_p(o.p);
  const auto res = bohr::operator_bohr_radius(spec, domain, o.p, o.tol);
  json j = record(echo, json{{"operator", operator_params(spec)}, {"gamma", o.gamma}, {"p", o.p}, {"tol", o.tol}});
  const json fields = bohr::to_json(res.result);
  for (const auto& [k, v] : fields.items()) j[k] = v;
  j["equation_residual"] = res.equation_residual ? json(*res.equation_residual) : json(nullptr);
  j["tolerance"] = o.tol;
  emit(j);
  return 0;
}

int cmd_suite(const std::string& echo, const std::string& config_path, const std::string& kind,
              const std::string& out_path) {
  bohr::SuiteConfig cfg = bohr::default_suite_config();
  if (!config_path.empty()) {
    std::ifstream in(config_path);
    if (!in) throw UsageError("cannot open config '" + config_path + "'");
    try {
      cfg = bohr::suite_config_from_json(json::parse(in));
    } catch (const std::exception& e) {
      throw UsageError(std::string("malformed config: ") + e.what());
    }
  }
  if (const char* env = std::getenv("BOHR_SEED"); env && *env) {
    try {
      std::size_t pos = 0;
      cfg.seed = std::stoull(env, &pos);
      if (pos != std::string(env).size()) throw std::invalid_argument(env);
    } catch (const std::exception&) {
      throw UsageError(std::string("BOHR_SEED must be a non-negative integer, got '") + env + "'");
    }
  }

  json j = record(echo, json{{"config", config_path.empty() ? json(nullptr) : json(config_path)}, {"kind", kind}},
                  cfg.seed);
  j["suite_config"] = bohr::to_json(cfg);
  bool pass = true;
  if (kind == "all" || kind == "inequality") {
    const auto rep = bohr::run_inequality_suite(cfg);
    j["inequality"] = bohr::to_json(rep);
    pass = pass && rep.overall_pass;
  }
  if (kind == "all" || kind == "sharpness") {
    const auto rep = bohr::run_sharpness_suite(cfg);
    j["sharpness"] = bohr::to_json(rep);
    pass = pass && rep.overall_pass;
  }
  j["overall_pass"] = pass;
  if (out_path.empty()) {
    emit(j);
  } else {
    std::ofstream os(out_path);
    if (!os) throw UsageError("cannot write '" + out_path + "'");
    os << j.dump(2) << '\n';
    std::cout << json{{"out", out_path}, {"overall_pass", pass}}.dump() << '\n';
  }
  return pass ? 0 : exit_fail;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Generalized Bohr radii on shifted disks"};
  app.set_version_flag("--version", bohr::tool_version);
  app.require_subcommand(1);
  const std::string echo = command_echo(argc, argv);

  double gamma = 0.0, p = 1.0, tol = 1e-12;

  auto* radius = app.add_subcommand("radius", "Sharp radius for one weight family");
  FamilyOptions radius_family;
  radius_family.add(radius, false);
  radius->add_option("--gamma", gamma, "Domain parameter in [0, 1)");
  radius->add_option("--p", p, "Exponent of |a_0| in (0, 2]");
  radius->add_option("--tol", tol, "Bisection tolerance");

  auto* table = app.add_subcommand("table", "Radii over a (gamma, p) sweep");
  FamilyOptions table_family;
  table_family.add(table, true);
  double g_min = 0.0, g_max = 0.0, g_step = 0.1, p_min = 1.0, p_max = 1.0, p_step = 0.5;
  std::string format = "csv";
  table->add_option("--gamma-min", g_min);
  table->add_option("--gamma-max", g_max);
  table->add_option("--gamma-step", g_step);
  table->add_option("--p-min", p_min);
  table->add_option("--p-max", p_max);
  table->add_option("--p-step", p_step);
  table->add_option("--tol", tol, "Bisection tolerance");
  table->add_option("--format", format)->check(CLI::IsMember({"csv", "jsonl"}));

  auto* verify = app.add_subcommand("verify", "Check the Bohr inequality for one function up to the radius");
  FamilyOptions verify_family;
  verify_family.add(verify, false);
  std::string fn_desc;
  int grid = 32, order = bohr::default_truncation_order;
  double r_beyond = 0.0, check_tol = 1e-9;
  verify->add_option("--fn", fn_desc, "constant:c | extremal:a | blaschke:seed | blaschke:z1,z2 | coeffs:file")
      ->required();
  verify->add_option("--gamma", gamma, "Domain parameter in [0, 1)");
  verify->add_option("--p", p, "Exponent of |a_0| in (0, 2]");
  verify->add_option("--grid", grid, "Radii checked in [0, radius]");
  verify->add_option("--order", order, "Truncation order of the expansion");
  verify->add_option("--r-beyond", r_beyond, "Extend the check past the radius");
  verify->add_option("--tolerance", check_tol, "Allowed excess over phi_0");

  auto* op = app.add_subcommand("operator", "beta-Cesaro, alpha-Cesaro and Bernardi operators");
  OperatorOptions oo;
  op->add_option("--beta-cesaro", oo.beta);
  op->add_option("--alpha-cesaro", oo.alpha);
  op->add_option("--bernardi", oo.bernardi, "m delta")->expected(2);
  op->require_subcommand(1);
  auto* op_apply = op->add_subcommand("apply", "Transform a coefficient file");
  op_apply->add_option("--in", oo.in)->required();
  op_apply->add_option("--out", oo.out, "Output file, stdout when omitted");
  auto* op_bound = op->add_subcommand("bound", "Sup-norm bound at |z| = r");
  op_bound->add_option("--r", oo.r)->required();
  auto* op_radius = op->add_subcommand("radius", "Bohr-type radius of the operator");
  op_radius->add_option("--gamma", oo.gamma);
  op_radius->add_option("--p", oo.p);
  op_radius->add_option("--tol", oo.tol);

  auto* suite = app.add_subcommand("suite", "Inequality and sharpness suites");
  std::string config_path, suite_kind = "all", out_path;
  suite->add_option("--config", config_path, "Suite config JSON; built-in defaults when omitted");
  suite->add_option("--kind", suite_kind)->check(CLI::IsMember({"all", "inequality", "sharpness"}));
  suite->add_option("--out", out_path, "Write the report here instead of stdout");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return exit_usage;
  }

  try {
    if (*radius) return cmd_radius(echo, radius_family, gamma, p, tol);
    if (*table) {
      const auto gs = g_min > g_max ? std::vector<double>{} : range(g_min, g_max, g_step);
      const auto ps = p_min > p_max ? std::vector<double>{} : range(p_min, p_max, p_step);
      return cmd_table(table_family, gs, ps, tol, format);
    }
    if (*verify) return cmd_verify(echo, fn_desc, verify_family, gamma, p, grid, order, r_beyond, check_tol);
    if (*op_apply) return cmd_operator_apply(echo, oo);
    if (*op_bound) return cmd_operator_bound(echo, oo);
    if (*op_radius) return cmd_operator_radius(echo, oo);
    if (*suite) return cmd_suite(echo, config_path, suite_kind, out_path);
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return exit_usage;
  } catch (const bohr::no_root_error& e) {
    std::cerr << "no root: " << e.what() << '\n';
    return exit_no_root;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return exit_usage;
  } catch (const std::domain_error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return exit_usage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return exit_fail;
  }
  return exit_usage;
}
