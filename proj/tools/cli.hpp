#pragma once

// Command-line front end. `run` holds all the logic so that tests can drive
// it with in-memory streams; main.cpp only forwards argv.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <limits>
#include <optional>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include <asianlns/asianlns.hpp>

namespace asianlns::cli {

inline constexpr int exit_ok = 0;
inline constexpr int exit_invalid = 2;
inline constexpr int exit_numerical = 3;

inline constexpr int csv_schema_version = 1;

using json = nlohmann::ordered_json;
using Cell = std::variant<std::monostate, long long, double, std::string>;

struct Report {
  json config;
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;
  std::vector<std::string> diagnostics;
};

struct Options {
  std::string command;
  double r = 0.05, sigma = 0.5, T = 1.0, S0 = 2.0, K = 2.0;
  std::vector<int> N;
  double mu = std::numeric_limits<double>::quiet_NaN();
  double nu2 = std::numeric_limits<double>::quiet_NaN();
  std::string method = "auto";
  std::string precision = "auto";
  long long paths = 200000;
  double dt = 1e-3;
  unsigned long long seed = 42;
  int threads = 0;  // 0: ASIANLNS_THREADS or 1
  std::string format = "table";
  std::string output;
  bool with_mc = false;
  bool timings = false;
  bool reference = false;
  double grid_min = std::numeric_limits<double>::quiet_NaN();
  double grid_max = std::numeric_limits<double>::quiet_NaN();
  int points = 200;
  std::vector<double> sigma_grid;
};

namespace detail {

inline std::string format_double(double v, const char* fmt) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  std::snprintf(buf, sizeof buf, fmt, v);
  return buf;
}

inline std::string exact(double v) { return format_double(v, "%.17g"); }

inline std::string human(double v) {
  if (v == 0) return "0";
  const double a = std::abs(v);
  if (a >= 1e-3 && a < 1e6) return format_double(v, "%.5g");
  return format_double(v, "%.3e");
}

inline std::string csv_quote(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string q = "\"";
  for (char c : s) {
    if (c == '"') q += '"';
    q += c;
  }
  return q + "\"";
}

inline std::string cell_text(const Cell& c, bool exact_numbers) {
  return std::visit(
      [&](const auto& v) -> std::string {
        using V = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<V, std::monostate>) return "";
        else if constexpr (std::is_same_v<V, long long>) return std::to_string(v);
        else if constexpr (std::is_same_v<V, double>) return exact_numbers ? exact(v) : human(v);
        else return v;
      },
      c);
}

inline json cell_json(const Cell& c) {
  return std::visit(
      [](const auto& v) -> json {
        using V = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<V, std::monostate>) return nullptr;
        else if constexpr (std::is_same_v<V, double>) return std::isfinite(v) ? json(v) : json(nullptr);
        else return v;
      },
      c);
}

inline std::string config_value_text(const json& v) {
  if (v.is_number_float()) return exact(v.get<double>());
  if (v.is_string()) return v.get<std::string>();
  if (v.is_array()) {
    std::string s;
    for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + config_value_text(v[i]);
    return s;
  }
  return v.dump();
}

inline void render(const Report& rep, const std::string& format, std::ostream& out) {
  if (format == "json") {
    json j;
    j["config"] = rep.config;
    j["results"] = json::array();
    for (const auto& row : rep.rows) {
      json o;
      for (std::size_t i = 0; i < rep.columns.size(); ++i) o[rep.columns[i]] = cell_json(row[i]);
      j["results"].push_back(o);
    }
    j["diagnostics"] = rep.diagnostics;
    out << j.dump(2) << "\n";
    return;
  }
  if (format == "csv") {
    out << "# asianlns csv schema " << csv_schema_version << "\n";
    for (const auto& [k, v] : rep.config.items()) out << "# " << k << "=" << config_value_text(v) << "\n";
    for (std::size_t i = 0; i < rep.columns.size(); ++i) out << (i ? "," : "") << rep.columns[i];
    out << "\n";
    for (const auto& row : rep.rows) {
      for (std::size_t i = 0; i < row.size(); ++i) out << (i ? "," : "") << csv_quote(cell_text(row[i], true));
      out << "\n";
    }
    return;
  }
  // Human-readable table.
  for (const auto& [k, v] : rep.config.items()) out << "# " << k << " = " << config_value_text(v) << "\n";
  std::vector<std::vector<std::string>> cells;
  std::vector<std::size_t> width;
  for (const auto& c : rep.columns) width.push_back(c.size());
  for (const auto& row : rep.rows) {
    std::vector<std::string> line;
    for (std::size_t i = 0; i < row.size(); ++i) {
      line.push_back(cell_text(row[i], false));
      width[i] = std::max(width[i], line.back().size());
    }
    cells.push_back(std::move(line));
  }
  auto emit = [&](const std::vector<std::string>& line) {
    for (std::size_t i = 0; i < line.size(); ++i) {
      out << (i ? "  " : "");
      out << std::string(width[i] - line[i].size(), ' ') << line[i];
    }
    out << "\n";
  };
  emit(rep.columns);
  for (const auto& line : cells) emit(line);
}

inline BasisMethod parse_method(const std::string& s) {
  if (s == "auto") return BasisMethod::automatic;
  if (s == "cholesky" || s == "cholesky_scaled") return BasisMethod::cholesky_scaled;
  if (s == "recurrence") return BasisMethod::recurrence;
  throw InvalidArgument("unknown --method '" + s + "' (auto, cholesky, recurrence)");
}

inline Precision parse_precision(const std::string& s) {
  if (s == "auto") return Precision::automatic;
  if (s == "double") return Precision::double_precision;
  if (s == "quad") return Precision::quad_precision;
  throw InvalidArgument("unknown --precision '" + s + "' (auto, double, quad)");
}

inline int default_threads() {
  if (const char* env = std::getenv("ASIANLNS_THREADS")) {
    const int t = std::atoi(env);
    if (t >= 1) return t;
  }
  return 1;
}

inline MarketParams market_of(const Options& o) { return MarketParams{o.r, o.sigma, o.T, o.S0, o.K}; }

inline std::optional<WeightParams> explicit_weight(const Options& o) {
  const bool has_mu = !std::isnan(o.mu);
  const bool has_nu2 = !std::isnan(o.nu2);
  if (has_mu != has_nu2) throw InvalidArgument("--mu and --nu2 must be given together");
  if (!has_mu) return std::nullopt;
  WeightParams w{o.mu, o.nu2};
  w.validate();
  return w;
}

inline PricingOptions pricing_options(const Options& o, int N) {
  PricingOptions p;
  p.N = N;
  p.weight = explicit_weight(o);
  p.method = parse_method(o.method);
  p.precision = parse_precision(o.precision);
  return p;
}

inline McConfig mc_config(const Options& o) {
  McConfig c;
  c.paths = o.paths;
  c.dt = o.dt;
  c.seed = o.seed;
  c.batches = o.threads > 0 ? o.threads : default_threads();
  return c;
}

inline json market_json(const MarketParams& m) {
  return json{{"r", m.r}, {"sigma", m.sigma}, {"T", m.T}, {"S0", m.S0}, {"K", m.K}};
}

inline void add_mc_config(json& cfg, const Options& o) {
  cfg["paths"] = o.paths;
  cfg["dt"] = o.dt;
  cfg["seed"] = o.seed;
}

inline void add_warnings(Report& rep, const std::vector<std::string>& warnings) {
  for (const auto& w : warnings)
    if (std::find(rep.diagnostics.begin(), rep.diagnostics.end(), w) == rep.diagnostics.end())
      rep.diagnostics.push_back(w);
}

inline std::vector<int> orders_or(const Options& o, std::vector<int> fallback) {
  std::vector<int> N = o.N.empty() ? std::move(fallback) : o.N;
  for (int n : N)
    if (n < 0 || n > max_order)
      throw InvalidArgument("N=" + std::to_string(n) + " outside [0, " + std::to_string(max_order) + "]");
  return N;
}

inline Report cmd_price(const Options& o) {
  const MarketParams market = market_of(o);
  market.validate();
  const std::vector<int> Ns = orders_or(o, {10, 15, 20});
  const int Nmax = *std::max_element(Ns.begin(), Ns.end());
  const SeriesApproximation a = price(market, pricing_options(o, Nmax));

  Report rep;
  rep.config = {{"command", "price"}};
  rep.config.update(market_json(market));
  rep.config["N"] = Ns;
  rep.config["mu"] = a.weight.mu;
  rep.config["nu2"] = a.weight.nu2;
  rep.config["method"] = o.method;
  rep.config["precision"] = o.precision;
  rep.config["format"] = o.format;
  rep.columns = {"N", "price", "eps_F", "delta", "method", "precision"};
  for (int n : Ns) {
    rep.rows.push_back({static_cast<long long>(n), a.partial_price(n), a.eps_F_by_order[n], a.convergence_delta(n),
                        std::string(to_string(a.method_used)), std::string(to_string(a.precision_used))});
  }
  add_warnings(rep, a.warnings);
  return rep;
}

inline Report cmd_bench(const Options& o) {
  Report rep;
  rep.config = {{"command", "bench"}};
  rep.config["method"] = o.method;
  rep.config["precision"] = o.precision;
  rep.config["with_mc"] = o.with_mc;
  rep.config["timings"] = o.timings;
  rep.config["reference"] = o.reference;
  if (o.with_mc) add_mc_config(rep.config, o);
  rep.config["format"] = o.format;
  rep.columns = {"case", "r", "sigma", "T", "S0", "K", "LNS10", "LNS15", "LNS20"};
  if (o.with_mc) rep.columns.insert(rep.columns.end(), {"MC_lo", "MC_hi"});
  if (o.timings) rep.columns.push_back("ms");
  if (o.reference)
    rep.columns.insert(rep.columns.end(),
                       {"ref_LNS10", "ref_LNS15", "ref_LNS20", "ref_LS", "ref_EE", "ref_VEC", "ref_MC_lo", "ref_MC_hi"});
  rep.columns.push_back("status");

  for (const auto& c : benchmark_cases) {
    const MarketParams& m = c.market;
    std::vector<Cell> row{static_cast<long long>(c.id), m.r, m.sigma, m.T, m.S0, m.K};
    std::string status = "ok";
    try {
      for (int N : {10, 15}) row.push_back(price(m, pricing_options(o, N)).price);
      const auto t0 = std::chrono::steady_clock::now();
      const SeriesApproximation a = price(m, pricing_options(o, 20));
      const auto t1 = std::chrono::steady_clock::now();
      row.push_back(a.price);
      if (o.with_mc) {
        const McEstimate e = price_cv(m, mc_config(o));
        row.push_back(e.ci95.first);
        row.push_back(e.ci95.second);
      }
      if (o.timings) row.push_back(std::chrono::duration<double, std::milli>(t1 - t0).count());
      for (const auto& w : a.warnings) add_warnings(rep, {"case " + std::to_string(c.id) + ": " + w});
    } catch (const NumericalError& e) {
      status = "error: " + e.module() + ": " + e.what();
    }
    // Pad the columns of a failed case.
    const std::size_t computed = rep.columns.size() - 1 - (o.reference ? 8 : 0);
    while (row.size() < computed) row.emplace_back(std::monostate{});
    if (o.reference) {
      for (double v : {c.lns10, c.lns15, c.lns20, c.ls, c.ee, c.vec, c.mc_lo, c.mc_hi}) row.push_back(v);
    }
    row.push_back(status);
    if (status != "ok") rep.diagnostics.push_back("case " + std::to_string(c.id) + " failed: " + status);
    rep.rows.push_back(std::move(row));
  }
  return rep;
}

inline Report cmd_density(const Options& o) {
  const MarketParams market = market_of(o);
  market.validate();
  const std::vector<int> Ns = orders_or(o, {20});
  if (Ns.size() != 1) throw InvalidArgument("density takes a single --N");
  const int N = Ns.front();
  const SeriesApproximation a = price(market, pricing_options(o, N));
  const DensityApproximant g(a);
  const WeightParams& w = a.weight;

  // Default grid: central 99.9% of the weight.
  const double z = 3.2905267314918945;  // Phi^{-1}(0.9995)
  const double lo = std::isnan(o.grid_min) ? std::exp(w.mu - z * w.nu()) : o.grid_min;
  const double hi = std::isnan(o.grid_max) ? std::exp(w.mu + z * w.nu()) : o.grid_max;
  if (!(lo > 0) || !(hi > lo)) throw InvalidArgument("density grid needs 0 < grid-min < grid-max");
  if (o.points < 2) throw InvalidArgument("density grid needs --points >= 2");
  std::vector<double> grid;
  for (int i = 0; i < o.points; ++i) grid.push_back(lo + (hi - lo) * i / (o.points - 1));

  Report rep;
  rep.config = {{"command", "density"}};
  rep.config.update(market_json(market));
  rep.config["N"] = N;
  rep.config["mu"] = w.mu;
  rep.config["nu2"] = w.nu2;
  rep.config["method"] = o.method;
  rep.config["precision"] = o.precision;
  rep.config["grid_min"] = lo;
  rep.config["grid_max"] = hi;
  rep.config["points"] = o.points;
  rep.config["with_mc"] = o.with_mc;
  if (o.with_mc) add_mc_config(rep.config, o);
  rep.config["format"] = o.format;
  rep.config["x_units"] = "A_T/S0";

  const int n4 = std::min(4, N);
  rep.columns = {"x", "g0", "g" + std::to_string(n4), "g" + std::to_string(N)};
  std::optional<DensityCvResult> mc;
  if (o.with_mc) {
    mc = density_cv(market, mc_config(o), grid);
    rep.columns.insert(rep.columns.end(), {"mc", "mc_se"});
  }
  for (std::size_t i = 0; i < grid.size(); ++i) {
    std::vector<Cell> row{grid[i], g.evaluate(grid[i], 0), g.evaluate(grid[i], n4), g.evaluate(grid[i], N)};
    if (mc) {
      row.push_back(mc->cv[i].value);
      row.push_back(mc->cv[i].std_error);
    }
    rep.rows.push_back(std::move(row));
  }
  add_warnings(rep, a.warnings);
  return rep;
}

inline Report cmd_errbound(const Options& o) {
  const MarketParams base = market_of(o);
  base.validate();
  const std::vector<int> Ns = orders_or(o, {20});
  const int Nmax = *std::max_element(Ns.begin(), Ns.end());
  const std::vector<double> sigmas = o.sigma_grid.empty() ? std::vector<double>{o.sigma} : o.sigma_grid;

  Report rep;
  rep.config = {{"command", "errbound"}};
  rep.config.update(market_json(base));
  rep.config["sigma_grid"] = sigmas;
  rep.config["N"] = Ns;
  if (const auto w = explicit_weight(o)) {
    rep.config["mu"] = w->mu;
    rep.config["nu2"] = w->nu2;
  }
  rep.config["method"] = o.method;
  rep.config["precision"] = o.precision;
  add_mc_config(rep.config, o);
  rep.config["format"] = o.format;
  rep.columns = {"sigma", "tau",   "N",     "mu",       "nu2",      "price", "eps_F", "eps_l", "eps_l_se",
                 "bound", "bound_lo", "bound_hi", "sre_bound", "mc_price", "mc_se", "sre"};

  const McConfig cfg = mc_config(o);
  for (double sigma : sigmas) {
    MarketParams m = base;
    m.sigma = sigma;
    m.validate();
    const SeriesApproximation a = price(m, pricing_options(o, Nmax));
    const MarketParams norm = m.normalized();
    add_warnings(rep, a.warnings);

    const PathSet paths = simulate(norm, cfg, 0);
    McEstimate mc = price_cv(paths);
    mc.value *= m.S0;
    mc.std_error *= m.S0;

    std::optional<McEstimate> ell_norm;
    if (a.weight.square_integrable_for(norm)) {
      ell_norm = likelihood_norm_sq(paths, simulate(norm, cfg, 1), a.weight);
    } else {
      char buf[128];
      std::snprintf(buf, sizeof buf, "sigma=%.4g: nu^2 <= sigma^2 T / 2, ||l||_w is infinite; bound not computed",
                    sigma);
      add_warnings(rep, {buf});
    }
    for (int n : Ns) {
      const double p = a.partial_price(n);
      std::vector<Cell> row{sigma, m.tau(), static_cast<long long>(n), a.weight.mu, a.weight.nu2, p,
                            a.eps_F_by_order[n]};
      if (ell_norm) {
        const ErrorBound b = error_bound(a, *ell_norm, n);
        const double rel = b.bound / p;
        row.insert(row.end(), {b.eps_l, b.eps_l_se, b.bound, b.ci95.first, b.ci95.second, rel * rel});
      } else {
        for (int k = 0; k < 6; ++k) row.emplace_back(std::monostate{});
      }
      const double rel_err = (mc.value - p) / p;
      row.insert(row.end(), {mc.value, mc.std_error, rel_err * rel_err});
      rep.rows.push_back(std::move(row));
    }
  }
  return rep;
}

// Pulls --config out of the arguments (before CLI11 sees them) so that the
// file supplies defaults and explicit flags override it.
inline std::optional<std::string> find_config_path(const std::vector<std::string>& args) {
  for (std::size_t i = 0; i < args.size(); ++i) {
    if (args[i] == "--config" && i + 1 < args.size()) return args[i + 1];
    if (args[i].rfind("--config=", 0) == 0) return args[i].substr(9);
  }
  return std::nullopt;
}

inline void apply_config(const json& j_in, Options& o) {
  const json& j = j_in.contains("config") ? j_in.at("config") : j_in;
  auto get = [&](const char* key, auto& dst) {
    if (j.contains(key) && !j.at(key).is_null()) j.at(key).get_to(dst);
  };
  get("command", o.command);
  get("r", o.r);
  get("sigma", o.sigma);
  get("T", o.T);
  get("S0", o.S0);
  get("K", o.K);
  if (j.contains("N")) {
    if (j.at("N").is_array()) j.at("N").get_to(o.N);
    else if (j.at("N").is_number_integer()) o.N = {j.at("N").get<int>()};
  }
  get("mu", o.mu);
  get("nu2", o.nu2);
  get("method", o.method);
  get("precision", o.precision);
  get("paths", o.paths);
  get("dt", o.dt);
  get("seed", o.seed);
  get("format", o.format);
  get("with_mc", o.with_mc);
  get("timings", o.timings);
  get("reference", o.reference);
  get("grid_min", o.grid_min);
  get("grid_max", o.grid_max);
  get("points", o.points);
  get("sigma_grid", o.sigma_grid);
}

} // namespace detail

/// Runs one CLI invocation; args exclude the program name.
inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Options o;
  std::string config_path;

  CLI::App app{"Arithmetic Asian option pricing with a log-normal polynomial series"};
  app.name("asianlns");
  app.require_subcommand(0, 1);
  app.add_option("--config", config_path, "JSON config (a previous run's output or its config object)");

  auto market_flags = [&](CLI::App* sub) {
    sub->add_option("--r", o.r, "short rate");
    sub->add_option("--sigma", o.sigma, "volatility");
    sub->add_option("--T", o.T, "expiry in years");
    sub->add_option("--S0", o.S0, "initial stock price");
    sub->add_option("--K", o.K, "strike");
  };
  auto series_flags = [&](CLI::App* sub) {
    sub->add_option("--mu", o.mu, "weight location (default: first-moment match)");
    sub->add_option("--nu2", o.nu2, "weight variance (default: sigma^2 T / 2 + 1e-4)");
    sub->add_option("--method", o.method, "basis construction: auto, cholesky, recurrence");
    sub->add_option("--precision", o.precision, "arithmetic: auto, double, quad");
  };
  auto mc_flags = [&](CLI::App* sub) {
    sub->add_option("--paths", o.paths, "Monte-Carlo paths");
    sub->add_option("--dt", o.dt, "Monte-Carlo time step");
    sub->add_option("--seed", o.seed, "Monte-Carlo seed");
    sub->add_option("--threads", o.threads, "worker threads (default: $ASIANLNS_THREADS or 1)");
  };
  auto output_flags = [&](CLI::App* sub) {
    sub->add_option("--format", o.format, "table, csv or json")->check(CLI::IsMember({"table", "csv", "json"}));
    sub->add_option("--output", o.output, "write to this file instead of stdout");
    sub->fallthrough();
  };

  CLI::App* price_cmd = app.add_subcommand("price", "price one option for a list of truncation orders");
  market_flags(price_cmd);
  price_cmd->add_option("--N", o.N, "truncation orders (default 10,15,20)")->delimiter(',');
  series_flags(price_cmd);
  output_flags(price_cmd);

  CLI::App* bench_cmd = app.add_subcommand("bench", "the seven standard benchmark cases");
  series_flags(bench_cmd);
  bench_cmd->add_flag("--with-mc", o.with_mc, "append control-variate MC 95% intervals");
  bench_cmd->add_flag("--timings", o.timings, "append the LNS20 wall-clock time in ms");
  bench_cmd->add_flag("--reference", o.reference, "append published reference values");
  mc_flags(bench_cmd);
  output_flags(bench_cmd);

  CLI::App* density_cmd = app.add_subcommand("density", "export g^(0), g^(4), g^(N) on a grid");
  market_flags(density_cmd);
  density_cmd->add_option("--N", o.N, "truncation order (default 20)");
  series_flags(density_cmd);
  density_cmd->add_option("--grid-min", o.grid_min, "first grid point (A_T/S0 units)");
  density_cmd->add_option("--grid-max", o.grid_max, "last grid point (A_T/S0 units)");
  density_cmd->add_option("--points", o.points, "number of grid points");
  density_cmd->add_flag("--with-mc", o.with_mc, "append the control-variate MC density and its SE");
  mc_flags(density_cmd);
  output_flags(density_cmd);

  CLI::App* errbound_cmd = app.add_subcommand("errbound", "projection error bound and MC error");
  market_flags(errbound_cmd);
  errbound_cmd->add_option("--N", o.N, "truncation orders (default 20)")->delimiter(',');
  errbound_cmd->add_option("--sigma-grid", o.sigma_grid, "volatilities to sweep")->delimiter(',');
  series_flags(errbound_cmd);
  mc_flags(errbound_cmd);
  output_flags(errbound_cmd);

  try {
    if (const auto path = detail::find_config_path(args)) {
      std::ifstream in(*path);
      if (!in) throw InvalidArgument("cannot read config file " + *path);
      json j;
      try {
        j = json::parse(in);
      } catch (const json::exception& e) {
        throw InvalidArgument("config file " + *path + ": " + e.what());
      }
      try {
        detail::apply_config(j, o);
      } catch (const json::exception& e) {
        throw InvalidArgument("config file " + *path + ": " + e.what());
      }
    }
    // CLI11 wants the arguments in reverse order.
    std::vector<std::string> rev(args.rbegin(), args.rend());
    try {
      app.parse(rev);
    } catch (const CLI::CallForHelp& e) {
      out << app.help();
      return exit_ok;
    } catch (const CLI::ParseError& e) {
      err << "error: " << e.what() << "\n";
      return exit_invalid;
    }
    for (CLI::App* sub : app.get_subcommands()) o.command = sub->get_name();
    if (o.command.empty()) {
      err << "error: a command is required (price, bench, density, errbound)\n" << app.help();
      return exit_invalid;
    }
    if (o.format != "table" && o.format != "csv" && o.format != "json")
      throw InvalidArgument("unknown format '" + o.format + "'");

    Report rep;
    if (o.command == "price") rep = detail::cmd_price(o);
    else if (o.command == "bench") rep = detail::cmd_bench(o);
    else if (o.command == "density") rep = detail::cmd_density(o);
    else if (o.command == "errbound") rep = detail::cmd_errbound(o);
    else throw InvalidArgument("unknown command '" + o.command + "'");

    for (const auto& d : rep.diagnostics) err << "warning: " << d << "\n";
    if (o.output.empty()) {
      detail::render(rep, o.format, out);
    } else {
      std::ofstream file(o.output);
      if (!file) throw InvalidArgument("cannot write " + o.output);
      detail::render(rep, o.format, file);
    }
    return exit_ok;
  } catch (const NumericalError& e) {
    err << "error: numerical failure in module " << e.module() << ": " << e.what() << "\n";
    return exit_numerical;
  } catch (const InvalidArgument& e) {
    err << "error: " << e.what() << "\n";
    return exit_invalid;
  }
}

} // namespace asianlns::cli
