#include "d2dcache/cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <fstream>
#include <ostream>
#include <sstream>

#include "d2dcache/cachedist.hpp"
#include "d2dcache/config.hpp"
#include "d2dcache/csv.hpp"
#include "d2dcache/errors.hpp"
#include "d2dcache/geometry.hpp"
#include "d2dcache/harmonic.hpp"
#include "d2dcache/simulator.hpp"
#include "d2dcache/theory.hpp"

namespace d2dcache {

namespace {

struct CurveOptions {
  int points = 100;
  double rho2 = 0.0;
  double rho_prime = 0.0;
  long long slots = 1000;
};

CsvRow base_row(const ExperimentConfig& cfg, double gamma) {
  CsvRow r;
  r.gamma = gamma;
  r.m = cfg.m;
  r.n = cfg.n;
  r.M = cfg.M;
  r.delta = cfg.delta;
  r.K = cfg.reuse();
  return r;
}

std::vector<double> outage_grid(int points) {
  if (points < 1) throw ConfigError("points: must be at least 1");
  std::vector<double> grid;
  for (int i = 1; i <= points; ++i) grid.push_back(static_cast<double>(i) / points);
  return grid;
}

void emit_rows(const ExperimentConfig& cfg, const std::vector<CsvRow>& rows, std::ostream& out) {
  if (cfg.output.empty()) write_csv(rows, out);
  else write_csv(rows, cfg.output);
}

void run_sweep(const ExperimentConfig& cfg, std::ostream& out, std::ostream& err) {
  const SimulationOptions opts{cfg.exclude_self, cfg.workers};
  std::vector<CsvRow> rows;
  for (double gamma : cfg.gammas) {
    const ZipfDemand demand = zipf_pmf(gamma, cfg.m);
    const SweepResult res = sweep_cluster_sizes(cfg.network(), demand, cfg.g_c, cfg.realizations,
                                                cfg.seed, cfg.reuse(), opts);
    for (const auto& w : res.warnings) err << "warning: " << w << '\n';
    for (const TradeoffPoint& p : res.points) {
      CsvRow r = base_row(cfg, gamma);
      r.g_c = p.g_c;
      r.p_out_sim = p.p_out;
      r.t_min_norm = p.t_min_norm;
      r.t_mean_norm = p.t_mean_norm;
      r.std_err_p = p.std_err_p;
      r.std_err_t = p.std_err_t;
      r.realizations = p.realizations;
      r.seed = p.seed;
      rows.push_back(r);
    }
  }
  emit_rows(cfg, rows, out);
}

void run_curves(const ExperimentConfig& cfg, const CurveOptions& co, bool achievable,
                std::ostream& out) {
  const std::vector<double> grid = outage_grid(co.points);
  std::vector<CsvRow> rows;
  for (double gamma : cfg.gammas) {
    const TheoryParams params = TheoryParams::make(gamma, cfg.M, cfg.delta);
    std::vector<CurvePoint> curve;
    if (achievable) {
      AchievableOptions ao;
      if (co.rho2 > 0.0) ao.rho2 = co.rho2;
      curve = achievable_curve(params, cfg.C, cfg.reuse(), cfg.m, cfg.n, grid, ao);
    } else {
      OuterBoundOptions oo;
      if (co.rho_prime > 0.0) oo.rho_prime = co.rho_prime;
      curve = outer_bound_curve(params, cfg.C, cfg.m, cfg.n, grid, oo);
    }
    for (const CurvePoint& p : curve) {
      if (!p.feasible) continue;
      CsvRow r = base_row(cfg, gamma);
      r.p_out_theory = p.p;
      r.t_theory_norm = p.t / cfg.C;
      rows.push_back(r);
    }
  }
  emit_rows(cfg, rows, out);
}

void run_simulate(const ExperimentConfig& cfg, std::ostream& out) {
  const double gamma = cfg.gammas.front();
  const int g_c = cfg.g_c.front();
  const ZipfDemand demand = zipf_pmf(gamma, cfg.m);
  const ClusterLayout layout = build_clusters(cfg.n, g_c, cfg.reuse());
  const CacheDistribution dist = cluster_cache_distribution(demand, cfg.M, g_c);
  const TradeoffPoint p = estimate_tradeoff_point(cfg.network(), layout, dist, demand,
                                                  cfg.realizations, cfg.seed,
                                                  {cfg.exclude_self, cfg.workers});
  nlohmann::ordered_json j;
  j["gamma"] = gamma;
  j["m"] = cfg.m;
  j["n"] = cfg.n;
  j["M"] = cfg.M;
  j["delta"] = cfg.delta;
  j["K"] = cfg.reuse();
  j["g_c"] = p.g_c;
  j["p_out_sim"] = p.p_out;
  j["t_min_norm"] = p.t_min_norm;
  j["t_mean_norm"] = p.t_mean_norm;
  j["std_err_p"] = p.std_err_p;
  j["std_err_t"] = p.std_err_t;
  j["p_out_theory"] = nullptr;
  j["t_theory_norm"] = nullptr;
  j["realizations"] = p.realizations;
  j["seed"] = p.seed;
  const std::string text = j.dump(2) + "\n";
  if (cfg.output.empty()) {
    out << text;
  } else {
    std::ofstream f(cfg.output, std::ios::binary);
    if (!(f << text)) throw ConfigError("output: cannot write " + cfg.output);
  }
}

void run_cachedist(const ExperimentConfig& cfg, std::ostream& out) {
  const double gamma = cfg.gammas.front();
  const int g_c = cfg.g_c.front();
  const ZipfDemand demand = zipf_pmf(gamma, cfg.m);
  const CacheDistribution dist = optimal_cache_distribution(demand, cfg.M, g_c);
  const double e = static_cast<double>(cfg.M) * (g_c - 1) - 1.0;
  std::ostringstream s;
  s << "f,Pr,z,Pc\n";
  for (int f = 1; f <= demand.m(); ++f) {
    const double pr = demand.pmf(f);
    s << f << ',' << format_decimal(pr) << ',' << format_decimal(std::pow(pr, 1.0 / e)) << ','
      << format_decimal(dist.pc[static_cast<std::size_t>(f - 1)]) << '\n';
  }
  if (cfg.output.empty()) {
    out << s.str();
  } else {
    std::ofstream file(cfg.output, std::ios::binary);
    if (!(file << s.str())) throw ConfigError("output: cannot write " + cfg.output);
  }
}

void run_verify(const ExperimentConfig& cfg, const CurveOptions& co, std::ostream& out) {
  if (co.slots < 1) throw ConfigError("slots: must be at least 1");
  const double gamma = cfg.gammas.front();
  const int g_c = cfg.g_c.front();
  const ZipfDemand demand = zipf_pmf(gamma, cfg.m);
  const ClusterLayout layout = build_clusters(cfg.n, g_c, cfg.reuse());
  const CacheDistribution dist = cluster_cache_distribution(demand, cfg.M, g_c);
  const ProtocolCheckReport rep = check_protocol_model(cfg.network(), layout, dist, demand,
                                                       co.slots, cfg.seed, cfg.exclude_self);
  out << rep.violations << " violations\n";
  out << "slots " << rep.slots << ", links " << rep.links << ", K " << cfg.reuse() << '\n';
  for (const Violation& v : rep.examples) out << "  " << v.describe() << '\n';
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Throughput-outage experiments for clustered D2D caching networks", "d2dcache"};
  app.require_subcommand(1, 1);
  app.fallthrough();

  ExperimentConfig cfg;
  CurveOptions co;
  int K = 0;
  bool include_self = false;

  app.set_config("--config", "", "Flat key=value configuration file");
  app.add_option("--gamma", cfg.gammas, "Zipf exponents")->delimiter(',');
  app.add_option("-m,--files", cfg.m, "Library size");
  app.add_option("-n,--nodes", cfg.n, "Number of nodes (perfect square)");
  app.add_option("-M,--cache", cfg.M, "Files per node cache");
  app.add_option("--delta", cfg.delta, "Protocol model guard factor");
  app.add_option("-C,--link-rate", cfg.C, "Link rate in bits per slot");
  app.add_option("-K,--reuse", K, "Spatial reuse factor (default from delta)");
  app.add_option("--g_c", cfg.g_c, "Cluster sizes (perfect squares)")->delimiter(',');
  app.add_option("-R,--realizations", cfg.realizations, "Monte Carlo realizations per point");
  app.add_option("--seed", cfg.seed, "Base seed");
  app.add_flag("--include-self", include_self, "Count the user's own cache as a source");
  app.add_option("--workers", cfg.workers, "Worker threads (0 = automatic)");
  app.add_option("-o,--output", cfg.output, "Output path (default stdout)");

  auto* sweep = app.add_subcommand("sweep", "Simulate one tradeoff point per (gamma, g_c)");
  auto* theory = app.add_subcommand("theory", "Achievable leading-term curve");
  theory->add_option("--points", co.points, "Outage grid size");
  theory->add_option("--rho2", co.rho2, "Third-regime parameter (default b)");
  auto* bounds = app.add_subcommand("bounds", "Outer-bound leading-term curve");
  bounds->add_option("--points", co.points, "Outage grid size");
  bounds->add_option("--rho-prime", co.rho_prime, "First-line knee parameter");
  auto* simulate = app.add_subcommand("simulate", "One tradeoff point as JSON");
  auto* cachedist = app.add_subcommand("cachedist", "Optimal caching distribution as CSV");
  auto* verify = app.add_subcommand("verify", "Check sampled schedules against the protocol model");
  verify->add_option("--slots", co.slots, "Number of sampled slots");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n\n" << app.help();
    return 1;
  }

  try {
    if (K != 0) cfg.K = K;
    cfg.exclude_self = !include_self;
    cfg.validate(!*cachedist);
    if (*sweep) run_sweep(cfg, out, err);
    else if (*theory) run_curves(cfg, co, true, out);
    else if (*bounds) run_curves(cfg, co, false, out);
    else if (*simulate) run_simulate(cfg, out);
    else if (*cachedist) run_cachedist(cfg, out);
    else if (*verify) run_verify(cfg, co, out);
    return 0;
  } catch (const ConfigError& e) {
    err << "config error: " << e.what() << '\n';
    return 1;
  } catch (const DomainError& e) {
    err << "config error: " << e.what() << '\n';
    return 1;
  } catch (const NumericalError& e) {
    err << "numerical error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  }
}

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  std::vector<std::string> args;
  for (int i = 1; i < argc; ++i) args.emplace_back(argv[i]);
  return run_cli(args, out, err);
}

}  // namespace d2dcache
