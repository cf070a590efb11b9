// Command-line front door: closed-form evolutions, stochastic simulation,
// estimator reports and the verification suite, driven by one JSON config
// with dotted --set overrides.  Exit codes: 0 success, 1 check failure,
// 2 configuration error.

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "dimlab/ensemble_io.hpp"
#include "dimlab/estimators.hpp"
#include "dimlab/evolution.hpp"
#include "dimlab/rng.hpp"
#include "dimlab/verify.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace dimlab;

namespace {

json default_config() {
  return json{
      {"params", {{"m", 1.0}, {"sigma", 2.0}, {"d", 1}}},
      {"window", {{"lower", {0.0}}, {"upper", {10.0}}, {"boundary", "periodic"}}},
      {"evolve",
       {{"initial", {{"kind", "poisson"}, {"intensity", 1.0}}},
        {"times", {0.0, 0.5, 1.0, 2.0}},
        {"probe_sizes", {0, 1, 2, 3}},
        {"probes_per_size", 2},
        {"probe_seed", 7},
        {"norm_C", 0.0}}},
      {"simulate",
       {{"initial", {{"kind", "poisson"}, {"intensity", 1.0}}},
        {"t_end", 1.0},
        {"replicas", 1000},
        {"seed", 42},
        {"scheme", "exact"}}},
      {"resolvent", {{"z", {0.5, 1.0, 3.0}}, {"probe_sizes", {0, 1, 2, 3}}, {"probe_seed", 7}}},
      {"report", {{"orders", {1, 2}}, {"gap_edges", json::array()}}},
      {"verify", {{"checks", "all"}, {"inject_corrupt_invariant", false}}},
      {"out", "out"},
      {"threads", 0}};
}

void merge_into(json& base, const json& overlay) {
  for (auto it = overlay.begin(); it != overlay.end(); ++it) {
    if (it->is_object() && base.contains(it.key()) && base[it.key()].is_object())
      merge_into(base[it.key()], *it);
    else
      base[it.key()] = *it;
  }
}

void apply_override(json& cfg, const std::string& assignment) {
  const auto eq = assignment.find('=');
  if (eq == std::string::npos)
    throw ConfigError("--set expects key=value, got: " + assignment);
  const std::string path = assignment.substr(0, eq);
  const std::string raw = assignment.substr(eq + 1);
  json value;
  try {
    value = json::parse(raw);
  } catch (const json::parse_error&) {
    value = raw;  // bare string
  }
  json* node = &cfg;
  std::size_t pos = 0;
  for (;;) {
    const auto dot = path.find('.', pos);
    const std::string key = path.substr(pos, dot - pos);
    if (key.empty()) throw ConfigError("--set: empty key segment in " + path);
    if (dot == std::string::npos) {
      (*node)[key] = value;
      return;
    }
    node = &(*node)[key];
    pos = dot + 1;
  }
}

ModelParams params_from(const json& cfg) {
  const json& p = cfg.at("params");
  return ModelParams(p.at("m").get<double>(), p.at("sigma").get<double>(), p.at("d").get<int>());
}

Window window_from(const json& cfg) {
  const json& w = cfg.at("window");
  return Window(Point(w.at("lower").get<std::vector<double>>()),
                Point(w.at("upper").get<std::vector<double>>()),
                w.at("boundary").get<std::string>() == "periodic" ? BoundaryMode::Periodic
                                                                  : BoundaryMode::Plain);
}

// Built-in initial correlation functions: poisson (intensity A), chain
// (nearest-neighbour correlated, genuinely non-Poisson), levels (values
// tabulated by cardinality).
SetFunction initial_correlation(const json& spec) {
  const std::string kind = spec.at("kind").get<std::string>();
  if (kind == "poisson") return coherent_state(spec.at("intensity").get<double>());
  if (kind == "chain") {
    const double A = spec.value("intensity", 1.0);
    const double eps = spec.value("eps", 0.25);
    const double ell = spec.value("ell", 0.5);
    return SetFunction(
        [A, eps, ell](const Configuration& eta) {
          double prod = 1.0;
          for (std::size_t i = 0; i < eta.size(); ++i) {
            prod *= A;
            if (i + 1 < eta.size()) {
              double d2 = 0.0;
              for (std::size_t c = 0; c < eta[i].dim(); ++c) {
                const double d = eta[i + 1][c] - eta[i][c];
                d2 += d * d;
              }
              prod *= 1.0 + eps * std::exp(-d2 / (ell * ell));
            }
          }
          return prod;
        },
        GrowthBound{1.0, A * (1.0 + eps)});
  }
  if (kind == "levels") {
    std::vector<double> values = spec.at("values").get<std::vector<double>>();
    if (values.empty()) throw ConfigError("levels initial: values must be non-empty");
    double growth = 1.0;
    for (std::size_t n = 1; n < values.size(); ++n)
      growth = std::max(growth, std::pow(std::abs(values[n]), 1.0 / static_cast<double>(n)));
    return SetFunction(
        [values](const Configuration& eta) {
          return eta.size() < values.size() ? values[eta.size()] : 0.0;
        },
        GrowthBound{std::abs(values[0]), growth});
  }
  throw ConfigError("unknown initial correlation kind: " + kind);
}

InitialLaw initial_law(const json& spec) {
  const std::string kind = spec.at("kind").get<std::string>();
  if (kind == "empty") return InitialLaw::empty();
  if (kind == "poisson") return InitialLaw::poisson(spec.at("intensity").get<double>());
  if (kind == "fixed") {
    std::vector<Point> pts;
    for (const auto& c : spec.at("points")) pts.emplace_back(c.get<std::vector<double>>());
    return InitialLaw::fixed(Configuration(std::move(pts)));
  }
  throw ConfigError("unknown initial law kind: " + kind);
}

std::vector<Configuration> probe_set(const Window& w, const std::vector<int>& sizes,
                                     int per_size, std::uint64_t seed) {
  std::vector<Configuration> probes;
  for (int n : sizes) {
    if (n < 0) throw ConfigError("probe size must be >= 0");
    if (n == 0) {
      probes.push_back(Configuration::empty());
      continue;
    }
    for (int c = 0; c < per_size; ++c) {
      CounterRng rng(seed, static_cast<std::uint64_t>(n), static_cast<std::uint64_t>(c));
      std::vector<Point> pts;
      for (int i = 0; i < n; ++i) pts.push_back(rng.uniform_point(w));
      probes.emplace_back(std::move(pts));
    }
  }
  return probes;
}

json probes_to_json(const std::vector<Configuration>& probes) {
  json out = json::array();
  for (std::size_t i = 0; i < probes.size(); ++i) {
    json pts = json::array();
    for (const Point& x : probes[i]) pts.push_back(x.to_vector());
    out.push_back(json{{"config_id", i}, {"size", probes[i].size()}, {"points", pts}});
  }
  return out;
}

void write_text(const fs::path& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw ConfigError("cannot open for writing: " + path.string());
  out << text;
}

int cmd_evolve(const json& cfg) {
  const json& ev = cfg.at("evolve");
  ModelParams params = params_from(cfg);
  Window w = window_from(cfg);
  SetFunction k0 = initial_correlation(ev.at("initial"));

  auto probes = probe_set(w, ev.at("probe_sizes").get<std::vector<int>>(),
                          ev.at("probes_per_size").get<int>(),
                          ev.at("probe_seed").get<std::uint64_t>());
  const double C = ev.at("norm_C").get<double>();
  const bool with_bound = C > 0.0;
  std::optional<SubPoissonBound> bound;
  if (with_bound) {
    if (!k0.bound()) throw ConfigError("norm_C set but the initial state declares no bound");
    double k0_norm = k0.bound()->norm_estimate;
    std::size_t max_size = 0;
    for (const auto& p : probes) max_size = std::max(max_size, p.size());
    for (std::size_t n = 1; n <= max_size; ++n)
      k0_norm = std::max(k0_norm, k0.bound()->norm_estimate *
                                      std::pow(k0.bound()->growth_constant / C,
                                               static_cast<double>(n)));
    bound = sub_poisson_bound(k0_norm, C, params);
  }

  std::ostringstream csv;
  csv << "t,config_id,k_value";
  if (with_bound) csv << ",bound_value";
  csv << "\n";
  for (double t : ev.at("times").get<std::vector<double>>()) {
    SetFunction kt = evolve_correlation(k0, t, params);
    for (std::size_t i = 0; i < probes.size(); ++i) {
      csv << format_number(t) << "," << i << "," << format_number(kt(probes[i]));
      if (with_bound)
        csv << ","
            << format_number(bound->at_time(t, static_cast<int>(probes[i].size())));
      csv << "\n";
    }
  }

  const fs::path out_dir(cfg.at("out").get<std::string>());
  fs::create_directories(out_dir);
  write_text(out_dir / "evolve.csv", csv.str());
  json sidecar{{"version", kVersion}, {"config", cfg}, {"probes", probes_to_json(probes)}};
  write_text(out_dir / "evolve.json", sidecar.dump(2) + "\n");
  std::cout << "evolve: wrote " << (out_dir / "evolve.csv").string() << "\n";
  return 0;
}

int cmd_simulate(const json& cfg) {
  const json& sim = cfg.at("simulate");
  SimConfig sc;
  sc.params = params_from(cfg);
  sc.window = window_from(cfg);
  sc.initial = initial_law(sim.at("initial"));
  sc.t_end = sim.at("t_end").get<double>();
  sc.replicas = sim.at("replicas").get<int>();
  sc.seed = sim.at("seed").get<std::uint64_t>();
  const std::string scheme = sim.at("scheme").get<std::string>();
  if (scheme == "exact")
    sc.scheme = SamplingScheme::ExactDecomposition;
  else if (scheme == "gillespie")
    sc.scheme = SamplingScheme::Gillespie;
  else
    throw ConfigError("unknown scheme: " + scheme);

  SampleEnsemble ens = sample(sc, cfg.at("threads").get<int>());

  const fs::path out_dir(cfg.at("out").get<std::string>());
  fs::create_directories(out_dir);
  write_ensemble_csv(ens, out_dir / "ensemble.csv");
  write_ensemble_sidecar(ens, out_dir / "ensemble.json");
  std::cout << "simulate: wrote " << (out_dir / "ensemble.csv").string() << " ("
            << ens.configs.size() << " replicas)\n";
  return 0;
}

int cmd_resolvent(const json& cfg) {
  const json& rv = cfg.at("resolvent");
  ModelParams params = params_from(cfg);
  Window w = window_from(cfg);
  SetFunction k = initial_correlation(
      rv.contains("initial") ? rv.at("initial") : cfg.at("evolve").at("initial"));
  auto probes = probe_set(w, rv.at("probe_sizes").get<std::vector<int>>(), 2,
                          rv.at("probe_seed").get<std::uint64_t>());

  std::ostringstream csv;
  csv << "z,config_id,value\n";
  for (double z : rv.at("z").get<std::vector<double>>()) {
    SetFunction Rk = resolvent_dual(k, z, params);
    for (std::size_t i = 0; i < probes.size(); ++i)
      csv << format_number(z) << "," << i << "," << format_number(Rk(probes[i])) << "\n";
  }

  const fs::path out_dir(cfg.at("out").get<std::string>());
  fs::create_directories(out_dir);
  write_text(out_dir / "resolvent.csv", csv.str());
  json sidecar{{"version", kVersion}, {"config", cfg}, {"probes", probes_to_json(probes)}};
  write_text(out_dir / "resolvent.json", sidecar.dump(2) + "\n");
  std::cout << "resolvent: wrote " << (out_dir / "resolvent.csv").string() << "\n";
  return 0;
}

int cmd_verify(const json& cfg) {
  verify::VerifyOptions opts;
  opts.threads = cfg.at("threads").get<int>();
  const json& v = cfg.at("verify");
  opts.corrupt_invariant = v.at("inject_corrupt_invariant").get<bool>();

  // "checks": "all" runs the full suite; an explicit list (possibly empty)
  // selects by name.
  std::vector<verify::CheckResult> results;
  bool run_any = true;
  if (v.at("checks").is_array()) {
    opts.only = v.at("checks").get<std::vector<std::string>>();
    if (opts.only.empty()) run_any = false;
    for (const std::string& name : opts.only) {
      auto names = verify::check_names();
      if (std::find(names.begin(), names.end(), name) == names.end())
        throw ConfigError("unknown verify check: " + name);
    }
  } else if (v.at("checks").get<std::string>() != "all") {
    throw ConfigError("verify.checks must be \"all\" or a list of names");
  }
  if (run_any) results = verify::run_checks(opts);
  bool all_pass = true;
  json checks = json::array();
  for (const auto& res : results) {
    all_pass = all_pass && res.pass;
    checks.push_back(json{{"name", res.name},
                          {"description", res.description},
                          {"pass", res.pass},
                          {"observed", res.observed},
                          {"tolerance", res.tolerance},
                          {"detail", res.detail}});
    std::cout << (res.pass ? "[PASS] " : "[FAIL] ") << res.name
              << "  observed=" << res.observed << " tol=" << res.tolerance << "\n";
  }
  json report{{"version", kVersion}, {"all_pass", all_pass}, {"checks", checks}};

  const fs::path out_dir(cfg.at("out").get<std::string>());
  fs::create_directories(out_dir);
  write_text(out_dir / "verify.json", report.dump(2) + "\n");
  std::cout << (all_pass ? "verify: all checks passed\n" : "verify: FAILURES present\n");
  return all_pass ? 0 : 1;
}

int cmd_report(const json& cfg, const std::string& in_dir) {
  const fs::path in = in_dir.empty() ? fs::path(cfg.at("out").get<std::string>())
                                     : fs::path(in_dir);
  SampleEnsemble ens = read_ensemble(in / "ensemble.csv", in / "ensemble.json");

  const json& rep = cfg.at("report");
  json moments = json::array();
  for (int order : rep.at("orders").get<std::vector<int>>()) {
    MomentEstimate est = factorial_moment(ens, order);
    moments.push_back(
        json{{"order", order}, {"estimate", est.estimate}, {"std_error", est.std_error}});
  }

  json report{{"version", kVersion},
              {"t", ens.t},
              {"replicas", ens.configs.size()},
              {"factorial_moments", moments}};

  const fs::path out_dir(cfg.at("out").get<std::string>());
  fs::create_directories(out_dir);

  std::vector<double> edges = rep.at("gap_edges").get<std::vector<double>>();
  if (!edges.empty()) {
    auto bins = gap_estimator(ens, edges);
    std::ostringstream csv;
    csv << "r_lo,r_hi,r_mid,v_hat,std_error,pair_count,empty\n";
    for (const GapBin& b : bins)
      csv << format_number(b.r_lo) << "," << format_number(b.r_hi) << ","
          << format_number(b.r_mid) << "," << format_number(b.v_hat) << ","
          << format_number(b.std_error) << "," << b.pair_count << "," << (b.empty ? 1 : 0)
          << "\n";
    write_text(out_dir / "report_gap.csv", csv.str());
    report["gap_csv"] = "report_gap.csv";
  }

  write_text(out_dir / "report.json", report.dump(2) + "\n");
  std::cout << "report: wrote " << (out_dir / "report.json").string() << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"death-immigration point process laboratory"};
  app.require_subcommand(1);

  std::string config_path, out_dir, in_dir;
  std::vector<std::string> overrides;
  long long seed = -1;
  int replicas = -1;
  int threads = -1;

  app.add_option("--config", config_path, "JSON config file");
  app.add_option("--set", overrides, "override config entries, dotted key=value")
      ->take_all();
  app.add_option("--out", out_dir, "output directory");
  app.add_option("--seed", seed, "simulation seed override");
  app.add_option("--replicas", replicas, "replica count override");
  app.add_option("--threads", threads, "worker thread count (0 = hardware)");

  auto* evolve = app.add_subcommand("evolve", "closed-form correlation evolution to CSV");
  auto* simulate = app.add_subcommand("simulate", "sample the process, write ensemble");
  auto* resolvent = app.add_subcommand("resolvent", "dual resolvent values to CSV");
  auto* verify_cmd = app.add_subcommand("verify", "run the verification suite");
  auto* report = app.add_subcommand("report", "estimator report from a stored ensemble");
  report->add_option("--in", in_dir, "directory holding ensemble.csv / ensemble.json");
  for (CLI::App* sub : {evolve, simulate, resolvent, verify_cmd, report}) sub->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    json cfg = default_config();
    if (!config_path.empty()) {
      std::ifstream in(config_path);
      if (!in) throw ConfigError("cannot open config: " + config_path);
      merge_into(cfg, json::parse(in));
    }
    for (const std::string& assignment : overrides) apply_override(cfg, assignment);
    if (!out_dir.empty()) cfg["out"] = out_dir;
    if (seed >= 0) cfg["simulate"]["seed"] = static_cast<std::uint64_t>(seed);
    if (replicas >= 0) cfg["simulate"]["replicas"] = replicas;
    if (threads >= 0) cfg["threads"] = threads;

    if (evolve->parsed()) return cmd_evolve(cfg);
    if (simulate->parsed()) return cmd_simulate(cfg);
    if (resolvent->parsed()) return cmd_resolvent(cfg);
    if (verify_cmd->parsed()) return cmd_verify(cfg);
    if (report->parsed()) return cmd_report(cfg, in_dir);
    return 2;
  } catch (const json::exception& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
