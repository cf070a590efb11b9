#include "dimlab/ensemble_io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace dimlab {

using nlohmann::json;

std::string format_number(double x) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return buf;
}

void write_ensemble_csv(const SampleEnsemble& ens, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw ConfigError("cannot open for writing: " + path.string());
  const std::size_t d = ens.meta.window.dim();
  out << "replica_id,point_index";
  for (std::size_t i = 0; i < d; ++i) out << ",coord_" << i;
  out << "\n";
  for (std::size_t r = 0; r < ens.configs.size(); ++r) {
    const Configuration& gamma = ens.configs[r];
    for (std::size_t p = 0; p < gamma.size(); ++p) {
      out << r << "," << p;
      for (std::size_t i = 0; i < d; ++i) out << "," << format_number(gamma[p][i]);
      out << "\n";
    }
  }
}

namespace {

json window_to_json(const Window& w) {
  return json{{"lower", w.lower().to_vector()},
              {"upper", w.upper().to_vector()},
              {"boundary", w.boundary() == BoundaryMode::Periodic ? "periodic" : "plain"}};
}

Window window_from_json(const json& j) {
  return Window(Point(j.at("lower").get<std::vector<double>>()),
                Point(j.at("upper").get<std::vector<double>>()),
                j.at("boundary").get<std::string>() == "periodic" ? BoundaryMode::Periodic
                                                                  : BoundaryMode::Plain);
}

json initial_to_json(const InitialLaw& law) {
  json j;
  switch (law.kind) {
    case InitialLaw::Kind::Empty:
      j["kind"] = "empty";
      break;
    case InitialLaw::Kind::Poisson:
      j["kind"] = "poisson";
      j["intensity"] = law.intensity;
      break;
    case InitialLaw::Kind::Fixed: {
      j["kind"] = "fixed";
      json pts = json::array();
      for (const Point& x : law.fixed_config) pts.push_back(x.to_vector());
      j["points"] = pts;
      break;
    }
  }
  return j;
}

InitialLaw initial_from_json(const json& j) {
  const std::string kind = j.at("kind").get<std::string>();
  if (kind == "empty") return InitialLaw::empty();
  if (kind == "poisson") return InitialLaw::poisson(j.at("intensity").get<double>());
  if (kind == "fixed") {
    std::vector<Point> pts;
    for (const auto& c : j.at("points")) pts.emplace_back(c.get<std::vector<double>>());
    return InitialLaw::fixed(Configuration(std::move(pts)));
  }
  throw ConfigError("unknown initial kind: " + kind);
}

}  // namespace

void write_ensemble_sidecar(const SampleEnsemble& ens, const std::filesystem::path& path) {
  json j{{"version", kVersion},
         {"t", ens.t},
         {"params",
          {{"m", ens.meta.params.m}, {"sigma", ens.meta.params.sigma}, {"d", ens.meta.params.d}}},
         {"window", window_to_json(ens.meta.window)},
         {"initial", initial_to_json(ens.meta.initial)},
         {"t_end", ens.meta.t_end},
         {"replicas", ens.meta.replicas},
         {"seed", ens.meta.seed},
         {"scheme",
          ens.meta.scheme == SamplingScheme::ExactDecomposition ? "exact" : "gillespie"}};
  std::ofstream out(path);
  if (!out) throw ConfigError("cannot open for writing: " + path.string());
  out << j.dump(2) << "\n";
}

SampleEnsemble read_ensemble(const std::filesystem::path& csv_path,
                             const std::filesystem::path& sidecar_path) {
  std::ifstream side(sidecar_path);
  if (!side) throw ConfigError("cannot open sidecar: " + sidecar_path.string());
  json j = json::parse(side);

  SimConfig cfg;
  cfg.params = ModelParams(j.at("params").at("m").get<double>(),
                           j.at("params").at("sigma").get<double>(),
                           j.at("params").at("d").get<int>());
  cfg.window = window_from_json(j.at("window"));
  cfg.initial = initial_from_json(j.at("initial"));
  cfg.t_end = j.at("t_end").get<double>();
  cfg.replicas = j.at("replicas").get<int>();
  cfg.seed = j.at("seed").get<std::uint64_t>();
  cfg.scheme = j.at("scheme").get<std::string>() == "exact" ? SamplingScheme::ExactDecomposition
                                                            : SamplingScheme::Gillespie;

  std::vector<std::vector<Point>> replica_points(static_cast<std::size_t>(cfg.replicas));
  std::ifstream csv(csv_path);
  if (!csv) throw ConfigError("cannot open ensemble csv: " + csv_path.string());
  std::string line;
  std::getline(csv, line);  // header
  while (std::getline(csv, line)) {
    if (line.empty()) continue;
    std::stringstream ss(line);
    std::string field;
    std::getline(ss, field, ',');
    const std::size_t replica = std::stoul(field);
    std::getline(ss, field, ',');  // point_index, implied by order
    std::vector<double> coords;
    while (std::getline(ss, field, ',')) coords.push_back(std::stod(field));
    if (replica >= replica_points.size())
      throw ConfigError("ensemble csv: replica_id exceeds sidecar replica count");
    replica_points[replica].emplace_back(std::move(coords));
  }

  SampleEnsemble ens;
  ens.t = j.at("t").get<double>();
  ens.meta = cfg;
  ens.configs.reserve(replica_points.size());
  for (auto& pts : replica_points) ens.configs.emplace_back(std::move(pts));
  return ens;
}

}  // namespace dimlab
