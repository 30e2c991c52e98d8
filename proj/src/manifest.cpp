#include "riscap/manifest.hpp"

#include <fstream>
#include <sstream>

#include "json.hpp"

namespace riscap {

using nlohmann::json;

namespace {

json train_to_json(const nn::TrainConfig& tc) {
  return json{{"batch_size", tc.batch_size},
              {"learning_rate", tc.learning_rate},
              {"epochs", tc.epochs},
              {"seed", tc.seed}};
}

nn::TrainConfig train_from_json(const json& j) {
  nn::TrainConfig tc;
  tc.batch_size = j.at("batch_size").get<std::size_t>();
  tc.learning_rate = j.at("learning_rate").get<double>();
  tc.epochs = j.at("epochs").get<std::size_t>();
  tc.seed = j.at("seed").get<std::uint64_t>();
  return tc;
}

json scenario_to_json(const ScenarioConfig& sc) {
  return json{{"n_t", sc.n_t},
              {"n_r", sc.n_r},
              {"n_h", sc.n_h},
              {"n_v", sc.n_v},
              {"lambda_t", sc.lambda_t},
              {"lambda_r", sc.lambda_r},
              {"k_t", sc.k_t},
              {"k_r", sc.k_r},
              {"pathloss_t_db", sc.pathloss_t_db},
              {"pathloss_r_db", sc.pathloss_r_db},
              {"noise_dbm", sc.noise_dbm},
              {"p_t_dbm", sc.p_t_dbm},
              {"m", sc.m},
              {"l", sc.l},
              {"seed", sc.seed}};
}

ScenarioConfig scenario_from_json(const json& j) {
  ScenarioConfig sc;
  sc.n_t = j.at("n_t").get<std::size_t>();
  sc.n_r = j.at("n_r").get<std::size_t>();
  sc.n_h = j.at("n_h").get<std::size_t>();
  sc.n_v = j.at("n_v").get<std::size_t>();
  sc.lambda_t = j.at("lambda_t").get<std::size_t>();
  sc.lambda_r = j.at("lambda_r").get<std::size_t>();
  sc.k_t = j.at("k_t").get<double>();
  sc.k_r = j.at("k_r").get<double>();
  sc.pathloss_t_db = j.at("pathloss_t_db").get<double>();
  sc.pathloss_r_db = j.at("pathloss_r_db").get<double>();
  sc.noise_dbm = j.at("noise_dbm").get<double>();
  sc.p_t_dbm = j.at("p_t_dbm").get<double>();
  sc.m = j.at("m").get<std::size_t>();
  sc.l = j.at("l").get<std::size_t>();
  sc.seed = j.at("seed").get<std::uint64_t>();
  return ScenarioConfig::create(sc);
}

json net_to_json(const NetSpec& ns) {
  return json{{"hidden", ns.hidden}, {"train", train_to_json(ns.train)}};
}

NetSpec net_from_json(const json& j) {
  NetSpec ns;
  ns.hidden = j.at("hidden").get<std::vector<std::size_t>>();
  ns.train = train_from_json(j.at("train"));
  return ns;
}

json config_to_json_value(const ExperimentConfig& config) {
  return json{{"scenario", scenario_to_json(config.scenario)},
              {"phase_net", net_to_json(config.phase_net)},
              {"capacity_net", net_to_json(config.capacity_net)},
              {"trig_phase_encoding", config.trig_phase_encoding},
              {"quantize_inference", config.quantize_inference},
              {"n_train", config.n_train},
              {"n_heldout", config.n_heldout},
              {"dsm_grid_points", config.dsm_grid_points},
              {"dsm_max_sweeps", config.dsm_max_sweeps},
              {"dsm_tol", config.dsm_tol}};
}

}  // namespace

std::string config_to_json(const ExperimentConfig& config) {
  return config_to_json_value(config).dump(2) + "\n";
}

ExperimentConfig config_from_json(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw IoError(std::string("config is not valid JSON: ") + e.what());
  }
  try {
    ExperimentConfig config;
    config.scenario = scenario_from_json(j.at("scenario"));
    config.phase_net = net_from_json(j.at("phase_net"));
    config.capacity_net = net_from_json(j.at("capacity_net"));
    config.trig_phase_encoding = j.at("trig_phase_encoding").get<bool>();
    config.quantize_inference = j.at("quantize_inference").get<bool>();
    config.n_train = j.at("n_train").get<std::size_t>();
    config.n_heldout = j.at("n_heldout").get<std::size_t>();
    config.dsm_grid_points = j.at("dsm_grid_points").get<std::size_t>();
    config.dsm_max_sweeps = j.at("dsm_max_sweeps").get<std::size_t>();
    config.dsm_tol = j.at("dsm_tol").get<double>();
    return config;
  } catch (const json::out_of_range& e) {
    throw IoError(std::string("config field missing: ") + e.what());
  } catch (const json::type_error& e) {
    throw IoError(std::string("config field has wrong type: ") + e.what());
  }
}

ExperimentConfig load_config(const std::string& path) {
  std::ifstream f(path);
  if (!f) {
    throw IoError("cannot open config " + path);
  }
  std::stringstream ss;
  ss << f.rdbuf();
  return config_from_json(ss.str());
}

void save_config(const ExperimentConfig& config, const std::string& path) {
  std::ofstream f(path, std::ios::trunc);
  if (!f) {
    throw IoError("cannot open " + path + " for writing");
  }
  f << config_to_json(config);
}

ExperimentConfig preset_config(const std::string& name) {
  ExperimentConfig config;
  if (name == "small") {
    ScenarioConfig sc;
    sc.n_t = 2;
    sc.n_r = 2;
    sc.n_h = 2;
    sc.n_v = 2;
    sc.lambda_t = 3;
    sc.lambda_r = 3;
    sc.k_t = 10.0;
    sc.k_r = 10.0;
    sc.pathloss_t_db = -72.0;
    sc.pathloss_r_db = -66.0;
    sc.noise_dbm = -120.0;
    sc.p_t_dbm = 30.0;
    sc.m = 8;
    sc.l = 8;
    sc.seed = 1;
    config.scenario = ScenarioConfig::create(sc);
    config.phase_net.hidden = {128};
    config.phase_net.train = {32, 1e-3, 40, 11};
    config.capacity_net.hidden = {128};
    config.capacity_net.train = {32, 1e-3, 40, 12};
    config.n_train = 2000;
    config.n_heldout = 200;
  } else if (name == "paper-shape") {
    ScenarioConfig sc;  // defaults are already the full-shape constants
    config.scenario = ScenarioConfig::create(sc);
    config.phase_net.hidden = {4096};
    config.phase_net.train = {256, 3e-5, 10, 11};
    config.capacity_net.hidden = {4096};
    config.capacity_net.train = {256, 1e-5, 10, 12};
    config.n_train = 100000;
    config.n_heldout = 10000;
  } else {
    throw IoError("unknown preset '" + name + "', expected small|paper-shape");
  }
  return config;
}

std::string manifest_json(const RunManifest& manifest) {
  json j{{"artifact_version", RunManifest::kArtifactVersion},
         {"dataset_format_version", RunManifest::kDatasetFormatVersion},
         {"model_format_version", RunManifest::kModelFormatVersion},
         {"pipeline", manifest.pipeline},
         {"run_seed", manifest.run_seed},
         {"n_samples", manifest.n_samples},
         {"out_path", manifest.out_path},
         {"extra", manifest.extra},
         {"config", config_to_json_value(manifest.config)}};
  return j.dump(2) + "\n";
}

std::string manifest_hash(const RunManifest& manifest) {
  const std::string text = manifest_json(manifest);
  std::uint64_t h = 0xcbf29ce484222325ull;
  for (unsigned char c : text) {
    h ^= c;
    h *= 0x100000001b3ull;
  }
  std::ostringstream os;
  os << std::hex;
  for (int shift = 60; shift >= 0; shift -= 4) {
    os << ((h >> shift) & 0xF);
  }
  return os.str();
}

void write_manifest_sidecar(const RunManifest& manifest) {
  const std::string path = manifest.out_path + ".manifest.json";
  std::ofstream f(path, std::ios::trunc);
  if (!f) {
    throw IoError("cannot open " + path + " for writing");
  }
  f << manifest_json(manifest);
}

}  // namespace riscap
