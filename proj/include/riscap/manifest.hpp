#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "riscap/nn.hpp"
#include "riscap/scenario.hpp"

namespace riscap {

/// Network shape plus its training settings, one per trained model.
struct NetSpec {
  std::vector<std::size_t> hidden;
  nn::TrainConfig train;
};

/// Everything a run needs beyond the CLI verb: the physical scenario, both
/// network specs, dataset sizes and the reference-optimizer settings. A
/// config file must spell out every field; the effective values are echoed
/// into each run's manifest.
struct ExperimentConfig {
  ScenarioConfig scenario;
  NetSpec phase_net;
  NetSpec capacity_net;
  bool trig_phase_encoding = false;
  bool quantize_inference = false;
  std::size_t n_train = 0;
  std::size_t n_heldout = 0;
  std::size_t dsm_grid_points = 64;
  std::size_t dsm_max_sweeps = 20;
  double dsm_tol = 1e-6;
};

ExperimentConfig load_config(const std::string& path);
void save_config(const ExperimentConfig& config, const std::string& path);
std::string config_to_json(const ExperimentConfig& config);
ExperimentConfig config_from_json(const std::string& text);

/// Built-in scenario presets.
///   small       - 2x2 surface, 2x2 MIMO, short pilots; minutes-scale runs
///   paper-shape - 4x4 surface, 2x6 MIMO, full pilot length
ExperimentConfig preset_config(const std::string& name);

/// Record of one run: effective config, pipeline, seed and outputs. The
/// manifest fully determines the run; it is written next to every output
/// file and its hash is embedded in every CSV.
struct RunManifest {
  ExperimentConfig config;
  std::string pipeline;
  std::uint64_t run_seed = 0;
  std::size_t n_samples = 0;
  std::string out_path;
  std::string extra;  ///< free-form details (axis, methods, inputs)

  static constexpr const char* kArtifactVersion = "0.1.0";
  static constexpr int kDatasetFormatVersion = 1;
  static constexpr int kModelFormatVersion = 1;
};

/// Canonical JSON rendering; identical manifests render identically.
std::string manifest_json(const RunManifest& manifest);

/// FNV-1a 64-bit hash of the canonical rendering, as 16 hex digits.
std::string manifest_hash(const RunManifest& manifest);

/// Writes `<out_path>.manifest.json` next to the named output.
void write_manifest_sidecar(const RunManifest& manifest);

}  // namespace riscap
