#pragma once

#include <string>
#include <vector>

#include "riscap/baselines.hpp"
#include "riscap/capacity_net.hpp"
#include "riscap/capnet_unsup.hpp"
#include "riscap/dataset.hpp"
#include "riscap/manifest.hpp"
#include "riscap/phase_net.hpp"

namespace riscap {

/// One held-out realization with its received pilot sweep.
struct EvalPoint {
  ChannelRealization channel;
  PilotTensor pilots;
};

/// Deterministic held-out set: point i is drawn from the stream seeded
/// with base_seed + i (channel first, then pilot noise).
std::vector<EvalPoint> make_eval_set(const ScenarioConfig& config,
                                     std::size_t n, std::uint64_t base_seed);
std::vector<EvalPoint> eval_points_from_dataset(const Dataset& ds);

struct MethodSummary {
  std::string method;
  double mean = 0.0;
  double std_err = 0.0;
  std::size_t n_eval = 0;
  bool failed = false;
  std::string error;
};

MethodSummary summarize(const std::string& method,
                        const std::vector<double>& values);

/// True achievable rate of a baseline on every held-out point.
/// `method` is one of dsm | random | exhaustive. The random baseline draws
/// entry choices from streams seeded independently per point so results do
/// not depend on anything else that consumed randomness.
MethodSummary evaluate_baseline(const std::string& method,
                                const std::vector<EvalPoint>& heldout,
                                const ExperimentConfig& config,
                                const ScenarioConfig& rate_config,
                                std::uint64_t eval_seed);

/// True achievable rate of a trained phase network on every held-out point.
MethodSummary evaluate_model(const std::string& name, const PhaseNet& pn,
                             const std::vector<EvalPoint>& heldout,
                             const ExperimentConfig& config,
                             const ScenarioConfig& rate_config);

enum class SweepAxis { PilotLength, RisElements, TransmitPower };

SweepAxis sweep_axis_from_string(const std::string& s);
std::string to_string(SweepAxis axis);
std::vector<double> default_axis_values(SweepAxis axis);

struct SweepRow {
  double axis_value = 0.0;
  MethodSummary summary;
};

/// Produces one row per (axis value, method). Learned methods are trained
/// per axis value (except the transmit-power axis, where models are
/// trained once at the base scenario and only the rate evaluation moves).
/// A point whose configuration is invalid is recorded as a failed row and
/// the sweep continues. Methods: dsm | random | exhaustive | unsup-csi |
/// capnet-unsup | capnet-mse.
std::vector<SweepRow> run_sweep(const ExperimentConfig& config,
                                SweepAxis axis,
                                const std::vector<double>& values,
                                const std::vector<std::string>& methods,
                                std::uint64_t run_seed);

/// Schema: axis,method,mean_rate_bits,std_err,n_eval,manifest_hash
/// (the capnet-mse method reports its MSE in the mean_rate_bits column).
std::string rows_to_csv(const std::vector<SweepRow>& rows,
                        const std::string& manifest_hash);
std::string summaries_to_csv(const std::string& axis_label,
                             const std::vector<MethodSummary>& summaries,
                             const std::string& manifest_hash);

}  // namespace riscap
