#pragma once

#include <string>
#include <vector>

#include "riscap/channel.hpp"
#include "riscap/nn.hpp"
#include "riscap/pilots.hpp"

namespace riscap {

/// Fixed input normalization for networks that consume flattened pilot
/// tensors: one over the RMS of a pilot entry's real part, estimated from
/// the scenario constants. Purely a function of the config, so a model and
/// its scaling can always be rebuilt together.
double pilot_input_scale(const ScenarioConfig& config);

/// Maps a flattened pilot tensor to the surface phase angles. Raw network
/// outputs are the angles themselves, so the emitted response vector is
/// unit-modulus by construction and the feasibility constraint can never
/// be violated.
struct PhaseNet {
  nn::DenseNet net;
  std::size_t n_r = 0;
  std::size_t m = 0;
  std::size_t l = 0;
  std::size_t n = 0;
  double input_scale = 1.0;
};

PhaseNet make_phase_net(const ScenarioConfig& config,
                        const std::vector<std::size_t>& hidden_dims, Rng& rng);

RISPhases infer_phases(const PhaseNet& pn, const PilotTensor& y);

/// Optional codebook projection of the emitted phases: picks the entry
/// with the largest response correlation. Off by default; continuous
/// phases are the primary behavior.
RISPhases infer_phases_quantized(const PhaseNet& pn, const PilotTensor& y,
                                 const Codebook& cb);

/// One training sample: received pilots plus the realization they came
/// from. The realization is what makes the true-rate loss computable.
struct CsiSample {
  PilotTensor pilots;
  ChannelRealization channel;
};

struct PhaseTrainReport {
  std::vector<double> epoch_mean_rate;  ///< mean achievable rate per epoch
};

/// Trains the phase network by gradient ascent on the achievable rate:
/// per sample the loss is -R(g(Y)), its phase gradient comes from the
/// analytic rate gradient and is backpropagated into the network weights.
PhaseTrainReport train_unsupervised_csi(PhaseNet& pn,
                                        const std::vector<CsiSample>& dataset,
                                        const ScenarioConfig& config,
                                        const nn::TrainConfig& tc);

void save_phase_net(const PhaseNet& pn, const std::string& path);
PhaseNet load_phase_net(const std::string& path);

}  // namespace riscap
