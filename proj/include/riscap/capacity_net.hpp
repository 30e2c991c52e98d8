#pragma once

#include <string>
#include <vector>

#include "riscap/channel.hpp"
#include "riscap/nn.hpp"
#include "riscap/pilots.hpp"

namespace riscap {

/// Surrogate rate regressor: maps (flattened pilot tensor, surface phases)
/// to an estimated achievable rate. Input is the scaled pilot flattening
/// concatenated with the phase block; the phase block is either the raw
/// angles (default) or their (cos, sin) pairs when trig_phase_encoding is
/// set, which removes the 2*pi wrap discontinuity at the cost of doubling
/// the block.
struct CapacityNet {
  nn::DenseNet net;
  std::size_t n_r = 0;
  std::size_t m = 0;
  std::size_t l = 0;
  std::size_t n = 0;
  double input_scale = 1.0;
  bool trig_phase_encoding = false;

  std::size_t flat_len() const { return 2 * n_r * m * l; }
  std::size_t phase_block_len() const {
    return trig_phase_encoding ? 2 * n : n;
  }
};

CapacityNet make_capacity_net(const ScenarioConfig& config,
                              const std::vector<std::size_t>& hidden_dims,
                              bool trig_phase_encoding, Rng& rng);

/// The exact input assembly both training and prediction use:
/// (scaled flat pilots) followed by the phase block, in that order.
std::vector<double> assemble_capnet_input(const CapacityNet& cn,
                                          const PilotTensor& y,
                                          const RISPhases& phases);

double predict_rate(const CapacityNet& cn, const PilotTensor& y,
                    const RISPhases& phases);

/// One labeled sample. The rate is the true achievable rate of the
/// generating realization at these phases; the realization itself is not
/// part of the sample.
struct CapnetSample {
  PilotTensor pilots;
  RISPhases phases;
  double rate = 0.0;
};

/// Draws a fresh realization per sample, receives the standard codebook
/// pilot sweep, picks a candidate phase vector (half uniform over angles,
/// half a random codebook entry) and labels it with the true rate.
std::vector<CapnetSample> gen_capnet_dataset(const ScenarioConfig& config,
                                             std::size_t n_samples, Rng& rng);

struct CapnetTrainReport {
  std::vector<double> train_mse;    ///< per epoch
  std::vector<double> heldout_mse;  ///< per epoch; NaN when no held-out split
};

/// Minimizes the squared error between predicted and true rates. The last
/// tenth of the dataset is kept as the held-out split and never trained on.
CapnetTrainReport train_capacity_net(CapacityNet& cn,
                                     const std::vector<CapnetSample>& data,
                                     const nn::TrainConfig& tc);

void save_capacity_net(const CapacityNet& cn, const std::string& path);
CapacityNet load_capacity_net(const std::string& path);

}  // namespace riscap
