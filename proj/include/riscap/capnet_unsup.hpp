#pragma once

#include <functional>
#include <vector>

#include "riscap/capacity_net.hpp"
#include "riscap/phase_net.hpp"

namespace riscap {

struct SurrogateTrainReport {
  std::vector<double> epoch_mean_surrogate_rate;
  std::vector<double> step_loss;  ///< per optimizer step, for convergence audits
};

/// Called after every epoch with the network under training; lets a caller
/// measure anything out-of-band without widening this interface.
using EpochHook = std::function<void(std::size_t epoch, const PhaseNet& pn)>;

/// Trains the phase network through a frozen surrogate: the loss is the
/// negated surrogate rate of (Y, g(Y)), and the gradient reaches g only
/// through the surrogate's input-gradient path. No channel realization
/// appears anywhere in this interface; that absence is the point, and it
/// is pinned by a compile-time test.
///
/// The surrogate is read-only and left bitwise unchanged.
SurrogateTrainReport train_unsupervised_surrogate(
    PhaseNet& pn, const CapacityNet& frozen,
    const std::vector<PilotTensor>& dataset, const nn::TrainConfig& tc,
    const EpochHook& on_epoch = {});

}  // namespace riscap
