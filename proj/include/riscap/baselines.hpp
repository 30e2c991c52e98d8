#pragma once

#include <vector>

#include "riscap/channel.hpp"
#include "riscap/pilots.hpp"

namespace riscap {

struct DsmResult {
  RISPhases phases;
  double rate = 0.0;
  std::vector<double> sweep_rates;  ///< rate after each full sweep, nondecreasing
};

/// Cyclic per-element ascent with perfect channel knowledge: each element's
/// phase is maximized over a uniform grid of 2*pi*k/grid_points while the
/// others are held fixed, sweeping until the improvement drops below tol or
/// max_sweeps is hit. Initialization is the all-zero phase vector; ties go
/// to the lowest grid index.
DsmResult dsm_optimize(const ChannelRealization& re,
                       const ScenarioConfig& config,
                       std::size_t grid_points = 64,
                       std::size_t max_sweeps = 50, double tol = 1e-6);

struct ExhaustiveResult {
  std::size_t index = 0;
  double rate = 0.0;
};

/// Best codebook entry by true achievable rate; lowest index wins ties.
ExhaustiveResult exhaustive_codebook(const ChannelRealization& re,
                                     const Codebook& cb,
                                     const ScenarioConfig& config);

/// Uniformly random codebook entry.
RISPhases random_codebook(const Codebook& cb, Rng& rng);

}  // namespace riscap
