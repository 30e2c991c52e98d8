#include "riscap/baselines.hpp"

#include <cmath>

namespace riscap {

DsmResult dsm_optimize(const ChannelRealization& re,
                       const ScenarioConfig& config, std::size_t grid_points,
                       std::size_t max_sweeps, double tol) {
  if (grid_points < 3) {
    throw ShapeError("dsm_optimize: need at least 3 grid points");
  }
  const std::size_t n = re.h_t.rows();
  DsmResult result;
  result.phases.theta.assign(n, 0.0);
  result.rate = achievable_rate(effective_channel(re, result.phases), config);

  for (std::size_t sweep = 0; sweep < max_sweeps; ++sweep) {
    const double rate_before = result.rate;
    for (std::size_t i = 0; i < n; ++i) {
      double best_theta = result.phases.theta[i];
      double best_rate = result.rate;
      for (std::size_t k = 0; k < grid_points; ++k) {
        const double theta =
            Rng::two_pi() * static_cast<double>(k) /
            static_cast<double>(grid_points);
        result.phases.theta[i] = theta;
        const double rate =
            achievable_rate(effective_channel(re, result.phases), config);
        if (rate > best_rate) {
          best_rate = rate;
          best_theta = theta;
        }
      }
      result.phases.theta[i] = best_theta;
      result.rate = best_rate;
    }
    result.sweep_rates.push_back(result.rate);
    if (result.rate - rate_before < tol) break;
  }
  return result;
}

ExhaustiveResult exhaustive_codebook(const ChannelRealization& re,
                                     const Codebook& cb,
                                     const ScenarioConfig& config) {
  if (cb.size() == 0) {
    throw ShapeError("exhaustive_codebook: empty codebook");
  }
  ExhaustiveResult best;
  best.rate = -1.0;
  for (std::size_t e = 0; e < cb.size(); ++e) {
    const double rate =
        achievable_rate(effective_channel(re, cb.phases(e)), config);
    if (rate > best.rate) {
      best.rate = rate;
      best.index = e;
    }
  }
  return best;
}

RISPhases random_codebook(const Codebook& cb, Rng& rng) {
  if (cb.size() == 0) {
    throw ShapeError("random_codebook: empty codebook");
  }
  return cb.phases(rng.below(cb.size()));
}

}  // namespace riscap
