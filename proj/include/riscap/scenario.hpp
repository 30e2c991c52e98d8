#pragma once

#include <cmath>
#include <cstdint>
#include <cstddef>

#include "riscap/errors.hpp"

namespace riscap {

/// All physical and learning constants of one simulated link.
///
/// dB/dBm fields are converted to the linear milliwatt scale once, at
/// construction; every downstream computation uses the linear values.
struct ScenarioConfig {
  std::size_t n_t = 2;   ///< transmit antennas
  std::size_t n_r = 6;   ///< receive antennas
  std::size_t n_h = 4;   ///< reflective elements, horizontal
  std::size_t n_v = 4;   ///< reflective elements, vertical
  std::size_t lambda_t = 3;  ///< scattered paths, transmitter-to-surface
  std::size_t lambda_r = 3;  ///< scattered paths, surface-to-receiver
  double k_t = 10.0;     ///< Rician factor, linear
  double k_r = 10.0;     ///< Rician factor, linear
  double pathloss_t_db = -72.0;
  double pathloss_r_db = -66.0;
  double noise_dbm = -120.0;
  double p_t_dbm = 30.0;
  std::size_t m = 16;    ///< pilot block length
  std::size_t l = 16;    ///< number of pilot slots
  std::uint64_t seed = 1;

  // Linear-scale values, fixed at construction.
  double pathloss_t_lin = 0.0;
  double pathloss_r_lin = 0.0;
  double sigma2_mw = 0.0;
  double p_t_mw = 0.0;

  std::size_t n() const { return n_h * n_v; }

  /// Flattened length of one received pilot tensor: 2 * n_r * m * l.
  std::size_t flat_len() const { return 2 * n_r * m * l; }

  static double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }

  /// Validates counts and derives the linear-scale fields.
  static ScenarioConfig create(ScenarioConfig raw) {
    if (raw.n_t < 1 || raw.n_r < 1 || raw.n_h < 1 || raw.n_v < 1 ||
        raw.m < 1 || raw.l < 1) {
      throw ShapeError("ScenarioConfig: all counts must be >= 1");
    }
    if (raw.k_t < 0.0 || raw.k_r < 0.0) {
      throw ShapeError("ScenarioConfig: Rician factors must be >= 0");
    }
    raw.pathloss_t_lin = db_to_linear(raw.pathloss_t_db);
    raw.pathloss_r_lin = db_to_linear(raw.pathloss_r_db);
    raw.sigma2_mw = db_to_linear(raw.noise_dbm);
    raw.p_t_mw = db_to_linear(raw.p_t_dbm);
    return raw;
  }
};

}  // namespace riscap
