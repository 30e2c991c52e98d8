#pragma once

#include <vector>

#include "riscap/complex_matrix.hpp"
#include "riscap/rng.hpp"
#include "riscap/scenario.hpp"

namespace riscap {

/// Phase angles of the reflective surface. The induced response vector
/// v_i = e^{j theta_i} is unit-modulus by construction, which is exactly
/// the feasibility constraint of the optimization problem.
struct RISPhases {
  std::vector<double> theta;

  std::vector<cplx> response() const;

  bool operator==(const RISPhases&) const = default;
};

/// One propagation path of the transmitter-to-surface link.
struct TxPathAngles {
  double aod_tx;      ///< departure angle at the transmit array
  double aoa_ris_az;  ///< azimuth arrival angle at the surface
  double aoa_ris_el;  ///< elevation arrival angle at the surface
};

/// One propagation path of the surface-to-receiver link.
struct RxPathAngles {
  double aod_ris_az;  ///< azimuth departure angle at the surface
  double aod_ris_el;  ///< elevation departure angle at the surface
  double aoa_rx;      ///< arrival angle at the receive array
};

/// All random draws behind one channel realization. Index 0 of each path
/// list is the deterministic line-of-sight path; the rest are scattered
/// paths with the complex gains in z_t / z_r.
struct ChannelGeometry {
  std::vector<TxPathAngles> t_paths;  ///< size lambda_t + 1
  std::vector<RxPathAngles> r_paths;  ///< size lambda_r + 1
  std::vector<cplx> z_t;              ///< size lambda_t
  std::vector<cplx> z_r;              ///< size lambda_r
};

/// One draw of the two link matrices plus the geometry that generated it.
struct ChannelRealization {
  ComplexMatrix h_t;       ///< n x n_t, transmitter to surface
  ComplexMatrix h_r_adj;   ///< n_r x n, surface to receiver (adjoint form)
  ChannelGeometry geometry;
};

/// Half-wavelength steering row [1, e^{j pi psi}, ..., e^{j (n-1) pi psi}].
ComplexMatrix steering_vector(std::size_t n, double psi);

/// Unit-modulus path matrix of the transmitter link for one path: the
/// surface-side steering column (horizontal x vertical Kronecker structure)
/// times the transmit-side steering row. Shape n x n_t.
ComplexMatrix tx_path_matrix(const ScenarioConfig& config,
                             const TxPathAngles& path);

/// Receiver-link analog, shape n_r x n. Note the vertical-major Kronecker
/// ordering on the surface side.
ComplexMatrix rx_path_matrix(const ScenarioConfig& config,
                             const RxPathAngles& path);

/// Draws all path angles uniformly over [0, pi) and the scattered-path
/// gains as CN(0, 1/lambda). Draw order is fixed: transmitter-link angles,
/// transmitter-link gains, receiver-link angles, receiver-link gains.
ChannelGeometry sample_geometry(const ScenarioConfig& config, Rng& rng);

/// Deterministically assembles the Rician mixture from a geometry record.
ChannelRealization assemble_channel(const ScenarioConfig& config,
                                    ChannelGeometry geometry);

/// sample_geometry followed by assemble_channel.
ChannelRealization sample_channel(const ScenarioConfig& config, Rng& rng);

/// Composite channel through the surface: h_r_adj * diag(e^{j theta}) * h_t.
ComplexMatrix effective_channel(const ChannelRealization& re,
                                const RISPhases& phases);

/// Achievable rate in bits/s/Hz:
/// log2 det(I + P_T / (sigma^2 n_t) * H_eff^H H_eff).
double achievable_rate(const ComplexMatrix& h_eff,
                       const ScenarioConfig& config);

/// Analytic gradient of the achievable rate with respect to each phase
/// angle. Sits in the inner training loop, so it is computed in closed form
/// from the Cholesky-solved Gram matrix rather than by finite differences:
/// d log det(A) = tr(A^{-1} dA) with dv_i/dtheta_i = j v_i.
std::vector<double> rate_gradient(const ChannelRealization& re,
                                  const RISPhases& phases,
                                  const ScenarioConfig& config);

}  // namespace riscap
