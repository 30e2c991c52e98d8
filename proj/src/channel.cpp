#include "riscap/channel.hpp"

#include <cmath>
#include <sstream>

namespace riscap {

namespace {

constexpr double kLog2E = 1.4426950408889634074;  // 1 / ln 2

void check_phase_count(const ChannelRealization& re, const RISPhases& phases) {
  if (phases.theta.size() != re.h_t.rows()) {
    std::ostringstream os;
    os << "effective_channel: " << phases.theta.size() << " phases for "
       << re.h_t.rows() << " reflective elements";
    throw ShapeError(os.str());
  }
  if (re.h_r_adj.cols() != re.h_t.rows()) {
    std::ostringstream os;
    os << "effective_channel: link shapes disagree, " << re.h_r_adj.rows()
       << "x" << re.h_r_adj.cols() << " vs " << re.h_t.rows() << "x"
       << re.h_t.cols();
    throw ShapeError(os.str());
  }
}

}  // namespace

std::vector<cplx> RISPhases::response() const {
  std::vector<cplx> v(theta.size());
  for (std::size_t i = 0; i < theta.size(); ++i) {
    v[i] = std::polar(1.0, theta[i]);
  }
  return v;
}

ComplexMatrix steering_vector(std::size_t n, double psi) {
  ComplexMatrix a(1, n);
  const double step = M_PI * psi;
  for (std::size_t k = 0; k < n; ++k) {
    a(0, k) = std::polar(1.0, step * static_cast<double>(k));
  }
  return a;
}

ComplexMatrix tx_path_matrix(const ScenarioConfig& config,
                             const TxPathAngles& path) {
  const double psi_h = std::cos(path.aoa_ris_el) * std::sin(path.aoa_ris_az);
  const double psi_v = std::sin(path.aoa_ris_el);
  const ComplexMatrix surface = kron(adjoint(steering_vector(config.n_h, psi_h)),
                                     adjoint(steering_vector(config.n_v, psi_v)));
  const ComplexMatrix tx = steering_vector(config.n_t, std::sin(path.aod_tx));
  return matmul(surface, tx);
}

ComplexMatrix rx_path_matrix(const ScenarioConfig& config,
                             const RxPathAngles& path) {
  const double psi_h = std::cos(path.aod_ris_el) * std::sin(path.aod_ris_az);
  const double psi_v = std::sin(path.aod_ris_el);
  const ComplexMatrix surface = kron(steering_vector(config.n_v, psi_v),
                                     steering_vector(config.n_h, psi_h));
  const ComplexMatrix rx = adjoint(steering_vector(config.n_r, path.aoa_rx));
  return matmul(rx, surface);
}

ChannelGeometry sample_geometry(const ScenarioConfig& config, Rng& rng) {
  ChannelGeometry g;
  g.t_paths.resize(config.lambda_t + 1);
  for (TxPathAngles& p : g.t_paths) {
    p.aod_tx = rng.uniform(0.0, M_PI);
    p.aoa_ris_az = rng.uniform(0.0, M_PI);
    p.aoa_ris_el = rng.uniform(0.0, M_PI);
  }
  g.z_t.resize(config.lambda_t);
  for (cplx& z : g.z_t) {
    z = rng.cnormal(1.0 / static_cast<double>(config.lambda_t));
  }
  g.r_paths.resize(config.lambda_r + 1);
  for (RxPathAngles& p : g.r_paths) {
    p.aod_ris_az = rng.uniform(0.0, M_PI);
    p.aod_ris_el = rng.uniform(0.0, M_PI);
    p.aoa_rx = rng.uniform(0.0, M_PI);
  }
  g.z_r.resize(config.lambda_r);
  for (cplx& z : g.z_r) {
    z = rng.cnormal(1.0 / static_cast<double>(config.lambda_r));
  }
  return g;
}

ChannelRealization assemble_channel(const ScenarioConfig& config,
                                    ChannelGeometry geometry) {
  const double lt = config.pathloss_t_lin;
  const double lr = config.pathloss_r_lin;
  const double los_t = std::sqrt(lt * config.k_t / (config.k_t + 1.0));
  const double nlos_t = std::sqrt(lt / (config.k_t + 1.0));
  const double los_r = std::sqrt(lr * config.k_r / (config.k_r + 1.0));
  const double nlos_r = std::sqrt(lr / (config.k_r + 1.0));

  ComplexMatrix h_t = scale(tx_path_matrix(config, geometry.t_paths[0]), los_t);
  for (std::size_t p = 1; p < geometry.t_paths.size(); ++p) {
    const ComplexMatrix term = tx_path_matrix(config, geometry.t_paths[p]);
    const cplx w = nlos_t * geometry.z_t[p - 1];
    for (std::size_t i = 0; i < h_t.size(); ++i) {
      h_t.entries()[i] += w * term.entries()[i];
    }
  }

  ComplexMatrix h_r = scale(rx_path_matrix(config, geometry.r_paths[0]), los_r);
  for (std::size_t p = 1; p < geometry.r_paths.size(); ++p) {
    const ComplexMatrix term = rx_path_matrix(config, geometry.r_paths[p]);
    const cplx w = nlos_r * geometry.z_r[p - 1];
    for (std::size_t i = 0; i < h_r.size(); ++i) {
      h_r.entries()[i] += w * term.entries()[i];
    }
  }

  return ChannelRealization{std::move(h_t), std::move(h_r),
                            std::move(geometry)};
}

ChannelRealization sample_channel(const ScenarioConfig& config, Rng& rng) {
  return assemble_channel(config, sample_geometry(config, rng));
}

ComplexMatrix effective_channel(const ChannelRealization& re,
                                const RISPhases& phases) {
  check_phase_count(re, phases);
  const std::vector<cplx> v = phases.response();
  ComplexMatrix scaled = re.h_t;
  for (std::size_t n = 0; n < scaled.rows(); ++n) {
    for (std::size_t j = 0; j < scaled.cols(); ++j) {
      scaled(n, j) *= v[n];
    }
  }
  return matmul(re.h_r_adj, scaled);
}

double achievable_rate(const ComplexMatrix& h_eff,
                       const ScenarioConfig& config) {
  if (h_eff.rows() != config.n_r || h_eff.cols() != config.n_t) {
    std::ostringstream os;
    os << "achievable_rate: channel is " << h_eff.rows() << "x" << h_eff.cols()
       << ", expected " << config.n_r << "x" << config.n_t;
    throw ShapeError(os.str());
  }
  const double rho = config.p_t_mw /
                     (config.sigma2_mw * static_cast<double>(config.n_t));
  ComplexMatrix a = matmul(adjoint(h_eff), h_eff);
  for (cplx& z : a.entries()) z *= rho;
  for (std::size_t i = 0; i < a.rows(); ++i) a(i, i) += 1.0;
  return logdet_hermitian_psd(a);
}

std::vector<double> rate_gradient(const ChannelRealization& re,
                                  const RISPhases& phases,
                                  const ScenarioConfig& config) {
  check_phase_count(re, phases);
  const std::size_t n = re.h_t.rows();
  const double rho = config.p_t_mw /
                     (config.sigma2_mw * static_cast<double>(config.n_t));
  const std::vector<cplx> v = phases.response();

  const ComplexMatrix h = effective_channel(re, phases);
  ComplexMatrix a = matmul(adjoint(h), h);
  for (cplx& z : a.entries()) z *= rho;
  for (std::size_t i = 0; i < a.rows(); ++i) a(i, i) += 1.0;

  // T = A^{-1} H^H, then U = H_t T so that the trace against the rank-one
  // derivative H_r[:,i] H_t[i,:] collapses to a dot product per element.
  const ComplexMatrix l = cholesky_factor(a);
  const ComplexMatrix t = cholesky_solve(l, adjoint(h));
  const ComplexMatrix u = matmul(re.h_t, t);

  std::vector<double> grad(n);
  for (std::size_t i = 0; i < n; ++i) {
    cplx s = 0.0;
    for (std::size_t k = 0; k < config.n_r; ++k) {
      s += u(i, k) * re.h_r_adj(k, i);
    }
    grad[i] = -2.0 * rho * kLog2E * std::imag(v[i] * s);
  }
  return grad;
}

}  // namespace riscap
