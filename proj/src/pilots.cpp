#include "riscap/pilots.hpp"

#include <cmath>
#include <sstream>

namespace riscap {

Codebook build_codebook(std::size_t n_h, std::size_t n_v) {
  if (n_h < 1 || n_v < 1) {
    throw ShapeError("build_codebook: grid dimensions must be >= 1");
  }
  Codebook cb;
  cb.n_h = n_h;
  cb.n_v = n_v;
  const std::size_t n = n_h * n_v;
  cb.entries.reserve(n);
  cb.phases_.reserve(n);
  for (std::size_t i = 0; i < n_h; ++i) {
    const double theta_h = 2.0 * static_cast<double>(i) / static_cast<double>(n_h);
    for (std::size_t j = 0; j < n_v; ++j) {
      const double theta_v =
          2.0 * static_cast<double>(j) / static_cast<double>(n_v);
      std::vector<double> phases(n);
      std::vector<cplx> entry(n);
      for (std::size_t kh = 0; kh < n_h; ++kh) {
        for (std::size_t kv = 0; kv < n_v; ++kv) {
          const double phase =
              M_PI * (static_cast<double>(kh) * theta_h +
                      static_cast<double>(kv) * theta_v);
          phases[kh * n_v + kv] = phase;
          entry[kh * n_v + kv] = std::polar(1.0, phase);
        }
      }
      cb.phases_.push_back(std::move(phases));
      cb.entries.push_back(std::move(entry));
    }
  }
  return cb;
}

PilotCodeword make_pilot(const ScenarioConfig& config) {
  if (config.m < config.n_t) {
    std::ostringstream os;
    os << "make_pilot: block length " << config.m << " cannot excite "
       << config.n_t << " transmit dimensions";
    throw ShapeError(os.str());
  }
  const std::size_t m = config.m;
  // DFT rows are orthogonal; per-entry amplitude sqrt(P_T / n_t) gives
  // total energy m * P_T and s s^H = (m P_T / n_t) I.
  const double amp =
      std::sqrt(config.p_t_mw / static_cast<double>(config.n_t));
  ComplexMatrix s(config.n_t, m);
  for (std::size_t k = 0; k < config.n_t; ++k) {
    for (std::size_t j = 0; j < m; ++j) {
      const double phase = -Rng::two_pi() * static_cast<double>(k) *
                           static_cast<double>(j) / static_cast<double>(m);
      s(k, j) = std::polar(amp, phase);
    }
  }
  return PilotCodeword{std::move(s)};
}

std::vector<RISPhases> ris_schedule(const Codebook& cb, std::size_t l) {
  if (l < 1) {
    throw ShapeError("ris_schedule: slot count must be >= 1");
  }
  std::vector<RISPhases> schedule;
  schedule.reserve(l);
  for (std::size_t slot = 0; slot < l; ++slot) {
    schedule.push_back(cb.phases(slot % cb.size()));
  }
  return schedule;
}

std::vector<double> flatten_blocks(const std::vector<ComplexMatrix>& blocks) {
  std::size_t per_block = blocks.empty() ? 0 : blocks.front().size();
  std::vector<double> flat;
  flat.reserve(2 * per_block * blocks.size());
  for (const ComplexMatrix& b : blocks) {
    for (const cplx& z : b.entries()) flat.push_back(z.real());
    for (const cplx& z : b.entries()) flat.push_back(z.imag());
  }
  return flat;
}

std::vector<ComplexMatrix> unflatten_blocks(const std::vector<double>& flat,
                                            std::size_t n_r, std::size_t m,
                                            std::size_t l) {
  if (flat.size() != 2 * n_r * m * l) {
    std::ostringstream os;
    os << "unflatten_blocks: " << flat.size() << " values for dims (" << n_r
       << ", " << m << ", " << l << ")";
    throw ShapeError(os.str());
  }
  std::vector<ComplexMatrix> blocks;
  blocks.reserve(l);
  const std::size_t per_block = n_r * m;
  for (std::size_t slot = 0; slot < l; ++slot) {
    ComplexMatrix b(n_r, m);
    const double* re = flat.data() + slot * 2 * per_block;
    const double* im = re + per_block;
    for (std::size_t i = 0; i < per_block; ++i) {
      b.entries()[i] = cplx{re[i], im[i]};
    }
    blocks.push_back(std::move(b));
  }
  return blocks;
}

PilotTensor receive_pilots(const ChannelRealization& re,
                           const std::vector<RISPhases>& schedule,
                           const PilotCodeword& pilot,
                           const ScenarioConfig& config, Rng& rng) {
  PilotTensor out;
  out.blocks.reserve(schedule.size());
  for (const RISPhases& phases : schedule) {
    ComplexMatrix r = matmul(effective_channel(re, phases), pilot.s);
    for (cplx& z : r.entries()) {
      z += rng.cnormal(config.sigma2_mw);
    }
    out.blocks.push_back(std::move(r));
  }
  out.flat = flatten_blocks(out.blocks);
  return out;
}

}  // namespace riscap
