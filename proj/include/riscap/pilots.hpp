#pragma once

#include <vector>

#include "riscap/channel.hpp"
#include "riscap/complex_matrix.hpp"
#include "riscap/rng.hpp"
#include "riscap/scenario.hpp"

namespace riscap {

/// Beam-steering codebook over the surface grid: entry (i, j) is the
/// Kronecker product of horizontal and vertical steering vectors at the
/// quantized angles 2(i-1)/n_h and 2(j-1)/n_v, ordered i-major.
///
/// Entries are built as e^{j phase} from the exact per-element phase sums,
/// so entry k and phases(k) describe the same coefficient.
struct Codebook {
  std::vector<std::vector<cplx>> entries;
  std::vector<std::vector<double>> phases_;  // matching phase angles
  std::size_t n_h = 0;
  std::size_t n_v = 0;

  std::size_t size() const { return entries.size(); }
  RISPhases phases(std::size_t index) const { return {phases_[index]}; }
};

Codebook build_codebook(std::size_t n_h, std::size_t n_v);

/// Known transmit codeword, n_t x m. Rows are mutually orthogonal and the
/// total energy is m * P_T.
struct PilotCodeword {
  ComplexMatrix s;
};

/// First n_t rows of the m x m unitary DFT matrix, scaled to the total
/// power constraint. Requires m >= n_t so every transmit dimension is
/// excited.
PilotCodeword make_pilot(const ScenarioConfig& config);

/// Deterministic sweep: slot l uses codebook entry (l-1) mod |cb|.
std::vector<RISPhases> ris_schedule(const Codebook& cb, std::size_t l);

/// The received pilot blocks and their canonical flattening: per block,
/// all real parts in row-major order, then all imaginary parts; blocks in
/// slot order. Both networks consume exactly this layout.
struct PilotTensor {
  std::vector<ComplexMatrix> blocks;  ///< l blocks, each n_r x m
  std::vector<double> flat;           ///< length 2 * n_r * m * l
};

std::vector<double> flatten_blocks(const std::vector<ComplexMatrix>& blocks);
std::vector<ComplexMatrix> unflatten_blocks(const std::vector<double>& flat,
                                            std::size_t n_r, std::size_t m,
                                            std::size_t l);

/// Receives one pilot sweep: r(l) = h_r_adj diag(v(l)) h_t s + noise, with
/// fresh complex Gaussian noise of per-entry variance sigma^2 in every slot.
PilotTensor receive_pilots(const ChannelRealization& re,
                           const std::vector<RISPhases>& schedule,
                           const PilotCodeword& pilot,
                           const ScenarioConfig& config, Rng& rng);

}  // namespace riscap
