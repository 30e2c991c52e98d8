#include "riscap/capnet_unsup.hpp"

#include <cmath>
#include <numeric>
#include <sstream>

namespace riscap {

SurrogateTrainReport train_unsupervised_surrogate(
    PhaseNet& pn, const CapacityNet& frozen,
    const std::vector<PilotTensor>& dataset, const nn::TrainConfig& tc,
    const EpochHook& on_epoch) {
  if (dataset.empty()) {
    throw ShapeError("train_unsupervised_surrogate: empty dataset");
  }
  if (pn.net.output_dim() != frozen.n) {
    std::ostringstream os;
    os << "train_unsupervised_surrogate: phase network emits "
       << pn.net.output_dim() << " angles, surrogate expects " << frozen.n;
    throw ShapeError(os.str());
  }

  Rng rng(tc.seed);
  nn::AdamState adam(pn.net.param_count(), tc.learning_rate);
  std::vector<double> grads(pn.net.param_count(), 0.0);
  std::vector<double> frozen_grads_scratch(frozen.net.param_count(), 0.0);
  std::vector<std::size_t> order(dataset.size());
  std::iota(order.begin(), order.end(), std::size_t{0});

  SurrogateTrainReport report;
  nn::Tape pn_tape;
  nn::Tape cn_tape;
  for (std::size_t epoch = 0; epoch < tc.epochs; ++epoch) {
    rng.shuffle(order);
    double surrogate_sum = 0.0;
    for (std::size_t start = 0; start < order.size();
         start += tc.batch_size) {
      const std::size_t stop = std::min(order.size(), start + tc.batch_size);
      const double inv_batch = 1.0 / static_cast<double>(stop - start);
      std::fill(grads.begin(), grads.end(), 0.0);
      double batch_loss = 0.0;
      for (std::size_t idx = start; idx < stop; ++idx) {
        const PilotTensor& y = dataset[order[idx]];

        std::vector<double> x_pn(y.flat.size());
        for (std::size_t i = 0; i < x_pn.size(); ++i) {
          x_pn[i] = y.flat[i] * pn.input_scale;
        }
        const std::vector<double> theta = pn.net.forward(x_pn, &pn_tape);

        const std::vector<double> x_cn =
            assemble_capnet_input(frozen, y, RISPhases{theta});
        const double pred = frozen.net.forward(x_cn, &cn_tape)[0];
        surrogate_sum += pred;
        batch_loss += -pred;

        // Pull the loss gradient back through the frozen surrogate to its
        // inputs; only the phase block feeds the phase network.
        std::fill(frozen_grads_scratch.begin(), frozen_grads_scratch.end(),
                  0.0);
        const std::vector<double> dl_dx = frozen.net.backward(
            cn_tape, std::vector<double>{-inv_batch}, frozen_grads_scratch);
        std::vector<double> dl_dtheta(frozen.n, 0.0);
        const std::size_t off = frozen.flat_len();
        if (frozen.trig_phase_encoding) {
          for (std::size_t i = 0; i < frozen.n; ++i) {
            dl_dtheta[i] = -std::sin(theta[i]) * dl_dx[off + i] +
                           std::cos(theta[i]) * dl_dx[off + frozen.n + i];
          }
        } else {
          for (std::size_t i = 0; i < frozen.n; ++i) {
            dl_dtheta[i] = dl_dx[off + i];
          }
        }
        pn.net.backward(pn_tape, dl_dtheta, grads);
      }
      nn::adam_step(pn.net.params(), grads, adam);
      pn.net.bump_version();
      report.step_loss.push_back(batch_loss * inv_batch);
    }
    report.epoch_mean_surrogate_rate.push_back(
        surrogate_sum / static_cast<double>(order.size()));
    if (on_epoch) {
      on_epoch(epoch, pn);
    }
  }
  return report;
}

}  // namespace riscap
