#include "riscap/phase_net.hpp"

#include <cmath>
#include <numeric>
#include <sstream>

namespace riscap {

double pilot_input_scale(const ScenarioConfig& config) {
  const double signal = static_cast<double>(config.n()) *
                        config.pathloss_t_lin * config.pathloss_r_lin *
                        config.p_t_mw;
  return 1.0 / std::sqrt(0.5 * (signal + config.sigma2_mw));
}

PhaseNet make_phase_net(const ScenarioConfig& config,
                        const std::vector<std::size_t>& hidden_dims,
                        Rng& rng) {
  std::vector<std::size_t> dims;
  dims.push_back(config.flat_len());
  dims.insert(dims.end(), hidden_dims.begin(), hidden_dims.end());
  dims.push_back(config.n());
  PhaseNet pn;
  pn.net = nn::DenseNet(dims, rng);
  pn.n_r = config.n_r;
  pn.m = config.m;
  pn.l = config.l;
  pn.n = config.n();
  pn.input_scale = pilot_input_scale(config);
  return pn;
}

namespace {

std::vector<double> scaled_input(const PhaseNet& pn,
                                 const PilotTensor& y) {
  if (y.flat.size() != pn.net.input_dim()) {
    std::ostringstream os;
    os << "phase network: pilot tensor has " << y.flat.size()
       << " values, network expects " << pn.net.input_dim();
    throw ShapeError(os.str());
  }
  std::vector<double> x(y.flat.size());
  for (std::size_t i = 0; i < x.size(); ++i) x[i] = y.flat[i] * pn.input_scale;
  return x;
}

}  // namespace

RISPhases infer_phases(const PhaseNet& pn, const PilotTensor& y) {
  return RISPhases{pn.net.forward(scaled_input(pn, y))};
}

RISPhases infer_phases_quantized(const PhaseNet& pn, const PilotTensor& y,
                                 const Codebook& cb) {
  const RISPhases raw = infer_phases(pn, y);
  const std::vector<cplx> v = raw.response();
  std::size_t best = 0;
  double best_corr = -1.0;
  for (std::size_t e = 0; e < cb.size(); ++e) {
    cplx corr = 0.0;
    for (std::size_t i = 0; i < v.size(); ++i) {
      corr += std::conj(v[i]) * cb.entries[e][i];
    }
    if (std::abs(corr) > best_corr) {
      best_corr = std::abs(corr);
      best = e;
    }
  }
  return cb.phases(best);
}

PhaseTrainReport train_unsupervised_csi(PhaseNet& pn,
                                        const std::vector<CsiSample>& dataset,
                                        const ScenarioConfig& config,
                                        const nn::TrainConfig& tc) {
  if (dataset.empty()) {
    throw ShapeError("train_unsupervised_csi: empty dataset");
  }
  Rng rng(tc.seed);
  nn::AdamState adam(pn.net.param_count(), tc.learning_rate);
  std::vector<double> grads(pn.net.param_count(), 0.0);
  std::vector<std::size_t> order(dataset.size());
  std::iota(order.begin(), order.end(), std::size_t{0});

  PhaseTrainReport report;
  nn::Tape tape;
  for (std::size_t epoch = 0; epoch < tc.epochs; ++epoch) {
    rng.shuffle(order);
    double rate_sum = 0.0;
    for (std::size_t start = 0; start < order.size();
         start += tc.batch_size) {
      const std::size_t stop = std::min(order.size(), start + tc.batch_size);
      const double inv_batch = 1.0 / static_cast<double>(stop - start);
      std::fill(grads.begin(), grads.end(), 0.0);
      for (std::size_t idx = start; idx < stop; ++idx) {
        const CsiSample& sample = dataset[order[idx]];
        const std::vector<double> x = scaled_input(pn, sample.pilots);
        RISPhases phases{pn.net.forward(x, &tape)};
        rate_sum += achievable_rate(
            effective_channel(sample.channel, phases), config);
        // Loss is -R, so the output gradient is the negated rate gradient,
        // averaged over the batch.
        std::vector<double> dl_dy =
            rate_gradient(sample.channel, phases, config);
        for (double& g : dl_dy) g *= -inv_batch;
        pn.net.backward(tape, dl_dy, grads);
      }
      nn::adam_step(pn.net.params(), grads, adam);
      pn.net.bump_version();
    }
    report.epoch_mean_rate.push_back(rate_sum /
                                     static_cast<double>(order.size()));
  }
  return report;
}

void save_phase_net(const PhaseNet& pn, const std::string& path) {
  nn::ModelFile model;
  model.role = "phase-net";
  model.meta_u32 = {static_cast<std::uint32_t>(pn.n_r),
                    static_cast<std::uint32_t>(pn.m),
                    static_cast<std::uint32_t>(pn.l),
                    static_cast<std::uint32_t>(pn.n)};
  model.meta_f64 = {pn.input_scale};
  model.net = pn.net;
  nn::save_model(model, path);
}

PhaseNet load_phase_net(const std::string& path) {
  nn::ModelFile model = nn::load_model(path);
  if (model.role != "phase-net") {
    throw IoError("expected a phase-net model, found role '" + model.role +
                  "' in " + path);
  }
  if (model.meta_u32.size() != 4 || model.meta_f64.size() != 1) {
    throw IoError("phase-net model metadata malformed in " + path);
  }
  PhaseNet pn;
  pn.net = std::move(model.net);
  pn.n_r = model.meta_u32[0];
  pn.m = model.meta_u32[1];
  pn.l = model.meta_u32[2];
  pn.n = model.meta_u32[3];
  pn.input_scale = model.meta_f64[0];
  return pn;
}

}  // namespace riscap
