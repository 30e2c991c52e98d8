#include "riscap/capacity_net.hpp"

#include <cmath>
#include <limits>
#include <numeric>
#include <sstream>

#include "riscap/phase_net.hpp"

namespace riscap {

CapacityNet make_capacity_net(const ScenarioConfig& config,
                              const std::vector<std::size_t>& hidden_dims,
                              bool trig_phase_encoding, Rng& rng) {
  CapacityNet cn;
  cn.n_r = config.n_r;
  cn.m = config.m;
  cn.l = config.l;
  cn.n = config.n();
  cn.input_scale = pilot_input_scale(config);
  cn.trig_phase_encoding = trig_phase_encoding;
  std::vector<std::size_t> dims;
  dims.push_back(cn.flat_len() + cn.phase_block_len());
  dims.insert(dims.end(), hidden_dims.begin(), hidden_dims.end());
  dims.push_back(1);
  cn.net = nn::DenseNet(dims, rng);
  return cn;
}

std::vector<double> assemble_capnet_input(const CapacityNet& cn,
                                          const PilotTensor& y,
                                          const RISPhases& phases) {
  if (y.flat.size() != cn.flat_len() || phases.theta.size() != cn.n) {
    std::ostringstream os;
    os << "capacity net: got pilot length " << y.flat.size() << " and "
       << phases.theta.size() << " phases, expected " << cn.flat_len()
       << " and " << cn.n;
    throw ShapeError(os.str());
  }
  std::vector<double> x;
  x.reserve(cn.flat_len() + cn.phase_block_len());
  for (double v : y.flat) x.push_back(v * cn.input_scale);
  if (cn.trig_phase_encoding) {
    for (double t : phases.theta) x.push_back(std::cos(t));
    for (double t : phases.theta) x.push_back(std::sin(t));
  } else {
    x.insert(x.end(), phases.theta.begin(), phases.theta.end());
  }
  return x;
}

double predict_rate(const CapacityNet& cn, const PilotTensor& y,
                    const RISPhases& phases) {
  return cn.net.forward(assemble_capnet_input(cn, y, phases))[0];
}

std::vector<CapnetSample> gen_capnet_dataset(const ScenarioConfig& config,
                                             std::size_t n_samples,
                                             Rng& rng) {
  if (n_samples < 1) {
    throw ShapeError("gen_capnet_dataset: need at least one sample");
  }
  const Codebook cb = build_codebook(config.n_h, config.n_v);
  const std::vector<RISPhases> schedule = ris_schedule(cb, config.l);
  const PilotCodeword pilot = make_pilot(config);
  const std::uint64_t base = rng.next_u64();

  std::vector<CapnetSample> out;
  out.reserve(n_samples);
  for (std::size_t i = 0; i < n_samples; ++i) {
    Rng sub(base + i);  // one stream per sample
    const ChannelRealization re = sample_channel(config, sub);
    PilotTensor y = receive_pilots(re, schedule, pilot, config, sub);
    RISPhases candidate;
    if (sub.uniform() < 0.5) {
      candidate.theta.resize(config.n());
      for (double& t : candidate.theta) t = sub.uniform(0.0, Rng::two_pi());
    } else {
      candidate = cb.phases(sub.below(cb.size()));
    }
    const double rate =
        achievable_rate(effective_channel(re, candidate), config);
    out.push_back(CapnetSample{std::move(y), std::move(candidate), rate});
  }
  return out;
}

CapnetTrainReport train_capacity_net(CapacityNet& cn,
                                     const std::vector<CapnetSample>& data,
                                     const nn::TrainConfig& tc) {
  if (data.empty()) {
    throw ShapeError("train_capacity_net: empty dataset");
  }
  const std::size_t heldout_count = data.size() / 10;
  const std::size_t train_count = data.size() - heldout_count;

  Rng rng(tc.seed);
  nn::AdamState adam(cn.net.param_count(), tc.learning_rate);
  std::vector<double> grads(cn.net.param_count(), 0.0);
  std::vector<std::size_t> order(train_count);
  std::iota(order.begin(), order.end(), std::size_t{0});

  CapnetTrainReport report;
  nn::Tape tape;
  for (std::size_t epoch = 0; epoch < tc.epochs; ++epoch) {
    rng.shuffle(order);
    double sq_sum = 0.0;
    for (std::size_t start = 0; start < order.size();
         start += tc.batch_size) {
      const std::size_t stop = std::min(order.size(), start + tc.batch_size);
      const double inv_batch = 1.0 / static_cast<double>(stop - start);
      std::fill(grads.begin(), grads.end(), 0.0);
      for (std::size_t idx = start; idx < stop; ++idx) {
        const CapnetSample& sample = data[order[idx]];
        const std::vector<double> x =
            assemble_capnet_input(cn, sample.pilots, sample.phases);
        const double pred = cn.net.forward(x, &tape)[0];
        const double err = pred - sample.rate;
        sq_sum += err * err;
        const std::vector<double> dl_dy = {2.0 * err * inv_batch};
        cn.net.backward(tape, dl_dy, grads);
      }
      nn::adam_step(cn.net.params(), grads, adam);
      cn.net.bump_version();
    }
    report.train_mse.push_back(sq_sum / static_cast<double>(train_count));

    double heldout = std::numeric_limits<double>::quiet_NaN();
    if (heldout_count > 0) {
      double s = 0.0;
      for (std::size_t i = train_count; i < data.size(); ++i) {
        const double pred = predict_rate(cn, data[i].pilots, data[i].phases);
        const double err = pred - data[i].rate;
        s += err * err;
      }
      heldout = s / static_cast<double>(heldout_count);
    }
    report.heldout_mse.push_back(heldout);
  }
  return report;
}

void save_capacity_net(const CapacityNet& cn, const std::string& path) {
  nn::ModelFile model;
  model.role = "capacity-net";
  model.meta_u32 = {static_cast<std::uint32_t>(cn.n_r),
                    static_cast<std::uint32_t>(cn.m),
                    static_cast<std::uint32_t>(cn.l),
                    static_cast<std::uint32_t>(cn.n),
                    cn.trig_phase_encoding ? 1u : 0u};
  model.meta_f64 = {cn.input_scale};
  model.net = cn.net;
  nn::save_model(model, path);
}

CapacityNet load_capacity_net(const std::string& path) {
  nn::ModelFile model = nn::load_model(path);
  if (model.role != "capacity-net") {
    throw IoError("expected a capacity-net model, found role '" + model.role +
                  "' in " + path);
  }
  if (model.meta_u32.size() != 5 || model.meta_f64.size() != 1) {
    throw IoError("capacity-net model metadata malformed in " + path);
  }
  CapacityNet cn;
  cn.net = std::move(model.net);
  cn.n_r = model.meta_u32[0];
  cn.m = model.meta_u32[1];
  cn.l = model.meta_u32[2];
  cn.n = model.meta_u32[3];
  cn.trig_phase_encoding = model.meta_u32[4] != 0;
  cn.input_scale = model.meta_f64[0];
  return cn;
}

}  // namespace riscap
