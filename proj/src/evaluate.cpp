#include "riscap/evaluate.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>

namespace riscap {

namespace {

// Fixed offsets keep the independent random streams of one run apart.
constexpr std::uint64_t kEvalOffset = 1000003;
constexpr std::uint64_t kTrainOffset = 2000003;
constexpr std::uint64_t kRandomPickOffset = 3000017;
constexpr std::uint64_t kCapnetEvalOffset = 4000037;
constexpr std::uint64_t kPilotTrainOffset = 5000011;
constexpr std::uint64_t kAxisStride = 7919;

std::string fmt_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  return buf;
}

}  // namespace

std::vector<EvalPoint> make_eval_set(const ScenarioConfig& config,
                                     std::size_t n,
                                     std::uint64_t base_seed) {
  const Codebook cb = build_codebook(config.n_h, config.n_v);
  const std::vector<RISPhases> schedule = ris_schedule(cb, config.l);
  const PilotCodeword pilot = make_pilot(config);
  std::vector<EvalPoint> out;
  out.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    Rng rng(base_seed + i);
    ChannelRealization re = sample_channel(config, rng);
    PilotTensor y = receive_pilots(re, schedule, pilot, config, rng);
    out.push_back(EvalPoint{std::move(re), std::move(y)});
  }
  return out;
}

std::vector<EvalPoint> eval_points_from_dataset(const Dataset& ds) {
  if (!ds.has_realizations) {
    throw ShapeError(
        "eval_points_from_dataset: dataset stores no realizations");
  }
  std::vector<EvalPoint> out;
  out.reserve(ds.records.size());
  for (std::size_t i = 0; i < ds.records.size(); ++i) {
    out.push_back(EvalPoint{*ds.records[i].realization, ds.tensor(i)});
  }
  return out;
}

MethodSummary summarize(const std::string& method,
                        const std::vector<double>& values) {
  MethodSummary s;
  s.method = method;
  s.n_eval = values.size();
  if (values.empty()) {
    s.failed = true;
    s.error = "no evaluations";
    return s;
  }
  double sum = 0.0;
  for (double v : values) sum += v;
  s.mean = sum / static_cast<double>(values.size());
  double sq = 0.0;
  for (double v : values) sq += (v - s.mean) * (v - s.mean);
  if (values.size() > 1) {
    const double var = sq / static_cast<double>(values.size() - 1);
    s.std_err = std::sqrt(var / static_cast<double>(values.size()));
  }
  return s;
}

MethodSummary evaluate_baseline(const std::string& method,
                                const std::vector<EvalPoint>& heldout,
                                const ExperimentConfig& config,
                                const ScenarioConfig& rate_config,
                                std::uint64_t eval_seed) {
  const Codebook cb =
      build_codebook(rate_config.n_h, rate_config.n_v);
  std::vector<double> rates;
  rates.reserve(heldout.size());
  for (std::size_t i = 0; i < heldout.size(); ++i) {
    const EvalPoint& point = heldout[i];
    RISPhases phases;
    if (method == "dsm") {
      phases = dsm_optimize(point.channel, rate_config,
                            config.dsm_grid_points, config.dsm_max_sweeps,
                            config.dsm_tol)
                   .phases;
    } else if (method == "random") {
      Rng pick(eval_seed + kRandomPickOffset + i);
      phases = random_codebook(cb, pick);
    } else if (method == "exhaustive") {
      phases = cb.phases(
          exhaustive_codebook(point.channel, cb, rate_config).index);
    } else {
      throw IoError("unknown baseline '" + method +
                    "', expected dsm|random|exhaustive");
    }
    rates.push_back(achievable_rate(effective_channel(point.channel, phases),
                                    rate_config));
  }
  return summarize(method, rates);
}

MethodSummary evaluate_model(const std::string& name, const PhaseNet& pn,
                             const std::vector<EvalPoint>& heldout,
                             const ExperimentConfig& config,
                             const ScenarioConfig& rate_config) {
  const Codebook cb = build_codebook(rate_config.n_h, rate_config.n_v);
  std::vector<double> rates;
  rates.reserve(heldout.size());
  for (const EvalPoint& point : heldout) {
    const RISPhases phases =
        config.quantize_inference
            ? infer_phases_quantized(pn, point.pilots, cb)
            : infer_phases(pn, point.pilots);
    rates.push_back(achievable_rate(effective_channel(point.channel, phases),
                                    rate_config));
  }
  return summarize(name, rates);
}

SweepAxis sweep_axis_from_string(const std::string& s) {
  if (s == "pilot-length") return SweepAxis::PilotLength;
  if (s == "ris-elements") return SweepAxis::RisElements;
  if (s == "transmit-power") return SweepAxis::TransmitPower;
  throw IoError("unknown sweep axis '" + s +
                "', expected pilot-length|ris-elements|transmit-power");
}

std::string to_string(SweepAxis axis) {
  switch (axis) {
    case SweepAxis::PilotLength: return "pilot-length";
    case SweepAxis::RisElements: return "ris-elements";
    case SweepAxis::TransmitPower: return "transmit-power";
  }
  return "?";
}

std::vector<double> default_axis_values(SweepAxis axis) {
  switch (axis) {
    case SweepAxis::PilotLength: return {2, 4, 8, 16};
    case SweepAxis::RisElements: return {4, 16};
    case SweepAxis::TransmitPower: return {140, 150, 160};
  }
  return {};
}

namespace {

ScenarioConfig variant_scenario(const ScenarioConfig& base, SweepAxis axis,
                                double value) {
  ScenarioConfig sc = base;
  switch (axis) {
    case SweepAxis::PilotLength: {
      const double rounded = std::round(value);
      if (rounded < 1 || rounded != value) {
        throw ShapeError("pilot-length values must be positive integers");
      }
      sc.l = static_cast<std::size_t>(rounded);
      break;
    }
    case SweepAxis::RisElements: {
      const double side = std::sqrt(value);
      const double rounded = std::round(side);
      if (rounded < 1 || rounded * rounded != value) {
        std::ostringstream os;
        os << "ris-elements value " << value
           << " is not a square element count";
        throw ShapeError(os.str());
      }
      sc.n_h = static_cast<std::size_t>(rounded);
      sc.n_v = static_cast<std::size_t>(rounded);
      break;
    }
    case SweepAxis::TransmitPower:
      // Axis is P_T / sigma^2 in dB; noise stays put, power moves.
      sc.p_t_dbm = sc.noise_dbm + value;
      break;
  }
  return ScenarioConfig::create(sc);
}

struct TrainedModels {
  PhaseNet unsup_csi;
  bool has_unsup_csi = false;
  PhaseNet capnet_unsup;
  bool has_capnet_unsup = false;
  CapacityNet capnet;
  bool has_capnet = false;
};

bool wants(const std::vector<std::string>& methods, const std::string& name) {
  for (const std::string& m : methods) {
    if (m == name) return true;
  }
  return false;
}

/// Trains whatever the requested methods need at one scenario point.
TrainedModels train_point_models(const ExperimentConfig& config,
                                 const ScenarioConfig& scenario,
                                 const std::vector<std::string>& methods,
                                 std::uint64_t train_base) {
  TrainedModels models;
  if (wants(methods, "unsup-csi")) {
    const Dataset ds = generate_dataset(scenario, DatasetKind::Csi,
                                        config.n_train, train_base);
    Rng init(config.phase_net.train.seed);
    models.unsup_csi = make_phase_net(scenario, config.phase_net.hidden, init);
    train_unsupervised_csi(models.unsup_csi, to_csi_samples(ds), scenario,
                           config.phase_net.train);
    models.has_unsup_csi = true;
  }
  if (wants(methods, "capnet-unsup") || wants(methods, "capnet-mse")) {
    Rng gen(train_base);
    const std::vector<CapnetSample> samples =
        gen_capnet_dataset(scenario, config.n_train, gen);
    Rng init(config.capacity_net.train.seed);
    models.capnet = make_capacity_net(scenario, config.capacity_net.hidden,
                                      config.trig_phase_encoding, init);
    train_capacity_net(models.capnet, samples, config.capacity_net.train);
    models.has_capnet = true;
  }
  if (wants(methods, "capnet-unsup")) {
    const Dataset pilots = generate_dataset(scenario, DatasetKind::Pilots,
                                            config.n_train,
                                            train_base + kPilotTrainOffset);
    Rng init(config.phase_net.train.seed + 1);
    models.capnet_unsup =
        make_phase_net(scenario, config.phase_net.hidden, init);
    train_unsupervised_surrogate(models.capnet_unsup, models.capnet,
                                 to_pilot_tensors(pilots),
                                 config.phase_net.train);
    models.has_capnet_unsup = true;
  }
  return models;
}

MethodSummary capnet_mse_summary(const CapacityNet& capnet,
                                 const ScenarioConfig& scenario,
                                 std::size_t n_heldout,
                                 std::uint64_t eval_base) {
  Rng gen(eval_base + kCapnetEvalOffset);
  const std::vector<CapnetSample> heldout =
      gen_capnet_dataset(scenario, n_heldout, gen);
  std::vector<double> sq_errors;
  sq_errors.reserve(heldout.size());
  for (const CapnetSample& s : heldout) {
    const double err = predict_rate(capnet, s.pilots, s.phases) - s.rate;
    sq_errors.push_back(err * err);
  }
  return summarize("capnet-mse", sq_errors);
}

}  // namespace

std::vector<SweepRow> run_sweep(const ExperimentConfig& config,
                                SweepAxis axis,
                                const std::vector<double>& values,
                                const std::vector<std::string>& methods,
                                std::uint64_t run_seed) {
  std::vector<SweepRow> rows;
  const std::uint64_t eval_base = run_seed + kEvalOffset;

  // On the generalizability axis the models are trained once, at the base
  // scenario, and reused for every power point.
  TrainedModels base_models;
  if (axis == SweepAxis::TransmitPower) {
    base_models = train_point_models(config, config.scenario, methods,
                                     run_seed + kTrainOffset);
  }

  for (std::size_t a = 0; a < values.size(); ++a) {
    const double value = values[a];
    ScenarioConfig scenario;
    try {
      scenario = variant_scenario(config.scenario, axis, value);
    } catch (const std::exception& e) {
      for (const std::string& method : methods) {
        SweepRow row;
        row.axis_value = value;
        row.summary.method = method;
        row.summary.failed = true;
        row.summary.error = e.what();
        rows.push_back(row);
      }
      continue;
    }

    // Pilot reception happens at the base power on the power axis; only
    // the rate evaluation uses the point's power.
    const ScenarioConfig& pilot_scenario =
        axis == SweepAxis::TransmitPower ? config.scenario : scenario;
    const ScenarioConfig& rate_scenario = scenario;

    const std::vector<EvalPoint> heldout =
        make_eval_set(pilot_scenario, config.n_heldout, eval_base);

    const TrainedModels* models = &base_models;
    TrainedModels point_models;
    if (axis != SweepAxis::TransmitPower) {
      point_models = train_point_models(
          config, scenario, methods,
          run_seed + kTrainOffset + kAxisStride * (a + 1));
      models = &point_models;
    }

    for (const std::string& method : methods) {
      SweepRow row;
      row.axis_value = value;
      try {
        if (method == "dsm" || method == "random" || method == "exhaustive") {
          row.summary = evaluate_baseline(method, heldout, config,
                                          rate_scenario, eval_base);
        } else if (method == "unsup-csi") {
          row.summary = evaluate_model(method, models->unsup_csi, heldout,
                                       config, rate_scenario);
        } else if (method == "capnet-unsup") {
          row.summary = evaluate_model(method, models->capnet_unsup, heldout,
                                       config, rate_scenario);
        } else if (method == "capnet-mse") {
          row.summary = capnet_mse_summary(models->capnet, pilot_scenario,
                                           config.n_heldout, eval_base);
        } else {
          throw IoError("unknown sweep method '" + method + "'");
        }
      } catch (const std::exception& e) {
        row.summary = MethodSummary{};
        row.summary.method = method;
        row.summary.failed = true;
        row.summary.error = e.what();
      }
      rows.push_back(std::move(row));
    }
  }
  return rows;
}

namespace {

void append_csv_row(std::ostringstream& os, const std::string& axis_label,
                    const MethodSummary& s, const std::string& hash) {
  os << axis_label << "," << s.method << ",";
  if (s.failed) {
    os << "nan,nan,0," << hash << "\n";
  } else {
    os << fmt_double(s.mean) << "," << fmt_double(s.std_err) << ","
       << s.n_eval << "," << hash << "\n";
  }
}

}  // namespace

std::string rows_to_csv(const std::vector<SweepRow>& rows,
                        const std::string& manifest_hash) {
  std::ostringstream os;
  os << "axis,method,mean_rate_bits,std_err,n_eval,manifest_hash\n";
  for (const SweepRow& row : rows) {
    append_csv_row(os, fmt_double(row.axis_value), row.summary,
                   manifest_hash);
  }
  return os.str();
}

std::string summaries_to_csv(const std::string& axis_label,
                             const std::vector<MethodSummary>& summaries,
                             const std::string& manifest_hash) {
  std::ostringstream os;
  os << "axis,method,mean_rate_bits,std_err,n_eval,manifest_hash\n";
  for (const MethodSummary& s : summaries) {
    append_csv_row(os, axis_label, s, manifest_hash);
  }
  return os.str();
}

}  // namespace riscap
