#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "riscap/errors.hpp"
#include "riscap/rng.hpp"

namespace riscap::nn {

/// Batching and optimizer settings for one training run.
struct TrainConfig {
  std::size_t batch_size = 256;
  double learning_rate = 3e-5;
  std::size_t epochs = 1;
  std::uint64_t seed = 1;
};

/// Activations cached by a forward pass, consumed by backward. A tape is
/// only valid against the exact parameter state that produced it; the
/// version stamp guards against use after an update.
struct Tape {
  std::vector<std::vector<double>> inputs;   ///< input vector of each layer
  std::vector<std::vector<double>> preacts;  ///< affine output of each layer
  std::uint64_t version = 0;
};

/// Fully connected network: rectifier hidden layers, identity output.
/// All parameters live in one flat buffer, per layer weights (row-major,
/// out x in) followed by biases, so the optimizer and the gradient buffer
/// share a single layout.
class DenseNet {
 public:
  DenseNet() = default;

  /// Scaled-uniform init in +/- sqrt(6 / (fan_in + fan_out)), zero biases.
  DenseNet(std::vector<std::size_t> layer_dims, Rng& rng);

  const std::vector<std::size_t>& layer_dims() const { return layer_dims_; }
  std::size_t layer_count() const { return layer_dims_.size() - 1; }
  std::size_t input_dim() const { return layer_dims_.front(); }
  std::size_t output_dim() const { return layer_dims_.back(); }

  std::size_t param_count() const { return params_.size(); }
  std::span<double> params() { return params_; }
  std::span<const double> params() const { return params_; }
  std::uint64_t version() const { return version_; }

  std::span<double> weights(std::size_t layer);
  std::span<const double> weights(std::size_t layer) const;
  std::span<double> biases(std::size_t layer);
  std::span<const double> biases(std::size_t layer) const;

  /// Marks the parameter state as changed, invalidating outstanding tapes.
  void bump_version() { ++version_; }

  /// Replaces the whole parameter vector (used by model loading).
  void set_params(std::vector<double> params);

  std::vector<double> forward(std::span<const double> x,
                              Tape* tape = nullptr) const;

  /// Reverse-mode gradients for the scalar loss whose output gradient is
  /// dl_dy. Parameter gradients are accumulated (+=) into param_grads,
  /// which must have param_count() entries; the return value is the
  /// gradient with respect to the input vector.
  std::vector<double> backward(const Tape& tape, std::span<const double> dl_dy,
                               std::span<double> param_grads) const;

 private:
  std::vector<std::size_t> layer_dims_;
  std::vector<std::size_t> layer_offsets_;  // offset of each layer's block
  std::vector<double> params_;
  std::uint64_t version_ = 0;
};

/// Adam with bias correction. Moments are zero-initialized and the step
/// counter advances once per call.
struct AdamState {
  std::vector<double> first_moment;
  std::vector<double> second_moment;
  std::size_t step_count = 0;
  double learning_rate = 1e-3;
  double beta1 = 0.9;
  double beta2 = 0.999;
  double epsilon = 1e-8;

  AdamState(std::size_t param_count, double lr)
      : first_moment(param_count, 0.0),
        second_moment(param_count, 0.0),
        learning_rate(lr) {}
};

void adam_step(std::span<double> params, std::span<const double> grads,
               AdamState& state);

struct MseResult {
  double loss = 0.0;
  std::vector<double> grad;
};

/// Mean squared error and its gradient 2 (pred - target) / len.
MseResult mse_loss(std::span<const double> pred,
                   std::span<const double> target);

/// Portable model container. Role and metadata identify what the network
/// is for (e.g. scenario dimensions, input scaling).
struct ModelFile {
  std::string role;
  std::vector<std::uint32_t> meta_u32;
  std::vector<double> meta_f64;
  DenseNet net;
};

/// Binary layout: magic "CAPN", format version u16, role string, metadata
/// arrays, layer count, per-layer (rows, cols) with little-endian 64-bit
/// float weights then biases, trailing CRC-32. Round-trip is bit-exact.
void save_model(const ModelFile& model, const std::string& path);
ModelFile load_model(const std::string& path);

std::vector<std::uint8_t> serialize_model(const ModelFile& model);
ModelFile deserialize_model(std::span<const std::uint8_t> bytes);

}  // namespace riscap::nn
