#include "riscap/nn.hpp"

#include <array>
#include <cmath>
#include <cstring>
#include <fstream>
#include <iterator>
#include <sstream>

namespace riscap::nn {

DenseNet::DenseNet(std::vector<std::size_t> layer_dims, Rng& rng)
    : layer_dims_(std::move(layer_dims)) {
  if (layer_dims_.size() < 2) {
    throw ShapeError("DenseNet: need at least an input and an output dim");
  }
  std::size_t total = 0;
  layer_offsets_.reserve(layer_count());
  for (std::size_t k = 0; k < layer_count(); ++k) {
    layer_offsets_.push_back(total);
    total += layer_dims_[k + 1] * layer_dims_[k] + layer_dims_[k + 1];
  }
  params_.resize(total, 0.0);
  for (std::size_t k = 0; k < layer_count(); ++k) {
    const double fan_in = static_cast<double>(layer_dims_[k]);
    const double fan_out = static_cast<double>(layer_dims_[k + 1]);
    const double limit = std::sqrt(6.0 / (fan_in + fan_out));
    for (double& w : weights(k)) w = rng.uniform(-limit, limit);
    // biases stay zero
  }
}

std::span<double> DenseNet::weights(std::size_t layer) {
  return {params_.data() + layer_offsets_[layer],
          layer_dims_[layer + 1] * layer_dims_[layer]};
}

std::span<const double> DenseNet::weights(std::size_t layer) const {
  return {params_.data() + layer_offsets_[layer],
          layer_dims_[layer + 1] * layer_dims_[layer]};
}

std::span<double> DenseNet::biases(std::size_t layer) {
  return {params_.data() + layer_offsets_[layer] +
              layer_dims_[layer + 1] * layer_dims_[layer],
          layer_dims_[layer + 1]};
}

std::span<const double> DenseNet::biases(std::size_t layer) const {
  return {params_.data() + layer_offsets_[layer] +
              layer_dims_[layer + 1] * layer_dims_[layer],
          layer_dims_[layer + 1]};
}

void DenseNet::set_params(std::vector<double> params) {
  if (params.size() != params_.size()) {
    throw ShapeError("DenseNet::set_params: size mismatch");
  }
  params_ = std::move(params);
  ++version_;
}

std::vector<double> DenseNet::forward(std::span<const double> x,
                                      Tape* tape) const {
  if (x.size() != input_dim()) {
    std::ostringstream os;
    os << "DenseNet::forward: input has " << x.size() << " values, expected "
       << input_dim();
    throw ShapeError(os.str());
  }
  if (tape != nullptr) {
    tape->inputs.assign(layer_count(), {});
    tape->preacts.assign(layer_count(), {});
    tape->version = version_;
  }
  std::vector<double> act(x.begin(), x.end());
  for (std::size_t k = 0; k < layer_count(); ++k) {
    const std::size_t in = layer_dims_[k];
    const std::size_t out = layer_dims_[k + 1];
    const std::span<const double> w = weights(k);
    const std::span<const double> b = biases(k);
    std::vector<double> pre(out);
    for (std::size_t i = 0; i < out; ++i) {
      double s = b[i];
      const double* row = w.data() + i * in;
      for (std::size_t j = 0; j < in; ++j) s += row[j] * act[j];
      pre[i] = s;
    }
    if (tape != nullptr) {
      tape->inputs[k] = std::move(act);
      tape->preacts[k] = pre;
    }
    const bool hidden = k + 1 < layer_count();
    if (hidden) {
      for (double& v : pre) v = v > 0.0 ? v : 0.0;
    }
    act = std::move(pre);
  }
  return act;
}

std::vector<double> DenseNet::backward(const Tape& tape,
                                       std::span<const double> dl_dy,
                                       std::span<double> param_grads) const {
  if (tape.version != version_) {
    throw StaleTapeError(
        "DenseNet::backward: tape was recorded against a different parameter "
        "state");
  }
  if (tape.inputs.size() != layer_count() || dl_dy.size() != output_dim()) {
    throw ShapeError("DenseNet::backward: tape or output gradient shape");
  }
  if (param_grads.size() != params_.size()) {
    throw ShapeError("DenseNet::backward: gradient buffer size");
  }
  std::vector<double> delta(dl_dy.begin(), dl_dy.end());
  for (std::size_t kk = layer_count(); kk > 0; --kk) {
    const std::size_t k = kk - 1;
    const std::size_t in = layer_dims_[k];
    const std::size_t out = layer_dims_[k + 1];
    const bool hidden = k + 1 < layer_count();
    if (hidden) {
      const std::vector<double>& pre = tape.preacts[k];
      for (std::size_t i = 0; i < out; ++i) {
        if (pre[i] <= 0.0) delta[i] = 0.0;
      }
    }
    const std::vector<double>& input = tape.inputs[k];
    double* gw = param_grads.data() + layer_offsets_[k];
    double* gb = gw + out * in;
    for (std::size_t i = 0; i < out; ++i) {
      const double d = delta[i];
      gb[i] += d;
      if (d == 0.0) continue;
      double* grow = gw + i * in;
      for (std::size_t j = 0; j < in; ++j) grow[j] += d * input[j];
    }
    std::vector<double> prev(in, 0.0);
    const std::span<const double> w = weights(k);
    for (std::size_t i = 0; i < out; ++i) {
      const double d = delta[i];
      if (d == 0.0) continue;
      const double* row = w.data() + i * in;
      for (std::size_t j = 0; j < in; ++j) prev[j] += row[j] * d;
    }
    delta = std::move(prev);
  }
  return delta;
}

void adam_step(std::span<double> params, std::span<const double> grads,
               AdamState& state) {
  if (params.size() != grads.size() ||
      params.size() != state.first_moment.size()) {
    throw ShapeError("adam_step: parameter, gradient and moment sizes differ");
  }
  state.step_count += 1;
  const double t = static_cast<double>(state.step_count);
  const double bc1 = 1.0 - std::pow(state.beta1, t);
  const double bc2 = 1.0 - std::pow(state.beta2, t);
  for (std::size_t i = 0; i < params.size(); ++i) {
    const double g = grads[i];
    state.first_moment[i] = state.beta1 * state.first_moment[i] +
                            (1.0 - state.beta1) * g;
    state.second_moment[i] = state.beta2 * state.second_moment[i] +
                             (1.0 - state.beta2) * g * g;
    const double mhat = state.first_moment[i] / bc1;
    const double vhat = state.second_moment[i] / bc2;
    params[i] -= state.learning_rate * mhat / (std::sqrt(vhat) + state.epsilon);
  }
}

MseResult mse_loss(std::span<const double> pred,
                   std::span<const double> target) {
  if (pred.size() != target.size()) {
    std::ostringstream os;
    os << "mse_loss: " << pred.size() << " predictions vs " << target.size()
       << " targets";
    throw ShapeError(os.str());
  }
  MseResult r;
  r.grad.resize(pred.size());
  const double inv = 1.0 / static_cast<double>(pred.size());
  for (std::size_t i = 0; i < pred.size(); ++i) {
    const double d = pred[i] - target[i];
    r.loss += d * d * inv;
    r.grad[i] = 2.0 * d * inv;
  }
  return r;
}

// ---------------------------------------------------------------------------
// Model file format
// ---------------------------------------------------------------------------

namespace {

constexpr char kMagic[4] = {'C', 'A', 'P', 'N'};
constexpr std::uint16_t kFormatVersion = 1;

std::uint32_t crc32(std::span<const std::uint8_t> bytes) {
  static const auto table = [] {
    std::array<std::uint32_t, 256> t{};
    for (std::uint32_t i = 0; i < 256; ++i) {
      std::uint32_t c = i;
      for (int k = 0; k < 8; ++k) {
        c = (c & 1u) ? 0xEDB88320u ^ (c >> 1) : c >> 1;
      }
      t[i] = c;
    }
    return t;
  }();
  std::uint32_t c = 0xFFFFFFFFu;
  for (std::uint8_t b : bytes) {
    c = table[(c ^ b) & 0xFFu] ^ (c >> 8);
  }
  return c ^ 0xFFFFFFFFu;
}

void put_u16(std::vector<std::uint8_t>& out, std::uint16_t v) {
  out.push_back(static_cast<std::uint8_t>(v & 0xFF));
  out.push_back(static_cast<std::uint8_t>(v >> 8));
}

void put_u32(std::vector<std::uint8_t>& out, std::uint32_t v) {
  for (int i = 0; i < 4; ++i) {
    out.push_back(static_cast<std::uint8_t>(v >> (8 * i)));
  }
}

void put_f64(std::vector<std::uint8_t>& out, double v) {
  std::uint64_t bits;
  std::memcpy(&bits, &v, sizeof(bits));
  for (int i = 0; i < 8; ++i) {
    out.push_back(static_cast<std::uint8_t>(bits >> (8 * i)));
  }
}

class Reader {
 public:
  explicit Reader(std::span<const std::uint8_t> bytes) : bytes_(bytes) {}

  std::uint16_t u16() { return static_cast<std::uint16_t>(u(2)); }
  std::uint32_t u32() { return static_cast<std::uint32_t>(u(4)); }

  double f64() {
    const std::uint64_t bits = u(8);
    double v;
    std::memcpy(&v, &bits, sizeof(v));
    return v;
  }

  std::string str(std::size_t len) {
    need(len);
    std::string s(reinterpret_cast<const char*>(bytes_.data() + pos_), len);
    pos_ += len;
    return s;
  }

  std::size_t pos() const { return pos_; }
  std::size_t remaining() const { return bytes_.size() - pos_; }

  void need(std::size_t n) const {
    if (remaining() < n) {
      throw IoError("model file truncated");
    }
  }

 private:
  std::uint64_t u(std::size_t n) {
    need(n);
    std::uint64_t v = 0;
    for (std::size_t i = 0; i < n; ++i) {
      v |= static_cast<std::uint64_t>(bytes_[pos_ + i]) << (8 * i);
    }
    pos_ += n;
    return v;
  }

  std::span<const std::uint8_t> bytes_;
  std::size_t pos_ = 0;
};

}  // namespace

std::vector<std::uint8_t> serialize_model(const ModelFile& model) {
  std::vector<std::uint8_t> out;
  out.insert(out.end(), kMagic, kMagic + 4);
  put_u16(out, kFormatVersion);
  put_u16(out, static_cast<std::uint16_t>(model.role.size()));
  out.insert(out.end(), model.role.begin(), model.role.end());
  put_u16(out, static_cast<std::uint16_t>(model.meta_u32.size()));
  for (std::uint32_t v : model.meta_u32) put_u32(out, v);
  put_u16(out, static_cast<std::uint16_t>(model.meta_f64.size()));
  for (double v : model.meta_f64) put_f64(out, v);

  const DenseNet& net = model.net;
  put_u16(out, static_cast<std::uint16_t>(net.layer_count()));
  for (std::size_t k = 0; k < net.layer_count(); ++k) {
    const std::uint32_t rows =
        static_cast<std::uint32_t>(net.layer_dims()[k + 1]);
    const std::uint32_t cols = static_cast<std::uint32_t>(net.layer_dims()[k]);
    put_u32(out, rows);
    put_u32(out, cols);
    for (double w : net.weights(k)) put_f64(out, w);
    for (double b : net.biases(k)) put_f64(out, b);
  }
  put_u32(out, crc32(out));
  return out;
}

ModelFile deserialize_model(std::span<const std::uint8_t> bytes) {
  if (bytes.size() < 8) {
    throw IoError("model file truncated");
  }
  if (std::memcmp(bytes.data(), kMagic, 4) != 0) {
    throw IoError("model file has wrong magic, expected CAPN");
  }
  const std::uint32_t stored_crc = static_cast<std::uint32_t>(
      bytes[bytes.size() - 4] | bytes[bytes.size() - 3] << 8 |
      bytes[bytes.size() - 2] << 16 |
      static_cast<std::uint32_t>(bytes[bytes.size() - 1]) << 24);
  if (crc32(bytes.subspan(0, bytes.size() - 4)) != stored_crc) {
    throw IoError("model file checksum mismatch");
  }

  Reader r(bytes.subspan(4, bytes.size() - 8));
  const std::uint16_t version = r.u16();
  if (version != kFormatVersion) {
    std::ostringstream os;
    os << "model file format version " << version << ", expected "
       << kFormatVersion;
    throw IoError(os.str());
  }
  ModelFile model;
  model.role = r.str(r.u16());
  const std::uint16_t n_u32 = r.u16();
  for (std::size_t i = 0; i < n_u32; ++i) model.meta_u32.push_back(r.u32());
  const std::uint16_t n_f64 = r.u16();
  for (std::size_t i = 0; i < n_f64; ++i) model.meta_f64.push_back(r.f64());

  const std::uint16_t n_layers = r.u16();
  std::vector<std::size_t> dims;
  std::vector<double> params;
  for (std::size_t k = 0; k < n_layers; ++k) {
    const std::uint32_t rows = r.u32();
    const std::uint32_t cols = r.u32();
    if (k == 0) {
      dims.push_back(cols);
    } else if (dims.back() != cols) {
      throw IoError("model file layer shapes do not chain");
    }
    dims.push_back(rows);
    for (std::size_t i = 0; i < static_cast<std::size_t>(rows) * cols; ++i) {
      params.push_back(r.f64());
    }
    for (std::size_t i = 0; i < rows; ++i) params.push_back(r.f64());
  }
  if (r.remaining() != 0) {
    throw IoError("model file has trailing bytes");
  }
  Rng dummy(0);
  model.net = DenseNet(dims, dummy);
  model.net.set_params(std::move(params));
  return model;
}

void save_model(const ModelFile& model, const std::string& path) {
  const std::vector<std::uint8_t> bytes = serialize_model(model);
  std::ofstream f(path, std::ios::binary | std::ios::trunc);
  if (!f) {
    throw IoError("cannot open " + path + " for writing");
  }
  f.write(reinterpret_cast<const char*>(bytes.data()),
          static_cast<std::streamsize>(bytes.size()));
  if (!f) {
    throw IoError("short write to " + path);
  }
}

ModelFile load_model(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) {
    throw IoError("cannot open " + path);
  }
  std::vector<std::uint8_t> bytes((std::istreambuf_iterator<char>(f)),
                                  std::istreambuf_iterator<char>());
  return deserialize_model(bytes);
}

}  // namespace riscap::nn
