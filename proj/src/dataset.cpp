#include "riscap/dataset.hpp"

#include <array>
#include <cstring>
#include <fstream>
#include <iterator>
#include <sstream>

namespace riscap {

namespace {

constexpr char kMagic[4] = {'R', 'I', 'S', 'D'};
constexpr std::uint16_t kFormatVersion = 1;

std::uint32_t crc32(const std::uint8_t* data, std::size_t len) {
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
  for (std::size_t i = 0; i < len; ++i) {
    c = table[(c ^ data[i]) & 0xFFu] ^ (c >> 8);
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

void put_u64(std::vector<std::uint8_t>& out, std::uint64_t v) {
  for (int i = 0; i < 8; ++i) {
    out.push_back(static_cast<std::uint8_t>(v >> (8 * i)));
  }
}

void put_f64(std::vector<std::uint8_t>& out, double v) {
  std::uint64_t bits;
  std::memcpy(&bits, &v, sizeof(bits));
  put_u64(out, bits);
}

void put_cplx(std::vector<std::uint8_t>& out, cplx z) {
  put_f64(out, z.real());
  put_f64(out, z.imag());
}

class Reader {
 public:
  explicit Reader(const std::vector<std::uint8_t>& bytes, std::size_t begin,
                  std::size_t end)
      : bytes_(bytes), pos_(begin), end_(end) {}

  std::uint8_t u8() { return static_cast<std::uint8_t>(u(1)); }
  std::uint16_t u16() { return static_cast<std::uint16_t>(u(2)); }
  std::uint32_t u32() { return static_cast<std::uint32_t>(u(4)); }
  std::uint64_t u64() { return u(8); }

  double f64() {
    const std::uint64_t bits = u(8);
    double v;
    std::memcpy(&v, &bits, sizeof(v));
    return v;
  }

  cplx complex_value() {
    const double re = f64();
    const double im = f64();
    return {re, im};
  }

  std::size_t remaining() const { return end_ - pos_; }

 private:
  std::uint64_t u(std::size_t n) {
    if (remaining() < n) {
      throw IoError("dataset file truncated");
    }
    std::uint64_t v = 0;
    for (std::size_t i = 0; i < n; ++i) {
      v |= static_cast<std::uint64_t>(bytes_[pos_ + i]) << (8 * i);
    }
    pos_ += n;
    return v;
  }

  const std::vector<std::uint8_t>& bytes_;
  std::size_t pos_;
  std::size_t end_;
};

void put_matrix(std::vector<std::uint8_t>& out, const ComplexMatrix& m) {
  for (const cplx& z : m.entries()) put_cplx(out, z);
}

ComplexMatrix read_matrix(Reader& r, std::size_t rows, std::size_t cols) {
  ComplexMatrix m(rows, cols);
  for (cplx& z : m.entries()) z = r.complex_value();
  return m;
}

void put_realization(std::vector<std::uint8_t>& out,
                     const ChannelRealization& re) {
  put_matrix(out, re.h_t);
  put_matrix(out, re.h_r_adj);
  const ChannelGeometry& g = re.geometry;
  put_u32(out, static_cast<std::uint32_t>(g.z_t.size()));
  for (const TxPathAngles& p : g.t_paths) {
    put_f64(out, p.aod_tx);
    put_f64(out, p.aoa_ris_az);
    put_f64(out, p.aoa_ris_el);
  }
  for (cplx z : g.z_t) put_cplx(out, z);
  put_u32(out, static_cast<std::uint32_t>(g.z_r.size()));
  for (const RxPathAngles& p : g.r_paths) {
    put_f64(out, p.aod_ris_az);
    put_f64(out, p.aod_ris_el);
    put_f64(out, p.aoa_rx);
  }
  for (cplx z : g.z_r) put_cplx(out, z);
}

ChannelRealization read_realization(Reader& r, std::size_t n,
                                    std::size_t n_t, std::size_t n_r) {
  ChannelRealization re;
  re.h_t = read_matrix(r, n, n_t);
  re.h_r_adj = read_matrix(r, n_r, n);
  const std::uint32_t lambda_t = r.u32();
  re.geometry.t_paths.resize(lambda_t + 1);
  for (TxPathAngles& p : re.geometry.t_paths) {
    p.aod_tx = r.f64();
    p.aoa_ris_az = r.f64();
    p.aoa_ris_el = r.f64();
  }
  re.geometry.z_t.resize(lambda_t);
  for (cplx& z : re.geometry.z_t) z = r.complex_value();
  const std::uint32_t lambda_r = r.u32();
  re.geometry.r_paths.resize(lambda_r + 1);
  for (RxPathAngles& p : re.geometry.r_paths) {
    p.aod_ris_az = r.f64();
    p.aod_ris_el = r.f64();
    p.aoa_rx = r.f64();
  }
  re.geometry.z_r.resize(lambda_r);
  for (cplx& z : re.geometry.z_r) z = r.complex_value();
  return re;
}

}  // namespace

PilotTensor Dataset::tensor(std::size_t index) const {
  const DatasetRecord& rec = records[index];
  PilotTensor y;
  y.flat = rec.flat;
  y.blocks = unflatten_blocks(rec.flat, n_r, m, l);
  return y;
}

std::vector<std::uint8_t> serialize_dataset(const Dataset& ds) {
  std::vector<std::uint8_t> out;
  out.insert(out.end(), kMagic, kMagic + 4);
  put_u16(out, kFormatVersion);
  put_u32(out, static_cast<std::uint32_t>(ds.n_r));
  put_u32(out, static_cast<std::uint32_t>(ds.m));
  put_u32(out, static_cast<std::uint32_t>(ds.l));
  put_u32(out, static_cast<std::uint32_t>(ds.n));
  put_u32(out, static_cast<std::uint32_t>(ds.n_t));
  put_u32(out, static_cast<std::uint32_t>(ds.flat_len()));
  put_u64(out, ds.records.size());
  out.push_back(ds.has_realizations ? 1 : 0);

  for (const DatasetRecord& rec : ds.records) {
    if (rec.flat.size() != ds.flat_len() || rec.phases.size() != ds.n) {
      throw ShapeError("serialize_dataset: record shape disagrees with header");
    }
    for (double v : rec.flat) put_f64(out, v);
    for (double v : rec.phases) put_f64(out, v);
    put_f64(out, rec.rate);
    if (ds.has_realizations) {
      if (!rec.realization.has_value()) {
        throw ShapeError(
            "serialize_dataset: header promises realizations but a record "
            "has none");
      }
      put_realization(out, *rec.realization);
    }
  }
  put_u32(out, crc32(out.data(), out.size()));
  return out;
}

Dataset deserialize_dataset(const std::vector<std::uint8_t>& bytes) {
  if (bytes.size() < 8) {
    throw IoError("dataset file truncated");
  }
  if (std::memcmp(bytes.data(), kMagic, 4) != 0) {
    throw IoError("dataset file has wrong magic, expected RISD");
  }
  const std::uint32_t stored_crc = static_cast<std::uint32_t>(
      bytes[bytes.size() - 4] | bytes[bytes.size() - 3] << 8 |
      bytes[bytes.size() - 2] << 16 |
      static_cast<std::uint32_t>(bytes[bytes.size() - 1]) << 24);
  if (crc32(bytes.data(), bytes.size() - 4) != stored_crc) {
    throw IoError("dataset file checksum mismatch");
  }

  Reader r(bytes, 4, bytes.size() - 4);
  const std::uint16_t version = r.u16();
  if (version != kFormatVersion) {
    std::ostringstream os;
    os << "dataset file format version " << version << ", expected "
       << kFormatVersion;
    throw IoError(os.str());
  }
  Dataset ds;
  ds.n_r = r.u32();
  ds.m = r.u32();
  ds.l = r.u32();
  ds.n = r.u32();
  ds.n_t = r.u32();
  const std::uint32_t flat_len = r.u32();
  if (flat_len != ds.flat_len()) {
    throw IoError("dataset header flat length disagrees with dims");
  }
  const std::uint64_t count = r.u64();
  ds.has_realizations = r.u8() != 0;

  ds.records.reserve(count);
  for (std::uint64_t i = 0; i < count; ++i) {
    DatasetRecord rec;
    rec.flat.resize(flat_len);
    for (double& v : rec.flat) v = r.f64();
    rec.phases.resize(ds.n);
    for (double& v : rec.phases) v = r.f64();
    rec.rate = r.f64();
    if (ds.has_realizations) {
      rec.realization = read_realization(r, ds.n, ds.n_t, ds.n_r);
    }
    ds.records.push_back(std::move(rec));
  }
  if (r.remaining() != 0) {
    throw IoError("dataset file has trailing bytes");
  }
  return ds;
}

void save_dataset(const Dataset& ds, const std::string& path) {
  const std::vector<std::uint8_t> bytes = serialize_dataset(ds);
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

Dataset load_dataset(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) {
    throw IoError("cannot open " + path);
  }
  std::vector<std::uint8_t> bytes((std::istreambuf_iterator<char>(f)),
                                  std::istreambuf_iterator<char>());
  return deserialize_dataset(bytes);
}

std::vector<CsiSample> to_csi_samples(const Dataset& ds) {
  if (!ds.has_realizations) {
    throw ShapeError("to_csi_samples: dataset stores no realizations");
  }
  std::vector<CsiSample> out;
  out.reserve(ds.records.size());
  for (std::size_t i = 0; i < ds.records.size(); ++i) {
    out.push_back(CsiSample{ds.tensor(i), *ds.records[i].realization});
  }
  return out;
}

std::vector<CapnetSample> to_capnet_samples(const Dataset& ds) {
  std::vector<CapnetSample> out;
  out.reserve(ds.records.size());
  for (std::size_t i = 0; i < ds.records.size(); ++i) {
    out.push_back(CapnetSample{ds.tensor(i),
                               RISPhases{ds.records[i].phases},
                               ds.records[i].rate});
  }
  return out;
}

std::vector<PilotTensor> to_pilot_tensors(const Dataset& ds) {
  std::vector<PilotTensor> out;
  out.reserve(ds.records.size());
  for (std::size_t i = 0; i < ds.records.size(); ++i) {
    out.push_back(ds.tensor(i));
  }
  return out;
}

DatasetKind dataset_kind_from_string(const std::string& s) {
  if (s == "csi") return DatasetKind::Csi;
  if (s == "capnet") return DatasetKind::Capnet;
  if (s == "pilots") return DatasetKind::Pilots;
  if (s == "audit") return DatasetKind::Audit;
  throw IoError("unknown dataset kind '" + s +
                "', expected csi|capnet|pilots|audit");
}

std::string to_string(DatasetKind kind) {
  switch (kind) {
    case DatasetKind::Csi: return "csi";
    case DatasetKind::Capnet: return "capnet";
    case DatasetKind::Pilots: return "pilots";
    case DatasetKind::Audit: return "audit";
  }
  return "?";
}

Dataset generate_dataset(const ScenarioConfig& config, DatasetKind kind,
                         std::size_t n_samples, std::uint64_t base_seed) {
  Dataset ds;
  ds.n_r = config.n_r;
  ds.m = config.m;
  ds.l = config.l;
  ds.n = config.n();
  ds.n_t = config.n_t;
  ds.has_realizations =
      kind == DatasetKind::Csi || kind == DatasetKind::Audit;

  const Codebook cb = build_codebook(config.n_h, config.n_v);
  const std::vector<RISPhases> schedule = ris_schedule(cb, config.l);
  const PilotCodeword pilot = make_pilot(config);

  ds.records.reserve(n_samples);
  for (std::size_t i = 0; i < n_samples; ++i) {
    Rng sub(base_seed + i);
    ChannelRealization re = sample_channel(config, sub);
    const PilotTensor y = receive_pilots(re, schedule, pilot, config, sub);

    DatasetRecord rec;
    rec.flat = y.flat;
    rec.phases.assign(ds.n, 0.0);
    if (kind == DatasetKind::Capnet) {
      RISPhases candidate;
      if (sub.uniform() < 0.5) {
        candidate.theta.resize(config.n());
        for (double& t : candidate.theta) {
          t = sub.uniform(0.0, Rng::two_pi());
        }
      } else {
        candidate = cb.phases(sub.below(cb.size()));
      }
      rec.rate = achievable_rate(effective_channel(re, candidate), config);
      rec.phases = candidate.theta;
    }
    if (ds.has_realizations) {
      rec.realization = std::move(re);
    }
    ds.records.push_back(std::move(rec));
  }
  return ds;
}

}  // namespace riscap
