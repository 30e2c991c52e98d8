#pragma once

#include <optional>
#include <string>
#include <vector>

#include "riscap/capacity_net.hpp"
#include "riscap/phase_net.hpp"

namespace riscap {

/// One stored sample. Fields a given pipeline does not use stay zeroed;
/// the realization is present only in datasets meant for CSI training or
/// true-rate audits.
struct DatasetRecord {
  std::vector<double> flat;    ///< received pilots, canonical flattening
  std::vector<double> phases;  ///< candidate phases, length n
  double rate = 0.0;           ///< label
  std::optional<ChannelRealization> realization;
};

/// In-memory form of one dataset file.
struct Dataset {
  std::size_t n_r = 0;
  std::size_t m = 0;
  std::size_t l = 0;
  std::size_t n = 0;
  std::size_t n_t = 0;
  bool has_realizations = false;
  std::vector<DatasetRecord> records;

  std::size_t flat_len() const { return 2 * n_r * m * l; }

  PilotTensor tensor(std::size_t index) const;
};

/// Binary layout, little-endian: magic "RISD", format version u16, header
/// dims (n_r, m, l, n, n_t, flat length, record count, realization flag),
/// the records, trailing CRC-32 over everything before it.
void save_dataset(const Dataset& ds, const std::string& path);
Dataset load_dataset(const std::string& path);

std::vector<std::uint8_t> serialize_dataset(const Dataset& ds);
Dataset deserialize_dataset(const std::vector<std::uint8_t>& bytes);

// Views into the common record form used by the training entry points.
std::vector<CsiSample> to_csi_samples(const Dataset& ds);
std::vector<CapnetSample> to_capnet_samples(const Dataset& ds);
std::vector<PilotTensor> to_pilot_tensors(const Dataset& ds);

/// What gen-data writes for each pipeline.
enum class DatasetKind {
  Csi,     ///< pilots + realizations, for rate-supervised phase training
  Capnet,  ///< pilots + candidate phases + rate labels
  Pilots,  ///< pilots only, for surrogate-based phase training
  Audit,   ///< pilots + realizations, held out for evaluation
};

DatasetKind dataset_kind_from_string(const std::string& s);
std::string to_string(DatasetKind kind);

/// Deterministic dataset synthesis: sample i is generated from the stream
/// seeded with base_seed + i.
Dataset generate_dataset(const ScenarioConfig& config, DatasetKind kind,
                         std::size_t n_samples, std::uint64_t base_seed);

}  // namespace riscap
