#pragma once

#include <stdexcept>
#include <string>

namespace riscap {

/// Dimension or layout mismatch between operands.
struct ShapeError : std::invalid_argument {
  explicit ShapeError(const std::string& what) : std::invalid_argument(what) {}
};

/// A matrix that was required to be Hermitian positive definite is not.
struct DefinitenessError : std::runtime_error {
  explicit DefinitenessError(const std::string& what)
      : std::runtime_error(what) {}
};

/// Malformed, truncated or corrupted file.
struct IoError : std::runtime_error {
  explicit IoError(const std::string& what) : std::runtime_error(what) {}
};

/// Backward pass invoked with a tape that no longer matches the network.
struct StaleTapeError : std::logic_error {
  explicit StaleTapeError(const std::string& what) : std::logic_error(what) {}
};

}  // namespace riscap
