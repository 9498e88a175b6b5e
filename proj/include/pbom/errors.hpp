#pragma once

#include <stdexcept>
#include <string>

namespace pbom {

// Exit codes used by the CLI: 0 ok, 2 config, 3 threshold, 4 instability,
// 5 internal numerical failure.
enum class ExitCode : int {
  ok = 0,
  config_error = 2,
  threshold_error = 3,
  stability_error = 4,
  numerical_error = 5,
};

struct DomainError : std::domain_error {
  using std::domain_error::domain_error;
};

struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Condensate fraction too small for the linearized model (N0 >> 1 assumed).
struct ThresholdError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Drift matrix has an eigenvalue with non-negative (or marginal) real part.
struct StabilityError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct NumericalError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace pbom
