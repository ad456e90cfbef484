#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace schurkit {

enum class errc {
  negative,
  non_monotone,
  weight_mismatch,
  zero_partition,
  length_mismatch,
  invalid_rank,
  hypothesis_failed,
  cap_too_small,
  not_in_z,
  no_decomposition,
  zero_m,
  parse_error,
  io_error,
  format_error,
  stale_value,
};

constexpr std::string_view to_string(errc code) noexcept {
  switch (code) {
    case errc::negative: return "Negative";
    case errc::non_monotone: return "NonMonotone";
    case errc::weight_mismatch: return "WeightMismatch";
    case errc::zero_partition: return "ZeroPartition";
    case errc::length_mismatch: return "LengthMismatch";
    case errc::invalid_rank: return "InvalidRank";
    case errc::hypothesis_failed: return "HypothesisFailed";
    case errc::cap_too_small: return "CapTooSmall";
    case errc::not_in_z: return "NotInZ";
    case errc::no_decomposition: return "NoDecomposition";
    case errc::zero_m: return "ZeroM";
    case errc::parse_error: return "ParseError";
    case errc::io_error: return "IoError";
    case errc::format_error: return "FormatError";
    case errc::stale_value: return "StaleValue";
  }
  return "Unknown";
}

// All library failures are reported through this one exception type; the
// code tells callers (and the CLI exit-code mapping) what went wrong.
class error : public std::runtime_error {
 public:
  error(errc code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  errc code() const noexcept { return code_; }

 private:
  errc code_;
};

}  // namespace schurkit
