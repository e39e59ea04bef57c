#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace flrwkit {

enum class ErrorCode {
  syntax,
  unknown_function,
  domain,
  non_finite,
  anchor_outside_interval,
  finite_upper_endpoint,
  finite_lower_endpoint,
  degenerate_point,
  region_crosses_degenerate_set,
  characteristic_escaped_region,
  path_crosses_singularity,
  profile_violation,
  theta_hit_pole,
  theta_hit_equator,
  sample_outside_region,
  curve_leaves_interval,
  degenerate_theta_fixed,
  unknown_entry,
  config,
};

std::string_view to_string(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

// Parse failure; offset is a byte offset into the input text.
class SyntaxError : public Error {
 public:
  SyntaxError(std::size_t offset, std::vector<std::string> expected,
              const std::string& what)
      : Error(ErrorCode::syntax, what),
        offset_(offset),
        expected_(std::move(expected)) {}

  std::size_t offset() const noexcept { return offset_; }
  const std::vector<std::string>& expected() const noexcept { return expected_; }

 private:
  std::size_t offset_;
  std::vector<std::string> expected_;
};

// Config-file failure with the line (1-based, 0 when not line-bound) and key.
class ConfigError : public Error {
 public:
  ConfigError(std::size_t line, std::string field, const std::string& what)
      : Error(ErrorCode::config, what), line_(line), field_(std::move(field)) {}

  std::size_t line() const noexcept { return line_; }
  const std::string& field() const noexcept { return field_; }

 private:
  std::size_t line_;
  std::string field_;
};

}  // namespace flrwkit
