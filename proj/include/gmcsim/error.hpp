#pragma once

#include <stdexcept>
#include <string>

namespace gmc {

// Error identifiers are stable strings; the CLI maps them to exit codes.
enum class errc {
  green_singularity,
  point_outside_domain,
  empty_circle,
  no_intersection,
  covariance_not_psd,
  calibration_failed,
  parameter_out_of_range,
  ifs_too_deep,
  fit_failed,
  node_mismatch,
  ladder_too_large,
  invalid_p,
  gamma_zero,
  no_root,
  invalid_argument,
  io_error,
};

const char* code_name(errc c);

// True for errors caused by exceeding a configured resource budget.
bool is_budget_error(errc c);

class error : public std::runtime_error {
 public:
  error(errc code, const std::string& detail);
  errc code() const noexcept { return code_; }

 private:
  errc code_;
};

[[noreturn]] void fail(errc code, const std::string& detail = {});

}  // namespace gmc
