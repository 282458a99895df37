#include "gmcsim/error.hpp"

namespace gmc {

const char* code_name(errc c) {
  switch (c) {
    case errc::green_singularity: return "green-singularity";
    case errc::point_outside_domain: return "point-outside-domain";
    case errc::empty_circle: return "empty-circle";
    case errc::no_intersection: return "no-intersection";
    case errc::covariance_not_psd: return "covariance-not-psd";
    case errc::calibration_failed: return "calibration-failed";
    case errc::parameter_out_of_range: return "parameter-out-of-range";
    case errc::ifs_too_deep: return "ifs-too-deep";
    case errc::fit_failed: return "fit-failed";
    case errc::node_mismatch: return "node-mismatch";
    case errc::ladder_too_large: return "ladder-too-large";
    case errc::invalid_p: return "invalid-p";
    case errc::gamma_zero: return "gamma-zero";
    case errc::no_root: return "no-root";
    case errc::invalid_argument: return "invalid-argument";
    case errc::io_error: return "io-error";
  }
  return "unknown";
}

bool is_budget_error(errc c) {
  return c == errc::ladder_too_large || c == errc::ifs_too_deep;
}

error::error(errc code, const std::string& detail)
    : std::runtime_error(detail.empty() ? std::string(code_name(code))
                                        : std::string(code_name(code)) + ": " + detail),
      code_(code) {}

void fail(errc code, const std::string& detail) { throw error(code, detail); }

}  // namespace gmc
