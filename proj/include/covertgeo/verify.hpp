#pragma once

#include <string>
#include <vector>

#include "covertgeo/config.hpp"

namespace covertgeo {

/// Outcome of one named verifier: a machine-readable JSON report with
/// per-assertion status, measured deviations, and tolerances.
struct VerifyResult {
  std::string check;
  bool pass = false;
  std::string json_report;
};

/// Named checks: thm1, thm2 (interference-limited throughput invariance),
/// cor1, cor2 (noise-aware monotonicity), prop3 (noise-shift exactness),
/// series-vs-levy, rate-roundtrip.
const std::vector<std::string>& verify_check_names();

VerifyResult run_verify(const std::string& check, const ConfigBundle& bundle);

}  // namespace covertgeo
