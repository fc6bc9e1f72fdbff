#pragma once

#include <span>
#include <string>
#include <vector>

#include "covertgeo/covertness.hpp"
#include "covertgeo/reliability.hpp"

namespace covertgeo {

/// Covertness / reliability constraint pair of the throughput problem.
struct CovertRequirements {
  double eps = 0.1;    // covertness slack, xi_bar >= 1 - eps
  double delta = 0.1;  // outage budget, p_out <= delta

  void validate() const;
};

struct ThroughputResult {
  double pa_star = 0.0;        // maximum covert transmit power, W
  double eta = 0.0;            // covert throughput, bits per channel use
  double xi_at_pa = 0.0;       // xi_bar re-evaluated at pa_star
  double outage_at_eta = 0.0;  // outage re-evaluated at (pa_star, eta)
  bool normalized = false;     // solved in units with Levy scale 1
  bool feasible = true;        // false when eta = 0 from a noise-dominated budget
};

/// Solve the two-stage throughput problem: the largest power meeting the
/// covertness constraint, then the largest rate meeting the outage budget
/// at that power. With `use_normalized` (alpha = 4) the covertness stage
/// runs in units where the Levy scale is 1 and maps back linearly.
ThroughputResult covert_throughput(const CovertRequirements& req, const NetworkConfig& cfg,
                                   bool use_normalized = false, const ToleranceSpec& tol = {});

struct InvarianceRow {
  double u = 1.0;        // density scale factor
  double pa_star = 0.0;  // solved power at lambda_i * u
  double eta = 0.0;      // throughput at lambda_i * u
};

/// Interference-limited invariance check: rescaling the interferer
/// density must leave the throughput unchanged and scale the solved power
/// by u^{alpha/2}. Failures are findings, reported as deviations.
struct InvarianceReport {
  std::vector<InvarianceRow> rows;
  double max_eta_dev_rel = 0.0;
  double max_pa_scaling_dev_rel = 0.0;
  double tol_rel = 1e-3;
  bool pass = false;
};

InvarianceReport invariance_report(const CovertRequirements& req, const NetworkConfig& cfg,
                                   std::span<const double> scale_factors, double tol_rel = 1e-3,
                                   const ToleranceSpec& tol = {});

enum class SweepParam { LambdaI, PI };

struct MonotonicityRow {
  double param_value = 0.0;
  double eta = 0.0;
};

/// Noise-aware monotonicity check: with AWGN at Bob, throughput must rise
/// with interferer density or power, flattening once the network turns
/// interference-limited.
struct MonotonicityReport {
  std::string param_name;
  std::vector<MonotonicityRow> rows;
  bool strictly_increasing = false;
  double min_increase_rel = 0.0;    // smallest consecutive relative increase
  double plateau_delta_rel = 0.0;   // last consecutive relative change
  bool pass = false;                // strictly_increasing
};

MonotonicityReport awgn_monotonicity_report(const CovertRequirements& req,
                                            const NetworkConfig& cfg, SweepParam param,
                                            std::span<const double> grid,
                                            const ToleranceSpec& tol = {});

}  // namespace covertgeo
