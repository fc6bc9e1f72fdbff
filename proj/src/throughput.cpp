#include "covertgeo/throughput.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace covertgeo {

void CovertRequirements::validate() const {
  if (!(eps > 0.0 && eps < 1.0)) throw DomainError("CovertRequirements: eps must be in (0, 1)");
  if (!(delta > 0.0 && delta < 1.0)) {
    throw DomainError("CovertRequirements: delta must be in (0, 1)");
  }
}

ThroughputResult covert_throughput(const CovertRequirements& req, const NetworkConfig& cfg,
                                   bool use_normalized, const ToleranceSpec& tol) {
  req.validate();
  cfg.validate();

  ThroughputResult out;
  if (use_normalized && cfg.alpha == 4.0) {
    // Solve the covertness stage in units where the Levy scale is 1; the
    // constraint depends on (P_w, B) only through their ratio, so the
    // solved power maps back linearly in B.
    const double b = levy_scale(cfg);
    NetworkConfig unit = cfg;
    unit.p_i = cfg.p_i / b;
    out.pa_star = solve_pa_star(req.eps, unit, tol) * b;
    out.normalized = true;
  } else {
    out.pa_star = solve_pa_star(req.eps, cfg, tol);
  }

  out.eta = rate_for_outage(out.pa_star, req.delta, cfg, cfg.sigma_zb2, tol);
  out.xi_at_pa = avg_covert_prob(out.pa_star, cfg, tol);
  if (out.eta > 0.0) {
    out.outage_at_eta = conn_outage(LinkBudget{out.pa_star, out.eta, cfg.sigma_zb2}, cfg, tol);
  } else {
    out.outage_at_eta = 1.0;
    out.feasible = false;
  }
  return out;
}

InvarianceReport invariance_report(const CovertRequirements& req, const NetworkConfig& cfg,
                                   std::span<const double> scale_factors, double tol_rel,
                                   const ToleranceSpec& tol) {
  req.validate();
  cfg.validate();
  if (cfg.sigma_zb2 != 0.0 || cfg.sigma_zw2 != 0.0) {
    throw DomainError("invariance_report: requires an interference-limited config "
                      "(sigma_zb2 = sigma_zw2 = 0)");
  }

  const ThroughputResult base = covert_throughput(req, cfg, false, tol);
  InvarianceReport report;
  report.tol_rel = tol_rel;
  for (const double u : scale_factors) {
    if (!(u > 0.0)) throw DomainError("invariance_report: scale factors must be > 0");
    NetworkConfig scaled = cfg;
    scaled.lambda_i = cfg.lambda_i * u;
    const ThroughputResult r = covert_throughput(req, scaled, false, tol);
    report.rows.push_back({u, r.pa_star, r.eta});

    const double eta_dev = std::fabs(r.eta - base.eta) / base.eta;
    const double expected_pa = base.pa_star * std::pow(u, cfg.alpha / 2.0);
    const double pa_dev = std::fabs(r.pa_star - expected_pa) / expected_pa;
    report.max_eta_dev_rel = std::max(report.max_eta_dev_rel, eta_dev);
    report.max_pa_scaling_dev_rel = std::max(report.max_pa_scaling_dev_rel, pa_dev);
  }
  report.pass = report.max_eta_dev_rel <= tol_rel && report.max_pa_scaling_dev_rel <= tol_rel;
  return report;
}

MonotonicityReport awgn_monotonicity_report(const CovertRequirements& req,
                                            const NetworkConfig& cfg, SweepParam param,
                                            std::span<const double> grid,
                                            const ToleranceSpec& tol) {
  req.validate();
  cfg.validate();
  if (!(cfg.sigma_zb2 > 0.0)) {
    throw DomainError("awgn_monotonicity_report: requires sigma_zb2 > 0");
  }
  if (grid.size() < 2) throw DomainError("awgn_monotonicity_report: grid needs >= 2 points");

  MonotonicityReport report;
  report.param_name = param == SweepParam::LambdaI ? "lambda_i" : "p_i";
  for (const double value : grid) {
    NetworkConfig point = cfg;
    if (param == SweepParam::LambdaI) {
      point.lambda_i = value;
    } else {
      point.p_i = value;
    }
    const ThroughputResult r = covert_throughput(req, point, false, tol);
    report.rows.push_back({value, r.eta});
  }

  report.strictly_increasing = true;
  report.min_increase_rel = std::numeric_limits<double>::infinity();
  for (std::size_t i = 1; i < report.rows.size(); ++i) {
    const double prev = report.rows[i - 1].eta;
    const double cur = report.rows[i].eta;
    if (!(cur > prev)) report.strictly_increasing = false;
    const double rel = (cur - prev) / std::max(prev, 1e-300);
    report.min_increase_rel = std::min(report.min_increase_rel, rel);
    if (i + 1 == report.rows.size()) report.plateau_delta_rel = std::fabs(rel);
  }
  report.pass = report.strictly_increasing;
  return report;
}

}  // namespace covertgeo
