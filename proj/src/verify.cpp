#include "covertgeo/verify.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <vector>

#include <nlohmann/json.hpp>

#include "covertgeo/covertness.hpp"
#include "covertgeo/reliability.hpp"

namespace covertgeo {

using nlohmann::json;

namespace {

struct Assertions {
  json list = json::array();
  bool pass = true;

  void add(const std::string& name, double measured, double tolerance) {
    const bool ok = measured <= tolerance;
    list.push_back({{"name", name}, {"pass", ok}, {"measured", measured},
                    {"tolerance", tolerance}});
    pass = pass && ok;
  }
  void add_flag(const std::string& name, bool ok) {
    list.push_back({{"name", name}, {"pass", ok}});
    pass = pass && ok;
  }
};

std::vector<double> log_grid(double lo, double hi, int n) {
  std::vector<double> g(n);
  const double step = std::log(hi / lo) / (n - 1);
  for (int i = 0; i < n; ++i) g[i] = lo * std::exp(step * i);
  g.back() = hi;
  return g;
}

std::string tag_num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%g", v);
  return buf;
}

json check_series_vs_levy(const ConfigBundle& bundle, Assertions& as) {
  struct ParamSet {
    double lambda_i, p_i;
  };
  const ParamSet sets[3] = {{1e-3, 0.1}, {1e-4, 1.0}, {3e-3, 0.01}};
  json detail = json::array();
  for (const ParamSet& ps : sets) {
    for (const Fading fading : {Fading::NonFading, Fading::Rayleigh}) {
      NetworkConfig cfg = bundle.net;
      cfg.lambda_i = ps.lambda_i;
      cfg.p_i = ps.p_i;
      cfg.alpha = 4.0;
      cfg.fading = fading;
      const double b = levy_scale(cfg);
      const InterferenceLaw law =
          InterferenceLaw::series(4.0, ps.lambda_i, ps.p_i, fading_moment(4.0, fading));
      double max_dev = 0.0;
      bool all_converged = true;
      for (const double x : log_grid(0.1 * b, 1e4 * b, 50)) {
        const SeriesValue sv = series_pdf(x, law);
        all_converged = all_converged && sv.converged;
        const double exact = levy_pdf(x, b);
        max_dev = std::max(max_dev, std::fabs(sv.value - exact) / exact);
      }
      const std::string tag = std::string(fading == Fading::NonFading ? "nonfading" : "rayleigh") +
                              "-lambda" + tag_num(ps.lambda_i);
      as.add_flag("series-converged-" + tag, all_converged);
      as.add("series-matches-levy-" + tag, max_dev, 1e-6);
      detail.push_back({{"lambda_i", ps.lambda_i},
                        {"p_i_w", ps.p_i},
                        {"fading", fading == Fading::NonFading ? "none" : "rayleigh"},
                        {"max_rel_dev", max_dev}});
    }
  }
  return detail;
}

json check_rate_roundtrip(const ConfigBundle& bundle, Assertions& as) {
  json detail = json::object();
  for (const Fading fading : {Fading::NonFading, Fading::Rayleigh}) {
    NetworkConfig cfg = bundle.net;
    cfg.sigma_zb2 = 0.0;
    cfg.sigma_zw2 = 0.0;
    cfg.fading = fading;
    double max_dev = 0.0;
    for (int i = 0; i < 10; ++i) {
      const double delta = 0.05 + 0.1 * i;
      const double r = rate_for_outage(bundle.p_a, delta, cfg, 0.0);
      const double back = conn_outage(LinkBudget{bundle.p_a, r, 0.0}, cfg);
      max_dev = std::max(max_dev, std::fabs(back - delta));
    }
    const char* tag = fading == Fading::NonFading ? "nonfading" : "rayleigh";
    as.add(std::string("rate-outage-roundtrip-") + tag, max_dev, 1e-9);
    detail[std::string(tag) + "_max_dev"] = max_dev;
  }

  // The exponential-erf integral identity behind the Rayleigh closed form:
  // int erf(sqrt(c/x)) mu exp(-mu x) dx = 1 - exp(-2 sqrt(c mu)).
  double max_dev = 0.0;
  const double cases[3][2] = {{1e-6, 1e5}, {2.5e-7, 4e6}, {3e-5, 1e4}};
  for (const auto& cm : cases) {
    const double c = cm[0], mu = cm[1];
    const double quad =
        semiinf_quadrature([&](double x) { return std::erf(std::sqrt(c / x)); }, mu);
    const double closed = -std::expm1(-2.0 * std::sqrt(c * mu));
    max_dev = std::max(max_dev, std::fabs(quad - closed));
  }
  as.add("exponential-erf-identity", max_dev, 1e-6);
  detail["identity_max_dev"] = max_dev;
  return detail;
}

json check_prop3(const ConfigBundle& bundle, Assertions& as) {
  NetworkConfig cfg = bundle.net;
  cfg.alpha = 4.0;
  cfg.fading = Fading::NonFading;
  cfg.sigma_zw2 = 0.0;
  const double b = levy_scale(cfg);
  const double p_w = bundle.p_a * std::pow(cfg.d_aw, -4.0);
  const ThresholdSolution base = optimal_threshold(p_w, b);

  json detail = json::object();
  for (const double s : {1e-8, 1e-5}) {
    // Willie's window with a known noise floor s at threshold gamma is the
    // zero-noise window at gamma - s; shifting the optimal threshold by s
    // reproduces the optimum bit for bit up to rounding.
    auto shifted_window = [&](double gamma) {
      return levy_interval(gamma - s - p_w, gamma - s, b);
    };
    const double shift_dev = std::fabs(shifted_window(base.gamma_opt + s) - base.window_prob);
    as.add("window-shift-exact-s" + tag_num(s), shift_dev, 1e-12);

    double grid_max = 0.0;
    for (const double g : log_grid((p_w + s) * (1.0 + 1e-9), (p_w + b + s) * 1e3, 200)) {
      grid_max = std::max(grid_max, shifted_window(g));
    }
    const double excess = std::max(grid_max - shifted_window(base.gamma_opt + s), 0.0);
    as.add("shifted-threshold-still-optimal-s" + tag_num(s), excess, 1e-12);

    for (const Fading fading : {Fading::NonFading, Fading::Rayleigh}) {
      NetworkConfig noisy = bundle.net;
      noisy.fading = fading;
      noisy.sigma_zw2 = s;
      NetworkConfig quiet = noisy;
      quiet.sigma_zw2 = 0.0;
      const double dev =
          std::fabs(avg_covert_prob(bundle.p_a, noisy) - avg_covert_prob(bundle.p_a, quiet));
      as.add(std::string("xi-bar-noise-passthrough-") +
                 (fading == Fading::NonFading ? "nonfading" : "rayleigh") + "-s" +
                 tag_num(s),
             dev, 0.0);
    }
  }
  detail["gamma_opt"] = base.gamma_opt;
  detail["window_prob"] = base.window_prob;
  return detail;
}

json check_theorem(const ConfigBundle& bundle, Fading fading, Assertions& as) {
  NetworkConfig cfg = bundle.net;
  cfg.fading = fading;
  cfg.sigma_zb2 = 0.0;
  cfg.sigma_zw2 = 0.0;

  json detail = json::object();
  detail["noise_zeroed"] = true;

  const double u_grid[4] = {0.25, 1.0, 4.0, 100.0};
  const InvarianceReport rep = invariance_report(bundle.req, cfg, u_grid, 1e-3);
  as.add("eta-invariant-under-density-scaling", rep.max_eta_dev_rel, rep.tol_rel);
  as.add("pa-star-scales-as-u^(alpha/2)", rep.max_pa_scaling_dev_rel, rep.tol_rel);
  json rows = json::array();
  for (const InvarianceRow& r : rep.rows) {
    rows.push_back({{"u", r.u}, {"pa_star_w", r.pa_star}, {"eta_bpcu", r.eta}});
  }
  detail["density_scaling_rows"] = rows;

  // Interferer-power scaling: the covert throughput is unchanged and the
  // solved power scales linearly (P_I enters the series only through
  // lambda_i P_I^{2/alpha}).
  const ThroughputResult base = covert_throughput(bundle.req, cfg);
  double max_eta_dev = 0.0, max_pa_dev = 0.0;
  for (const double u : {0.1, 10.0}) {
    NetworkConfig scaled = cfg;
    scaled.p_i = cfg.p_i * u;
    const ThroughputResult r = covert_throughput(bundle.req, scaled);
    max_eta_dev = std::max(max_eta_dev, std::fabs(r.eta - base.eta) / base.eta);
    max_pa_dev =
        std::max(max_pa_dev, std::fabs(r.pa_star - base.pa_star * u) / (base.pa_star * u));
  }
  as.add("eta-invariant-under-power-scaling", max_eta_dev, 1e-3);
  as.add("pa-star-scales-linearly-in-p-i", max_pa_dev, 1e-3);

  // Full lambda x P_I product grid.
  double eta_min = std::numeric_limits<double>::infinity();
  double eta_max = 0.0;
  json grid_rows = json::array();
  for (const double lam : {1e-4, 1e-3, 1e-2}) {
    for (const double pi : {0.01, 0.1, 1.0}) {
      NetworkConfig point = cfg;
      point.lambda_i = lam;
      point.p_i = pi;
      const ThroughputResult r = covert_throughput(bundle.req, point);
      eta_min = std::min(eta_min, r.eta);
      eta_max = std::max(eta_max, r.eta);
      grid_rows.push_back({{"lambda_i", lam}, {"p_i_w", pi}, {"eta_bpcu", r.eta}});
    }
  }
  as.add("eta-constant-over-lambda-x-power-grid", eta_max / eta_min - 1.0, 1e-3);
  detail["product_grid_rows"] = grid_rows;
  return detail;
}

json check_corollary(const ConfigBundle& bundle, Fading fading, Assertions& as) {
  NetworkConfig cfg = bundle.net;
  cfg.fading = fading;
  if (!(cfg.sigma_zb2 > 0.0)) {
    throw DomainError("cor1/cor2 require sigma_zb2 > 0 in the config");
  }

  json detail = json::object();
  for (const SweepParam param : {SweepParam::LambdaI, SweepParam::PI}) {
    const std::vector<double> grid =
        param == SweepParam::LambdaI ? log_grid(1e-4, 1e-2, 6) : log_grid(1e-3, 10.0, 6);
    const MonotonicityReport rep =
        awgn_monotonicity_report(bundle.req, cfg, param, grid);
    as.add_flag("eta-strictly-increasing-in-" + rep.param_name, rep.strictly_increasing);
    as.add("eta-plateaus-at-high-" + rep.param_name, rep.plateau_delta_rel, 1e-3);
    json rows = json::array();
    for (const MonotonicityRow& r : rep.rows) {
      rows.push_back({{rep.param_name, r.param_value}, {"eta_bpcu", r.eta}});
    }
    detail[rep.param_name + "_rows"] = rows;
  }
  return detail;
}

}  // namespace

const std::vector<std::string>& verify_check_names() {
  static const std::vector<std::string> names = {
      "thm1", "thm2", "cor1", "cor2", "prop3", "series-vs-levy", "rate-roundtrip"};
  return names;
}

VerifyResult run_verify(const std::string& check, const ConfigBundle& bundle) {
  Assertions as;
  json detail;
  if (check == "series-vs-levy") {
    detail = check_series_vs_levy(bundle, as);
  } else if (check == "rate-roundtrip") {
    detail = check_rate_roundtrip(bundle, as);
  } else if (check == "prop3") {
    detail = check_prop3(bundle, as);
  } else if (check == "thm1") {
    detail = check_theorem(bundle, Fading::NonFading, as);
  } else if (check == "thm2") {
    detail = check_theorem(bundle, Fading::Rayleigh, as);
  } else if (check == "cor1") {
    detail = check_corollary(bundle, Fading::NonFading, as);
  } else if (check == "cor2") {
    detail = check_corollary(bundle, Fading::Rayleigh, as);
  } else {
    throw ConfigError("unknown verify check '" + check + "'");
  }

  json report;
  report["check"] = check;
  report["pass"] = as.pass;
  report["config"] = json::parse(resolved_config_json(bundle));
  report["assertions"] = as.list;
  report["detail"] = detail;

  VerifyResult out;
  out.check = check;
  out.pass = as.pass;
  out.json_report = report.dump(2);
  return out;
}

}  // namespace covertgeo
