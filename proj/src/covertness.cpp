#include "covertgeo/covertness.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

namespace covertgeo {

double detection_window_prob(double gamma, double p_w, double b) {
  if (!(p_w > 0.0)) throw DomainError("detection_window_prob: p_w must be > 0");
  if (!(gamma > p_w)) throw DomainError("detection_window_prob: requires gamma > p_w");
  if (!(b > 0.0)) throw DomainError("detection_window_prob: scale must be > 0");
  return levy_interval(gamma - p_w, gamma, b);
}

namespace {

// Stationarity condition of the window probability in log form. With
// v = gamma/p_w - 1 and beta = b/p_w the root equation becomes
//   (3/2) ln(v/(1+v)) + beta / (v (1+v)) = 0,
// which has the same sign as the x-space equation but neither underflows
// nor cancels near gamma = p_w.
double stationarity(double v, double beta) {
  return 1.5 * std::log(v / (1.0 + v)) + beta / (v * (1.0 + v));
}

}  // namespace

ThresholdSolution optimal_threshold(double p_w, double b, const ToleranceSpec& tol) {
  if (!(p_w > 0.0)) throw DomainError("optimal_threshold: p_w must be > 0");
  if (!(b > 0.0)) throw DomainError("optimal_threshold: scale must be > 0");
  tol.validate();
  const double beta = b / p_w;
  int iters = 0;

  // Expand from gamma = p_w * (1 + 1e-6) upward until the stationarity
  // function changes sign; b << p_w puts the root below the start point,
  // in which case expand toward p_w instead (the function tends to +inf
  // there, so a sign change always exists).
  double v_lo = 1e-6, v_hi = 1e-6;
  const double v_cap = 1e3 * (1.0 + beta);  // gamma cap 1e3 * (p_w + b)
  double f_start = stationarity(v_lo, beta);
  ++iters;
  if (f_start == 0.0) {
    const double gamma = p_w * (1.0 + v_lo);
    return {gamma, detection_window_prob(gamma, p_w, b), iters};
  }
  if (f_start > 0.0) {
    while (true) {
      v_hi *= 2.0;
      ++iters;
      if (v_hi > v_cap) {
        throw BracketError("optimal_threshold: no sign change below gamma = 1e3 (p_w + b)");
      }
      if (stationarity(v_hi, beta) <= 0.0) break;
      v_lo = v_hi;
    }
  } else {
    while (true) {
      v_lo *= 0.5;
      ++iters;
      if (v_lo < 1e-300) {
        throw BracketError("optimal_threshold: no sign change approaching gamma = p_w");
      }
      if (stationarity(v_lo, beta) >= 0.0) break;
      v_hi = v_lo * 2.0;
    }
  }

  ToleranceSpec root_tol = tol;
  root_tol.abs_tol = 0.0;  // v spans many decades; converge on relative width
  const double v_opt = bracketed_root([&](double v) { ++iters; return stationarity(v, beta); },
                                      v_lo, v_hi, root_tol);

  ThresholdSolution sol;
  sol.gamma_opt = p_w * (1.0 + v_opt);
  sol.window_prob = std::erf(std::sqrt(beta / v_opt)) - std::erf(std::sqrt(beta / (1.0 + v_opt)));
  sol.iterations = iters;
  return sol;
}

ThresholdSolution optimal_threshold_series(double p_w, const InterferenceLaw& law,
                                           const ToleranceSpec& tol) {
  if (!(p_w > 0.0)) throw DomainError("optimal_threshold_series: p_w must be > 0");
  if (law.kind != InterferenceLaw::Kind::SeriesGeneral) {
    throw DomainError("optimal_threshold_series: law must be SeriesGeneral");
  }
  tol.validate();
  const double x_c = law.characteristic_scale();
  int iters = 0;
  auto window = [&](double a) -> double {
    ++iters;
    const SeriesValue v = series_interval(a, a + p_w, law, tol);
    if (!v.converged) return -1.0;
    return v.value;
  };

  // Coarse log grid over the window lower edge a = gamma - p_w, then
  // golden-section refinement around the best point.
  const double a_min = std::max(p_w * 1e-6, x_c * 1e-3);
  const double a_max = (p_w + x_c) * 1e3;
  constexpr int kGrid = 160;
  double best_a = 0.0, best_val = -1.0;
  const double step = std::log(a_max / a_min) / (kGrid - 1);
  for (int i = 0; i < kGrid; ++i) {
    const double a = a_min * std::exp(step * i);
    const double val = window(a);
    if (val > best_val) {
      best_val = val;
      best_a = a;
    }
  }
  if (best_val < 0.0) {
    throw ConvergenceError("optimal_threshold_series: interference series failed to "
                           "converge over the threshold search grid");
  }

  double lo = best_a * std::exp(-step);
  double hi = best_a * std::exp(step);
  constexpr double kInvPhi = 0.6180339887498949;
  double x1 = hi - (hi - lo) * kInvPhi;
  double x2 = lo + (hi - lo) * kInvPhi;
  double f1 = window(x1), f2 = window(x2);
  for (int it = 0; it < 200 && (hi - lo) > 1e-12 * hi; ++it) {
    if (f1 < f2) {
      lo = x1;
      x1 = x2;
      f1 = f2;
      x2 = lo + (hi - lo) * kInvPhi;
      f2 = window(x2);
    } else {
      hi = x2;
      x2 = x1;
      f2 = f1;
      x1 = hi - (hi - lo) * kInvPhi;
      f1 = window(x1);
    }
  }
  ThresholdSolution sol;
  if (f1 >= best_val && f1 >= f2) {
    sol.gamma_opt = p_w + x1;
    sol.window_prob = f1;
  } else if (f2 >= best_val) {
    sol.gamma_opt = p_w + x2;
    sol.window_prob = f2;
  } else {
    sol.gamma_opt = p_w + best_a;
    sol.window_prob = best_val;
  }
  sol.iterations = iters;
  return sol;
}

namespace {

double clamp_prob(double p) { return std::clamp(p, 0.0, 1.0); }

}  // namespace

double avg_covert_prob_nonfading(double p_a, const NetworkConfig& cfg,
                                 const ToleranceSpec& tol) {
  cfg.validate();
  if (!(p_a > 0.0)) throw DomainError("avg_covert_prob_nonfading: p_a must be > 0");
  if (cfg.fading != Fading::NonFading) {
    throw DomainError("avg_covert_prob_nonfading: config is not non-fading");
  }
  const double p_w = p_a * std::pow(cfg.d_aw, -cfg.alpha);
  if (cfg.alpha == 4.0) {
    const double b = levy_scale(cfg);
    return clamp_prob(1.0 - optimal_threshold(p_w, b, tol).window_prob);
  }
  const InterferenceLaw law = InterferenceLaw::from_config(cfg);
  return clamp_prob(1.0 - optimal_threshold_series(p_w, law, tol).window_prob);
}

double avg_covert_prob_fading(double p_a, const NetworkConfig& cfg, const ToleranceSpec& tol) {
  cfg.validate();
  if (!(p_a > 0.0)) throw DomainError("avg_covert_prob_fading: p_a must be > 0");
  if (cfg.fading != Fading::Rayleigh) {
    throw DomainError("avg_covert_prob_fading: config is not Rayleigh fading");
  }
  const double rate = std::pow(cfg.d_aw, cfg.alpha) / p_a;  // P_w ~ Exp(rate)
  if (cfg.alpha == 4.0) {
    const double b = levy_scale(cfg);
    const double mean_window = semiinf_quadrature(
        [&](double p_w) { return optimal_threshold(p_w, b, tol).window_prob; }, rate, tol);
    return clamp_prob(1.0 - mean_window);
  }
  const InterferenceLaw law = InterferenceLaw::from_config(cfg);
  const double mean_window = semiinf_quadrature(
      [&](double p_w) { return optimal_threshold_series(p_w, law, tol).window_prob; }, rate,
      tol);
  return clamp_prob(1.0 - mean_window);
}

double avg_covert_prob(double p_a, const NetworkConfig& cfg, const ToleranceSpec& tol) {
  return cfg.fading == Fading::NonFading ? avg_covert_prob_nonfading(p_a, cfg, tol)
                                         : avg_covert_prob_fading(p_a, cfg, tol);
}

double covert_outage(double p_a, const NetworkConfig& cfg, const ToleranceSpec& tol) {
  return 1.0 - avg_covert_prob(p_a, cfg, tol);
}

double solve_pa_star(double eps, const NetworkConfig& cfg, const ToleranceSpec& tol) {
  cfg.validate();
  if (!(eps > 0.0 && eps < 1.0)) throw DomainError("solve_pa_star: eps must be in (0, 1)");
  tol.validate();
  const double target = 1.0 - eps;
  const double scale =
      cfg.alpha == 4.0 ? levy_scale(cfg) : InterferenceLaw::from_config(cfg).characteristic_scale();

  // One-side search: start where the received power at Willie is buried
  // three decades under the interference scale, double until the
  // covertness constraint fails.
  double p_a = 1e-3 * scale * std::pow(cfg.d_aw, cfg.alpha);
  double xi = avg_covert_prob(p_a, cfg, tol);
  int guard = 0;
  while (xi < target) {
    p_a *= 0.5;
    xi = avg_covert_prob(p_a, cfg, tol);
    if (++guard > 2000) {
      throw ConvergenceError("solve_pa_star: could not find a feasible starting power");
    }
  }
  double lo = p_a, xi_lo = xi;  // xi_lo >= target
  double hi = p_a;
  double xi_hi = xi;
  guard = 0;
  while (xi_hi >= target) {
    lo = hi;
    xi_lo = xi_hi;
    hi *= 2.0;
    xi_hi = avg_covert_prob(hi, cfg, tol);
    if (++guard > 2000) {
      throw ConvergenceError("solve_pa_star: doubling search failed to break the constraint");
    }
  }

  // Bisection on the monotone decreasing xi_bar.
  const double func_tol = std::max(tol.abs_tol, 1e-12);
  double mid = 0.5 * (lo + hi);
  for (int it = 0; it < 200; ++it) {
    mid = 0.5 * (lo + hi);
    const double xi_mid = avg_covert_prob(mid, cfg, tol);
    const double slack = 64.0 * func_tol;
    if (xi_mid > xi_lo + slack || xi_mid < xi_hi - slack) {
      throw NumericalInconsistencyError(
          "solve_pa_star: xi_bar is not monotone across the bisection bracket");
    }
    if (std::fabs(xi_mid - target) <= func_tol || (hi - lo) <= 1e-14 * hi) return mid;
    if (xi_mid >= target) {
      lo = mid;
      xi_lo = xi_mid;
    } else {
      hi = mid;
      xi_hi = xi_mid;
    }
  }
  return mid;
}

}  // namespace covertgeo
