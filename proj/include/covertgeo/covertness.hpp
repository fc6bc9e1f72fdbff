#pragma once

#include "covertgeo/interference.hpp"
#include "covertgeo/numerics.hpp"

namespace covertgeo {

/// Willie's optimal detector threshold and the detection probability mass
/// it captures in the window (gamma - p_w, gamma).
struct ThresholdSolution {
  double gamma_opt = 0.0;
  double window_prob = 0.0;
  int iterations = 0;
};

/// Probability that the interference power lands in (gamma - p_w, gamma),
/// i.e. erf(sqrt(b/(gamma-p_w))) - erf(sqrt(b/gamma)). Requires gamma > p_w.
double detection_window_prob(double gamma, double p_w, double b);

/// Unique stationary point of the detection-window probability on
/// (p_w, inf): the root of
///   (x - p_w)^{3/2} exp(-b/x) - x^{3/2} exp(-b/(x - p_w)) = 0,
/// bracketed by exponential expansion and solved with Brent. The window
/// probability is strictly quasiconcave, so the root is the maximizer.
ThresholdSolution optimal_threshold(double p_w, double b, const ToleranceSpec& tol = {});

/// General-alpha counterpart: maximizes the termwise-integrated series
/// window over the threshold with a log grid plus golden-section
/// refinement. Best effort; grid points where the series loses
/// convergence are skipped.
ThresholdSolution optimal_threshold_series(double p_w, const InterferenceLaw& law,
                                           const ToleranceSpec& tol = {});

/// Average covert probability xi_bar for non-fading channels. alpha = 4
/// uses the closed Levy form; other alpha maximize the series expression
/// numerically (best effort). AWGN at Willie never enters: the optimal
/// threshold absorbs a known noise floor exactly, so the zero-noise value
/// is returned for any sigma_zw2.
double avg_covert_prob_nonfading(double p_a, const NetworkConfig& cfg,
                                 const ToleranceSpec& tol = {});

/// Average covert probability for Rayleigh fading: the non-fading window
/// optimum re-solved per received-power value and integrated against the
/// exponential law of P_w.
double avg_covert_prob_fading(double p_a, const NetworkConfig& cfg,
                              const ToleranceSpec& tol = {});

/// Dispatch on cfg.fading.
double avg_covert_prob(double p_a, const NetworkConfig& cfg, const ToleranceSpec& tol = {});

/// 1 - xi_bar in the infinite-sample regime.
double covert_outage(double p_a, const NetworkConfig& cfg, const ToleranceSpec& tol = {});

/// Largest transmit power meeting the covertness constraint: solves
/// xi_bar(P_a) = 1 - eps by doubling from a small seed until the
/// constraint breaks, then bisecting (xi_bar is monotone decreasing).
double solve_pa_star(double eps, const NetworkConfig& cfg, const ToleranceSpec& tol = {});

}  // namespace covertgeo
