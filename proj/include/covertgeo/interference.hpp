#pragma once

#include "covertgeo/numerics.hpp"
#include "covertgeo/rng.hpp"

namespace covertgeo {

enum class Fading { NonFading, Rayleigh };

/// Physical parameters of the scene. Powers are linear watts throughout;
/// dBm exists only at the CLI boundary.
struct NetworkConfig {
  double lambda_i = 1e-3;   // interferer density, nodes per unit area
  double p_i = 0.1;         // interferer transmit power, W
  double alpha = 4.0;       // path-loss exponent
  double d_ab = 2.0;        // Alice-Bob distance
  double d_aw = 5.0;        // Alice-Willie distance
  double sigma_zb2 = 0.0;   // AWGN power at Bob, W
  double sigma_zw2 = 0.0;   // AWGN power at Willie, W
  Fading fading = Fading::NonFading;

  void validate() const;
};

/// E{|h|^(4/alpha)} of the per-interferer channel gain.
double fading_moment(double alpha, Fading fading);

/// Levy scale B of the aggregate interference power for alpha = 4:
/// pi^3 lambda^2 P_I / 4 (non-fading), pi^4 lambda^2 P_I / 16 (Rayleigh).
double levy_scale(const NetworkConfig& cfg);

// One-sided stable law with index 1/2 in the scale convention
// pdf(x) = sqrt(b/pi) x^{-3/2} exp(-b/x), tail(t) = erf(sqrt(b/t)).
double levy_pdf(double x, double b);
double levy_tail(double t, double b);
double levy_interval(double a, double c, double b);

/// Draw from the Levy law above; X = 2 b / Z^2 with Z standard normal.
double sample_levy(double b, Rng& rng);

/// Distribution of the aggregate interference power: exact Levy closed
/// form (alpha = 4) or the general power series in x^{-2/alpha}.
struct InterferenceLaw {
  enum class Kind { SeriesGeneral, LevyClosedForm };

  Kind kind = Kind::LevyClosedForm;
  double scale_b = 0.0;  // Levy scale, valid for LevyClosedForm

  // Series context, valid for SeriesGeneral.
  double alpha = 4.0;
  double lambda_i = 0.0;
  double p_i = 0.0;
  double fading_moment = 1.0;

  static InterferenceLaw levy(double b);
  static InterferenceLaw series(double alpha, double lambda_i, double p_i,
                                double fading_moment);
  static InterferenceLaw from_config(const NetworkConfig& cfg);

  /// Series coefficient K with terms K^k / x^{2k/alpha}; the distribution's
  /// characteristic power scale is K^{alpha/2}.
  double series_coefficient() const;
  double characteristic_scale() const;
};

/// Outcome of a series evaluation. `converged` is false when the terms
/// had not started decreasing by max_iter or the alternating sum lost all
/// significant digits (small-x regime); callers then fall back to the
/// Levy form or Monte Carlo.
struct SeriesValue {
  double value = 0.0;
  bool converged = true;
  int terms = 0;
  bool clamped = false;  // tiny negative partial sum clamped to zero
};

SeriesValue series_pdf(double x, const InterferenceLaw& law, const ToleranceSpec& tol = {});
/// P(X > t), termwise-integrated series.
SeriesValue series_tail(double t, const InterferenceLaw& law, const ToleranceSpec& tol = {});
/// P(a < X < c), evaluated with per-term differences to limit cancellation.
SeriesValue series_interval(double a, double c, const InterferenceLaw& law,
                            const ToleranceSpec& tol = {});

}  // namespace covertgeo
