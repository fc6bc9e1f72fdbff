#include "covertgeo/reliability.hpp"

#include <cmath>
#include <numbers>

namespace covertgeo {

void LinkBudget::validate() const {
  if (!(p_a > 0.0)) throw DomainError("LinkBudget: p_a must be > 0");
  if (!(rate > 0.0)) throw DomainError("LinkBudget: rate must be > 0");
  if (!(sigma_zb2 >= 0.0)) throw DomainError("LinkBudget: sigma_zb2 must be >= 0");
}

namespace {

// Interference level above which the slot is in outage, for a given
// received power: [p_b / (2^R - 1) - sigma_zb2]^+.
double outage_threshold(double p_b, double rate, double sigma_zb2) {
  return std::max(p_b / std::expm1(rate * std::numbers::ln2) - sigma_zb2, 0.0);
}

// Tail of the interference law at threshold t, with the convention that a
// zero threshold is certain outage (the interference is nonnegative).
// Small thresholds where the series loses digits sit deep in the stable
// law's left tail, where the tail probability is 1 to double precision.
double law_tail(double t, const InterferenceLaw& law, const ToleranceSpec& tol) {
  if (t <= 0.0) return 1.0;
  if (law.kind == InterferenceLaw::Kind::LevyClosedForm) return levy_tail(t, law.scale_b);
  const SeriesValue v = series_tail(t, law, tol);
  if (!v.converged) {
    if (t < 0.02 * law.characteristic_scale()) return 1.0;
    throw ConvergenceError("conn_outage: interference tail series failed to converge");
  }
  return v.value;
}

}  // namespace

double conn_outage_nonfading(const LinkBudget& lb, const NetworkConfig& cfg,
                             const ToleranceSpec& tol) {
  lb.validate();
  cfg.validate();
  if (cfg.fading != Fading::NonFading) {
    throw DomainError("conn_outage_nonfading: config is not non-fading");
  }
  const double p_b = lb.p_a * std::pow(cfg.d_ab, -cfg.alpha);
  return law_tail(outage_threshold(p_b, lb.rate, lb.sigma_zb2),
                  InterferenceLaw::from_config(cfg), tol);
}

double conn_outage_fading(const LinkBudget& lb, const NetworkConfig& cfg,
                          const ToleranceSpec& tol) {
  lb.validate();
  cfg.validate();
  if (cfg.fading != Fading::Rayleigh) {
    throw DomainError("conn_outage_fading: config is not Rayleigh fading");
  }
  const double snr_gap = std::expm1(lb.rate * std::numbers::ln2);  // 2^R - 1
  const double exp_rate = std::pow(cfg.d_ab, cfg.alpha) / lb.p_a;  // P_b ~ Exp(exp_rate)

  if (cfg.alpha == 4.0 && lb.sigma_zb2 == 0.0) {
    const double b = levy_scale(cfg);
    return -std::expm1(-2.0 * std::sqrt(b * snr_gap * exp_rate));
  }

  const InterferenceLaw law = InterferenceLaw::from_config(cfg);
  // Split at the received power below which noise alone forces outage;
  // beyond it, integrate the shifted exponential so the [.]^+ kink never
  // enters the quadrature.
  const double p_b0 = lb.sigma_zb2 * snr_gap;
  const double below = -std::expm1(-exp_rate * p_b0);
  const double above = std::exp(-exp_rate * p_b0) *
                       semiinf_quadrature(
                           [&](double x) { return law_tail(x / snr_gap, law, tol); },
                           exp_rate, tol);
  return below + above;
}

double conn_outage(const LinkBudget& lb, const NetworkConfig& cfg, const ToleranceSpec& tol) {
  return cfg.fading == Fading::NonFading ? conn_outage_nonfading(lb, cfg, tol)
                                         : conn_outage_fading(lb, cfg, tol);
}

namespace {

// Zero-noise closed-form rate at alpha = 4 (erf inverse for non-fading,
// log for Rayleigh); for other alpha, the tail threshold is inverted
// numerically on the monotone tail series.
double rate_closed_form(double p_a, double delta, const NetworkConfig& cfg,
                        const ToleranceSpec& tol) {
  const double d4 = std::pow(cfg.d_ab, cfg.alpha);
  if (cfg.alpha == 4.0) {
    const double b = levy_scale(cfg);
    double q;  // b / t* with t* the tail threshold hit at outage delta
    if (cfg.fading == Fading::NonFading) {
      const double ie = inv_erf(delta);
      q = ie * ie;
    } else {
      const double l = std::log1p(-delta);
      q = 0.25 * l * l;
    }
    return std::log2(1.0 + p_a * q / (b * d4));
  }
  const InterferenceLaw law = InterferenceLaw::from_config(cfg);
  if (cfg.fading == Fading::NonFading) {
    // Find t* with tail(t*) = delta; the tail is monotone decreasing.
    const double x_c = law.characteristic_scale();
    double lo = x_c, hi = x_c;
    int guard = 0;
    while (law_tail(lo, law, tol) < delta) {
      lo *= 0.5;
      if (++guard > 200) throw ConvergenceError("rate_for_outage: tail inversion bracket failed");
    }
    while (law_tail(hi, law, tol) > delta) {
      hi *= 2.0;
      if (++guard > 400) throw ConvergenceError("rate_for_outage: tail inversion bracket failed");
    }
    const double t_star = bracketed_root(
        [&](double t) { return law_tail(t, law, tol) - delta; }, lo, hi,
        ToleranceSpec{tol.rel_tol, 0.0, tol.max_iter});
    return std::log2(1.0 + p_a / (d4 * t_star));
  }
  // General-alpha Rayleigh: invert the monotone outage numerically.
  auto outage_at = [&](double r) { return conn_outage_fading(LinkBudget{p_a, r, 0.0}, cfg, tol); };
  double r_hi = 1.0;
  int guard = 0;
  while (outage_at(r_hi) < delta) {
    r_hi *= 2.0;
    if (++guard > 200) throw ConvergenceError("rate_for_outage: rate bracket failed");
  }
  double r_lo = 0.5 * r_hi;
  while (outage_at(r_lo) > delta) {
    r_hi = r_lo;
    r_lo *= 0.5;
    if (++guard > 400) throw ConvergenceError("rate_for_outage: rate bracket failed");
  }
  return bracketed_root([&](double r) { return outage_at(r) - delta; }, r_lo, r_hi,
                        ToleranceSpec{1e-12, 0.0, tol.max_iter});
}

}  // namespace

double rate_for_outage(double p_a, double delta, const NetworkConfig& cfg, double sigma_zb2,
                       const ToleranceSpec& tol) {
  cfg.validate();
  if (!(p_a > 0.0)) throw DomainError("rate_for_outage: p_a must be > 0");
  if (!(delta > 0.0 && delta < 1.0)) throw DomainError("rate_for_outage: delta must be in (0, 1)");
  if (!(sigma_zb2 >= 0.0)) throw DomainError("rate_for_outage: sigma_zb2 must be >= 0");
  tol.validate();

  const double r_zero_noise = rate_closed_form(p_a, delta, cfg, tol);
  if (sigma_zb2 == 0.0) return r_zero_noise;

  auto outage_at = [&](double r) {
    return conn_outage(LinkBudget{p_a, r, sigma_zb2}, cfg, tol);
  };
  // AWGN only reduces the feasible rate, so the zero-noise rate is an
  // upper bracket. A lower bracket needs outage < delta; if even vanishing
  // rates are in outage the budget is noise-dominated and infeasible.
  if (outage_at(r_zero_noise) <= delta) return r_zero_noise;
  double r_lo = r_zero_noise;
  for (int i = 0; i < 80; ++i) {
    r_lo *= 0.5;
    if (outage_at(r_lo) < delta) {
      return bracketed_root([&](double r) { return outage_at(r) - delta; }, r_lo, 2.0 * r_lo,
                            ToleranceSpec{1e-12, 0.0, tol.max_iter});
    }
  }
  return 0.0;  // infeasible: noise alone exceeds the outage budget
}

}  // namespace covertgeo
