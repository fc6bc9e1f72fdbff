#include "covertgeo/interference.hpp"

#include <cmath>
#include <numbers>
#include <vector>

namespace covertgeo {

namespace {
constexpr double kPi = std::numbers::pi;
}

void NetworkConfig::validate() const {
  if (!(lambda_i > 0.0)) throw DomainError("NetworkConfig: lambda_i must be > 0");
  if (!(p_i > 0.0)) throw DomainError("NetworkConfig: p_i must be > 0");
  if (!(alpha >= 2.0)) throw DomainError("NetworkConfig: alpha must be >= 2");
  if (!(d_ab > 0.0)) throw DomainError("NetworkConfig: d_ab must be > 0");
  if (!(d_aw > 0.0)) throw DomainError("NetworkConfig: d_aw must be > 0");
  if (!(sigma_zb2 >= 0.0)) throw DomainError("NetworkConfig: sigma_zb2 must be >= 0");
  if (!(sigma_zw2 >= 0.0)) throw DomainError("NetworkConfig: sigma_zw2 must be >= 0");
}

double fading_moment(double alpha, Fading fading) {
  if (!(alpha >= 2.0)) throw DomainError("fading_moment: alpha must be >= 2");
  switch (fading) {
    case Fading::NonFading:
      return 1.0;
    case Fading::Rayleigh:
      return std::tgamma((alpha + 2.0) / alpha);
  }
  throw DomainError("fading_moment: unknown fading kind");
}

double levy_scale(const NetworkConfig& cfg) {
  cfg.validate();
  if (cfg.alpha != 4.0) {
    throw UnsupportedRegimeError("levy_scale: closed form exists for alpha = 4 only");
  }
  const double lam2p = cfg.lambda_i * cfg.lambda_i * cfg.p_i;
  return cfg.fading == Fading::NonFading ? kPi * kPi * kPi * lam2p / 4.0
                                         : kPi * kPi * kPi * kPi * lam2p / 16.0;
}

double levy_pdf(double x, double b) {
  if (!(x > 0.0)) throw DomainError("levy_pdf: x must be > 0");
  if (!(b > 0.0)) throw DomainError("levy_pdf: scale must be > 0");
  return std::sqrt(b / kPi) * std::pow(x, -1.5) * std::exp(-b / x);
}

double levy_tail(double t, double b) {
  if (!(t > 0.0)) throw DomainError("levy_tail: t must be > 0");
  if (!(b > 0.0)) throw DomainError("levy_tail: scale must be > 0");
  return std::erf(std::sqrt(b / t));
}

double levy_interval(double a, double c, double b) {
  if (!(a > 0.0) || !(c > 0.0)) throw DomainError("levy_interval: bounds must be > 0");
  if (!(a <= c)) throw DomainError("levy_interval: requires a <= c");
  if (!(b > 0.0)) throw DomainError("levy_interval: scale must be > 0");
  return std::erf(std::sqrt(b / a)) - std::erf(std::sqrt(b / c));
}

double sample_levy(double b, Rng& rng) {
  if (!(b > 0.0)) throw DomainError("sample_levy: scale must be > 0");
  const double z = rng.normal();
  return 2.0 * b / (z * z);
}

InterferenceLaw InterferenceLaw::levy(double b) {
  if (!(b > 0.0)) throw DomainError("InterferenceLaw::levy: scale must be > 0");
  InterferenceLaw law;
  law.kind = Kind::LevyClosedForm;
  law.scale_b = b;
  return law;
}

InterferenceLaw InterferenceLaw::series(double alpha, double lambda_i, double p_i,
                                        double fading_moment) {
  if (!(alpha > 2.0)) {
    throw DomainError("InterferenceLaw::series: series form requires alpha > 2");
  }
  if (!(lambda_i > 0.0) || !(p_i > 0.0) || !(fading_moment > 0.0)) {
    throw DomainError("InterferenceLaw::series: parameters must be > 0");
  }
  InterferenceLaw law;
  law.kind = Kind::SeriesGeneral;
  law.alpha = alpha;
  law.lambda_i = lambda_i;
  law.p_i = p_i;
  law.fading_moment = fading_moment;
  return law;
}

InterferenceLaw InterferenceLaw::from_config(const NetworkConfig& cfg) {
  cfg.validate();
  if (cfg.alpha == 4.0) return levy(levy_scale(cfg));
  return series(cfg.alpha, cfg.lambda_i, cfg.p_i,
                covertgeo::fading_moment(cfg.alpha, cfg.fading));
}

double InterferenceLaw::series_coefficient() const {
  return kPi * lambda_i * std::tgamma((alpha - 2.0) / alpha) * fading_moment *
         std::pow(p_i, 2.0 / alpha);
}

double InterferenceLaw::characteristic_scale() const {
  if (kind == Kind::LevyClosedForm) return 4.0 * scale_b;
  return std::pow(series_coefficient(), alpha / 2.0);
}

namespace {

// sin(2 pi k / alpha) with the argument reduced as a rational multiple of
// pi, returning exact zeros when 2k/alpha is an integer (every even k at
// alpha = 4).
double sine_factor(int k, double alpha) {
  const double r = std::fmod(2.0 * static_cast<double>(k) / alpha, 2.0);
  if (r == 0.0 || r == 1.0) return 0.0;
  return std::sin(r * kPi);
}

// x-independent factor of term k: (-1)^{k+1} Gamma(arg(k)) sin(2 pi k /
// alpha) / k!. Cached per (alpha, kind) since sweeps evaluate thousands of
// points against one law.
const std::vector<double>& term_coefficients(double alpha, bool pdf_kind, int n_terms) {
  struct CacheEntry {
    double alpha = -1.0;
    bool pdf_kind = false;
    std::vector<double> c;
  };
  thread_local CacheEntry cache[2];
  CacheEntry& e = cache[pdf_kind ? 0 : 1];
  if (e.alpha != alpha || e.pdf_kind != pdf_kind || static_cast<int>(e.c.size()) < n_terms) {
    e.alpha = alpha;
    e.pdf_kind = pdf_kind;
    e.c.assign(n_terms, 0.0);
    double factorial = 1.0;
    for (int k = 1; k <= n_terms; ++k) {
      factorial *= static_cast<double>(k);
      const double arg = pdf_kind ? (alpha + 2.0 * k) / alpha : 2.0 * k / alpha;
      const double sign = (k % 2 == 0) ? -1.0 : 1.0;
      e.c[k - 1] = sign * std::tgamma(arg) * sine_factor(k, alpha) / factorial;
    }
  }
  return e.c;
}

// Shared evaluator for the pdf/tail/interval series. `bracket(k)` supplies
// the x-dependent factor of term k.
template <typename BracketFn>
SeriesValue sum_series(const InterferenceLaw& law, const ToleranceSpec& tol, bool pdf_kind,
                       BracketFn&& bracket) {
  tol.validate();
  const double coeff = law.series_coefficient();
  const std::vector<double>& c = term_coefficients(law.alpha, pdf_kind, tol.max_iter);
  double sum = 0.0;
  double max_term = 0.0;
  double prev_mag = 0.0;
  bool decreasing = false;
  int terms = 0;
  double coeff_pow = 1.0;
  for (int k = 1; k <= tol.max_iter; ++k) {
    coeff_pow *= coeff;
    const double term = c[k - 1] * coeff_pow * bracket(k);
    const double mag = std::fabs(term);
    sum += term;
    terms = k;
    if (mag > 0.0) {
      if (prev_mag > 0.0 && mag < prev_mag) decreasing = true;
      prev_mag = mag;
      max_term = std::max(max_term, mag);
      // Alternating decreasing tail: remainder is bounded by the latest
      // nonzero term (zero terms from the sine factor do not count).
      if (decreasing && mag < tol.abs_tol * std::fabs(sum)) break;
    }
    if (!std::isfinite(sum)) {
      return {0.0, false, terms, false};
    }
  }
  SeriesValue out;
  out.terms = terms;
  out.converged = decreasing && std::fabs(sum) > max_term * 1e-13;
  out.value = sum / kPi;
  if (out.value < 0.0) {
    // Cancellation can leave a tiny negative residue; densities and
    // probabilities are nonnegative by definition.
    out.value = 0.0;
    out.clamped = true;
  }
  return out;
}

}  // namespace

SeriesValue series_pdf(double x, const InterferenceLaw& law, const ToleranceSpec& tol) {
  if (law.kind != InterferenceLaw::Kind::SeriesGeneral) {
    throw DomainError("series_pdf: law must be SeriesGeneral");
  }
  if (!(x > 0.0)) throw DomainError("series_pdf: x must be > 0");
  const double alpha = law.alpha;
  SeriesValue out =
      sum_series(law, tol, true, [&](int k) { return std::pow(x, -2.0 * k / alpha); });
  out.value /= x;
  return out;
}

SeriesValue series_tail(double t, const InterferenceLaw& law, const ToleranceSpec& tol) {
  if (law.kind != InterferenceLaw::Kind::SeriesGeneral) {
    throw DomainError("series_tail: law must be SeriesGeneral");
  }
  if (!(t > 0.0)) throw DomainError("series_tail: t must be > 0");
  const double alpha = law.alpha;
  return sum_series(law, tol, false, [&](int k) { return std::pow(t, -2.0 * k / alpha); });
}

SeriesValue series_interval(double a, double c, const InterferenceLaw& law,
                            const ToleranceSpec& tol) {
  if (law.kind != InterferenceLaw::Kind::SeriesGeneral) {
    throw DomainError("series_interval: law must be SeriesGeneral");
  }
  if (!(a > 0.0) || !(c > 0.0)) throw DomainError("series_interval: bounds must be > 0");
  if (!(a <= c)) throw DomainError("series_interval: requires a <= c");
  const double alpha = law.alpha;
  return sum_series(law, tol, false, [&](int k) {
    const double e = -2.0 * static_cast<double>(k) / alpha;
    return std::pow(a, e) - std::pow(c, e);
  });
}

}  // namespace covertgeo
