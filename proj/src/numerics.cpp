#include "covertgeo/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

namespace covertgeo {

double erf(double x) { return std::erf(x); }

double erfc(double x) { return std::erfc(x); }

namespace {

constexpr double kSqrtPi = 1.7724538509055160273;

// Closed-form starting point (Winitzki), relative error ~2e-3; Newton
// polishes it to machine precision.
double inv_erf_guess(double q) {
  constexpr double a = 0.147;
  const double l = std::log1p(-q * q);
  const double t = 2.0 / (std::numbers::pi * a) + 0.5 * l;
  return std::sqrt(std::sqrt(t * t - l / a) - t);
}

}  // namespace

double inv_erf(double p) {
  if (!(std::fabs(p) < 1.0)) throw DomainError("inv_erf: argument must satisfy |p| < 1");
  if (p == 0.0) return 0.0;
  const double q = std::fabs(p);
  double x = inv_erf_guess(q);
  // erf is concave on x > 0, so Newton converges monotonically once the
  // iterate sits left of the root; clamp keeps overshoot harmless.
  for (int i = 0; i < 100; ++i) {
    const double r = std::erf(x) - q;
    const double step = r * kSqrtPi * 0.5 * std::exp(x * x);
    x = std::clamp(x - step, 0.0, 6.0);
    if (std::fabs(step) <= 1e-16 * std::max(x, 1.0)) break;
  }
  return p > 0.0 ? x : -x;
}

namespace {

constexpr double kGammaEps = 1e-15;

double reg_lower_gamma_series(double a, double x) {
  double ap = a;
  double del = 1.0 / a;
  double sum = del;
  const int itmax = 200 + static_cast<int>(10.0 * std::sqrt(a));
  for (int i = 0; i < itmax; ++i) {
    ap += 1.0;
    del *= x / ap;
    sum += del;
    if (std::fabs(del) < std::fabs(sum) * kGammaEps) {
      return sum * std::exp(-x + a * std::log(x) - std::lgamma(a));
    }
  }
  throw ConvergenceError("reg_upper_gamma: series failed to converge");
}

double reg_upper_gamma_cf(double a, double x) {
  constexpr double kFpMin = std::numeric_limits<double>::min() / kGammaEps;
  double b = x + 1.0 - a;
  double c = 1.0 / kFpMin;
  double d = 1.0 / b;
  double h = d;
  const int itmax = 200 + static_cast<int>(10.0 * std::sqrt(a));
  for (int i = 1; i <= itmax; ++i) {
    const double an = -static_cast<double>(i) * (static_cast<double>(i) - a);
    b += 2.0;
    d = an * d + b;
    if (std::fabs(d) < kFpMin) d = kFpMin;
    c = b + an / c;
    if (std::fabs(c) < kFpMin) c = kFpMin;
    d = 1.0 / d;
    const double del = d * c;
    h *= del;
    if (std::fabs(del - 1.0) < kGammaEps) {
      return h * std::exp(-x + a * std::log(x) - std::lgamma(a));
    }
  }
  throw ConvergenceError("reg_upper_gamma: continued fraction failed to converge");
}

}  // namespace

double reg_upper_gamma(double n, double x) {
  if (!(n >= 1.0)) throw DomainError("reg_upper_gamma: shape must be >= 1");
  if (!(x >= 0.0)) throw DomainError("reg_upper_gamma: argument must be >= 0");
  if (x == 0.0) return 1.0;
  if (x < n + 1.0) return 1.0 - reg_lower_gamma_series(n, x);
  return reg_upper_gamma_cf(n, x);
}

double bracketed_root(const std::function<double(double)>& f, double lo, double hi,
                      const ToleranceSpec& tol) {
  tol.validate();
  double a = lo, b = hi;
  double fa = f(a), fb = f(b);
  if (fa == 0.0) return a;
  if (fb == 0.0) return b;
  if ((fa > 0.0) == (fb > 0.0)) {
    throw BracketError("bracketed_root: no sign change on [lo, hi]");
  }
  double c = a, fc = fa;
  double d = b - a, e = d;
  for (int iter = 0; iter < tol.max_iter; ++iter) {
    if ((fb > 0.0) == (fc > 0.0)) {
      c = a;
      fc = fa;
      d = b - a;
      e = d;
    }
    if (std::fabs(fc) < std::fabs(fb)) {
      a = b; b = c; c = a;
      fa = fb; fb = fc; fc = fa;
    }
    const double xtol = 0.5 * (tol.abs_tol + tol.rel_tol * std::fabs(b));
    const double xm = 0.5 * (c - b);
    if (std::fabs(xm) <= xtol || std::fabs(fb) <= tol.abs_tol) return b;
    if (std::fabs(e) >= xtol && std::fabs(fa) > std::fabs(fb)) {
      // Inverse quadratic interpolation, falling back to secant.
      const double s = fb / fa;
      double p, q;
      if (a == c) {
        p = 2.0 * xm * s;
        q = 1.0 - s;
      } else {
        const double qq = fa / fc;
        const double r = fb / fc;
        p = s * (2.0 * xm * qq * (qq - r) - (b - a) * (r - 1.0));
        q = (qq - 1.0) * (r - 1.0) * (s - 1.0);
      }
      if (p > 0.0) q = -q;
      p = std::fabs(p);
      if (2.0 * p < std::min(3.0 * xm * q - std::fabs(xtol * q), std::fabs(e * q))) {
        e = d;
        d = p / q;
      } else {
        d = xm;
        e = d;
      }
    } else {
      d = xm;
      e = d;
    }
    a = b;
    fa = fb;
    if (std::fabs(d) > xtol) {
      b += d;
    } else {
      b += (xm > 0.0 ? xtol : -xtol);
    }
    fb = f(b);
  }
  throw ConvergenceError("bracketed_root: max_iter exceeded");
}

namespace {

// Gauss 7 / Kronrod 15 nodes and weights on [-1, 1].
constexpr double kKronrodNodes[8] = {
    0.000000000000000, 0.207784955007898, 0.405845151377397, 0.586087235467691,
    0.741531185599394, 0.864864423359769, 0.949107912342759, 0.991455371120813};
constexpr double kKronrodWeights[8] = {
    0.209482141084728, 0.204432940075298, 0.190350578064785, 0.169004726639267,
    0.140653259715525, 0.104790010322250, 0.063092092629979, 0.022935322010529};
constexpr double kGaussWeights[4] = {
    0.417959183673469, 0.381830050505119, 0.279705391489277, 0.129484966168870};

struct PanelResult {
  double integral;
  double error;
};

PanelResult g7k15(const std::function<double(double)>& f, double a, double b) {
  const double mid = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  const double f0 = f(mid);
  double k15 = kKronrodWeights[0] * f0;
  double g7 = kGaussWeights[0] * f0;
  for (int i = 1; i < 8; ++i) {
    const double dx = half * kKronrodNodes[i];
    const double fi = f(mid + dx) + f(mid - dx);
    k15 += kKronrodWeights[i] * fi;
    if (i % 2 == 0) g7 += kGaussWeights[i / 2] * fi;
  }
  k15 *= half;
  g7 *= half;
  return {k15, std::fabs(k15 - g7)};
}

double adapt(const std::function<double(double)>& f, double a, double b, double tol_panel,
             int depth) {
  const PanelResult r = g7k15(f, a, b);
  if (r.error <= tol_panel) return r.integral;
  if (depth >= 60) throw ConvergenceError("adaptive_quadrature: subdivision limit reached");
  const double mid = 0.5 * (a + b);
  if (mid <= a || mid >= b) return r.integral;  // interval at double resolution
  return adapt(f, a, mid, 0.5 * tol_panel, depth + 1) +
         adapt(f, mid, b, 0.5 * tol_panel, depth + 1);
}

}  // namespace

double adaptive_quadrature(const std::function<double(double)>& f, double a, double b,
                           const ToleranceSpec& tol) {
  tol.validate();
  if (a == b) return 0.0;
  const PanelResult whole = g7k15(f, a, b);
  const double target = std::max(tol.abs_tol, tol.rel_tol * std::fabs(whole.integral));
  if (whole.error <= target) return whole.integral;
  const double mid = 0.5 * (a + b);
  return adapt(f, a, mid, 0.5 * target, 1) + adapt(f, mid, b, 0.5 * target, 1);
}

double semiinf_quadrature(const std::function<double(double)>& g, double weight_rate,
                          const ToleranceSpec& tol) {
  tol.validate();
  if (!(weight_rate > 0.0)) throw DomainError("semiinf_quadrature: weight_rate must be > 0");
  const double tail = std::max(tol.abs_tol, 1e-300);
  const double x_max = -std::log(tail) / weight_rate;
  auto integrand = [&](double x) { return g(x) * weight_rate * std::exp(-weight_rate * x); };
  return adaptive_quadrature(integrand, 0.0, x_max, tol);
}

}  // namespace covertgeo
