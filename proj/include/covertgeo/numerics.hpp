#pragma once

#include <functional>

#include "covertgeo/errors.hpp"

namespace covertgeo {

/// Shared tolerance bundle for the iterative routines in this module.
struct ToleranceSpec {
  double rel_tol = 1e-10;
  double abs_tol = 1e-12;
  int max_iter = 200;

  void validate() const {
    if (!(rel_tol > 0.0)) throw DomainError("ToleranceSpec: rel_tol must be > 0");
    if (!(abs_tol >= 0.0)) throw DomainError("ToleranceSpec: abs_tol must be >= 0");
    if (max_iter < 1) throw DomainError("ToleranceSpec: max_iter must be >= 1");
  }
};

double erf(double x);
double erfc(double x);

/// Inverse of erf on (-1, 1). Rational initial guess refined by Newton
/// steps on erf, accurate to full double precision.
double inv_erf(double p);

/// Regularized upper incomplete gamma Q(n, x) = Gamma(n, x) / Gamma(n).
/// Series for x < n + 1, Lentz continued fraction otherwise, so large
/// shapes (detector sample counts) stay cheap and stable.
double reg_upper_gamma(double n, double x);

/// Brent root finder on [lo, hi]. Requires a sign change; stops when
/// |f| <= abs_tol or the bracket width drops below abs_tol + rel_tol*|x|.
double bracketed_root(const std::function<double(double)>& f, double lo, double hi,
                      const ToleranceSpec& tol = {});

/// Adaptive Gauss-Kronrod (G7/K15) integration of f over [a, b].
double adaptive_quadrature(const std::function<double(double)>& f, double a, double b,
                           const ToleranceSpec& tol = {});

/// Integral of g(x) * rate * exp(-rate*x) over (0, inf). The domain is
/// truncated at x_max = -ln(abs_tol)/rate so the neglected tail mass is
/// below abs_tol for bounded g, then integrated adaptively.
double semiinf_quadrature(const std::function<double(double)>& g, double weight_rate,
                          const ToleranceSpec& tol = {});

}  // namespace covertgeo
