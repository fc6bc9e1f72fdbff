#include "covertgeo/detection.hpp"

#include "covertgeo/errors.hpp"
#include "covertgeo/numerics.hpp"

namespace covertgeo {

namespace {

void check_input(std::int64_t n, const DetectorInput& inp) {
  if (n < 1) throw DomainError("radiometer: sample count must be >= 1");
  if (!(inp.gamma >= 0.0)) throw DomainError("radiometer: threshold must be >= 0");
  if (!(inp.sigma_vw2 >= 0.0) || !(inp.p_w >= 0.0) || !(inp.sigma_zw2 >= 0.0)) {
    throw DomainError("radiometer: powers must be >= 0");
  }
}

}  // namespace

double p_fa(std::int64_t n, const DetectorInput& inp) {
  check_input(n, inp);
  const double null_power = inp.sigma_vw2 + inp.sigma_zw2;
  if (!(null_power > 0.0)) throw DomainError("p_fa: degenerate null hypothesis power");
  return reg_upper_gamma(static_cast<double>(n), static_cast<double>(n) * inp.gamma / null_power);
}

double p_md(std::int64_t n, const DetectorInput& inp) {
  check_input(n, inp);
  const double alt_power = inp.p_w + inp.sigma_vw2 + inp.sigma_zw2;
  if (!(alt_power > 0.0)) throw DomainError("p_md: degenerate alternative hypothesis power");
  return 1.0 -
         reg_upper_gamma(static_cast<double>(n), static_cast<double>(n) * inp.gamma / alt_power);
}

double xi_finite(std::int64_t n, const DetectorInput& inp) {
  return p_fa(n, inp) + p_md(n, inp);
}

double xi_asymptotic(const DetectorInput& inp) {
  const double floor = inp.sigma_vw2 + inp.sigma_zw2;
  return (floor <= inp.gamma && inp.gamma <= inp.p_w + floor) ? 0.0 : 1.0;
}

}  // namespace covertgeo
