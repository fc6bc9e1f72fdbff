#pragma once

#include <cstdint>

namespace covertgeo {

/// One slot as seen by Willie's radiometer: decision threshold, the
/// instantaneous interference power, the received power from Alice, and
/// the AWGN floor.
struct DetectorInput {
  double gamma = 0.0;
  double sigma_vw2 = 0.0;
  double p_w = 0.0;
  double sigma_zw2 = 0.0;
};

/// False alarm probability of the radiometer over n samples,
/// Q(n, n*gamma / (sigma_vw2 + sigma_zw2)).
double p_fa(std::int64_t n, const DetectorInput& inp);

/// Misdetection probability, 1 - Q(n, n*gamma / (p_w + sigma_vw2 + sigma_zw2)).
double p_md(std::int64_t n, const DetectorInput& inp);

/// Raw detection-error sum P_FA + P_MD. Not clamped: the sum may exceed 1
/// at suboptimal thresholds; it lies in [0, 1] at the minimizing threshold.
double xi_finite(std::int64_t n, const DetectorInput& inp);

/// Infinite-sample limit: 0 iff the threshold separates the two known
/// hypothesis powers, i.e. sigma_vw2 + sigma_zw2 <= gamma <= p_w +
/// sigma_vw2 + sigma_zw2 (closed interval), else 1.
double xi_asymptotic(const DetectorInput& inp);

}  // namespace covertgeo
