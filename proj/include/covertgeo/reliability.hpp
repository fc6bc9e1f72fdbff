#pragma once

#include "covertgeo/interference.hpp"
#include "covertgeo/numerics.hpp"

namespace covertgeo {

/// Link parameters at Bob. The noise power here (not the one in
/// NetworkConfig) is what the outage operations use, so zero-noise
/// evaluations on a noisy scene need no config surgery.
struct LinkBudget {
  double p_a = 0.0;        // Alice transmit power, W
  double rate = 0.0;       // transmission rate, bits per channel use
  double sigma_zb2 = 0.0;  // AWGN power at Bob, W

  void validate() const;
};

/// Connection outage probability for non-fading channels:
/// P(interference > [P_b / (2^R - 1) - sigma_zb2]^+), closed Levy form at
/// alpha = 4, tail series otherwise. A nonpositive threshold means the
/// noise alone exceeds the SNR budget and the outage is 1.
double conn_outage_nonfading(const LinkBudget& lb, const NetworkConfig& cfg,
                             const ToleranceSpec& tol = {});

/// Connection outage probability under Rayleigh fading: the non-fading
/// tail averaged over the exponential law of P_b. Without AWGN at
/// alpha = 4 this collapses to 1 - exp(-2 sqrt(B (2^R-1)) d_ab^2 / sqrt(P_a)).
double conn_outage_fading(const LinkBudget& lb, const NetworkConfig& cfg,
                          const ToleranceSpec& tol = {});

/// Dispatch on cfg.fading.
double conn_outage(const LinkBudget& lb, const NetworkConfig& cfg,
                   const ToleranceSpec& tol = {});

/// Largest rate with outage <= delta at the given power. Closed forms at
/// alpha = 4 without noise; with noise the closed-form rate brackets a
/// numeric root from above. Returns 0 when even vanishing rates violate
/// the outage budget.
double rate_for_outage(double p_a, double delta, const NetworkConfig& cfg, double sigma_zb2,
                       const ToleranceSpec& tol = {});

}  // namespace covertgeo
