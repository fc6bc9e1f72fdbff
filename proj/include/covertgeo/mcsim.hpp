#pragma once

#include <cstdint>
#include <span>

#include "covertgeo/interference.hpp"
#include "covertgeo/rng.hpp"
#include "covertgeo/throughput.hpp"

namespace covertgeo {

/// Monte Carlo controls. `window_radius = 0` sizes the PPP sampling disk
/// automatically from the truncation-bias bound; `slot_samples_n = 0`
/// runs Willie's detector in the infinite-sample limit.
struct SimConfig {
  enum class Backend { Ppp, LevyExact };

  std::uint64_t trials = 100000;
  double window_radius = 0.0;
  std::uint64_t seed = 1;
  std::int64_t slot_samples_n = 0;
  Backend backend = Backend::Ppp;
  double fixed_gamma = 0.0;  // > 0 overrides Willie's analytic optimal threshold

  void validate(const NetworkConfig& cfg) const;
};

struct McEstimate {
  double mean = 0.0;
  double half_width_95 = 0.0;
  std::uint64_t trials = 0;
};

/// One slot draw: interference powers at Bob and Willie from a shared PPP
/// realization (or exact Levy draws), and the received powers from Alice.
struct SlotSample {
  double sigma_vb2 = 0.0;
  double sigma_vw2 = 0.0;
  double p_b = 0.0;
  double p_w = 0.0;
};

/// PPP sampling disk radius actually used: the configured radius raised
/// until the mean interference neglected beyond it,
/// 2 pi lambda P_I r^{2-alpha)/(alpha-2), is under 1e-3 of the law's
/// characteristic power scale.
double effective_window_radius(const NetworkConfig& cfg, const SimConfig& sim);

SlotSample sample_slot(const NetworkConfig& cfg, const SimConfig& sim, double p_a, Rng& rng);

/// Monte Carlo estimate of the average covert probability. Willie uses
/// the analytically optimal threshold (re-solved per trial under fading)
/// shifted by his known noise floor, or `fixed_gamma` when set.
McEstimate estimate_xi_bar(double p_a, const NetworkConfig& cfg, const SimConfig& sim);

/// Monte Carlo estimate of the connection outage probability at the given
/// power and rate.
McEstimate estimate_conn_outage(double p_a, double rate, const NetworkConfig& cfg,
                                const SimConfig& sim);

struct BruteForceResult {
  double pa = 0.0;
  double eta = 0.0;
  double pa_grid_step_rel = 0.0;  // relative spacing of the power grid
  double r_grid_step = 0.0;       // absolute spacing of the rate grid
  bool feasible = false;
};

/// Grid-search oracle for the throughput problem: the largest grid power
/// whose estimated xi_bar meets the covertness constraint, then the
/// largest grid rate whose estimated outage meets the budget.
BruteForceResult brute_force_throughput(const CovertRequirements& req, const NetworkConfig& cfg,
                                        const SimConfig& sim, std::span<const double> pa_grid,
                                        std::span<const double> r_grid);

}  // namespace covertgeo
