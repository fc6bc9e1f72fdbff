#include "covertgeo/mcsim.hpp"

#include <cmath>
#include <numbers>
#include <vector>

#include "covertgeo/covertness.hpp"
#include "covertgeo/detection.hpp"
#include "covertgeo/parallel.hpp"

namespace covertgeo {

namespace {
constexpr double kPi = std::numbers::pi;
}

void SimConfig::validate(const NetworkConfig& cfg) const {
  if (trials < 1) throw DomainError("SimConfig: trials must be >= 1");
  if (slot_samples_n < 0) throw DomainError("SimConfig: slot_samples_n must be >= 0");
  if (window_radius > 0.0 && window_radius <= std::max(cfg.d_ab, cfg.d_aw)) {
    throw DomainError("SimConfig: window_radius must exceed max(d_ab, d_aw)");
  }
  if (!(fixed_gamma >= 0.0)) throw DomainError("SimConfig: fixed_gamma must be >= 0");
  if (backend == Backend::LevyExact && cfg.alpha != 4.0) {
    throw UnsupportedRegimeError("SimConfig: exact-Levy backend requires alpha = 4");
  }
}

double effective_window_radius(const NetworkConfig& cfg, const SimConfig& sim) {
  cfg.validate();
  if (!(cfg.alpha > 2.0)) {
    throw UnsupportedRegimeError("effective_window_radius: PPP truncation bound needs alpha > 2");
  }
  const double x_c = InterferenceLaw::from_config(cfg).characteristic_scale();
  // Mean interference neglected beyond r is 2 pi lambda P_I r^(2-alpha) /
  // (alpha - 2); keep it under 1e-3 of the law's power scale.
  const double budget = 1e-3 * x_c;
  const double r_bias = std::pow(
      2.0 * kPi * cfg.lambda_i * cfg.p_i / ((cfg.alpha - 2.0) * budget), 1.0 / (cfg.alpha - 2.0));
  const double r_geom = 2.0 * std::max(cfg.d_ab, cfg.d_aw);
  return std::max({sim.window_radius, r_bias, r_geom});
}

namespace {

struct SlotContext {
  double radius = 0.0;       // PPP disk radius
  double poisson_mean = 0.0; // lambda * pi * radius^2
  double levy_b = 0.0;       // exact backend scale
  bool fading = false;
  bool levy_backend = false;
};

SlotContext make_context(const NetworkConfig& cfg, const SimConfig& sim) {
  SlotContext ctx;
  ctx.fading = cfg.fading == Fading::Rayleigh;
  ctx.levy_backend = sim.backend == SimConfig::Backend::LevyExact;
  if (ctx.levy_backend) {
    ctx.levy_b = levy_scale(cfg);
  } else {
    ctx.radius = effective_window_radius(cfg, sim);
    ctx.poisson_mean = cfg.lambda_i * kPi * ctx.radius * ctx.radius;
  }
  return ctx;
}

SlotSample draw_slot(const NetworkConfig& cfg, const SlotContext& ctx, double p_a, Rng& rng) {
  SlotSample s;
  if (ctx.levy_backend) {
    s.sigma_vb2 = sample_levy(ctx.levy_b, rng);
    s.sigma_vw2 = sample_levy(ctx.levy_b, rng);
  } else {
    // Interferers on a disk centered at Alice; Bob at (d_ab, 0), Willie at
    // (-d_aw, 0). One realization feeds both receivers.
    const std::uint64_t n = rng.poisson(ctx.poisson_mean);
    const double half_alpha = 0.5 * cfg.alpha;
    for (std::uint64_t i = 0; i < n; ++i) {
      const double rad = ctx.radius * std::sqrt(rng.uniform_open());
      const double ang = 2.0 * kPi * rng.uniform();
      const double x = rad * std::cos(ang);
      const double y = rad * std::sin(ang);
      const double d2b = (x - cfg.d_ab) * (x - cfg.d_ab) + y * y;
      const double d2w = (x + cfg.d_aw) * (x + cfg.d_aw) + y * y;
      const double gain_b = ctx.fading ? rng.exponential() : 1.0;
      const double gain_w = ctx.fading ? rng.exponential() : 1.0;
      s.sigma_vb2 += cfg.p_i * gain_b / std::pow(d2b, half_alpha);
      s.sigma_vw2 += cfg.p_i * gain_w / std::pow(d2w, half_alpha);
    }
  }
  const double h_ab = ctx.fading ? rng.exponential() : 1.0;
  const double h_aw = ctx.fading ? rng.exponential() : 1.0;
  s.p_b = p_a * h_ab * std::pow(cfg.d_ab, -cfg.alpha);
  s.p_w = p_a * h_aw * std::pow(cfg.d_aw, -cfg.alpha);
  return s;
}

McEstimate reduce_counts(std::uint64_t trials, const std::vector<std::uint64_t>& sums,
                         const std::vector<std::uint64_t>& sumsqs) {
  std::uint64_t sum = 0, sumsq = 0;
  for (std::size_t i = 0; i < sums.size(); ++i) {
    sum += sums[i];
    sumsq += sumsqs[i];
  }
  McEstimate est;
  est.trials = trials;
  const double n = static_cast<double>(trials);
  est.mean = static_cast<double>(sum) / n;
  if (trials > 1) {
    const double var =
        (static_cast<double>(sumsq) - n * est.mean * est.mean) / (n - 1.0);
    est.half_width_95 = 1.959963984540054 * std::sqrt(std::max(var, 0.0) / n);
  }
  return est;
}

// Willie's optimal threshold for the slot's received power, before the
// noise-floor shift.
double optimal_gamma(double p_w, const NetworkConfig& cfg, double levy_b,
                     const InterferenceLaw& law) {
  if (cfg.alpha == 4.0) return optimal_threshold(p_w, levy_b).gamma_opt;
  return optimal_threshold_series(p_w, law).gamma_opt;
}

}  // namespace

SlotSample sample_slot(const NetworkConfig& cfg, const SimConfig& sim, double p_a, Rng& rng) {
  cfg.validate();
  sim.validate(cfg);
  if (!(p_a >= 0.0)) throw DomainError("sample_slot: p_a must be >= 0");
  const SlotContext ctx = make_context(cfg, sim);
  return draw_slot(cfg, ctx, p_a, rng);
}

McEstimate estimate_xi_bar(double p_a, const NetworkConfig& cfg, const SimConfig& sim) {
  cfg.validate();
  sim.validate(cfg);
  if (!(p_a > 0.0)) throw DomainError("estimate_xi_bar: p_a must be > 0");
  const SlotContext ctx = make_context(cfg, sim);
  const double levy_b = cfg.alpha == 4.0 ? levy_scale(cfg) : 0.0;
  const InterferenceLaw law = InterferenceLaw::from_config(cfg);

  // Non-fading: P_w is deterministic, so Willie's threshold is solved once.
  double gamma_static = 0.0;
  if (sim.fixed_gamma > 0.0) {
    gamma_static = sim.fixed_gamma;
  } else if (cfg.fading == Fading::NonFading) {
    const double p_w = p_a * std::pow(cfg.d_aw, -cfg.alpha);
    gamma_static = optimal_gamma(p_w, cfg, levy_b, law) + cfg.sigma_zw2;
  }

  const int workers = worker_count();
  std::vector<std::uint64_t> sums(static_cast<std::size_t>(workers) + 1, 0);
  std::vector<std::uint64_t> sumsqs(static_cast<std::size_t>(workers) + 1, 0);
  parallel_partition(sim.trials, [&](std::uint64_t begin, std::uint64_t end, int w) {
    std::uint64_t local_sum = 0, local_sumsq = 0;
    for (std::uint64_t t = begin; t < end; ++t) {
      Rng rng = Rng::substream(sim.seed, t);
      const SlotSample slot = draw_slot(cfg, ctx, p_a, rng);
      double gamma = gamma_static;
      if (gamma == 0.0) {
        gamma = optimal_gamma(slot.p_w, cfg, levy_b, law) + cfg.sigma_zw2;
      }
      std::uint64_t xi;
      if (sim.slot_samples_n == 0) {
        xi = static_cast<std::uint64_t>(
            xi_asymptotic({gamma, slot.sigma_vw2, slot.p_w, cfg.sigma_zw2}));
      } else {
        // Finite-sample mode: draw the radiometer statistic under both
        // hypotheses from its Gamma law and count the two error events.
        const double n = static_cast<double>(sim.slot_samples_n);
        const double null_power = slot.sigma_vw2 + cfg.sigma_zw2;
        const double t0 = null_power / n * rng.gamma(n);
        const double t1 = (slot.p_w + null_power) / n * rng.gamma(n);
        xi = static_cast<std::uint64_t>(t0 > gamma) + static_cast<std::uint64_t>(t1 <= gamma);
      }
      local_sum += xi;
      local_sumsq += xi * xi;
    }
    sums[static_cast<std::size_t>(w)] = local_sum;
    sumsqs[static_cast<std::size_t>(w)] = local_sumsq;
  });
  return reduce_counts(sim.trials, sums, sumsqs);
}

McEstimate estimate_conn_outage(double p_a, double rate, const NetworkConfig& cfg,
                                const SimConfig& sim) {
  cfg.validate();
  sim.validate(cfg);
  if (!(p_a > 0.0)) throw DomainError("estimate_conn_outage: p_a must be > 0");
  if (!(rate > 0.0)) throw DomainError("estimate_conn_outage: rate must be > 0");
  const SlotContext ctx = make_context(cfg, sim);
  const double snr_gap = std::expm1(rate * std::numbers::ln2);  // 2^R - 1

  const int workers = worker_count();
  std::vector<std::uint64_t> sums(static_cast<std::size_t>(workers) + 1, 0);
  std::vector<std::uint64_t> sumsqs(static_cast<std::size_t>(workers) + 1, 0);
  parallel_partition(sim.trials, [&](std::uint64_t begin, std::uint64_t end, int w) {
    std::uint64_t local = 0;
    for (std::uint64_t t = begin; t < end; ++t) {
      Rng rng = Rng::substream(sim.seed, t);
      const SlotSample slot = draw_slot(cfg, ctx, p_a, rng);
      const bool outage = slot.sigma_vb2 + cfg.sigma_zb2 > slot.p_b / snr_gap;
      local += outage ? 1 : 0;
    }
    sums[static_cast<std::size_t>(w)] = local;
    sumsqs[static_cast<std::size_t>(w)] = local;  // indicators: sum of squares = sum
  });
  return reduce_counts(sim.trials, sums, sumsqs);
}

BruteForceResult brute_force_throughput(const CovertRequirements& req, const NetworkConfig& cfg,
                                        const SimConfig& sim, std::span<const double> pa_grid,
                                        std::span<const double> r_grid) {
  req.validate();
  cfg.validate();
  sim.validate(cfg);
  if (pa_grid.size() < 2 || r_grid.size() < 2) {
    throw DomainError("brute_force_throughput: grids need >= 2 points");
  }

  BruteForceResult out;
  for (std::size_t i = 1; i < pa_grid.size(); ++i) {
    if (!(pa_grid[i] > pa_grid[i - 1])) {
      throw DomainError("brute_force_throughput: pa_grid must be strictly increasing");
    }
    out.pa_grid_step_rel = std::max(out.pa_grid_step_rel, pa_grid[i] / pa_grid[i - 1] - 1.0);
  }
  for (std::size_t i = 1; i < r_grid.size(); ++i) {
    if (!(r_grid[i] > r_grid[i - 1])) {
      throw DomainError("brute_force_throughput: r_grid must be strictly increasing");
    }
    out.r_grid_step = std::max(out.r_grid_step, r_grid[i] - r_grid[i - 1]);
  }

  std::uint64_t probe = 0;
  const double xi_floor = 1.0 - req.eps;
  bool found_pa = false;
  for (std::size_t i = 0; i < pa_grid.size(); ++i, ++probe) {
    SimConfig probe_sim = sim;
    probe_sim.seed = mix_seed(sim.seed, probe);
    const McEstimate est = estimate_xi_bar(pa_grid[i], cfg, probe_sim);
    if (est.mean >= xi_floor) {
      out.pa = pa_grid[i];
      found_pa = true;
    }
  }
  if (!found_pa) return out;  // infeasible on this grid

  for (std::size_t i = 0; i < r_grid.size(); ++i, ++probe) {
    SimConfig probe_sim = sim;
    probe_sim.seed = mix_seed(sim.seed, probe);
    const McEstimate est = estimate_conn_outage(out.pa, r_grid[i], cfg, probe_sim);
    if (est.mean <= req.delta) {
      out.eta = r_grid[i];
      out.feasible = true;
    }
  }
  return out;
}

}  // namespace covertgeo
