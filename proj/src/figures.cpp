#include "covertgeo/figures.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <vector>

#include "covertgeo/covertness.hpp"
#include "covertgeo/parallel.hpp"
#include "covertgeo/reliability.hpp"

namespace covertgeo {

std::string format_sci(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.11e", v);
  return buf;
}

namespace {

std::vector<double> log_grid(double lo, double hi, int n) {
  std::vector<double> g(n);
  const double step = std::log(hi / lo) / (n - 1);
  for (int i = 0; i < n; ++i) g[i] = lo * std::exp(step * i);
  g.back() = hi;
  return g;
}

std::vector<double> lin_grid(double lo, double hi, int n) {
  std::vector<double> g(n);
  const double step = (hi - lo) / (n - 1);
  for (int i = 0; i < n; ++i) g[i] = lo + step * i;
  g.back() = hi;
  return g;
}

std::string sanitize_error(const std::string& msg) {
  std::string out = msg;
  for (char& c : out) {
    if (c == ',' || c == '\n' || c == '\r') c = ';';
  }
  return out;
}

std::string join_row(const std::vector<std::string>& cells) {
  std::string row;
  for (std::size_t i = 0; i < cells.size(); ++i) {
    if (i) row += ',';
    row += cells[i];
  }
  row += '\n';
  return row;
}

// Rows computed concurrently, emitted in grid order; a failed row keeps
// its sweep cell and reports the failure in the error column.
template <typename RowFn>
void emit_rows(std::span<const double> grid, std::ostream& out, RowFn&& fn) {
  std::vector<std::string> rows(grid.size());
  parallel_partition(grid.size(), [&](std::uint64_t begin, std::uint64_t end, int) {
    for (std::uint64_t i = begin; i < end; ++i) {
      std::vector<std::string> cells;
      cells.push_back(format_sci(grid[i]));
      std::string error;
      try {
        fn(grid[i], static_cast<std::uint64_t>(i), cells);
      } catch (const std::exception& e) {
        error = sanitize_error(e.what());
      }
      cells.push_back(error);
      rows[i] = join_row(cells);
    }
  });
  for (const auto& row : rows) out << row;
}

McEstimate mc_xi_bar(const ConfigBundle& bundle, const NetworkConfig& net, double p_a,
                     std::uint64_t salt) {
  SimConfig sim = bundle.sim;
  sim.seed = mix_seed(bundle.sim.seed, salt);
  sim.backend = resolve_backend(bundle, /*prefer_levy=*/true);
  return estimate_xi_bar(p_a, net, sim);
}

// Monte Carlo companion for a throughput value: grid oracle centered on
// the analytic solution.
BruteForceResult mc_throughput(const ConfigBundle& bundle, const NetworkConfig& net,
                               const ThroughputResult& analytic, std::uint64_t salt) {
  SimConfig sim = bundle.sim;
  sim.seed = mix_seed(bundle.sim.seed, salt);
  sim.backend = resolve_backend(bundle, /*prefer_levy=*/true);
  sim.trials = std::max<std::uint64_t>(2000, bundle.sim.trials / 5);
  const std::vector<double> pa_grid = log_grid(analytic.pa_star / 4.0, analytic.pa_star * 4.0, 13);
  const std::vector<double> r_grid =
      lin_grid(std::max(analytic.eta * 0.5, 1e-6), analytic.eta * 1.5, 17);
  return brute_force_throughput(bundle.req, net, sim, pa_grid, r_grid);
}

void header(std::ostream& out, const ConfigBundle& bundle, const std::string& title) {
  out << "# covertgeo " << title << "\n";
  out << "# config: " << resolved_config_json(bundle) << "\n";
}

void figure_covert_prob(int fig_id, const ConfigBundle& bundle, std::ostream& out) {
  ConfigBundle base = bundle;
  base.net.fading = fig_id == 2 ? Fading::NonFading : Fading::Rayleigh;
  header(out, base,
         std::string("figure ") + std::to_string(fig_id) +
             ": average covert probability versus interferer density");
  const std::vector<double> grid = log_grid(1e-4, 1e-2, 20);
  out << "# grid: lambda_i, 20 log-spaced points in [1e-4, 1e-2]\n";
  out << "lambda_i,xi_bar_analytic,xi_bar_mc,xi_bar_mc_half_width,error\n";
  emit_rows(grid, out, [&](double lambda, std::uint64_t row, std::vector<std::string>& cells) {
    NetworkConfig net = base.net;
    net.lambda_i = lambda;
    const double analytic = avg_covert_prob(base.p_a, net);
    const McEstimate mc = mc_xi_bar(base, net, base.p_a, row);
    cells.push_back(format_sci(analytic));
    cells.push_back(format_sci(mc.mean));
    cells.push_back(format_sci(mc.half_width_95));
  });
}

void figure_throughput(int fig_id, const ConfigBundle& bundle, std::ostream& out) {
  std::vector<double> grid;
  std::string sweep_name, title;
  switch (fig_id) {
    case 4:
      grid = log_grid(1e-4, 1e-2, 15);
      sweep_name = "lambda_i";
      title = "figure 4: covert throughput versus interferer density";
      break;
    case 5:
      grid = log_grid(1e-3, 10.0, 15);
      sweep_name = "p_i_w";
      title = "figure 5: covert throughput versus interferer transmit power";
      break;
    case 6:
      grid = lin_grid(0.05, 0.6, 12);
      sweep_name = "eps";
      title = "figure 6: covert throughput versus covertness requirement";
      break;
    default:
      grid = log_grid(1e-12, 1e-5, 15);
      sweep_name = "sigma_z2_w";
      title = "figure 7: covert throughput versus receiver noise power";
      break;
  }
  header(out, bundle, title);
  out << "# grid: " << sweep_name << ", " << grid.size() << " points in ["
      << format_sci(grid.front()) << ", " << format_sci(grid.back()) << "]\n";
  out << "# mc: brute-force throughput oracle per row, trials="
      << std::max<std::uint64_t>(2000, bundle.sim.trials / 5) << "\n";
  out << sweep_name
      << ",eta_nonfading,eta_nonfading_mc,eta_nonfading_mc_half_width,"
         "eta_rayleigh,eta_rayleigh_mc,eta_rayleigh_mc_half_width,error\n";
  emit_rows(grid, out, [&](double value, std::uint64_t row, std::vector<std::string>& cells) {
    for (int c = 0; c < 2; ++c) {
      ConfigBundle point = bundle;
      point.net.fading = c == 0 ? Fading::NonFading : Fading::Rayleigh;
      switch (fig_id) {
        case 4: point.net.lambda_i = value; break;
        case 5: point.net.p_i = value; break;
        case 6: point.req.eps = value; break;
        default:
          point.net.sigma_zb2 = value;
          point.net.sigma_zw2 = value;
          break;
      }
      const ThroughputResult r = covert_throughput(point.req, point.net);
      cells.push_back(format_sci(r.eta));
      if (r.feasible) {
        const BruteForceResult bf =
            mc_throughput(point, point.net, r, row * 2 + static_cast<std::uint64_t>(c));
        cells.push_back(format_sci(bf.eta));
        cells.push_back(format_sci(bf.r_grid_step));
      } else {
        cells.push_back(format_sci(0.0));
        cells.push_back(format_sci(0.0));
      }
    }
  });
}

}  // namespace

void run_figure(int fig_id, const ConfigBundle& bundle, std::ostream& out) {
  switch (fig_id) {
    case 2:
    case 3:
      figure_covert_prob(fig_id, bundle, out);
      return;
    case 4:
    case 5:
    case 6:
    case 7:
      figure_throughput(fig_id, bundle, out);
      return;
    default:
      throw ConfigError("figure id must be one of 2..7");
  }
}

namespace {

void command_columns(const std::string& command, std::ostream& out) {
  if (command == "covert-prob") {
    out << "xi_bar,covert_outage";
  } else if (command == "outage") {
    out << "conn_outage,rate_at_delta";
  } else if (command == "throughput") {
    out << "pa_star_w,eta_bpcu,xi_at_pa_star,outage_at_eta,normalized,feasible";
  } else if (command == "simulate") {
    out << "xi_bar_mc,xi_bar_mc_half_width,conn_outage_mc,conn_outage_mc_half_width,"
           "xi_bar_analytic,conn_outage_analytic,window_radius_effective";
  } else {
    out << "xi_bar,covert_outage,conn_outage,rate_at_delta,pa_star_w,eta_bpcu";
  }
}

void command_cells(const std::string& command, const ConfigBundle& b,
                   std::vector<std::string>& cells) {
  if (command == "covert-prob") {
    const double xi = avg_covert_prob(b.p_a, b.net);
    cells.push_back(format_sci(xi));
    cells.push_back(format_sci(1.0 - xi));
    return;
  }
  if (command == "outage") {
    cells.push_back(format_sci(conn_outage(LinkBudget{b.p_a, b.rate, b.net.sigma_zb2}, b.net)));
    cells.push_back(format_sci(rate_for_outage(b.p_a, b.req.delta, b.net, b.net.sigma_zb2)));
    return;
  }
  if (command == "throughput") {
    const ThroughputResult r = covert_throughput(b.req, b.net);
    cells.push_back(format_sci(r.pa_star));
    cells.push_back(format_sci(r.eta));
    cells.push_back(format_sci(r.xi_at_pa));
    cells.push_back(format_sci(r.outage_at_eta));
    cells.push_back(r.normalized ? "1" : "0");
    cells.push_back(r.feasible ? "1" : "0");
    return;
  }
  if (command == "simulate") {
    SimConfig sim = b.sim;
    sim.backend = resolve_backend(b, /*prefer_levy=*/false);
    const McEstimate xi = estimate_xi_bar(b.p_a, b.net, sim);
    SimConfig sim2 = sim;
    sim2.seed = mix_seed(sim.seed, 1);
    const McEstimate po = estimate_conn_outage(b.p_a, b.rate, b.net, sim2);
    cells.push_back(format_sci(xi.mean));
    cells.push_back(format_sci(xi.half_width_95));
    cells.push_back(format_sci(po.mean));
    cells.push_back(format_sci(po.half_width_95));
    cells.push_back(format_sci(avg_covert_prob(b.p_a, b.net)));
    cells.push_back(
        format_sci(conn_outage(LinkBudget{b.p_a, b.rate, b.net.sigma_zb2}, b.net)));
    const double radius = sim.backend == SimConfig::Backend::Ppp
                              ? effective_window_radius(b.net, sim)
                              : 0.0;
    cells.push_back(format_sci(radius));
    return;
  }
  // eval: the full analytic picture at the operating point.
  const double xi = avg_covert_prob(b.p_a, b.net);
  cells.push_back(format_sci(xi));
  cells.push_back(format_sci(1.0 - xi));
  cells.push_back(format_sci(conn_outage(LinkBudget{b.p_a, b.rate, b.net.sigma_zb2}, b.net)));
  cells.push_back(format_sci(rate_for_outage(b.p_a, b.req.delta, b.net, b.net.sigma_zb2)));
  const ThroughputResult r = covert_throughput(b.req, b.net);
  cells.push_back(format_sci(r.pa_star));
  cells.push_back(format_sci(r.eta));
}

}  // namespace

void run_command(const std::string& command, const ConfigBundle& bundle,
                 const std::string& sweep_key, std::span<const double> sweep_values,
                 std::ostream& out) {
  header(out, bundle, command);
  if (sweep_key.empty()) {
    // Single-point runs propagate failures (CLI exit 2); only sweeps
    // degrade to per-row error columns.
    out << "# sweep: none\n";
    command_columns(command, out);
    out << "\n";
    std::vector<std::string> cells;
    command_cells(command, bundle, cells);
    out << join_row(cells);
    return;
  }

  if (std::find(sweepable_keys().begin(), sweepable_keys().end(), sweep_key) ==
      sweepable_keys().end()) {
    throw ConfigError("sweep key '" + sweep_key +
                      "' does not name a NetworkConfig or CovertRequirements field");
  }
  out << "# sweep: " << sweep_key << ", " << sweep_values.size() << " values\n";
  out << sweep_key << ",";
  command_columns(command, out);
  out << ",error\n";
  emit_rows(sweep_values, out,
            [&](double value, std::uint64_t row, std::vector<std::string>& cells) {
              ConfigBundle point = bundle;
              apply_sweep_value(point, sweep_key, value);
              point.sim.seed = mix_seed(bundle.sim.seed, row);
              command_cells(command, point, cells);
            });
}

}  // namespace covertgeo
