#pragma once

#include <ostream>
#include <span>
#include <string>

#include "covertgeo/config.hpp"

namespace covertgeo {

/// Scientific notation with 12 significant digits; the CSV number format.
std::string format_sci(double v);

/// Reproduce one of the paper-style experiment sweeps as CSV: 2/3 average
/// covert probability versus interferer density (non-fading / Rayleigh),
/// 4 throughput versus density, 5 versus interferer power, 6 versus the
/// covertness requirement, 7 versus receiver noise. Each row carries the
/// analytic value and a Monte Carlo companion estimate; per-row solver
/// errors land in the trailing error column instead of aborting the sweep.
void run_figure(int fig_id, const ConfigBundle& bundle, std::ostream& out);

/// Run one of the point/sweep commands (eval, covert-prob, outage,
/// throughput, simulate) over the optional sweep grid, writing CSV with
/// the resolved config echoed in the header.
void run_command(const std::string& command, const ConfigBundle& bundle,
                 const std::string& sweep_key, std::span<const double> sweep_values,
                 std::ostream& out);

}  // namespace covertgeo
