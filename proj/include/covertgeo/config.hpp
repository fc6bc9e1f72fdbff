#pragma once

#include <string>
#include <vector>

#include "covertgeo/mcsim.hpp"
#include "covertgeo/throughput.hpp"

namespace covertgeo {

/// Config-file or CLI-argument problem; maps to exit code 1.
class ConfigError : public std::runtime_error {
 public:
  explicit ConfigError(const std::string& msg) : std::runtime_error(msg) {}
};

double dbm_to_watts(double dbm);
double watts_to_dbm(double watts);

/// Everything a run needs: scene, requirements, simulator controls, and
/// the per-link operating point. Powers in a config file may be given in
/// dBm (key suffix `_dbm`) or watts (`_w`), exactly one per quantity;
/// everything is stored in watts.
struct ConfigBundle {
  enum class BackendMode { Auto, Ppp, Levy };

  NetworkConfig net;
  CovertRequirements req;
  SimConfig sim;
  double p_a = 1e-3;  // Alice transmit power, W (0 dBm)
  double rate = 1.0;  // transmission rate, bits per channel use
  BackendMode backend_mode = BackendMode::Auto;
};

/// Parse a JSON config file; missing fields take the library defaults.
/// Unknown keys, malformed values, and out-of-range fields raise
/// ConfigError naming the field.
ConfigBundle load_config(const std::string& path);
ConfigBundle config_from_json_text(const std::string& text);

/// Fully resolved config serialized as one-line JSON (sorted keys), echoed
/// into every output header for provenance.
std::string resolved_config_json(const ConfigBundle& bundle);

/// Keys accepted by --sweep: the NetworkConfig and CovertRequirements
/// fields (power keys in either unit).
const std::vector<std::string>& sweepable_keys();
void apply_sweep_value(ConfigBundle& bundle, const std::string& key, double value);

/// Resolve the Auto backend: PPP for the simulator command (the honest
/// network oracle), exact Levy for figures when alpha = 4 (fast, unbiased).
SimConfig::Backend resolve_backend(const ConfigBundle& bundle, bool prefer_levy);

}  // namespace covertgeo
