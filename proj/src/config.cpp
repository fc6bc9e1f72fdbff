#include "covertgeo/config.hpp"

#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include <nlohmann/json.hpp>

namespace covertgeo {

using nlohmann::json;

double dbm_to_watts(double dbm) { return std::pow(10.0, (dbm - 30.0) / 10.0); }

double watts_to_dbm(double watts) {
  if (!(watts > 0.0)) throw ConfigError("watts_to_dbm: power must be > 0");
  return 30.0 + 10.0 * std::log10(watts);
}

namespace {

double require_number(const json& j, const std::string& key) {
  const auto& v = j.at(key);
  if (!v.is_number()) throw ConfigError("config field '" + key + "' must be a number");
  return v.get<double>();
}

// Reads a power that may appear as `<name>_dbm` or `<name>_w` (not both).
// Returns true when either was present.
bool read_power(const json& j, const std::string& name, double& out) {
  const std::string k_dbm = name + "_dbm";
  const std::string k_w = name + "_w";
  const bool has_dbm = j.contains(k_dbm);
  const bool has_w = j.contains(k_w);
  if (has_dbm && has_w) {
    throw ConfigError("config fields '" + k_dbm + "' and '" + k_w +
                      "' are mutually exclusive");
  }
  if (has_dbm) {
    out = dbm_to_watts(require_number(j, k_dbm));
    return true;
  }
  if (has_w) {
    const double w = require_number(j, k_w);
    if (!(w >= 0.0)) throw ConfigError("config field '" + k_w + "' must be >= 0");
    out = w;
    return true;
  }
  return false;
}

void check_range(bool ok, const std::string& field, const std::string& what) {
  if (!ok) throw ConfigError("config field '" + field + "' " + what);
}

const std::set<std::string>& known_keys() {
  static const std::set<std::string> keys = {
      "lambda_i",       "p_i_dbm",        "p_i_w",          "alpha",
      "d_ab",           "d_aw",           "sigma_zb2_dbm",  "sigma_zb2_w",
      "sigma_zw2_dbm",  "sigma_zw2_w",    "sigma_z2_dbm",   "sigma_z2_w",
      "fading",         "eps",            "delta",          "p_a_dbm",
      "p_a_w",          "rate_bpcu",      "trials",         "seed",
      "window_radius",  "slot_samples_n", "backend",        "fixed_gamma_w",
  };
  return keys;
}

ConfigBundle from_json(const json& j) {
  if (!j.is_object()) throw ConfigError("config root must be a JSON object");
  for (const auto& item : j.items()) {
    if (known_keys().count(item.key()) == 0) {
      throw ConfigError("unknown config field '" + item.key() + "'");
    }
  }

  ConfigBundle b;
  b.net.sigma_zb2 = dbm_to_watts(-50.0);
  b.net.sigma_zw2 = b.net.sigma_zb2;

  if (j.contains("lambda_i")) b.net.lambda_i = require_number(j, "lambda_i");
  check_range(b.net.lambda_i > 0.0, "lambda_i", "must be > 0");
  read_power(j, "p_i", b.net.p_i);
  check_range(b.net.p_i > 0.0, "p_i_w", "must be > 0");
  if (j.contains("alpha")) b.net.alpha = require_number(j, "alpha");
  check_range(b.net.alpha >= 2.0, "alpha", "must be >= 2");
  if (j.contains("d_ab")) b.net.d_ab = require_number(j, "d_ab");
  check_range(b.net.d_ab > 0.0, "d_ab", "must be > 0");
  if (j.contains("d_aw")) b.net.d_aw = require_number(j, "d_aw");
  check_range(b.net.d_aw > 0.0, "d_aw", "must be > 0");

  double sigma_joint = 0.0;
  const bool has_joint = read_power(j, "sigma_z2", sigma_joint);
  if (has_joint) {
    if (j.contains("sigma_zb2_dbm") || j.contains("sigma_zb2_w") ||
        j.contains("sigma_zw2_dbm") || j.contains("sigma_zw2_w")) {
      throw ConfigError("config field 'sigma_z2_*' excludes per-receiver noise fields");
    }
    b.net.sigma_zb2 = sigma_joint;
    b.net.sigma_zw2 = sigma_joint;
  } else {
    read_power(j, "sigma_zb2", b.net.sigma_zb2);
    read_power(j, "sigma_zw2", b.net.sigma_zw2);
  }

  if (j.contains("fading")) {
    const auto& v = j.at("fading");
    if (!v.is_string()) throw ConfigError("config field 'fading' must be a string");
    const std::string s = v.get<std::string>();
    if (s == "none" || s == "nonfading") {
      b.net.fading = Fading::NonFading;
    } else if (s == "rayleigh") {
      b.net.fading = Fading::Rayleigh;
    } else {
      throw ConfigError("config field 'fading' must be 'none' or 'rayleigh'");
    }
  }

  if (j.contains("eps")) b.req.eps = require_number(j, "eps");
  check_range(b.req.eps > 0.0 && b.req.eps < 1.0, "eps", "must lie in (0, 1)");
  if (j.contains("delta")) b.req.delta = require_number(j, "delta");
  check_range(b.req.delta > 0.0 && b.req.delta < 1.0, "delta", "must lie in (0, 1)");

  read_power(j, "p_a", b.p_a);
  check_range(b.p_a > 0.0, "p_a_w", "must be > 0");
  if (j.contains("rate_bpcu")) b.rate = require_number(j, "rate_bpcu");
  check_range(b.rate > 0.0, "rate_bpcu", "must be > 0");

  if (j.contains("trials")) {
    const auto& v = j.at("trials");
    if (!v.is_number_unsigned() || v.get<std::uint64_t>() < 1) {
      throw ConfigError("config field 'trials' must be a positive integer");
    }
    b.sim.trials = v.get<std::uint64_t>();
  }
  if (j.contains("seed")) {
    const auto& v = j.at("seed");
    if (!v.is_number_unsigned()) {
      throw ConfigError("config field 'seed' must be a nonnegative integer");
    }
    b.sim.seed = v.get<std::uint64_t>();
  }
  if (j.contains("window_radius")) b.sim.window_radius = require_number(j, "window_radius");
  check_range(b.sim.window_radius >= 0.0, "window_radius", "must be >= 0 (0 = auto)");
  if (j.contains("slot_samples_n")) {
    const auto& v = j.at("slot_samples_n");
    if (v.is_string() && v.get<std::string>() == "asymptotic") {
      b.sim.slot_samples_n = 0;
    } else if (v.is_number_unsigned()) {
      b.sim.slot_samples_n = static_cast<std::int64_t>(v.get<std::uint64_t>());
    } else {
      throw ConfigError("config field 'slot_samples_n' must be 'asymptotic' or an integer >= 0");
    }
  }
  if (j.contains("backend")) {
    const auto& v = j.at("backend");
    if (!v.is_string()) throw ConfigError("config field 'backend' must be a string");
    const std::string s = v.get<std::string>();
    if (s == "auto") {
      b.backend_mode = ConfigBundle::BackendMode::Auto;
    } else if (s == "ppp") {
      b.backend_mode = ConfigBundle::BackendMode::Ppp;
    } else if (s == "levy") {
      b.backend_mode = ConfigBundle::BackendMode::Levy;
    } else {
      throw ConfigError("config field 'backend' must be 'auto', 'ppp', or 'levy'");
    }
  }
  if (j.contains("fixed_gamma_w")) b.sim.fixed_gamma = require_number(j, "fixed_gamma_w");
  check_range(b.sim.fixed_gamma >= 0.0, "fixed_gamma_w", "must be >= 0");

  try {
    b.net.validate();
    b.req.validate();
    b.sim.validate(b.net);
  } catch (const DomainError& e) {
    throw ConfigError(std::string("config validation failed: ") + e.what());
  }
  return b;
}

}  // namespace

ConfigBundle config_from_json_text(const std::string& text) {
  json j;
  try {
    j = text.empty() ? json::object() : json::parse(text);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("config is not valid JSON: ") + e.what());
  }
  return from_json(j);
}

ConfigBundle load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return config_from_json_text(buf.str());
}

std::string resolved_config_json(const ConfigBundle& b) {
  json j;
  j["lambda_i"] = b.net.lambda_i;
  j["p_i_w"] = b.net.p_i;
  j["alpha"] = b.net.alpha;
  j["d_ab"] = b.net.d_ab;
  j["d_aw"] = b.net.d_aw;
  j["sigma_zb2_w"] = b.net.sigma_zb2;
  j["sigma_zw2_w"] = b.net.sigma_zw2;
  j["fading"] = b.net.fading == Fading::NonFading ? "none" : "rayleigh";
  j["eps"] = b.req.eps;
  j["delta"] = b.req.delta;
  j["p_a_w"] = b.p_a;
  j["rate_bpcu"] = b.rate;
  j["trials"] = b.sim.trials;
  j["seed"] = b.sim.seed;
  j["window_radius"] = b.sim.window_radius;
  j["slot_samples_n"] = b.sim.slot_samples_n;
  j["backend"] = b.backend_mode == ConfigBundle::BackendMode::Auto  ? "auto"
                 : b.backend_mode == ConfigBundle::BackendMode::Ppp ? "ppp"
                                                                    : "levy";
  if (b.sim.fixed_gamma > 0.0) j["fixed_gamma_w"] = b.sim.fixed_gamma;
  return j.dump();
}

const std::vector<std::string>& sweepable_keys() {
  static const std::vector<std::string> keys = {
      "lambda_i",      "p_i_w",        "p_i_dbm",      "alpha",        "d_ab",
      "d_aw",          "sigma_zb2_w",  "sigma_zb2_dbm", "sigma_zw2_w", "sigma_zw2_dbm",
      "sigma_z2_w",    "sigma_z2_dbm", "eps",           "delta",
  };
  return keys;
}

void apply_sweep_value(ConfigBundle& b, const std::string& key, double value) {
  if (key == "lambda_i") {
    b.net.lambda_i = value;
  } else if (key == "p_i_w") {
    b.net.p_i = value;
  } else if (key == "p_i_dbm") {
    b.net.p_i = dbm_to_watts(value);
  } else if (key == "alpha") {
    b.net.alpha = value;
  } else if (key == "d_ab") {
    b.net.d_ab = value;
  } else if (key == "d_aw") {
    b.net.d_aw = value;
  } else if (key == "sigma_zb2_w") {
    b.net.sigma_zb2 = value;
  } else if (key == "sigma_zb2_dbm") {
    b.net.sigma_zb2 = dbm_to_watts(value);
  } else if (key == "sigma_zw2_w") {
    b.net.sigma_zw2 = value;
  } else if (key == "sigma_zw2_dbm") {
    b.net.sigma_zw2 = dbm_to_watts(value);
  } else if (key == "sigma_z2_w") {
    b.net.sigma_zb2 = value;
    b.net.sigma_zw2 = value;
  } else if (key == "sigma_z2_dbm") {
    b.net.sigma_zb2 = dbm_to_watts(value);
    b.net.sigma_zw2 = dbm_to_watts(value);
  } else if (key == "eps") {
    b.req.eps = value;
  } else if (key == "delta") {
    b.req.delta = value;
  } else {
    throw ConfigError("sweep key '" + key +
                      "' does not name a NetworkConfig or CovertRequirements field");
  }
  try {
    b.net.validate();
    b.req.validate();
  } catch (const DomainError& e) {
    throw ConfigError(std::string("sweep value out of range: ") + e.what());
  }
}

SimConfig::Backend resolve_backend(const ConfigBundle& bundle, bool prefer_levy) {
  switch (bundle.backend_mode) {
    case ConfigBundle::BackendMode::Ppp:
      return SimConfig::Backend::Ppp;
    case ConfigBundle::BackendMode::Levy:
      return SimConfig::Backend::LevyExact;
    case ConfigBundle::BackendMode::Auto:
      break;
  }
  if (prefer_levy && bundle.net.alpha == 4.0) return SimConfig::Backend::LevyExact;
  return SimConfig::Backend::Ppp;
}

}  // namespace covertgeo
