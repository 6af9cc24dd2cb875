#include "aquamon/config.hpp"

#include <fstream>
#include <limits>
#include <sstream>

#include <json.hpp>

#include "aquamon/errors.hpp"

namespace aquamon {
namespace {

using nlohmann::json;

void require_known_keys(const json& object, const char* section,
                        std::initializer_list<const char*> known) {
  for (const auto& [key, value] : object.items()) {
    bool ok = false;
    for (const char* candidate : known)
      if (key == candidate) ok = true;
    if (!ok) {
      throw ConfigError(std::string(section) + " has unknown key \"" + key +
                        "\"");
    }
  }
}

double read_double(const json& section, const char* section_name,
                   const char* key, double fallback) {
  const auto it = section.find(key);
  if (it == section.end()) return fallback;
  if (!it->is_number()) {
    throw ConfigError(std::string(section_name) + "." + key +
                      " must be a number");
  }
  return it->get<double>();
}

int read_int(const json& section, const char* section_name, const char* key,
             int fallback) {
  const auto it = section.find(key);
  if (it == section.end()) return fallback;
  if (!it->is_number_integer()) {
    throw ConfigError(std::string(section_name) + "." + key +
                      " must be an integer");
  }
  const auto value = it->get<std::int64_t>();
  if (value < std::numeric_limits<int>::min() ||
      value > std::numeric_limits<int>::max()) {
    throw ConfigError(std::string(section_name) + "." + key +
                      " is out of range");
  }
  return static_cast<int>(value);
}

std::string read_string(const json& section, const char* section_name,
                        const char* key, std::string fallback) {
  const auto it = section.find(key);
  if (it == section.end()) return fallback;
  if (!it->is_string()) {
    throw ConfigError(std::string(section_name) + "." + key +
                      " must be a string");
  }
  return it->get<std::string>();
}

const json& require_object(const json& root, const char* key) {
  const auto& section = root.at(key);
  if (!section.is_object()) {
    throw ConfigError(std::string(key) + " section must be a JSON object");
  }
  return section;
}

}  // namespace

GatewayConfig parse_config(std::string_view json_text) {
  const json root = json::parse(json_text, nullptr, false);
  if (root.is_discarded()) throw ConfigError("config is not valid JSON");
  if (!root.is_object())
    throw ConfigError("config must be a JSON object");
  require_known_keys(root, "config", {"gateway", "calibration", "thresholds"});

  GatewayConfig config;

  if (root.contains("gateway")) {
    const json& gw = require_object(root, "gateway");
    require_known_keys(gw, "gateway", {"listen", "max_connections"});
    config.listen = read_string(gw, "gateway", "listen", config.listen);
    config.max_connections =
        read_int(gw, "gateway", "max_connections", config.max_connections);
    if (config.max_connections < 1)
      throw ConfigError("gateway.max_connections must be at least 1");
  }

  if (root.contains("calibration")) {
    const json& cal = require_object(root, "calibration");
    require_known_keys(cal, "calibration",
                       {"vref", "adc_max", "ph_slope", "ph_intercept",
                        "ec_gain", "k_e", "alpha", "turb_v0", "turb_slope"});
    CalibrationParams& p = config.calibration;
    p.vref = read_double(cal, "calibration", "vref", p.vref);
    p.adc_max = read_int(cal, "calibration", "adc_max", p.adc_max);
    p.ph_slope = read_double(cal, "calibration", "ph_slope", p.ph_slope);
    p.ph_intercept =
        read_double(cal, "calibration", "ph_intercept", p.ph_intercept);
    p.ec_gain = read_double(cal, "calibration", "ec_gain", p.ec_gain);
    p.k_e = read_double(cal, "calibration", "k_e", p.k_e);
    p.alpha = read_double(cal, "calibration", "alpha", p.alpha);
    p.turb_v0 = read_double(cal, "calibration", "turb_v0", p.turb_v0);
    p.turb_slope =
        read_double(cal, "calibration", "turb_slope", p.turb_slope);
  }

  if (root.contains("thresholds")) {
    const json& th = require_object(root, "thresholds");
    require_known_keys(
        th, "thresholds",
        {"ph_ideal_lo", "ph_ideal_hi", "temp_high_c", "tds_alarm_ppm"});
    Thresholds& t = config.thresholds;
    t.ph_ideal_lo =
        read_double(th, "thresholds", "ph_ideal_lo", t.ph_ideal_lo);
    t.ph_ideal_hi =
        read_double(th, "thresholds", "ph_ideal_hi", t.ph_ideal_hi);
    t.temp_high_c =
        read_double(th, "thresholds", "temp_high_c", t.temp_high_c);
    t.tds_alarm_ppm =
        read_double(th, "thresholds", "tds_alarm_ppm", t.tds_alarm_ppm);
  }

  validate_params(config.calibration);
  validate_thresholds(config.thresholds);
  return config;
}

GatewayConfig load_config(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot open config file " + path);
  std::ostringstream contents;
  contents << in.rdbuf();
  return parse_config(contents.str());
}

}  // namespace aquamon
