#pragma once

#include <string>
#include <string_view>

#include "aquamon/assessment.hpp"
#include "aquamon/calibration.hpp"

namespace aquamon {

// Gateway settings merged from the config file and command-line flags.
// readings/alerts paths and the listen endpoint normally arrive as flags;
// the file carries calibration, thresholds and connection limits.
struct GatewayConfig {
  std::string listen = "0.0.0.0:7070";
  int max_connections = 256;
  CalibrationParams calibration;
  Thresholds thresholds;
  std::string readings_path = "readings.jsonl";
  std::string alerts_path = "alerts.jsonl";
};

// Parses a JSON document with optional sections `gateway`, `calibration`
// and `thresholds`. Every key must be known; unknown keys raise ConfigError
// so threshold typos cannot silently fall back to defaults. The parsed
// calibration and thresholds are validated before return.
GatewayConfig parse_config(std::string_view json_text);

// parse_config over the file's contents. Throws ConfigError when the file
// cannot be read.
GatewayConfig load_config(const std::string& path);

}  // namespace aquamon
