#pragma once

#include <vector>

#include "aquamon/calibration.hpp"

namespace aquamon {

// Classification of readings against quality thresholds.
//
// Band edges are deliberate about inclusivity:
//   pH         Acidic < lo, Ideal in [lo, hi], Alkaline > hi
//   turbidity  MediumTurbid [0,25), RatherTurbid [25,35),
//              ModerateTurbid [35,50], HighlyTurbid > 50
//   temp       High strictly above temp_high_c
//   TDS        Alarming at or above tds_alarm_ppm

// Fixed turbidity band edges in NTU. Anything above the first band is a
// violation, so the first edge doubles as the alert threshold.
inline constexpr double kTurbidityMediumMaxNtu = 25.0;
inline constexpr double kTurbidityRatherMaxNtu = 35.0;
inline constexpr double kTurbidityModerateMaxNtu = 50.0;

struct Thresholds {
  double ph_ideal_lo = 6.0;
  double ph_ideal_hi = 8.0;
  double temp_high_c = 35.0;
  double tds_alarm_ppm = 170.0;
};

// Throws ConfigError naming the first invalid threshold.
void validate_thresholds(const Thresholds& thresholds);

enum class PhStatus { Acidic, Ideal, Alkaline };
enum class TurbidityLevel {
  MediumTurbid,
  RatherTurbid,
  ModerateTurbid,
  HighlyTurbid,
};
enum class TempStatus { Normal, High };
enum class TdsStatus { Acceptable, Alarming };
enum class OverallStatus { WithinLimits, Polluted };

// Wire channel order; also the order violations are reported in.
enum class Parameter { Temperature, Ph, Tds, Turbidity };

const char* to_string(PhStatus status);
const char* to_string(TurbidityLevel level);
const char* to_string(TempStatus status);
const char* to_string(TdsStatus status);
const char* to_string(OverallStatus status);
const char* to_string(Parameter parameter);

// Each classifier throws DomainError for values outside the physical
// domain (NaN included).
PhStatus classify_ph(double ph, const Thresholds& thresholds);
TurbidityLevel classify_turbidity(double ntu);
TempStatus classify_temp(double temp_c, const Thresholds& thresholds);
TdsStatus classify_tds(double tds_ppm, const Thresholds& thresholds);

struct Assessment {
  PhStatus ph_status = PhStatus::Ideal;
  TurbidityLevel turbidity_level = TurbidityLevel::MediumTurbid;
  TempStatus temp_status = TempStatus::Normal;
  TdsStatus tds_status = TdsStatus::Acceptable;
  OverallStatus overall = OverallStatus::WithinLimits;
  std::vector<Parameter> violations;  // wire channel order, possibly empty

  bool operator==(const Assessment&) const = default;
};

// Polluted exactly when violations is non-empty. A parameter violates when
// its status is High, non-Ideal, Alarming, or any turbidity band above
// MediumTurbid.
Assessment assess(const Reading& reading, const Thresholds& thresholds);

}  // namespace aquamon
