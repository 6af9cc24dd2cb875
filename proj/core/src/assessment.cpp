#include "aquamon/assessment.hpp"

#include <cmath>
#include <string>

#include "aquamon/errors.hpp"

namespace aquamon {
namespace {

void require_in(const char* what, double value, double lo, double hi) {
  if (!(value >= lo && value <= hi)) {
    throw DomainError(std::string(what) + " " + std::to_string(value) +
                      " outside [" + std::to_string(lo) + ", " +
                      std::to_string(hi) + "]");
  }
}

}  // namespace

void validate_thresholds(const Thresholds& t) {
  const auto bad = [](const char* key, const char* reason) {
    throw ConfigError(std::string("thresholds.") + key + ": " + reason);
  };
  if (!std::isfinite(t.ph_ideal_lo) || t.ph_ideal_lo < kPhMin ||
      t.ph_ideal_lo > kPhMax)
    bad("ph_ideal_lo", "must lie in [0, 14]");
  if (!std::isfinite(t.ph_ideal_hi) || t.ph_ideal_hi < kPhMin ||
      t.ph_ideal_hi > kPhMax)
    bad("ph_ideal_hi", "must lie in [0, 14]");
  if (t.ph_ideal_lo >= t.ph_ideal_hi)
    bad("ph_ideal_lo", "must be below ph_ideal_hi");
  if (!std::isfinite(t.temp_high_c) || t.temp_high_c <= kTempMinC ||
      t.temp_high_c > kTempMaxC)
    bad("temp_high_c", "must lie in (-55, 125]");
  if (!std::isfinite(t.tds_alarm_ppm) || t.tds_alarm_ppm < 0.0)
    bad("tds_alarm_ppm", "must be non-negative");
}

const char* to_string(PhStatus status) {
  switch (status) {
    case PhStatus::Acidic: return "Acidic";
    case PhStatus::Ideal: return "Ideal";
    case PhStatus::Alkaline: return "Alkaline";
  }
  return "unknown";
}

const char* to_string(TurbidityLevel level) {
  switch (level) {
    case TurbidityLevel::MediumTurbid: return "MediumTurbid";
    case TurbidityLevel::RatherTurbid: return "RatherTurbid";
    case TurbidityLevel::ModerateTurbid: return "ModerateTurbid";
    case TurbidityLevel::HighlyTurbid: return "HighlyTurbid";
  }
  return "unknown";
}

const char* to_string(TempStatus status) {
  switch (status) {
    case TempStatus::Normal: return "Normal";
    case TempStatus::High: return "High";
  }
  return "unknown";
}

const char* to_string(TdsStatus status) {
  switch (status) {
    case TdsStatus::Acceptable: return "Acceptable";
    case TdsStatus::Alarming: return "Alarming";
  }
  return "unknown";
}

const char* to_string(OverallStatus status) {
  switch (status) {
    case OverallStatus::WithinLimits: return "WithinLimits";
    case OverallStatus::Polluted: return "Polluted";
  }
  return "unknown";
}

const char* to_string(Parameter parameter) {
  switch (parameter) {
    case Parameter::Temperature: return "temperature";
    case Parameter::Ph: return "ph";
    case Parameter::Tds: return "tds";
    case Parameter::Turbidity: return "turbidity";
  }
  return "unknown";
}

PhStatus classify_ph(double ph, const Thresholds& thresholds) {
  require_in("ph", ph, kPhMin, kPhMax);
  if (ph < thresholds.ph_ideal_lo) return PhStatus::Acidic;
  if (ph > thresholds.ph_ideal_hi) return PhStatus::Alkaline;
  return PhStatus::Ideal;
}

TurbidityLevel classify_turbidity(double ntu) {
  if (!(ntu >= 0.0) || !std::isfinite(ntu))
    throw DomainError("turbidity " + std::to_string(ntu) +
                      " must be a non-negative NTU value");
  if (ntu < kTurbidityMediumMaxNtu) return TurbidityLevel::MediumTurbid;
  if (ntu < kTurbidityRatherMaxNtu) return TurbidityLevel::RatherTurbid;
  if (ntu <= kTurbidityModerateMaxNtu) return TurbidityLevel::ModerateTurbid;
  return TurbidityLevel::HighlyTurbid;
}

TempStatus classify_temp(double temp_c, const Thresholds& thresholds) {
  require_in("temperature", temp_c, kTempMinC, kTempMaxC);
  return temp_c > thresholds.temp_high_c ? TempStatus::High
                                         : TempStatus::Normal;
}

TdsStatus classify_tds(double tds_ppm, const Thresholds& thresholds) {
  if (!(tds_ppm >= 0.0) || !std::isfinite(tds_ppm))
    throw DomainError("TDS " + std::to_string(tds_ppm) +
                      " must be a non-negative ppm value");
  return tds_ppm >= thresholds.tds_alarm_ppm ? TdsStatus::Alarming
                                             : TdsStatus::Acceptable;
}

Assessment assess(const Reading& reading, const Thresholds& thresholds) {
  validate_thresholds(thresholds);
  Assessment result;
  result.temp_status = classify_temp(reading.temp_c, thresholds);
  result.ph_status = classify_ph(reading.ph, thresholds);
  result.tds_status = classify_tds(reading.tds_ppm, thresholds);
  result.turbidity_level = classify_turbidity(reading.turbidity_ntu);

  if (result.temp_status == TempStatus::High)
    result.violations.push_back(Parameter::Temperature);
  if (result.ph_status != PhStatus::Ideal)
    result.violations.push_back(Parameter::Ph);
  if (result.tds_status == TdsStatus::Alarming)
    result.violations.push_back(Parameter::Tds);
  if (result.turbidity_level != TurbidityLevel::MediumTurbid)
    result.violations.push_back(Parameter::Turbidity);

  result.overall = result.violations.empty() ? OverallStatus::WithinLimits
                                             : OverallStatus::Polluted;
  return result;
}

}  // namespace aquamon
