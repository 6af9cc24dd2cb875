#include "aquamon/calibration.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "aquamon/errors.hpp"

namespace aquamon {
namespace {

[[noreturn]] void out_of_range(const std::string& what, double value,
                               double lo, double hi) {
  throw RangeViolation(what + " " + std::to_string(value) + " outside [" +
                       std::to_string(lo) + ", " + std::to_string(hi) + "]");
}

// A computed physical value landed outside its quantity's bounds; distinct
// from a caller passing a bad input.
[[noreturn]] void result_out_of_range(const std::string& what, double value,
                                      double lo, double hi) {
  throw ValidationError(what + " " + std::to_string(value) + " outside [" +
                        std::to_string(lo) + ", " + std::to_string(hi) + "]");
}

double compensation_factor(double temp_c, const CalibrationParams& params) {
  const double factor = 1.0 + params.alpha * (temp_c - 25.0);
  if (!(factor > 0.0)) {
    throw DomainError("EC compensation factor " + std::to_string(factor) +
                      " at " + std::to_string(temp_c) +
                      " degC is not positive");
  }
  return factor;
}

}  // namespace

void validate_params(const CalibrationParams& p) {
  const auto bad = [](const char* key, const std::string& reason) {
    throw ConfigError(std::string("calibration.") + key + ": " + reason);
  };
  if (!std::isfinite(p.vref) || p.vref <= 0.0)
    bad("vref", "must be a positive voltage");
  if (p.adc_max < 1) bad("adc_max", "must be at least 1");
  if (!std::isfinite(p.ph_slope) || p.ph_slope == 0.0)
    bad("ph_slope", "must be finite and nonzero");
  if (!std::isfinite(p.ph_intercept)) bad("ph_intercept", "must be finite");
  if (!std::isfinite(p.ec_gain) || p.ec_gain < 0.0)
    bad("ec_gain", "must be non-negative");
  if (!std::isfinite(p.k_e) || p.k_e < kKeMin || p.k_e > kKeMax) {
    bad("k_e", "must lie in [" + std::to_string(kKeMin) + ", " +
                   std::to_string(kKeMax) + "]");
  }
  if (!std::isfinite(p.alpha) || p.alpha < 0.0)
    bad("alpha", "must be non-negative");
  if (!std::isfinite(p.turb_v0) || p.turb_v0 <= 0.0 || p.turb_v0 > p.vref)
    bad("turb_v0", "must lie in (0, vref]");
  if (!std::isfinite(p.turb_slope) || p.turb_slope <= 0.0)
    bad("turb_slope", "must be positive");
}

double adc_to_voltage(int count, const CalibrationParams& params) {
  if (count < 0 || count > params.adc_max)
    out_of_range("ADC count", count, 0, params.adc_max);
  return static_cast<double>(count) * params.vref /
         static_cast<double>(params.adc_max);
}

double voltage_to_temp_c(double volts) {
  const double temp_c = volts * 100.0;  // LM35: 10 mV per degC
  if (!(temp_c >= kTempMinC && temp_c <= kTempMaxC))
    result_out_of_range("temperature", temp_c, kTempMinC, kTempMaxC);
  return temp_c;
}

double voltage_to_ph(double volts, const CalibrationParams& params) {
  const double ph = params.ph_slope * volts + params.ph_intercept;
  if (!(ph >= kPhMin && ph <= kPhMax))
    result_out_of_range("ph", ph, kPhMin, kPhMax);
  return ph;
}

double voltage_to_ec(double volts, const CalibrationParams& params) {
  if (!(volts >= 0.0))
    throw RangeViolation("EC probe voltage must be non-negative");
  return volts * params.ec_gain;
}

double compensate_ec(double ec_us_cm, double temp_c,
                     const CalibrationParams& params) {
  if (!(ec_us_cm >= 0.0))
    throw RangeViolation("EC must be non-negative");
  return ec_us_cm / compensation_factor(temp_c, params);
}

double ec_to_tds(double ec_us_cm, const CalibrationParams& params) {
  if (!(ec_us_cm >= 0.0))
    throw RangeViolation("EC must be non-negative");
  if (!(params.k_e >= kKeMin && params.k_e <= kKeMax)) {
    throw ConfigError("calibration.k_e: must lie in [" +
                      std::to_string(kKeMin) + ", " + std::to_string(kKeMax) +
                      "]");
  }
  return params.k_e * ec_us_cm;
}

double voltage_to_turbidity(double volts, const CalibrationParams& params) {
  if (!(volts >= 0.0))
    throw RangeViolation("turbidity probe voltage must be non-negative");
  return std::max(0.0, (params.turb_v0 - volts) * params.turb_slope);
}

Reading calibrate_frame(const SensorFrame& frame,
                        const CalibrationParams& params) {
  validate_params(params);
  Reading reading;
  if (frame.kind == FrameKind::FixedPoint) {
    reading.temp_c = frame.channels[0] / double(kFixedPointScale[0]);
    reading.ph = frame.channels[1] / double(kFixedPointScale[1]);
    reading.tds_ppm = frame.channels[2] / double(kFixedPointScale[2]);
    reading.turbidity_ntu = frame.channels[3] / double(kFixedPointScale[3]);
    return reading;
  }
  const double v_temp = adc_to_voltage(frame.channels[0], params);
  const double v_ph = adc_to_voltage(frame.channels[1], params);
  const double v_tds = adc_to_voltage(frame.channels[2], params);
  const double v_turb = adc_to_voltage(frame.channels[3], params);

  reading.temp_c = voltage_to_temp_c(v_temp);
  reading.ph = voltage_to_ph(v_ph, params);
  const double ec = voltage_to_ec(v_tds, params);
  const double ec_25 = compensate_ec(ec, reading.temp_c, params);
  reading.tds_ppm = ec_to_tds(ec_25, params);
  reading.turbidity_ntu = voltage_to_turbidity(v_turb, params);
  return reading;
}

PhLine fit_ph_line(double volts1, double ph1, double volts2, double ph2) {
  const double dv = volts2 - volts1;
  if (!std::isfinite(dv) || std::abs(dv) < 1e-9) {
    throw DegenerateCalibration(
        "buffer voltages are too close to determine a pH line");
  }
  PhLine line;
  line.slope = (ph2 - ph1) / dv;
  line.intercept = ph1 - line.slope * volts1;
  return line;
}

double ph_from_h_molarity(double molarity) {
  if (!(molarity > 0.0))
    throw DomainError("hydrogen ion molarity must be positive");
  return -std::log10(molarity);
}

double h_molarity_from_ph(double ph) { return std::pow(10.0, -ph); }

int voltage_to_adc(double volts, const CalibrationParams& params) {
  if (!std::isfinite(volts))
    throw InversionOutOfRange("voltage is not finite");
  const long count =
      std::lround(volts / params.vref * static_cast<double>(params.adc_max));
  if (count < 0 || count > params.adc_max) {
    throw InversionOutOfRange("voltage " + std::to_string(volts) +
                              " maps outside the ADC span");
  }
  return static_cast<int>(count);
}

double voltage_for_temp_c(double temp_c) {
  if (!(temp_c >= kTempMinC && temp_c <= kTempMaxC)) {
    throw InversionOutOfRange("temperature " + std::to_string(temp_c) +
                              " outside the sensor span");
  }
  return temp_c / 100.0;
}

double voltage_for_ph(double ph, const CalibrationParams& params) {
  if (!(ph >= kPhMin && ph <= kPhMax)) {
    throw InversionOutOfRange("ph " + std::to_string(ph) +
                              " outside [0, 14]");
  }
  return (ph - params.ph_intercept) / params.ph_slope;
}

double voltage_for_tds(double tds_ppm, double temp_c,
                       const CalibrationParams& params) {
  if (!(tds_ppm >= 0.0))
    throw InversionOutOfRange("TDS must be non-negative");
  const double ec_25 = tds_ppm / params.k_e;
  const double ec_raw = ec_25 * compensation_factor(temp_c, params);
  return ec_raw / params.ec_gain;
}

double voltage_for_turbidity(double ntu, const CalibrationParams& params) {
  if (!(ntu >= 0.0))
    throw InversionOutOfRange("turbidity must be non-negative");
  const double volts = params.turb_v0 - ntu / params.turb_slope;
  if (volts < 0.0) {
    throw InversionOutOfRange("turbidity " + std::to_string(ntu) +
                              " exceeds the sensor span");
  }
  return volts;
}

std::array<std::int32_t, kChannelCount> counts_for_reading(
    const Reading& reading, const CalibrationParams& params) {
  validate_params(params);
  return {
      voltage_to_adc(voltage_for_temp_c(reading.temp_c), params),
      voltage_to_adc(voltage_for_ph(reading.ph, params), params),
      voltage_to_adc(
          voltage_for_tds(reading.tds_ppm, reading.temp_c, params), params),
      voltage_to_adc(voltage_for_turbidity(reading.turbidity_ntu, params),
                     params),
  };
}

}  // namespace aquamon
