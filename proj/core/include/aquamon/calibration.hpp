#pragma once

#include <array>
#include <cstdint>

#include "aquamon/frame.hpp"

namespace aquamon {

// Transforms between raw ADC counts and physical water-quality values.
//
// The forward chain for a raw frame is
//   count -> voltage -> {temp_c, ph, ec -> compensated ec -> tds, turbidity}
// and every stage reports out-of-range inputs instead of clamping. The one
// exception is turbidity, whose sensor reads clear water as a small negative
// offset, so it floors at zero.

inline constexpr double kTempMinC = -55.0;  // LM35 span
inline constexpr double kTempMaxC = 125.0;
inline constexpr double kPhMin = 0.0;
inline constexpr double kPhMax = 14.0;
inline constexpr double kKeMin = 0.55;  // accepted TDS conversion factors
inline constexpr double kKeMax = 0.80;

struct CalibrationParams {
  double vref = 5.0;          // ADC reference voltage
  int adc_max = 1023;         // full-scale count (10-bit converter)
  double ph_slope = -5.70;    // pH per volt
  double ph_intercept = 21.25;
  double ec_gain = 200.0;     // microsiemens/cm per volt
  double k_e = 0.64;          // TDS ppm per microsiemens/cm
  double alpha = 0.02;        // EC temperature coefficient per degC
  double turb_v0 = 4.20;      // turbidity sensor clear-water voltage
  double turb_slope = 100.0;  // NTU per volt of attenuation
};

// Throws ConfigError naming the first invalid parameter.
void validate_params(const CalibrationParams& params);

struct Reading {
  double temp_c = 0.0;
  double ph = 0.0;
  double tds_ppm = 0.0;
  double turbidity_ntu = 0.0;

  bool operator==(const Reading&) const = default;
};

// Forward chain. Inputs outside an operation's stated domain raise
// RangeViolation; computed values landing outside their physical bounds
// raise ValidationError (temperature outside the LM35 span, pH outside
// [0, 14]).
double adc_to_voltage(int count, const CalibrationParams& params);
double voltage_to_temp_c(double volts);
double voltage_to_ph(double volts, const CalibrationParams& params);
double voltage_to_ec(double volts, const CalibrationParams& params);
// Normalizes a conductivity measured at temp_c to the 25 degC reference.
// Throws DomainError when the compensation factor is not positive.
double compensate_ec(double ec_us_cm, double temp_c,
                     const CalibrationParams& params);
// Throws ConfigError when k_e lies outside [0.55, 0.8].
double ec_to_tds(double ec_us_cm, const CalibrationParams& params);
// Floors at zero; never throws for volts >= 0.
double voltage_to_turbidity(double volts, const CalibrationParams& params);

// Decodes a frame into physical units: raw frames run the forward chain,
// fixed-point frames divide by the per-channel scale.
Reading calibrate_frame(const SensorFrame& frame,
                        const CalibrationParams& params);

// Two-point pH calibration from buffer measurements. Throws
// DegenerateCalibration when the voltages are too close to determine a line.
struct PhLine {
  double slope = 0.0;
  double intercept = 0.0;
};
PhLine fit_ph_line(double volts1, double ph1, double volts2, double ph2);

// pH as the negative base-10 log of hydrogen ion molarity, and its inverse.
// ph_from_h_molarity throws DomainError for non-positive molarity.
double ph_from_h_molarity(double molarity);
double h_molarity_from_ph(double ph);

// Inverse chain, used to synthesize raw frames for target readings.
// All throw InversionOutOfRange when the target cannot be produced by any
// in-range voltage or count.
int voltage_to_adc(double volts, const CalibrationParams& params);
double voltage_for_temp_c(double temp_c);
double voltage_for_ph(double ph, const CalibrationParams& params);
double voltage_for_tds(double tds_ppm, double temp_c,
                       const CalibrationParams& params);
double voltage_for_turbidity(double ntu, const CalibrationParams& params);
std::array<std::int32_t, kChannelCount> counts_for_reading(
    const Reading& reading, const CalibrationParams& params);

}  // namespace aquamon
