#include <cmath>
#include <random>

#include <doctest.h>

#include <aquamon/calibration.hpp>
#include <aquamon/errors.hpp>
#include <aquamon/frame.hpp>

using namespace aquamon;
using doctest::Approx;

namespace {

SensorFrame wq1(std::array<std::int32_t, 4> ch) {
    return SensorFrame{FrameKind::RawAdc, "dev01", 0, 0, ch};
}

SensorFrame wq2(std::array<std::int32_t, 4> ch) {
    return SensorFrame{FrameKind::FixedPoint, "site4", 0, 0, ch};
}

}  // namespace

TEST_SUITE("calibration") {

TEST_CASE("adc counts map linearly onto the reference voltage") {
    const CalibrationParams p{};
    CHECK(adc_to_voltage(0, p) == 0.0);
    CHECK(adc_to_voltage(1023, p) == 5.0);
    CHECK(adc_to_voltage(512, p) == Approx(2.5024437927663734).epsilon(1e-15));

    CHECK_THROWS_AS(adc_to_voltage(-1, p), RangeViolation);
    CHECK_THROWS_AS(adc_to_voltage(1024, p), RangeViolation);
}

TEST_CASE("temperature is 100 degrees per volt within the physical band") {
    CHECK(voltage_to_temp_c(0.0) == 0.0);
    CHECK(voltage_to_temp_c(0.25) == Approx(25.0).epsilon(1e-12));
    CHECK(voltage_to_temp_c(0.2893) == Approx(28.93).epsilon(1e-12));
    CHECK(voltage_to_temp_c(1.25) == Approx(125.0).epsilon(1e-12));

    CHECK_THROWS_AS(voltage_to_temp_c(1.26), ValidationError);
    CHECK_THROWS_AS(voltage_to_temp_c(-0.56), ValidationError);
    CHECK_THROWS_AS(voltage_to_temp_c(5.0), ValidationError);
}

TEST_CASE("ph follows the electrode line and stays within 0 to 14") {
    const CalibrationParams p{};
    CHECK(voltage_to_ph(2.5, p) == Approx(7.0).epsilon(1e-12));
    CHECK(voltage_to_ph(2.0, p) == Approx(9.85).epsilon(1e-12));

    CHECK_THROWS_AS(voltage_to_ph(0.0, p), ValidationError);
    CHECK_THROWS_AS(voltage_to_ph(5.0, p), ValidationError);
}

TEST_CASE("conductivity scales from voltage and refuses negatives") {
    const CalibrationParams p{};
    CHECK(voltage_to_ec(2.5, p) == Approx(500.0).epsilon(1e-12));
    CHECK(voltage_to_ec(0.0, p) == 0.0);
    CHECK_THROWS_AS(voltage_to_ec(-0.1, p), RangeViolation);

    CalibrationParams zero_gain{};
    zero_gain.ec_gain = 0.0;
    validate_params(zero_gain);
    CHECK(voltage_to_ec(2.5, zero_gain) == 0.0);
}

TEST_CASE("temperature compensation normalizes conductivity to 25 degrees") {
    const CalibrationParams p{};
    CHECK(compensate_ec(500.0, 25.0, p) == Approx(500.0).epsilon(1e-12));
    CHECK(compensate_ec(510.0, 30.0, p) == Approx(510.0 / 1.1).epsilon(1e-12));
    CHECK(compensate_ec(500.0, 20.0, p) == Approx(500.0 / 0.9).epsilon(1e-12));

    // Compensated value exceeds the raw one below 25 and shrinks above it.
    CHECK(compensate_ec(500.0, 20.0, p) > 500.0);
    CHECK(compensate_ec(500.0, 30.0, p) < 500.0);

    CHECK_THROWS_AS(compensate_ec(-1.0, 25.0, p), RangeViolation);
    CHECK_THROWS_AS(compensate_ec(500.0, -50.0, p), DomainError);

    CalibrationParams hot{};
    hot.alpha = 0.05;
    CHECK_THROWS_AS(compensate_ec(500.0, -5.0, hot), DomainError);
}

TEST_CASE("tds applies the conversion factor inside its accepted band") {
    CalibrationParams p{};
    CHECK(ec_to_tds(500.0, p) == Approx(320.0).epsilon(1e-12));

    p.k_e = 0.55;
    CHECK(ec_to_tds(1000.0, p) == Approx(550.0).epsilon(1e-12));
    p.k_e = 0.80;
    CHECK(ec_to_tds(1000.0, p) == Approx(800.0).epsilon(1e-12));

    p.k_e = 0.9;
    CHECK_THROWS_AS(ec_to_tds(1000.0, p), ConfigError);
    p.k_e = 0.5;
    CHECK_THROWS_AS(ec_to_tds(1000.0, p), ConfigError);

    p.k_e = 0.64;
    CHECK_THROWS_AS(ec_to_tds(-1.0, p), RangeViolation);
}

TEST_CASE("tds stays bounded by the factor band across random inputs") {
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> ec_dist(0.0, 5000.0);
    std::uniform_real_distribution<double> ke_dist(kKeMin, kKeMax);
    for (int i = 0; i < 10000; ++i) {
        const double ec = ec_dist(rng);
        CalibrationParams p{};
        p.k_e = ke_dist(rng);
        const double tds = ec_to_tds(ec, p);
        CHECK(tds >= 0.55 * ec - 1e-9);
        CHECK(tds <= 0.80 * ec + 1e-9);
    }
}

TEST_CASE("turbidity falls linearly from the clear water voltage and clamps at zero") {
    const CalibrationParams p{};
    CHECK(voltage_to_turbidity(4.20, p) == 0.0);
    CHECK(voltage_to_turbidity(2.0, p) == Approx(220.0).epsilon(1e-12));
    CHECK(voltage_to_turbidity(5.0, p) == 0.0);
    CHECK(voltage_to_turbidity(4.21, p) == 0.0);
    CHECK_THROWS_AS(voltage_to_turbidity(-0.01, p), RangeViolation);
}

TEST_CASE("fixed point frames decode by pure scale division") {
    const CalibrationParams p{};
    const Reading r = calibrate_frame(wq2({2893, 9570, 34975, 1950}), p);
    CHECK(r.temp_c == 28.93);
    CHECK(r.ph == 9.57);
    CHECK(r.tds_ppm == 349.75);
    CHECK(r.turbidity_ntu == 1.95);

    const Reading neg = calibrate_frame(wq2({-550, 0, 0, 0}), p);
    CHECK(neg.temp_c == -5.5);
}

TEST_CASE("raw frames decode through the full analog chain") {
    const CalibrationParams p{};
    const Reading r = calibrate_frame(wq1({51, 512, 512, 855}), p);
    CHECK(r.temp_c == Approx(25.0).epsilon(1e-2));
    CHECK(r.ph == Approx(7.0).epsilon(1e-2));
    CHECK(r.tds_ppm == Approx(320.0).epsilon(1e-2));
    CHECK(r.turbidity_ntu == Approx(2.0).epsilon(1e-1));

    // An all-zero raw frame implies 0 V on the ph channel, far outside the scale.
    CHECK_THROWS_AS(calibrate_frame(wq1({0, 0, 0, 0}), p), ValidationError);

    SensorFrame bad = wq1({51, 512, 512, 855});
    bad.channels[2] = 2000;
    CHECK_THROWS_AS(calibrate_frame(bad, p), RangeViolation);
}

TEST_CASE("compensation inside calibrate uses the decoded temperature") {
    const CalibrationParams p{};
    const Reading at25 = calibrate_frame(wq1({51, 512, 512, 855}), p);
    const Reading at35 = calibrate_frame(wq1({72, 512, 512, 855}), p);
    CHECK(at35.temp_c > at25.temp_c);
    CHECK(at35.tds_ppm < at25.tds_ppm);
}

TEST_CASE("two point ph calibration recovers the electrode line") {
    const PhLine line = fit_ph_line(2.5, 7.0, 3.0, 4.0);
    CHECK(line.slope == Approx(-6.0).epsilon(1e-12));
    CHECK(line.intercept == Approx(22.0).epsilon(1e-12));

    const PhLine defaults = fit_ph_line(2.5, 7.0, 3.026, 4.0);
    CHECK(defaults.slope == Approx(-5.703422053231941).epsilon(1e-12));
    CHECK(defaults.intercept == Approx(21.258555133079852).epsilon(1e-12));

    const PhLine identity = fit_ph_line(0.0, 0.0, 1.0, 1.0);
    CHECK(identity.slope == 1.0);
    CHECK(identity.intercept == 0.0);

    CHECK_THROWS_AS(fit_ph_line(2.5, 7.0, 2.5, 4.0), DegenerateCalibration);
    CHECK_THROWS_AS(fit_ph_line(2.5, 7.0, 2.5 + 1e-10, 4.0), DegenerateCalibration);
}

TEST_CASE("ph and hydrogen molarity invert each other") {
    CHECK(ph_from_h_molarity(1e-7) == Approx(7.0).epsilon(1e-12));
    CHECK(ph_from_h_molarity(3.162e-10) == Approx(9.500038134403809).epsilon(1e-12));
    CHECK(h_molarity_from_ph(7.0) == Approx(1e-7).epsilon(1e-12));

    CHECK_THROWS_AS(ph_from_h_molarity(0.0), DomainError);
    CHECK_THROWS_AS(ph_from_h_molarity(-1e-7), DomainError);

    for (int i = 0; i <= 1400; ++i) {
        const double ph = i * 0.01;
        const double round_trip = ph_from_h_molarity(h_molarity_from_ph(ph));
        CHECK(std::fabs(round_trip - ph) < 1e-9);
    }
}

TEST_CASE("inverse voltages reproduce the target reading in counts") {
    const CalibrationParams p{};
    const auto counts = counts_for_reading(Reading{25.0, 7.0, 320.0, 2.0}, p);
    CHECK(counts[0] == 51);
    CHECK(counts[1] == 512);
    CHECK(counts[2] == 512);
    CHECK(counts[3] == 855);

    CHECK(voltage_to_adc(0.0, p) == 0);
    CHECK(voltage_to_adc(5.0, p) == 1023);
    CHECK_THROWS_AS(voltage_to_adc(5.1, p), InversionOutOfRange);
    CHECK_THROWS_AS(voltage_to_adc(-0.01, p), InversionOutOfRange);

    CHECK_THROWS_AS(voltage_for_temp_c(130.0), InversionOutOfRange);
    CHECK_THROWS_AS(voltage_for_turbidity(500.0, p), InversionOutOfRange);
    CHECK_THROWS_AS(counts_for_reading(Reading{25.0, 7.0, 320.0, 500.0}, p),
                    InversionOutOfRange);
}

TEST_CASE("parameter validation pins each config key") {
    CalibrationParams p{};
    validate_params(p);

    p.vref = 0.0;
    CHECK_THROWS_AS(validate_params(p), ConfigError);
    p = CalibrationParams{};

    p.adc_max = 0;
    CHECK_THROWS_AS(validate_params(p), ConfigError);
    p = CalibrationParams{};

    p.ph_slope = 0.0;
    CHECK_THROWS_AS(validate_params(p), ConfigError);
    p = CalibrationParams{};

    p.ec_gain = -1.0;
    CHECK_THROWS_AS(validate_params(p), ConfigError);
    p.ec_gain = 0.0;
    validate_params(p);
    p = CalibrationParams{};

    p.k_e = 0.54;
    CHECK_THROWS_AS(validate_params(p), ConfigError);
    p.k_e = 0.81;
    CHECK_THROWS_AS(validate_params(p), ConfigError);
    p = CalibrationParams{};

    p.alpha = -0.01;
    CHECK_THROWS_AS(validate_params(p), ConfigError);
    p = CalibrationParams{};

    p.turb_v0 = -1.0;
    CHECK_THROWS_AS(validate_params(p), ConfigError);
    p = CalibrationParams{};

    p.turb_slope = 0.0;
    CHECK_THROWS_AS(validate_params(p), ConfigError);
}

}  // TEST_SUITE
