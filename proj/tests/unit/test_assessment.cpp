#include <string>
#include <vector>

#include <doctest.h>

#include <aquamon/assessment.hpp>
#include <aquamon/calibration.hpp>
#include <aquamon/errors.hpp>
#include <aquamon/simulator.hpp>

#include "test_helpers.hpp"

using namespace aquamon;

TEST_SUITE("assessment") {

TEST_CASE("ph bands are acidic below, ideal inclusive, alkaline above") {
    const Thresholds t{};
    CHECK(classify_ph(5.99, t) == PhStatus::Acidic);
    CHECK(classify_ph(6.0, t) == PhStatus::Ideal);
    CHECK(classify_ph(7.0, t) == PhStatus::Ideal);
    CHECK(classify_ph(8.0, t) == PhStatus::Ideal);
    CHECK(classify_ph(8.001, t) == PhStatus::Alkaline);
    CHECK(classify_ph(0.0, t) == PhStatus::Acidic);
    CHECK(classify_ph(14.0, t) == PhStatus::Alkaline);

    CHECK_THROWS_AS(classify_ph(-0.1, t), DomainError);
    CHECK_THROWS_AS(classify_ph(14.1, t), DomainError);
}

TEST_CASE("turbidity bands split at 25, 35 and 50 NTU") {
    CHECK(classify_turbidity(0.0) == TurbidityLevel::MediumTurbid);
    CHECK(classify_turbidity(24.999) == TurbidityLevel::MediumTurbid);
    CHECK(classify_turbidity(25.0) == TurbidityLevel::RatherTurbid);
    CHECK(classify_turbidity(34.999) == TurbidityLevel::RatherTurbid);
    CHECK(classify_turbidity(35.0) == TurbidityLevel::ModerateTurbid);
    CHECK(classify_turbidity(50.0) == TurbidityLevel::ModerateTurbid);
    CHECK(classify_turbidity(50.001) == TurbidityLevel::HighlyTurbid);
    CHECK(classify_turbidity(1000.0) == TurbidityLevel::HighlyTurbid);

    CHECK_THROWS_AS(classify_turbidity(-0.001), DomainError);
}

TEST_CASE("temperature flags strictly above the high threshold") {
    const Thresholds t{};
    CHECK(classify_temp(35.0, t) == TempStatus::Normal);
    CHECK(classify_temp(35.001, t) == TempStatus::High);
    CHECK(classify_temp(-55.0, t) == TempStatus::Normal);
    CHECK(classify_temp(125.0, t) == TempStatus::High);

    CHECK_THROWS_AS(classify_temp(-55.1, t), DomainError);
    CHECK_THROWS_AS(classify_temp(125.1, t), DomainError);
}

TEST_CASE("tds alarms at or above the limit") {
    const Thresholds t{};
    CHECK(classify_tds(169.999, t) == TdsStatus::Acceptable);
    CHECK(classify_tds(170.0, t) == TdsStatus::Alarming);
    CHECK(classify_tds(0.0, t) == TdsStatus::Acceptable);
    CHECK(classify_tds(100000.0, t) == TdsStatus::Alarming);

    CHECK_THROWS_AS(classify_tds(-0.001, t), DomainError);
}

TEST_CASE("classification is monotone along each scale") {
    const Thresholds t{};
    PhStatus last_ph = PhStatus::Acidic;
    for (double ph = 0.0; ph <= 14.0; ph += 0.25) {
        const PhStatus status = classify_ph(ph, t);
        CHECK(static_cast<int>(status) >= static_cast<int>(last_ph));
        last_ph = status;
    }

    TurbidityLevel last_level = TurbidityLevel::MediumTurbid;
    for (double ntu = 0.0; ntu <= 100.0; ntu += 0.5) {
        const TurbidityLevel level = classify_turbidity(ntu);
        CHECK(static_cast<int>(level) >= static_cast<int>(last_level));
        last_level = level;
    }
}

TEST_CASE("custom thresholds move the band edges") {
    Thresholds t{};
    t.ph_ideal_lo = 6.5;
    t.ph_ideal_hi = 8.5;
    t.temp_high_c = 30.0;
    t.tds_alarm_ppm = 500.0;
    validate_thresholds(t);

    CHECK(classify_ph(6.4, t) == PhStatus::Acidic);
    CHECK(classify_ph(8.4, t) == PhStatus::Ideal);
    CHECK(classify_temp(30.5, t) == TempStatus::High);
    CHECK(classify_tds(499.0, t) == TdsStatus::Acceptable);
}

TEST_CASE("threshold validation rejects inverted and unphysical limits") {
    Thresholds t{};
    validate_thresholds(t);

    t.ph_ideal_lo = 8.0;
    t.ph_ideal_hi = 8.0;
    CHECK_THROWS_AS(validate_thresholds(t), ConfigError);
    t.ph_ideal_lo = 9.0;
    CHECK_THROWS_AS(validate_thresholds(t), ConfigError);

    t = Thresholds{};
    t.ph_ideal_lo = -1.0;
    CHECK_THROWS_AS(validate_thresholds(t), ConfigError);

    t = Thresholds{};
    t.ph_ideal_hi = 15.0;
    CHECK_THROWS_AS(validate_thresholds(t), ConfigError);

    t = Thresholds{};
    t.temp_high_c = -55.0;
    CHECK_THROWS_AS(validate_thresholds(t), ConfigError);

    t = Thresholds{};
    t.temp_high_c = 126.0;
    CHECK_THROWS_AS(validate_thresholds(t), ConfigError);

    t = Thresholds{};
    t.temp_high_c = 125.0;
    validate_thresholds(t);

    t = Thresholds{};
    t.tds_alarm_ppm = -1.0;
    CHECK_THROWS_AS(validate_thresholds(t), ConfigError);
}

TEST_CASE("assess composes the four classifiers and orders violations") {
    const Thresholds t{};

    const Assessment site1 = assess(Reading{28.93, 9.57, 349.75, 1.95}, t);
    CHECK(site1.ph_status == PhStatus::Alkaline);
    CHECK(site1.turbidity_level == TurbidityLevel::MediumTurbid);
    CHECK(site1.temp_status == TempStatus::Normal);
    CHECK(site1.tds_status == TdsStatus::Alarming);
    CHECK(site1.overall == OverallStatus::Polluted);
    REQUIRE(site1.violations.size() == 2);
    CHECK(site1.violations[0] == Parameter::Ph);
    CHECK(site1.violations[1] == Parameter::Tds);

    const Assessment site4 = assess(Reading{37.46, 8.60, 176.28, 2.93}, t);
    CHECK(site4.temp_status == TempStatus::High);
    CHECK(site4.overall == OverallStatus::Polluted);
    REQUIRE(site4.violations.size() == 3);
    CHECK(site4.violations[0] == Parameter::Temperature);
    CHECK(site4.violations[1] == Parameter::Ph);
    CHECK(site4.violations[2] == Parameter::Tds);

    const Assessment ideal = assess(Reading{25.0, 7.0, 50.0, 0.5}, t);
    CHECK(ideal.ph_status == PhStatus::Ideal);
    CHECK(ideal.turbidity_level == TurbidityLevel::MediumTurbid);
    CHECK(ideal.temp_status == TempStatus::Normal);
    CHECK(ideal.tds_status == TdsStatus::Acceptable);
    CHECK(ideal.overall == OverallStatus::WithinLimits);
    CHECK(ideal.violations.empty());

    const Assessment murky = assess(Reading{20.0, 7.0, 50.0, 60.0}, t);
    CHECK(murky.turbidity_level == TurbidityLevel::HighlyTurbid);
    REQUIRE(murky.violations.size() == 1);
    CHECK(murky.violations[0] == Parameter::Turbidity);
}

TEST_CASE("every sampled take reads alkaline and medium turbid") {
    const auto rows = load_fixture_csv(testutil::fixture_path("sites.csv"));
    REQUIRE(rows.size() == 20);
    const Thresholds t{};
    for (const auto& row : rows) {
        CHECK(classify_ph(row.values.ph, t) == PhStatus::Alkaline);
        CHECK(classify_turbidity(row.values.turbidity_ntu) == TurbidityLevel::MediumTurbid);
    }
}

TEST_CASE("status names match the wire spellings") {
    CHECK(std::string(to_string(PhStatus::Acidic)) == "Acidic");
    CHECK(std::string(to_string(PhStatus::Ideal)) == "Ideal");
    CHECK(std::string(to_string(PhStatus::Alkaline)) == "Alkaline");
    CHECK(std::string(to_string(TurbidityLevel::MediumTurbid)) == "MediumTurbid");
    CHECK(std::string(to_string(TurbidityLevel::RatherTurbid)) == "RatherTurbid");
    CHECK(std::string(to_string(TurbidityLevel::ModerateTurbid)) == "ModerateTurbid");
    CHECK(std::string(to_string(TurbidityLevel::HighlyTurbid)) == "HighlyTurbid");
    CHECK(std::string(to_string(TempStatus::Normal)) == "Normal");
    CHECK(std::string(to_string(TempStatus::High)) == "High");
    CHECK(std::string(to_string(TdsStatus::Acceptable)) == "Acceptable");
    CHECK(std::string(to_string(TdsStatus::Alarming)) == "Alarming");
    CHECK(std::string(to_string(OverallStatus::WithinLimits)) == "WithinLimits");
    CHECK(std::string(to_string(OverallStatus::Polluted)) == "Polluted");
    CHECK(std::string(to_string(Parameter::Temperature)) == "temperature");
    CHECK(std::string(to_string(Parameter::Ph)) == "ph");
    CHECK(std::string(to_string(Parameter::Tds)) == "tds");
    CHECK(std::string(to_string(Parameter::Turbidity)) == "turbidity");
}

}  // TEST_SUITE
