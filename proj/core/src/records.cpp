#include "aquamon/records.hpp"

#include <cstdint>
#include <initializer_list>
#include <limits>

#include <json.hpp>

namespace aquamon {
namespace {

using nlohmann::json;
using nlohmann::ordered_json;

template <typename Enum>
std::optional<Enum> enum_from(std::string_view text,
                              std::initializer_list<Enum> all) {
  for (Enum value : all)
    if (text == to_string(value)) return value;
  return std::nullopt;
}

std::optional<std::string> get_string(const json& j, const char* key) {
  const auto it = j.find(key);
  if (it == j.end() || !it->is_string()) return std::nullopt;
  return it->get<std::string>();
}

std::optional<double> get_double(const json& j, const char* key) {
  const auto it = j.find(key);
  if (it == j.end() || !it->is_number()) return std::nullopt;
  return it->get<double>();
}

std::optional<std::uint32_t> get_u32(const json& j, const char* key) {
  const auto it = j.find(key);
  if (it == j.end() || !it->is_number_integer()) return std::nullopt;
  const auto value = it->get<std::int64_t>();
  if (value < 0 || value > std::numeric_limits<std::uint32_t>::max())
    return std::nullopt;
  return static_cast<std::uint32_t>(value);
}

}  // namespace

std::string to_json_line(const ReadingRecord& record) {
  ordered_json j;
  j["ts"] = format_iso8601(record.ts);
  j["device_id"] = record.device_id;
  j["seq"] = record.seq;
  j["temp_c"] = record.reading.temp_c;
  j["ph"] = record.reading.ph;
  j["tds_ppm"] = record.reading.tds_ppm;
  j["turbidity_ntu"] = record.reading.turbidity_ntu;
  j["ph_status"] = to_string(record.assessment.ph_status);
  j["turbidity_level"] = to_string(record.assessment.turbidity_level);
  j["temp_status"] = to_string(record.assessment.temp_status);
  j["tds_status"] = to_string(record.assessment.tds_status);
  j["overall"] = to_string(record.assessment.overall);
  auto violations = ordered_json::array();
  for (Parameter parameter : record.assessment.violations)
    violations.push_back(to_string(parameter));
  j["violations"] = std::move(violations);
  return j.dump();
}

std::string to_json_line(const AlertEvent& event) {
  ordered_json j;
  j["ts"] = format_iso8601(event.ts);
  j["device_id"] = event.device_id;
  j["parameter"] = to_string(event.parameter);
  j["value"] = event.value;
  j["threshold"] = event.threshold;
  j["status"] = event.status;
  return j.dump();
}

std::optional<ReadingRecord> reading_from_json_line(std::string_view line) {
  const json j = json::parse(line, nullptr, false);
  if (j.is_discarded() || !j.is_object()) return std::nullopt;

  ReadingRecord record;
  const auto ts_text = get_string(j, "ts");
  if (!ts_text) return std::nullopt;
  const auto ts = parse_iso8601(*ts_text);
  if (!ts) return std::nullopt;
  record.ts = *ts;

  const auto device_id = get_string(j, "device_id");
  if (!device_id || device_id->empty()) return std::nullopt;
  record.device_id = *device_id;

  const auto seq = get_u32(j, "seq");
  if (!seq) return std::nullopt;
  record.seq = *seq;

  const auto temp_c = get_double(j, "temp_c");
  const auto ph = get_double(j, "ph");
  const auto tds_ppm = get_double(j, "tds_ppm");
  const auto turbidity_ntu = get_double(j, "turbidity_ntu");
  if (!temp_c || !ph || !tds_ppm || !turbidity_ntu) return std::nullopt;
  record.reading = Reading{*temp_c, *ph, *tds_ppm, *turbidity_ntu};

  const auto ph_status = get_string(j, "ph_status");
  const auto turbidity_level = get_string(j, "turbidity_level");
  const auto temp_status = get_string(j, "temp_status");
  const auto tds_status = get_string(j, "tds_status");
  const auto overall = get_string(j, "overall");
  if (!ph_status || !turbidity_level || !temp_status || !tds_status ||
      !overall)
    return std::nullopt;

  const auto ph_parsed = enum_from<PhStatus>(
      *ph_status, {PhStatus::Acidic, PhStatus::Ideal, PhStatus::Alkaline});
  const auto turbidity_parsed = enum_from<TurbidityLevel>(
      *turbidity_level,
      {TurbidityLevel::MediumTurbid, TurbidityLevel::RatherTurbid,
       TurbidityLevel::ModerateTurbid, TurbidityLevel::HighlyTurbid});
  const auto temp_parsed = enum_from<TempStatus>(
      *temp_status, {TempStatus::Normal, TempStatus::High});
  const auto tds_parsed = enum_from<TdsStatus>(
      *tds_status, {TdsStatus::Acceptable, TdsStatus::Alarming});
  const auto overall_parsed = enum_from<OverallStatus>(
      *overall, {OverallStatus::WithinLimits, OverallStatus::Polluted});
  if (!ph_parsed || !turbidity_parsed || !temp_parsed || !tds_parsed ||
      !overall_parsed)
    return std::nullopt;

  record.assessment.ph_status = *ph_parsed;
  record.assessment.turbidity_level = *turbidity_parsed;
  record.assessment.temp_status = *temp_parsed;
  record.assessment.tds_status = *tds_parsed;
  record.assessment.overall = *overall_parsed;

  const auto violations_it = j.find("violations");
  if (violations_it == j.end() || !violations_it->is_array())
    return std::nullopt;
  for (const auto& entry : *violations_it) {
    if (!entry.is_string()) return std::nullopt;
    const auto parameter = enum_from<Parameter>(
        entry.get<std::string>(),
        {Parameter::Temperature, Parameter::Ph, Parameter::Tds,
         Parameter::Turbidity});
    if (!parameter) return std::nullopt;
    record.assessment.violations.push_back(*parameter);
  }
  return record;
}

std::optional<AlertEvent> alert_from_json_line(std::string_view line) {
  const json j = json::parse(line, nullptr, false);
  if (j.is_discarded() || !j.is_object()) return std::nullopt;

  AlertEvent event;
  const auto ts_text = get_string(j, "ts");
  if (!ts_text) return std::nullopt;
  const auto ts = parse_iso8601(*ts_text);
  if (!ts) return std::nullopt;
  event.ts = *ts;

  const auto device_id = get_string(j, "device_id");
  if (!device_id || device_id->empty()) return std::nullopt;
  event.device_id = *device_id;

  const auto parameter_text = get_string(j, "parameter");
  if (!parameter_text) return std::nullopt;
  const auto parameter = enum_from<Parameter>(
      *parameter_text, {Parameter::Temperature, Parameter::Ph, Parameter::Tds,
                        Parameter::Turbidity});
  if (!parameter) return std::nullopt;
  event.parameter = *parameter;

  const auto value = get_double(j, "value");
  const auto threshold = get_double(j, "threshold");
  const auto status = get_string(j, "status");
  if (!value || !threshold || !status) return std::nullopt;
  event.value = *value;
  event.threshold = *threshold;
  event.status = *status;
  return event;
}

std::vector<AlertEvent> alerts_for(Timestamp ts, const std::string& device_id,
                                   const Reading& reading,
                                   const Assessment& assessment,
                                   const Thresholds& thresholds) {
  std::vector<AlertEvent> alerts;
  alerts.reserve(assessment.violations.size());
  for (Parameter parameter : assessment.violations) {
    AlertEvent event;
    event.ts = ts;
    event.device_id = device_id;
    event.parameter = parameter;
    switch (parameter) {
      case Parameter::Temperature:
        event.value = reading.temp_c;
        event.threshold = thresholds.temp_high_c;
        event.status = to_string(assessment.temp_status);
        break;
      case Parameter::Ph:
        event.value = reading.ph;
        event.threshold = assessment.ph_status == PhStatus::Acidic
                              ? thresholds.ph_ideal_lo
                              : thresholds.ph_ideal_hi;
        event.status = to_string(assessment.ph_status);
        break;
      case Parameter::Tds:
        event.value = reading.tds_ppm;
        event.threshold = thresholds.tds_alarm_ppm;
        event.status = to_string(assessment.tds_status);
        break;
      case Parameter::Turbidity:
        event.value = reading.turbidity_ntu;
        event.threshold = kTurbidityMediumMaxNtu;
        event.status = to_string(assessment.turbidity_level);
        break;
    }
    alerts.push_back(std::move(event));
  }
  return alerts;
}

}  // namespace aquamon
