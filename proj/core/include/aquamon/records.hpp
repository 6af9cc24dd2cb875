#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "aquamon/assessment.hpp"
#include "aquamon/time_utils.hpp"

namespace aquamon {

// Shapes persisted by the gateway, one JSON object per line.

struct ReadingRecord {
  Timestamp ts{};
  std::string device_id;
  std::uint32_t seq = 0;
  Reading reading;
  Assessment assessment;

  bool operator==(const ReadingRecord&) const = default;
};

struct AlertEvent {
  Timestamp ts{};
  std::string device_id;
  Parameter parameter = Parameter::Temperature;
  double value = 0.0;
  double threshold = 0.0;
  std::string status;  // the violating classification, e.g. "Alkaline"

  bool operator==(const AlertEvent&) const = default;
};

// Single-line JSON, no trailing newline. Doubles serialize in shortest
// round-trip form, so values that are exact in the reading stay exact in
// the log.
std::string to_json_line(const ReadingRecord& record);
std::string to_json_line(const AlertEvent& event);

// Strict inverses: nullopt for anything that is not a well-formed record
// with all required keys of the right type. Callers treat nullopt lines
// as corrupt and count them rather than aborting.
std::optional<ReadingRecord> reading_from_json_line(std::string_view line);
std::optional<AlertEvent> alert_from_json_line(std::string_view line);

// One alert per violated parameter, in the order the assessment lists
// them. The threshold is the band edge the value crossed.
std::vector<AlertEvent> alerts_for(Timestamp ts, const std::string& device_id,
                                   const Reading& reading,
                                   const Assessment& assessment,
                                   const Thresholds& thresholds);

}  // namespace aquamon
