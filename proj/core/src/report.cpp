#include "aquamon/report.hpp"

#include <cinttypes>
#include <cstdio>
#include <map>

#include <json.hpp>

#include "aquamon/jsonl.hpp"
#include "aquamon/records.hpp"

namespace aquamon {
namespace {

std::string fixed_2dp(double value) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.2f", round_2dp(value));
  return buf;
}

std::string span_cell(const StatsAccumulator& stats) {
  return fixed_2dp(stats.mean()) + " [" + fixed_2dp(stats.min()) + ", " +
         fixed_2dp(stats.max()) + "]";
}

nlohmann::ordered_json stats_object(const StatsAccumulator& stats) {
  nlohmann::ordered_json object;
  object["mean"] = round_2dp(stats.mean());
  object["min"] = round_2dp(stats.min());
  object["max"] = round_2dp(stats.max());
  return object;
}

}  // namespace

std::string site_of(std::string_view device_id) {
  const std::size_t dot = device_id.find('.');
  if (dot == std::string_view::npos) return std::string(device_id);
  return std::string(device_id.substr(0, dot));
}

SummaryReport summarize_file(const std::string& path, GroupBy by) {
  SummaryReport report;
  std::map<std::string, ReadingStats> groups;
  std::uint64_t line_no = 0;
  report.lines_read = for_each_line(path, [&](std::string_view line) {
    ++line_no;
    const auto record = reading_from_json_line(line);
    if (!record) {
      ++report.lines_skipped;
      report.skipped_line_numbers.push_back(line_no);
      return;
    }
    const std::string key = by == GroupBy::Device
                                ? record->device_id
                                : site_of(record->device_id);
    groups[key].add(record->reading);
  });

  report.groups.reserve(groups.size());
  for (auto& [group, stats] : groups)
    report.groups.push_back(GroupSummary{group, stats});
  return report;
}

std::string render_table(const SummaryReport& report) {
  std::string out;
  char buf[320];
  std::snprintf(buf, sizeof buf, "%-16s %6s  %-24s %-22s %-28s %-24s\n",
                "group", "count", "temp_c", "ph", "tds_ppm", "turbidity_ntu");
  out += buf;
  for (const GroupSummary& group : report.groups) {
    std::snprintf(buf, sizeof buf, "%-16s %6" PRIu64 "  %-24s %-22s %-28s %-24s\n",
                  group.group.c_str(),
                  static_cast<std::uint64_t>(group.stats.count()),
                  span_cell(group.stats.temp_c).c_str(),
                  span_cell(group.stats.ph).c_str(),
                  span_cell(group.stats.tds_ppm).c_str(),
                  span_cell(group.stats.turbidity_ntu).c_str());
    out += buf;
  }
  return out;
}

std::string render_csv(const SummaryReport& report) {
  std::string out =
      "group,count,temp_c_mean,temp_c_min,temp_c_max,ph_mean,ph_min,ph_max,"
      "tds_ppm_mean,tds_ppm_min,tds_ppm_max,turbidity_ntu_mean,"
      "turbidity_ntu_min,turbidity_ntu_max\n";
  for (const GroupSummary& group : report.groups) {
    out += group.group;
    out += ',';
    out += std::to_string(group.stats.count());
    for (const StatsAccumulator* stats :
         {&group.stats.temp_c, &group.stats.ph, &group.stats.tds_ppm,
          &group.stats.turbidity_ntu}) {
      out += ',';
      out += fixed_2dp(stats->mean());
      out += ',';
      out += fixed_2dp(stats->min());
      out += ',';
      out += fixed_2dp(stats->max());
    }
    out += '\n';
  }
  return out;
}

std::string render_json(const SummaryReport& report) {
  nlohmann::ordered_json doc;
  auto groups = nlohmann::ordered_json::array();
  for (const GroupSummary& group : report.groups) {
    nlohmann::ordered_json entry;
    entry["group"] = group.group;
    entry["count"] = group.stats.count();
    entry["temp_c"] = stats_object(group.stats.temp_c);
    entry["ph"] = stats_object(group.stats.ph);
    entry["tds_ppm"] = stats_object(group.stats.tds_ppm);
    entry["turbidity_ntu"] = stats_object(group.stats.turbidity_ntu);
    groups.push_back(std::move(entry));
  }
  doc["groups"] = std::move(groups);
  doc["lines_read"] = report.lines_read;
  doc["lines_skipped"] = report.lines_skipped;
  return doc.dump();
}

std::string render(const SummaryReport& report, ReportFormat format) {
  switch (format) {
    case ReportFormat::Table: return render_table(report);
    case ReportFormat::Csv: return render_csv(report);
    case ReportFormat::Json: return render_json(report);
  }
  return {};
}

}  // namespace aquamon
