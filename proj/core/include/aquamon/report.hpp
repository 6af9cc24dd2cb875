#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "aquamon/aggregation.hpp"

namespace aquamon {

// Offline summaries over a readings log: per-group count, mean, min and
// max for all four parameters. Corrupt lines are skipped and counted, so
// a partially damaged log still reports.

enum class GroupBy { Device, Site };
enum class ReportFormat { Table, Csv, Json };

struct GroupSummary {
  std::string group;
  ReadingStats stats;
};

struct SummaryReport {
  std::vector<GroupSummary> groups;  // group id ascending
  std::uint64_t lines_read = 0;
  std::uint64_t lines_skipped = 0;
  std::vector<std::uint64_t> skipped_line_numbers;  // 1-based
};

// The site of a device id is the prefix before the first '.', or the
// whole id when it has none; replayed fixtures use the site name itself.
std::string site_of(std::string_view device_id);

// Throws PersistenceFailure when the file cannot be opened. An empty file
// yields an empty report.
SummaryReport summarize_file(const std::string& path, GroupBy by);

// Renderers. Displayed values are rounded half-up to 2 decimal places;
// the underlying statistics stay exact.
std::string render_table(const SummaryReport& report);
std::string render_csv(const SummaryReport& report);
std::string render_json(const SummaryReport& report);
std::string render(const SummaryReport& report, ReportFormat format);

}  // namespace aquamon
