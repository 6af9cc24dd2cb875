#pragma once

#include <chrono>
#include <optional>
#include <string>

namespace aquamon {

// UTC instant at millisecond precision (the precision persisted records carry).
using Timestamp =
    std::chrono::time_point<std::chrono::system_clock, std::chrono::milliseconds>;

Timestamp now_utc();

// "2026-08-17T12:34:56.789Z"
std::string format_iso8601(Timestamp ts);

// Inverse of format_iso8601; nullopt on anything else.
std::optional<Timestamp> parse_iso8601(const std::string& text);

}  // namespace aquamon
