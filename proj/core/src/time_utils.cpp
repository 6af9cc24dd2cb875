#include "aquamon/time_utils.hpp"

#include <cstdio>
#include <ctime>

namespace aquamon {

Timestamp now_utc() {
  return std::chrono::time_point_cast<std::chrono::milliseconds>(
      std::chrono::system_clock::now());
}

std::string format_iso8601(Timestamp ts) {
  const auto since_epoch = ts.time_since_epoch();
  const auto secs = std::chrono::duration_cast<std::chrono::seconds>(since_epoch);
  auto millis = (since_epoch - secs).count();
  std::time_t t = secs.count();
  // Negative sub-second remainders (pre-epoch instants) roll down a second.
  if (millis < 0) {
    millis += 1000;
    t -= 1;
  }

  std::tm tm{};
  gmtime_r(&t, &tm);

  char buf[32];
  std::snprintf(buf, sizeof(buf), "%04d-%02d-%02dT%02d:%02d:%02d.%03dZ",
                tm.tm_year + 1900, tm.tm_mon + 1, tm.tm_mday, tm.tm_hour,
                tm.tm_min, tm.tm_sec, static_cast<int>(millis));
  return buf;
}

std::optional<Timestamp> parse_iso8601(const std::string& text) {
  int year = 0, month = 0, day = 0, hour = 0, minute = 0, second = 0, milli = 0;
  char zone = 0;
  int consumed = 0;
  const int n = std::sscanf(text.c_str(), "%4d-%2d-%2dT%2d:%2d:%2d.%3d%c%n",
                            &year, &month, &day, &hour, &minute, &second,
                            &milli, &zone, &consumed);
  if (n != 8 || zone != 'Z' || consumed != static_cast<int>(text.size())) {
    return std::nullopt;
  }
  if (month < 1 || month > 12 || day < 1 || day > 31 || hour > 23 ||
      minute > 59 || second > 60 || milli > 999) {
    return std::nullopt;
  }

  std::tm tm{};
  tm.tm_year = year - 1900;
  tm.tm_mon = month - 1;
  tm.tm_mday = day;
  tm.tm_hour = hour;
  tm.tm_min = minute;
  tm.tm_sec = second;
  const std::time_t t = timegm(&tm);
  return Timestamp{std::chrono::seconds{t} + std::chrono::milliseconds{milli}};
}

}  // namespace aquamon
