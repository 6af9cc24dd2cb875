#include "aquamon/frame.hpp"

#include <cstdio>
#include <limits>
#include <utility>

#include "aquamon/errors.hpp"

namespace aquamon {
namespace {

enum class NumParse { Ok, Syntax, Range };

bool is_upper_hex(char c) {
  return (c >= '0' && c <= '9') || (c >= 'A' && c <= 'F');
}

bool is_ident_char(char c) {
  return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') ||
         (c >= '0' && c <= '9') || c == '_' || c == '-';
}

// Canonical decimal: digits only, no leading zero unless the value is "0".
NumParse parse_canonical_u64(std::string_view s, std::uint64_t max,
                             std::uint64_t& out) {
  if (s.empty()) return NumParse::Syntax;
  for (char c : s)
    if (c < '0' || c > '9') return NumParse::Syntax;
  if (s.size() > 1 && s.front() == '0') return NumParse::Syntax;
  std::uint64_t value = 0;
  for (char c : s) {
    const auto digit = static_cast<std::uint64_t>(c - '0');
    if (value > (std::numeric_limits<std::uint64_t>::max() - digit) / 10)
      return NumParse::Range;
    value = value * 10 + digit;
  }
  if (value > max) return NumParse::Range;
  out = value;
  return NumParse::Ok;
}

// Signed canonical decimal; "-0" is not canonical.
NumParse parse_canonical_i32(std::string_view s, std::int32_t& out) {
  const bool negative = !s.empty() && s.front() == '-';
  const std::string_view digits = negative ? s.substr(1) : s;
  if (negative && digits == "0") return NumParse::Syntax;
  const std::uint64_t magnitude_max =
      negative ? 2147483648ull : 2147483647ull;
  std::uint64_t magnitude = 0;
  const NumParse rc = parse_canonical_u64(digits, magnitude_max, magnitude);
  if (rc != NumParse::Ok) return rc;
  out = negative ? static_cast<std::int32_t>(-static_cast<std::int64_t>(magnitude))
                 : static_cast<std::int32_t>(magnitude);
  return NumParse::Ok;
}

std::pair<std::int32_t, std::int32_t> channel_bounds(FrameKind kind, int ch) {
  if (kind == FrameKind::RawAdc) return {0, kAdcCountMax};
  return {kFixedPointMin[static_cast<std::size_t>(ch)],
          kFixedPointMax[static_cast<std::size_t>(ch)]};
}

ParseError syntax(std::string detail) {
  return {ParseErrorKind::MalformedSyntax, std::move(detail)};
}

ParseError range(std::string detail) {
  return {ParseErrorKind::RangeViolation, std::move(detail)};
}

}  // namespace

const char* to_string(ParseErrorKind kind) {
  switch (kind) {
    case ParseErrorKind::MalformedSyntax: return "malformed_syntax";
    case ParseErrorKind::BadChecksum: return "bad_checksum";
    case ParseErrorKind::RangeViolation: return "range_violation";
    case ParseErrorKind::LineTooLong: return "line_too_long";
  }
  return "unknown";
}

std::string compute_checksum(std::string_view payload) {
  unsigned folded = 0;
  for (unsigned char byte : payload) folded ^= byte;
  char buf[3];
  std::snprintf(buf, sizeof buf, "%02X", folded);
  return buf;
}

bool valid_device_id(std::string_view id) {
  if (id.empty() || id.size() > kMaxDeviceIdLength) return false;
  for (char c : id)
    if (!is_ident_char(c)) return false;
  return true;
}

bool validate_frame(const SensorFrame& frame, std::string* why) {
  const auto fail = [&](std::string msg) {
    if (why) *why = std::move(msg);
    return false;
  };
  if (!valid_device_id(frame.device_id)) {
    return fail("device_id must be 1.." + std::to_string(kMaxDeviceIdLength) +
                " characters of [A-Za-z0-9_-]");
  }
  for (int ch = 0; ch < kChannelCount; ++ch) {
    const auto [lo, hi] = channel_bounds(frame.kind, ch);
    const std::int32_t value = frame.channels[static_cast<std::size_t>(ch)];
    if (value < lo || value > hi) {
      return fail(std::string(kChannelNames[static_cast<std::size_t>(ch)]) +
                  " channel " + std::to_string(value) + " outside [" +
                  std::to_string(lo) + ", " + std::to_string(hi) + "]");
    }
  }
  return true;
}

std::string encode_frame(const SensorFrame& frame) {
  std::string why;
  if (!validate_frame(frame, &why)) throw InvalidFrame(why);

  std::string payload = frame.kind == FrameKind::RawAdc ? "WQ1" : "WQ2";
  payload += ',';
  payload += frame.device_id;
  payload += ',';
  payload += std::to_string(frame.seq);
  payload += ',';
  payload += std::to_string(frame.uptime_ms);
  for (std::int32_t value : frame.channels) {
    payload += ',';
    payload += std::to_string(value);
  }

  std::string line;
  line.reserve(payload.size() + 5);
  line += '$';
  line += payload;
  line += '*';
  line += compute_checksum(payload);
  line += '\n';
  if (line.size() > kMaxLineBytes)
    throw InvalidFrame("encoded line exceeds " +
                       std::to_string(kMaxLineBytes) + " bytes");
  return line;
}

ParseResult parse_frame(std::string_view line) {
  // One trailing LF, optionally preceded by CR, is part of the terminator.
  if (!line.empty() && line.back() == '\n') line.remove_suffix(1);
  if (!line.empty() && line.back() == '\r') line.remove_suffix(1);

  if (line.size() > kMaxLineBytes - 1) {
    return ParseError{ParseErrorKind::LineTooLong,
                      std::to_string(line.size()) +
                          " bytes before terminator, limit " +
                          std::to_string(kMaxLineBytes - 1)};
  }
  if (line.empty() || line.front() != '$')
    return syntax("missing leading '$'");

  // The checksum delimiter is the last '*' so that a corrupted payload byte
  // can never masquerade as the delimiter; the corruption then surfaces as a
  // checksum mismatch, not a syntax error.
  const std::size_t star = line.rfind('*');
  if (star == std::string_view::npos)
    return syntax("missing '*' checksum delimiter");
  const std::string_view stated = line.substr(star + 1);
  if (stated.size() != 2 || !is_upper_hex(stated[0]) ||
      !is_upper_hex(stated[1]))
    return syntax("checksum must be two uppercase hex digits");

  const std::string_view payload = line.substr(1, star - 1);
  const std::string computed = compute_checksum(payload);
  if (computed != stated) {
    return ParseError{ParseErrorKind::BadChecksum,
                      "computed " + computed + ", stated " +
                          std::string(stated)};
  }

  std::array<std::string_view, 8> fields;
  std::size_t field_count = 0;
  std::size_t pos = 0;
  while (true) {
    const std::size_t comma = payload.find(',', pos);
    const std::string_view field =
        comma == std::string_view::npos
            ? payload.substr(pos)
            : payload.substr(pos, comma - pos);
    if (field_count < fields.size()) fields[field_count] = field;
    ++field_count;
    if (comma == std::string_view::npos) break;
    pos = comma + 1;
  }
  if (field_count != fields.size()) {
    return syntax("expected " + std::to_string(fields.size()) +
                  " fields, got " + std::to_string(field_count));
  }

  SensorFrame frame;
  if (fields[0] == "WQ1") {
    frame.kind = FrameKind::RawAdc;
  } else if (fields[0] == "WQ2") {
    frame.kind = FrameKind::FixedPoint;
  } else {
    return syntax("unknown frame type '" + std::string(fields[0]) + "'");
  }

  // Device id constraints are domain rules, not grammar.
  const std::string_view id = fields[1];
  if (!valid_device_id(id)) {
    return range("device_id must be 1.." +
                 std::to_string(kMaxDeviceIdLength) +
                 " characters of [A-Za-z0-9_-]");
  }
  frame.device_id.assign(id);

  std::uint64_t seq = 0;
  switch (parse_canonical_u64(fields[2],
                              std::numeric_limits<std::uint32_t>::max(),
                              seq)) {
    case NumParse::Syntax: return syntax("seq is not a canonical unsigned decimal");
    case NumParse::Range: return range("seq exceeds 32-bit range");
    case NumParse::Ok: break;
  }
  frame.seq = static_cast<std::uint32_t>(seq);

  switch (parse_canonical_u64(fields[3],
                              std::numeric_limits<std::uint64_t>::max(),
                              frame.uptime_ms)) {
    case NumParse::Syntax:
      return syntax("uptime_ms is not a canonical unsigned decimal");
    case NumParse::Range: return range("uptime_ms exceeds 64-bit range");
    case NumParse::Ok: break;
  }

  for (int ch = 0; ch < kChannelCount; ++ch) {
    const auto name = kChannelNames[static_cast<std::size_t>(ch)];
    std::int32_t value = 0;
    switch (parse_canonical_i32(fields[4 + static_cast<std::size_t>(ch)],
                                value)) {
      case NumParse::Syntax:
        return syntax(std::string(name) +
                      " channel is not a canonical decimal");
      case NumParse::Range:
        return range(std::string(name) + " channel exceeds 32-bit range");
      case NumParse::Ok: break;
    }
    const auto [lo, hi] = channel_bounds(frame.kind, ch);
    if (value < lo || value > hi) {
      return range(std::string(name) + " channel " + std::to_string(value) +
                   " outside [" + std::to_string(lo) + ", " +
                   std::to_string(hi) + "]");
    }
    frame.channels[static_cast<std::size_t>(ch)] = value;
  }

  return frame;
}

}  // namespace aquamon
