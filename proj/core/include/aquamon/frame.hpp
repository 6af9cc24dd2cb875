#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <variant>

namespace aquamon {

// Line-oriented sensor frame protocol.
//
//   frame     = '$' type ',' device_id ',' seq ',' uptime_ms ','
//               c1 ',' c2 ',' c3 ',' c4 '*' HH LF
//   type      = "WQ1" | "WQ2"
//   HH        = two uppercase hex digits, XOR over the payload bytes
//               between '$' and '*' exclusive
//
// Channel order is always temperature, pH, TDS, turbidity. WQ1 channels are
// raw 10-bit ADC counts; WQ2 channels are fixed-point physical values in
// centi-degC, milli-pH, centi-ppm and milli-NTU. Numeric fields have one
// canonical form: no leading '+', no leading zeros (zero itself is "0"),
// no whitespace. Lines end in a single LF; a CR before the LF is tolerated
// on parse and never emitted.

inline constexpr int kChannelCount = 4;
inline constexpr std::size_t kMaxLineBytes = 128;
inline constexpr std::size_t kMaxDeviceIdLength = 16;

enum class FrameKind { RawAdc, FixedPoint };  // WQ1 / WQ2

// Wire channel bounds.
inline constexpr std::int32_t kAdcCountMax = 1023;
inline constexpr std::array<std::int32_t, kChannelCount> kFixedPointMin{
    -5500, 0, 0, 0};
inline constexpr std::array<std::int32_t, kChannelCount> kFixedPointMax{
    12500, 14000, 10'000'000, 1'000'000};

// WQ2 fixed-point scale per channel: value = channel / scale.
inline constexpr std::array<std::int32_t, kChannelCount> kFixedPointScale{
    100, 1000, 100, 1000};

// Channel names used in error messages, wire order.
inline constexpr std::array<const char*, kChannelCount> kChannelNames{
    "temperature", "ph", "tds", "turbidity"};

struct SensorFrame {
  FrameKind kind = FrameKind::RawAdc;
  std::string device_id;
  std::uint32_t seq = 0;
  std::uint64_t uptime_ms = 0;
  std::array<std::int32_t, kChannelCount> channels{};

  bool operator==(const SensorFrame&) const = default;
};

enum class ParseErrorKind {
  MalformedSyntax,
  BadChecksum,
  RangeViolation,
  LineTooLong,
};

const char* to_string(ParseErrorKind kind);

struct ParseError {
  ParseErrorKind kind = ParseErrorKind::MalformedSyntax;
  std::string detail;  // names the failing field or byte offset
};

using ParseResult = std::variant<SensorFrame, ParseError>;

// XOR fold over payload bytes, rendered as two uppercase hex digits.
// Total over any byte sequence; empty payload yields "00".
std::string compute_checksum(std::string_view payload);

// True iff id is 1..16 characters drawn from [A-Za-z0-9_-].
bool valid_device_id(std::string_view id);

// True iff every SensorFrame invariant holds; on failure *why (when given)
// names the violated field.
bool validate_frame(const SensorFrame& frame, std::string* why = nullptr);

// Canonical LF-terminated wire line. Throws InvalidFrame on any invariant
// violation. Pure: equal frames encode to byte-identical lines.
std::string encode_frame(const SensorFrame& frame);

// Total over arbitrary bytes: returns the frame or a classified error,
// never throws. Accepts input with or without the trailing LF.
ParseResult parse_frame(std::string_view line);

}  // namespace aquamon
