#include <random>
#include <string>
#include <variant>

#include <doctest.h>

#include <aquamon/errors.hpp>
#include <aquamon/frame.hpp>

using namespace aquamon;

namespace {

std::string line_for(std::string_view payload) {
    std::string line = "$";
    line += payload;
    line += '*';
    line += compute_checksum(payload);
    line += '\n';
    return line;
}

SensorFrame wq1(std::string id, std::uint32_t seq, std::uint64_t uptime,
                std::array<std::int32_t, 4> ch) {
    return SensorFrame{FrameKind::RawAdc, std::move(id), seq, uptime, ch};
}

SensorFrame wq2(std::string id, std::uint32_t seq, std::uint64_t uptime,
                std::array<std::int32_t, 4> ch) {
    return SensorFrame{FrameKind::FixedPoint, std::move(id), seq, uptime, ch};
}

ParseErrorKind kind_of(const ParseResult& result) {
    REQUIRE(std::holds_alternative<ParseError>(result));
    return std::get<ParseError>(result).kind;
}

const SensorFrame& frame_of(const ParseResult& result) {
    REQUIRE(std::holds_alternative<SensorFrame>(result));
    return std::get<SensorFrame>(result);
}

SensorFrame random_frame(std::mt19937_64& rng) {
    static constexpr char kIdChars[] =
        "ABCDEFGHIJKLMNOPQRSTUVWXYZabcdefghijklmnopqrstuvwxyz0123456789_-";
    std::uniform_int_distribution<int> kind_dist(0, 1);
    std::uniform_int_distribution<int> len_dist(1, static_cast<int>(kMaxDeviceIdLength));
    std::uniform_int_distribution<int> char_dist(0, 63);

    SensorFrame frame;
    frame.kind = kind_dist(rng) == 0 ? FrameKind::RawAdc : FrameKind::FixedPoint;
    const int len = len_dist(rng);
    for (int i = 0; i < len; ++i) {
        frame.device_id += kIdChars[char_dist(rng)];
    }
    frame.seq = static_cast<std::uint32_t>(rng());
    frame.uptime_ms = rng();
    for (std::size_t c = 0; c < kChannelCount; ++c) {
        if (frame.kind == FrameKind::RawAdc) {
            std::uniform_int_distribution<std::int32_t> adc(0, kAdcCountMax);
            frame.channels[c] = adc(rng);
        } else {
            std::uniform_int_distribution<std::int32_t> fx(kFixedPointMin[c], kFixedPointMax[c]);
            frame.channels[c] = fx(rng);
        }
    }
    return frame;
}

}  // namespace

TEST_SUITE("frame") {

TEST_CASE("checksum folds payload bytes into two uppercase hex digits") {
    CHECK(compute_checksum("") == "00");
    CHECK(compute_checksum("A") == "41");
    CHECK(compute_checksum("WQ1,dev01,7,35000,512,430,287,120") == "63");
    CHECK(compute_checksum("WQ2,site4,0,0,3617,8270,17012,2940") == "13");
    CHECK(compute_checksum("WQ1,dev01,0,0,0,0,0,0") == "6D");
    CHECK(compute_checksum("WQ2,Site-1,0,0,2893,9570,34975,1950") == "15");
}

TEST_CASE("encode emits the canonical wire line") {
    CHECK(encode_frame(wq1("dev01", 7, 35000, {512, 430, 287, 120})) ==
          "$WQ1,dev01,7,35000,512,430,287,120*63\n");
    CHECK(encode_frame(wq2("site4", 0, 0, {3617, 8270, 17012, 2940})) ==
          "$WQ2,site4,0,0,3617,8270,17012,2940*13\n");
    CHECK(encode_frame(wq1("dev01", 0, 0, {0, 0, 0, 0})) ==
          "$WQ1,dev01,0,0,0,0,0,0*6D\n");
}

TEST_CASE("encode rejects frames that violate the wire invariants") {
    const SensorFrame base = wq1("dev01", 0, 0, {0, 0, 0, 0});

    SensorFrame f = base;
    f.device_id = "";
    CHECK_THROWS_AS(encode_frame(f), InvalidFrame);

    f = base;
    f.device_id = "a2345678901234567";
    CHECK_THROWS_AS(encode_frame(f), InvalidFrame);

    f = base;
    f.device_id = "bad.id";
    CHECK_THROWS_AS(encode_frame(f), InvalidFrame);

    f = base;
    f.device_id = "bad id";
    CHECK_THROWS_AS(encode_frame(f), InvalidFrame);

    f = base;
    f.channels[0] = kAdcCountMax + 1;
    CHECK_THROWS_AS(encode_frame(f), InvalidFrame);

    f = base;
    f.channels[3] = -1;
    CHECK_THROWS_AS(encode_frame(f), InvalidFrame);

    SensorFrame g = wq2("site4", 0, 0, {0, 0, 0, 0});
    g.channels[0] = kFixedPointMax[0] + 1;
    CHECK_THROWS_AS(encode_frame(g), InvalidFrame);

    g = wq2("site4", 0, 0, {0, 0, 0, 0});
    g.channels[0] = kFixedPointMin[0] - 1;
    CHECK_THROWS_AS(encode_frame(g), InvalidFrame);

    g = wq2("site4", 0, 0, {0, 0, 0, 0});
    g.channels[1] = kFixedPointMax[1] + 1;
    CHECK_THROWS_AS(encode_frame(g), InvalidFrame);
}

TEST_CASE("validate_frame names the offending field") {
    SensorFrame f = wq1("has.dot", 0, 0, {0, 0, 0, 0});
    std::string why;
    CHECK_FALSE(validate_frame(f, &why));
    CHECK(why.find("device_id") != std::string::npos);

    f = wq1("dev01", 0, 0, {2000, 0, 0, 0});
    why.clear();
    CHECK_FALSE(validate_frame(f, &why));
    CHECK(why.find("temperature") != std::string::npos);

    f = wq1("dev01", 0, 0, {0, 0, 0, 0});
    CHECK(validate_frame(f));
}

TEST_CASE("parse inverts encode on known frames") {
    const SensorFrame a = wq1("dev01", 7, 35000, {512, 430, 287, 120});
    CHECK(frame_of(parse_frame(encode_frame(a))) == a);

    const SensorFrame b = wq2("site4", 0, 0, {3617, 8270, 17012, 2940});
    CHECK(frame_of(parse_frame(encode_frame(b))) == b);

    const SensorFrame extremes = wq2("A234567890123456", 4294967295u,
                                     18446744073709551615ull,
                                     {12500, 14000, 10000000, 1000000});
    CHECK(frame_of(parse_frame(encode_frame(extremes))) == extremes);

    const SensorFrame lows = wq2("x", 0, 0, {-5500, 0, 0, 0});
    CHECK(frame_of(parse_frame(encode_frame(lows))) == lows);
}

TEST_CASE("round trip holds across randomized frames") {
    std::mt19937_64 rng(0x5eed);
    for (int i = 0; i < 10000; ++i) {
        const SensorFrame frame = random_frame(rng);
        const std::string line = encode_frame(frame);
        CHECK(line.size() <= kMaxLineBytes);
        const ParseResult result = parse_frame(line);
        REQUIRE(std::holds_alternative<SensorFrame>(result));
        CHECK(std::get<SensorFrame>(result) == frame);
    }
}

TEST_CASE("terminator handling tolerates CRLF and bare payloads on input only") {
    const std::string line = encode_frame(wq1("dev01", 7, 35000, {512, 430, 287, 120}));
    REQUIRE(line.back() == '\n');
    CHECK(line.find('\r') == std::string::npos);

    const std::string no_lf = line.substr(0, line.size() - 1);
    CHECK(std::holds_alternative<SensorFrame>(parse_frame(no_lf)));

    const std::string crlf = no_lf + "\r\n";
    CHECK(std::holds_alternative<SensorFrame>(parse_frame(crlf)));

    const std::string cr_only = no_lf + "\r";
    CHECK(std::holds_alternative<SensorFrame>(parse_frame(cr_only)));
}

TEST_CASE("parse classifies malformed syntax") {
    CHECK(kind_of(parse_frame("")) == ParseErrorKind::MalformedSyntax);
    CHECK(kind_of(parse_frame("WQ1,dev01,0,0,0,0,0,0*6D")) == ParseErrorKind::MalformedSyntax);
    CHECK(kind_of(parse_frame("$WQ1,dev01,0,0,0,0,0,0")) == ParseErrorKind::MalformedSyntax);
    CHECK(kind_of(parse_frame("$WQ1,dev01,0,0,0,0,0,0*6")) == ParseErrorKind::MalformedSyntax);
    CHECK(kind_of(parse_frame("$WQ1,dev01,0,0,0,0,0,0*6d")) == ParseErrorKind::MalformedSyntax);
    CHECK(kind_of(parse_frame("$WQ1,dev01,0,0,0,0,0,0*G7")) == ParseErrorKind::MalformedSyntax);

    CHECK(kind_of(parse_frame(line_for("WQ1,dev01,0,0,0,0,0"))) ==
          ParseErrorKind::MalformedSyntax);
    CHECK(kind_of(parse_frame(line_for("WQ1,dev01,0,0,0,0,0,0,9"))) ==
          ParseErrorKind::MalformedSyntax);
    CHECK(kind_of(parse_frame(line_for("WQ3,dev01,0,0,0,0,0,0"))) ==
          ParseErrorKind::MalformedSyntax);
    CHECK(kind_of(parse_frame(line_for("wq1,dev01,0,0,0,0,0,0"))) ==
          ParseErrorKind::MalformedSyntax);
    CHECK(kind_of(parse_frame(line_for("WQ1,dev01,+1,0,0,0,0,0"))) ==
          ParseErrorKind::MalformedSyntax);
    CHECK(kind_of(parse_frame(line_for("WQ1,dev01,-1,0,0,0,0,0"))) ==
          ParseErrorKind::MalformedSyntax);
    CHECK(kind_of(parse_frame(line_for("WQ1,dev01,07,35000,512,430,287,120"))) ==
          ParseErrorKind::MalformedSyntax);
    CHECK(kind_of(parse_frame(line_for("WQ1,dev01,0, 1,0,0,0,0"))) ==
          ParseErrorKind::MalformedSyntax);
    CHECK(kind_of(parse_frame(line_for("WQ2,site4,0,0,-0,0,0,0"))) ==
          ParseErrorKind::MalformedSyntax);
    CHECK(kind_of(parse_frame(line_for("WQ1,dev01,0,0,,0,0,0"))) ==
          ParseErrorKind::MalformedSyntax);
    CHECK(kind_of(parse_frame(line_for("WQ1,dev01,0,0,0,0,0,1.5"))) ==
          ParseErrorKind::MalformedSyntax);
}

TEST_CASE("parse classifies range violations") {
    CHECK(kind_of(parse_frame("$WQ1,dev01,7,35000,512,430,287,1500*54")) ==
          ParseErrorKind::RangeViolation);
    CHECK(kind_of(parse_frame(line_for("WQ1,dev01,0,0,0,0,0,1024"))) ==
          ParseErrorKind::RangeViolation);
    CHECK(kind_of(parse_frame(line_for("WQ2,site4,0,0,12501,0,0,0"))) ==
          ParseErrorKind::RangeViolation);
    CHECK(kind_of(parse_frame(line_for("WQ2,site4,0,0,0,0,10000001,0"))) ==
          ParseErrorKind::RangeViolation);
    CHECK(kind_of(parse_frame(line_for("WQ1,dev01,4294967296,0,0,0,0,0"))) ==
          ParseErrorKind::RangeViolation);
    CHECK(kind_of(parse_frame(line_for("WQ1,dev01,0,18446744073709551616,0,0,0,0"))) ==
          ParseErrorKind::RangeViolation);
    CHECK(kind_of(parse_frame(line_for("WQ1,a2345678901234567,0,0,0,0,0,0"))) ==
          ParseErrorKind::RangeViolation);
    CHECK(kind_of(parse_frame(line_for("WQ1,bad.id,0,0,0,0,0,0"))) ==
          ParseErrorKind::RangeViolation);
}

TEST_CASE("checksum is verified before field syntax") {
    const std::string bad_seq_payload = "WQ1,dev01,07,35000,512,430,287,120";
    std::string line = line_for(bad_seq_payload);
    CHECK(kind_of(parse_frame(line)) == ParseErrorKind::MalformedSyntax);

    line[line.size() - 2] = (line[line.size() - 2] == '0') ? '1' : '0';
    CHECK(kind_of(parse_frame(line)) == ParseErrorKind::BadChecksum);

    CHECK(kind_of(parse_frame("$WQ1,dev01,0,0,0,0,0,0*00")) == ParseErrorKind::BadChecksum);
}

TEST_CASE("single byte payload corruption is always a bad checksum") {
    const std::string line = encode_frame(wq1("dev01", 7, 35000, {512, 430, 287, 120}));
    const std::size_t star = line.rfind('*');
    REQUIRE(star != std::string::npos);

    const char replacements[] = {'*', ',', '$', '\r', '0', 'Z'};
    for (std::size_t i = 1; i < star; ++i) {
        for (unsigned char mask : {0x01, 0x20, 0x80, 0xFF}) {
            std::string corrupt = line;
            corrupt[i] = static_cast<char>(corrupt[i] ^ mask);
            CHECK(kind_of(parse_frame(corrupt)) == ParseErrorKind::BadChecksum);
        }
        for (char replacement : replacements) {
            if (line[i] == replacement) {
                continue;
            }
            std::string corrupt = line;
            corrupt[i] = replacement;
            CHECK(kind_of(parse_frame(corrupt)) == ParseErrorKind::BadChecksum);
        }
    }
}

TEST_CASE("parse rejects oversized lines before anything else") {
    std::string oversized(200, 'x');
    CHECK(kind_of(parse_frame(oversized)) == ParseErrorKind::LineTooLong);

    std::string boundary(128, 'x');
    boundary += '\n';
    CHECK(kind_of(parse_frame(boundary)) == ParseErrorKind::LineTooLong);

    std::string just_fits(127, 'x');
    just_fits += '\n';
    CHECK(kind_of(parse_frame(just_fits)) == ParseErrorKind::MalformedSyntax);
}

TEST_CASE("parse never throws on arbitrary bytes") {
    std::mt19937_64 rng(99);
    std::uniform_int_distribution<int> len_dist(0, 300);
    std::uniform_int_distribution<int> byte_dist(0, 255);
    for (int i = 0; i < 5000; ++i) {
        std::string noise;
        const int len = len_dist(rng);
        noise.reserve(static_cast<std::size_t>(len));
        for (int j = 0; j < len; ++j) {
            noise += static_cast<char>(byte_dist(rng));
        }
        const ParseResult result = parse_frame(noise);
        CHECK((std::holds_alternative<SensorFrame>(result) ||
               std::holds_alternative<ParseError>(result)));
    }
}

TEST_CASE("device id charset accepts letters digits underscore hyphen only") {
    CHECK(valid_device_id("dev-01_A"));
    CHECK(valid_device_id("A234567890123456"));
    CHECK_FALSE(valid_device_id(""));
    CHECK_FALSE(valid_device_id("a2345678901234567"));
    CHECK_FALSE(valid_device_id("has.dot"));
    CHECK_FALSE(valid_device_id("has space"));
    CHECK_FALSE(valid_device_id("caf\xc3\xa9"));
}

TEST_CASE("parse error kinds have stable names") {
    CHECK(std::string(to_string(ParseErrorKind::MalformedSyntax)) == "malformed_syntax");
    CHECK(std::string(to_string(ParseErrorKind::BadChecksum)) == "bad_checksum");
    CHECK(std::string(to_string(ParseErrorKind::RangeViolation)) == "range_violation");
    CHECK(std::string(to_string(ParseErrorKind::LineTooLong)) == "line_too_long");
}

}  // TEST_SUITE
