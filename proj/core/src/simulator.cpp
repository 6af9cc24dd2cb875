#include "aquamon/simulator.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <limits>
#include <sstream>
#include <thread>

#include <json.hpp>

#include "aquamon/errors.hpp"

namespace aquamon {
namespace {

using nlohmann::json;
using std::chrono::milliseconds;
using std::chrono::steady_clock;

constexpr double kTau = 6.283185307179586476925286766559;

[[noreturn]] void row_error(std::size_t line_no, const std::string& what) {
  throw FixtureParseError("line " + std::to_string(line_no) + ": " + what);
}

double parse_csv_double(std::string_view field, std::size_t line_no,
                        const char* name) {
  const std::string copy(field);
  char* end = nullptr;
  const double value = std::strtod(copy.c_str(), &end);
  if (copy.empty() || end != copy.c_str() + copy.size() ||
      !std::isfinite(value)) {
    row_error(line_no, std::string(name) + " is not a finite number: \"" +
                           copy + "\"");
  }
  return value;
}

void check_profile_number(const char* field, double value, bool sigma) {
  if (!std::isfinite(value))
    throw ValidationError(std::string("profile ") + field +
                          " must be finite");
  if (sigma && value < 0.0)
    throw ValidationError(std::string("profile ") + field +
                          " must be non-negative");
}

void require_known_keys(const json& object, const char* section,
                        std::initializer_list<const char*> known) {
  for (const auto& [key, value] : object.items()) {
    bool ok = false;
    for (const char* candidate : known)
      if (key == candidate) ok = true;
    if (!ok) {
      throw ConfigError(std::string(section) + " has unknown key \"" + key +
                        "\"");
    }
  }
}

Reading read_reading_section(const json& root, const char* key,
                             Reading current) {
  const auto it = root.find(key);
  if (it == root.end()) return current;
  if (!it->is_object())
    throw ConfigError(std::string(key) + " must be a JSON object");
  require_known_keys(*it, key, {"temp_c", "ph", "tds_ppm", "turbidity_ntu"});
  const auto read = [&](const char* field, double fallback) {
    const auto field_it = it->find(field);
    if (field_it == it->end()) return fallback;
    if (!field_it->is_number())
      throw ConfigError(std::string(key) + "." + field + " must be a number");
    return field_it->get<double>();
  };
  current.temp_c = read("temp_c", current.temp_c);
  current.ph = read("ph", current.ph);
  current.tds_ppm = read("tds_ppm", current.tds_ppm);
  current.turbidity_ntu = read("turbidity_ntu", current.turbidity_ntu);
  return current;
}

// Sleeps in short slices so a stop request is honored promptly.
// True when the deadline was reached, false when stopped.
bool sleep_until_or_stop(steady_clock::time_point deadline,
                         const std::atomic<bool>& stop) {
  while (!stop.load(std::memory_order_relaxed)) {
    const auto now = steady_clock::now();
    if (now >= deadline) return true;
    const auto remaining = deadline - now;
    std::this_thread::sleep_for(
        std::min<steady_clock::duration>(remaining, milliseconds(50)));
  }
  return false;
}

// Sends one encoded line, reconnecting on transport loss so the frame is
// not dropped. False when a stop request preempted the send.
bool send_with_reconnect(TcpStream& stream, const std::string& line,
                         const Endpoint& endpoint, int retry_budget,
                         const std::atomic<bool>& stop, RunStats& stats) {
  while (true) {
    try {
      stream.send_all(line);
      return true;
    } catch (const TransportError&) {
      ++stats.reconnects;
      stream = connect_with_backoff(endpoint, retry_budget, stop);
      if (!stream.valid()) return false;
    }
  }
}

}  // namespace

void validate_profile(const DeviceProfile& profile) {
  if (!valid_device_id(profile.device_id))
    throw ValidationError("profile device_id \"" + profile.device_id +
                          "\" is not a valid device id");
  if (profile.cadence_ms == 0)
    throw ValidationError("profile cadence_ms must be at least 1");
  check_profile_number("base.temp_c", profile.base.temp_c, false);
  check_profile_number("base.ph", profile.base.ph, false);
  check_profile_number("base.tds_ppm", profile.base.tds_ppm, false);
  check_profile_number("base.turbidity_ntu", profile.base.turbidity_ntu,
                       false);
  check_profile_number("noise_sigma.temp_c", profile.noise_sigma.temp_c,
                       true);
  check_profile_number("noise_sigma.ph", profile.noise_sigma.ph, true);
  check_profile_number("noise_sigma.tds_ppm", profile.noise_sigma.tds_ppm,
                       true);
  check_profile_number("noise_sigma.turbidity_ntu",
                       profile.noise_sigma.turbidity_ntu, true);
}

DeviceProfile parse_profile(std::string_view json_text,
                            DeviceProfile defaults) {
  const json root = json::parse(json_text, nullptr, false);
  if (root.is_discarded()) throw ConfigError("profile is not valid JSON");
  if (!root.is_object()) throw ConfigError("profile must be a JSON object");
  require_known_keys(root, "profile", {"cadence_ms", "base", "noise_sigma"});

  DeviceProfile profile = std::move(defaults);
  const auto cadence_it = root.find("cadence_ms");
  if (cadence_it != root.end()) {
    if (!cadence_it->is_number_integer())
      throw ConfigError("profile cadence_ms must be an integer");
    const auto cadence = cadence_it->get<std::int64_t>();
    if (cadence < 1 || cadence > std::numeric_limits<std::uint32_t>::max())
      throw ConfigError("profile cadence_ms is out of range");
    profile.cadence_ms = static_cast<std::uint32_t>(cadence);
  }
  profile.base = read_reading_section(root, "base", profile.base);
  profile.noise_sigma =
      read_reading_section(root, "noise_sigma", profile.noise_sigma);
  return profile;
}

DeviceProfile load_profile(const std::string& path, DeviceProfile defaults) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot open profile file " + path);
  std::ostringstream contents;
  contents << in.rdbuf();
  return parse_profile(contents.str(), std::move(defaults));
}

FrameRng::FrameRng(std::uint64_t seed, std::uint32_t seq)
    : state_(seed +
             0x9E3779B97F4A7C15ULL * (static_cast<std::uint64_t>(seq) + 1)) {}

std::uint64_t FrameRng::next_u64() {
  state_ += 0x9E3779B97F4A7C15ULL;
  std::uint64_t z = state_;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

double FrameRng::next_unit() {
  return (static_cast<double>(next_u64() >> 11) + 1.0) * 0x1.0p-53;
}

double FrameRng::gaussian(double sigma) {
  const double u1 = next_unit();
  const double u2 = next_unit();
  return sigma * std::sqrt(-2.0 * std::log(u1)) * std::cos(kTau * u2);
}

SensorFrame synthesize_frame(const DeviceProfile& profile, std::uint32_t seq,
                             std::uint64_t uptime_ms,
                             const CalibrationParams& params) {
  validate_profile(profile);
  FrameRng rng(profile.rng_seed, seq);
  Reading target;
  target.temp_c = profile.base.temp_c + rng.gaussian(profile.noise_sigma.temp_c);
  target.ph = profile.base.ph + rng.gaussian(profile.noise_sigma.ph);
  target.tds_ppm =
      profile.base.tds_ppm + rng.gaussian(profile.noise_sigma.tds_ppm);
  target.turbidity_ntu = profile.base.turbidity_ntu +
                         rng.gaussian(profile.noise_sigma.turbidity_ntu);

  SensorFrame frame;
  frame.kind = FrameKind::RawAdc;
  frame.device_id = profile.device_id;
  frame.seq = seq;
  frame.uptime_ms = uptime_ms;
  frame.channels = counts_for_reading(target, params);
  return frame;
}

std::vector<FixtureRow> parse_fixture_csv(std::string_view text) {
  static constexpr std::string_view kHeader =
      "site,take,temp_c,ph,tds_ppm,turbidity_ntu";
  if (text.empty()) throw FixtureParseError("empty fixture");

  std::vector<std::string_view> lines;
  std::size_t pos = 0;
  while (pos < text.size()) {
    std::size_t nl = text.find('\n', pos);
    if (nl == std::string_view::npos) nl = text.size();
    std::string_view line = text.substr(pos, nl - pos);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    lines.push_back(line);
    pos = nl + 1;
  }
  while (!lines.empty() && lines.back().empty()) lines.pop_back();
  if (lines.empty()) throw FixtureParseError("empty fixture");
  if (lines[0] != kHeader)
    row_error(1, "header must be exactly \"" + std::string(kHeader) + "\"");
  if (lines.size() == 1) throw FixtureParseError("fixture has no data rows");

  std::vector<FixtureRow> rows;
  rows.reserve(lines.size() - 1);
  for (std::size_t i = 1; i < lines.size(); ++i) {
    const std::size_t line_no = i + 1;
    const std::string_view line = lines[i];
    std::array<std::string_view, 6> fields;
    std::size_t field_count = 0;
    std::size_t start = 0;
    while (true) {
      const std::size_t comma = line.find(',', start);
      const std::string_view field =
          comma == std::string_view::npos ? line.substr(start)
                                          : line.substr(start, comma - start);
      if (field_count < fields.size()) fields[field_count] = field;
      ++field_count;
      if (comma == std::string_view::npos) break;
      start = comma + 1;
    }
    if (field_count != fields.size())
      row_error(line_no, "expected 6 fields, got " +
                             std::to_string(field_count));

    FixtureRow row;
    if (fields[0].empty()) row_error(line_no, "site must be non-empty");
    row.site.assign(fields[0]);

    const std::string take_text(fields[1]);
    if (take_text.empty() ||
        take_text.find_first_not_of("0123456789") != std::string::npos ||
        take_text == "0" ||
        (take_text.size() > 1 && take_text.front() == '0')) {
      row_error(line_no, "take must be a positive integer");
    }
    row.take = std::atoi(take_text.c_str());

    row.values.temp_c = parse_csv_double(fields[2], line_no, "temp_c");
    row.values.ph = parse_csv_double(fields[3], line_no, "ph");
    row.values.tds_ppm = parse_csv_double(fields[4], line_no, "tds_ppm");
    row.values.turbidity_ntu =
        parse_csv_double(fields[5], line_no, "turbidity_ntu");

    if (row.values.temp_c < kTempMinC || row.values.temp_c > kTempMaxC)
      row_error(line_no, "temp_c outside sensor span");
    if (row.values.ph < kPhMin || row.values.ph > kPhMax)
      row_error(line_no, "ph outside [0, 14]");
    if (row.values.tds_ppm < 0.0 || row.values.tds_ppm > 100000.0)
      row_error(line_no, "tds_ppm outside [0, 100000]");
    if (row.values.turbidity_ntu < 0.0 || row.values.turbidity_ntu > 1000.0)
      row_error(line_no, "turbidity_ntu outside [0, 1000]");

    rows.push_back(std::move(row));
  }
  return rows;
}

std::vector<FixtureRow> load_fixture_csv(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw FixtureParseError("cannot open fixture file " + path);
  std::ostringstream contents;
  contents << in.rdbuf();
  return parse_fixture_csv(contents.str());
}

std::vector<std::string> fixture_sites(const std::vector<FixtureRow>& rows) {
  std::vector<std::string> sites;
  for (const FixtureRow& row : rows) {
    if (std::find(sites.begin(), sites.end(), row.site) == sites.end())
      sites.push_back(row.site);
  }
  return sites;
}

std::vector<SensorFrame> replay_frames(const std::vector<FixtureRow>& rows,
                                       const std::string& device_id,
                                       std::uint32_t cadence_ms) {
  if (rows.empty()) throw FixtureParseError("no rows to replay");
  std::vector<FixtureRow> ordered = rows;
  std::stable_sort(ordered.begin(), ordered.end(),
                   [](const FixtureRow& a, const FixtureRow& b) {
                     return a.take < b.take;
                   });

  std::vector<SensorFrame> frames;
  frames.reserve(ordered.size());
  for (std::size_t k = 0; k < ordered.size(); ++k) {
    const Reading& values = ordered[k].values;
    SensorFrame frame;
    frame.kind = FrameKind::FixedPoint;
    frame.device_id = device_id;
    frame.seq = static_cast<std::uint32_t>(k);
    frame.uptime_ms = static_cast<std::uint64_t>(k) * cadence_ms;
    frame.channels = {
        static_cast<std::int32_t>(
            std::llround(values.temp_c * kFixedPointScale[0])),
        static_cast<std::int32_t>(
            std::llround(values.ph * kFixedPointScale[1])),
        static_cast<std::int32_t>(
            std::llround(values.tds_ppm * kFixedPointScale[2])),
        static_cast<std::int32_t>(
            std::llround(values.turbidity_ntu * kFixedPointScale[3])),
    };
    std::string why;
    if (!validate_frame(frame, &why)) throw InvalidFrame(why);
    frames.push_back(std::move(frame));
  }
  return frames;
}

TcpStream connect_with_backoff(const Endpoint& endpoint, int retry_budget,
                               const std::atomic<bool>& stop) {
  int retries_used = 0;
  milliseconds backoff(1000);
  while (true) {
    if (stop.load(std::memory_order_relaxed)) return TcpStream();
    try {
      return TcpStream::connect(endpoint);
    } catch (const ConnectionRefused&) {
      if (retries_used >= retry_budget) throw;
      ++retries_used;
      if (!sleep_until_or_stop(steady_clock::now() + backoff, stop))
        return TcpStream();
      backoff = std::min(backoff * 2, milliseconds(30000));
    }
  }
}

RunStats run_synthetic_device(const DeviceProfile& profile,
                              const CalibrationParams& params,
                              const Endpoint& endpoint, int retry_budget,
                              const std::atomic<bool>& stop,
                              std::uint64_t max_frames) {
  validate_profile(profile);
  validate_params(params);

  RunStats stats;
  TcpStream stream = connect_with_backoff(endpoint, retry_budget, stop);
  if (!stream.valid()) return stats;

  const auto start = steady_clock::now();
  for (std::uint32_t seq = 0;; ++seq) {
    if (stop.load(std::memory_order_relaxed)) break;
    if (max_frames != 0 && stats.frames_sent >= max_frames) break;

    const std::uint64_t uptime_ms =
        static_cast<std::uint64_t>(seq) * profile.cadence_ms;
    const std::string line =
        encode_frame(synthesize_frame(profile, seq, uptime_ms, params));
    if (!send_with_reconnect(stream, line, endpoint, retry_budget, stop,
                             stats))
      break;
    ++stats.frames_sent;

    const auto deadline =
        start + milliseconds(profile.cadence_ms) * (seq + 1);
    if (!sleep_until_or_stop(deadline, stop)) break;
  }
  return stats;
}

RunStats run_replay_device(const std::vector<FixtureRow>& rows,
                           const std::string& device_id,
                           std::uint32_t cadence_ms, const Endpoint& endpoint,
                           int retry_budget, const std::atomic<bool>& stop) {
  const std::vector<SensorFrame> frames =
      replay_frames(rows, device_id, cadence_ms);

  RunStats stats;
  TcpStream stream = connect_with_backoff(endpoint, retry_budget, stop);
  if (!stream.valid()) return stats;

  const auto start = steady_clock::now();
  for (std::size_t k = 0; k < frames.size(); ++k) {
    if (stop.load(std::memory_order_relaxed)) break;
    const std::string line = encode_frame(frames[k]);
    if (!send_with_reconnect(stream, line, endpoint, retry_budget, stop,
                             stats))
      break;
    ++stats.frames_sent;
    if (k + 1 < frames.size()) {
      const auto deadline = start + milliseconds(cadence_ms) * (k + 1);
      if (!sleep_until_or_stop(deadline, stop)) break;
    }
  }
  return stats;
}

}  // namespace aquamon
