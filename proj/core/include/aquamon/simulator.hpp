#pragma once

#include <atomic>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "aquamon/calibration.hpp"
#include "aquamon/frame.hpp"
#include "aquamon/net.hpp"

namespace aquamon {

// Simulated sensor devices: synthetic streams exercising the raw
// calibration path, and fixture replay carrying recorded field values
// bit-exactly in fixed point.

struct DeviceProfile {
  std::string device_id;
  std::uint32_t cadence_ms = 5000;
  Reading base{25.0, 7.0, 320.0, 2.0};
  Reading noise_sigma{};  // zero noise unless configured
  std::uint64_t rng_seed = 0;
};

// Throws ValidationError naming the offending field.
void validate_profile(const DeviceProfile& profile);

// Overlays a JSON profile document (optional keys: cadence_ms, and objects
// base / noise_sigma with keys temp_c, ph, tds_ppm, turbidity_ntu) onto
// defaults. Unknown keys raise ConfigError.
DeviceProfile parse_profile(std::string_view json_text,
                            DeviceProfile defaults = {});
DeviceProfile load_profile(const std::string& path,
                           DeviceProfile defaults = {});

// Deterministic per-frame noise source: the stream is keyed by (seed, seq)
// so a frame can be regenerated without replaying its predecessors. Uses a
// hand-rolled Box-Muller transform over a splitmix64 stream; the standard
// library's normal distribution is implementation-defined and would break
// byte-identical replay across toolchains.
class FrameRng {
 public:
  FrameRng(std::uint64_t seed, std::uint32_t seq);

  std::uint64_t next_u64();
  // Uniform draw in (0, 1].
  double next_unit();
  // One gaussian draw scaled by sigma; consumes the same number of draws
  // regardless of sigma so channels stay independent.
  double gaussian(double sigma);

 private:
  std::uint64_t state_;
};

// One synthetic raw frame: per-channel value = base + gaussian(0, sigma),
// inverted through the calibration to the nearest ADC count. Deterministic
// given (rng_seed, seq). Throws InversionOutOfRange when a drawn value maps
// outside the ADC span.
SensorFrame synthesize_frame(const DeviceProfile& profile, std::uint32_t seq,
                             std::uint64_t uptime_ms,
                             const CalibrationParams& params);

struct FixtureRow {
  std::string site;
  int take = 0;
  Reading values;

  bool operator==(const FixtureRow&) const = default;
};

// Parses the fixture CSV (header exactly
// site,take,temp_c,ph,tds_ppm,turbidity_ntu). Throws FixtureParseError
// with the 1-based line number; an empty or row-less file is an error.
std::vector<FixtureRow> parse_fixture_csv(std::string_view text);
std::vector<FixtureRow> load_fixture_csv(const std::string& path);

// Distinct sites in first-appearance order.
std::vector<std::string> fixture_sites(const std::vector<FixtureRow>& rows);

// One fixed-point frame per row in ascending take order, seq from 0,
// uptime advancing by cadence_ms per frame. Throws FixtureParseError when
// rows is empty, InvalidFrame when a value cannot be represented.
std::vector<SensorFrame> replay_frames(const std::vector<FixtureRow>& rows,
                                       const std::string& device_id,
                                       std::uint32_t cadence_ms);

struct RunStats {
  std::uint64_t frames_sent = 0;
  std::uint64_t reconnects = 0;
};

// Connects with exponential backoff (1 s initial, doubling, capped at
// 30 s). retry_budget is the number of retries after the first failure of
// an outage; when exhausted, ConnectionRefused propagates. A stop request
// during backoff returns a disconnected stream instead.
TcpStream connect_with_backoff(const Endpoint& endpoint, int retry_budget,
                               const std::atomic<bool>& stop);

// Streams synthesized frames at the profile cadence until stop, or until
// max_frames when nonzero. Reconnects on transport loss without dropping
// the in-flight frame.
RunStats run_synthetic_device(const DeviceProfile& profile,
                              const CalibrationParams& params,
                              const Endpoint& endpoint, int retry_budget,
                              const std::atomic<bool>& stop,
                              std::uint64_t max_frames = 0);

// Streams one frame per fixture row at the cadence, then returns.
RunStats run_replay_device(const std::vector<FixtureRow>& rows,
                           const std::string& device_id,
                           std::uint32_t cadence_ms, const Endpoint& endpoint,
                           int retry_budget, const std::atomic<bool>& stop);

}  // namespace aquamon
