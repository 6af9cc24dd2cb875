#pragma once

#include <atomic>
#include <cstdint>
#include <exception>
#include <functional>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <string_view>
#include <thread>
#include <unordered_map>
#include <vector>

#include "aquamon/aggregation.hpp"
#include "aquamon/config.hpp"
#include "aquamon/jsonl.hpp"
#include "aquamon/net.hpp"

namespace aquamon {

// Per-device rolling window size: matches the five takes collected per
// sampling site.
inline constexpr std::size_t kDeviceWindowCapacity = 5;

struct GatewayCounters {
  std::uint64_t received = 0;  // lines handed to the pipeline
  std::uint64_t persisted = 0;
  std::uint64_t rejected = 0;  // parse + calibration + stale
  std::uint64_t parse_errors = 0;
  std::uint64_t calibration_errors = 0;
  std::uint64_t stale_drops = 0;
  std::uint64_t alerts = 0;
  std::uint64_t connections = 0;
};

enum class LineOutcome { Persisted, ParseError, CalibrationError, Stale };

// Ingestion service. Accepts device connections and runs each received
// line through parse -> calibrate -> assess -> aggregate -> persist ->
// alert. Frame-level failures are counted, logged and never fatal;
// persistence failures stop the server and re-throw from run().
class GatewayServer {
 public:
  // Binds the listener and opens both logs; throws BindFailure,
  // PersistenceFailure or ConfigError.
  explicit GatewayServer(const GatewayConfig& config);
  ~GatewayServer();

  GatewayServer(const GatewayServer&) = delete;
  GatewayServer& operator=(const GatewayServer&) = delete;

  // Bound address with any ephemeral port resolved.
  Endpoint listen_endpoint() const;

  // Serves until request_stop(), then drains: connections keep being read
  // while data is arriving, so frames in flight at the stop signal are
  // still processed. Joins all workers before returning.
  void run();

  // Signals run() to wind down. Async-signal-safe.
  void request_stop();

  // One pipeline pass over a single frame line. Thread-safe; usable
  // without run() for in-process testing.
  LineOutcome process_line(std::string_view line);

  GatewayCounters counters() const;
  std::string summary_line() const;

  std::vector<std::string> device_ids() const;
  std::optional<ReadingStats> device_stats(const std::string& device_id) const;

  // Replaces the stderr logger (used for reject warnings).
  void set_log(std::function<void(const std::string&)> log);

 private:
  struct DeviceState {
    std::mutex mutex;
    SequenceTracker seq;
    RollingWindow window{kDeviceWindowCapacity};
    ReadingStats stats;
  };

  std::shared_ptr<DeviceState> state_for(const std::string& device_id);
  void serve_connection(TcpStream stream);
  void record_fatal(std::exception_ptr error);
  void log_line(const std::string& message);
  void join_workers();

  GatewayConfig config_;
  TcpListener listener_;
  JsonlWriter readings_;
  JsonlWriter alerts_;

  std::atomic<bool> stop_{false};
  std::atomic<int> active_connections_{0};

  mutable std::mutex counters_mutex_;
  GatewayCounters counters_;

  mutable std::mutex devices_mutex_;
  std::unordered_map<std::string, std::shared_ptr<DeviceState>> devices_;

  std::mutex workers_mutex_;
  std::vector<std::thread> workers_;

  std::mutex fatal_mutex_;
  std::exception_ptr fatal_;

  std::mutex log_mutex_;
  std::function<void(const std::string&)> log_;
};

}  // namespace aquamon
