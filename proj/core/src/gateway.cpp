#include "aquamon/gateway.hpp"

#include <cstdio>
#include <utility>

#include "aquamon/assessment.hpp"
#include "aquamon/errors.hpp"
#include "aquamon/frame.hpp"
#include "aquamon/records.hpp"
#include "aquamon/time_utils.hpp"

namespace aquamon {

GatewayServer::GatewayServer(const GatewayConfig& config)
    : config_(config),
      listener_(parse_endpoint(config.listen)),
      readings_(config.readings_path),
      alerts_(config.alerts_path) {
  validate_params(config_.calibration);
  validate_thresholds(config_.thresholds);
  if (config_.max_connections < 1)
    throw ConfigError("gateway.max_connections must be at least 1");
}

GatewayServer::~GatewayServer() {
  request_stop();
  join_workers();
}

Endpoint GatewayServer::listen_endpoint() const {
  return listener_.local_endpoint();
}

void GatewayServer::request_stop() {
  stop_.store(true, std::memory_order_relaxed);
}

void GatewayServer::set_log(std::function<void(const std::string&)> log) {
  std::lock_guard<std::mutex> lock(log_mutex_);
  log_ = std::move(log);
}

void GatewayServer::log_line(const std::string& message) {
  std::lock_guard<std::mutex> lock(log_mutex_);
  if (log_) {
    log_(message);
  } else {
    std::fprintf(stderr, "%s\n", message.c_str());
  }
}

std::shared_ptr<GatewayServer::DeviceState> GatewayServer::state_for(
    const std::string& device_id) {
  std::lock_guard<std::mutex> lock(devices_mutex_);
  auto& slot = devices_[device_id];
  if (!slot) slot = std::make_shared<DeviceState>();
  return slot;
}

LineOutcome GatewayServer::process_line(std::string_view line) {
  {
    std::lock_guard<std::mutex> lock(counters_mutex_);
    ++counters_.received;
  }

  ParseResult parsed = parse_frame(line);
  if (const auto* error = std::get_if<ParseError>(&parsed)) {
    {
      std::lock_guard<std::mutex> lock(counters_mutex_);
      ++counters_.parse_errors;
      ++counters_.rejected;
    }
    log_line(std::string("reject parse ") + to_string(error->kind) + ": " +
             error->detail);
    return LineOutcome::ParseError;
  }
  const SensorFrame& frame = std::get<SensorFrame>(parsed);

  Reading reading;
  Assessment assessment;
  try {
    reading = calibrate_frame(frame, config_.calibration);
    assessment = assess(reading, config_.thresholds);
  } catch (const Error& error) {
    {
      std::lock_guard<std::mutex> lock(counters_mutex_);
      ++counters_.calibration_errors;
      ++counters_.rejected;
    }
    log_line("reject calibration device=" + frame.device_id +
             " seq=" + std::to_string(frame.seq) + ": " + error.what());
    return LineOutcome::CalibrationError;
  }

  const std::shared_ptr<DeviceState> device = state_for(frame.device_id);
  {
    std::lock_guard<std::mutex> lock(device->mutex);
    if (device->seq.observe(frame.seq) == SequenceTracker::Result::Stale) {
      {
        std::lock_guard<std::mutex> counters_lock(counters_mutex_);
        ++counters_.stale_drops;
        ++counters_.rejected;
      }
      log_line("reject stale device=" + frame.device_id +
               " seq=" + std::to_string(frame.seq));
      return LineOutcome::Stale;
    }
    device->window.push(reading);
    device->stats.add(reading);
  }

  ReadingRecord record;
  record.ts = now_utc();
  record.device_id = frame.device_id;
  record.seq = frame.seq;
  record.reading = reading;
  record.assessment = assessment;
  readings_.append(to_json_line(record));

  const std::vector<AlertEvent> events = alerts_for(
      record.ts, frame.device_id, reading, assessment, config_.thresholds);
  for (const AlertEvent& event : events) alerts_.append(to_json_line(event));

  {
    std::lock_guard<std::mutex> lock(counters_mutex_);
    ++counters_.persisted;
    counters_.alerts += events.size();
  }
  return LineOutcome::Persisted;
}

void GatewayServer::serve_connection(TcpStream stream) {
  LineReader reader;
  std::vector<char> buffer(4096);
  try {
    while (true) {
      while (auto line = reader.next_line()) process_line(*line);

      const bool stopping = stop_.load(std::memory_order_relaxed);
      if (!wait_readable(stream.fd(), 50)) {
        if (stopping) break;  // quiet connection, drain complete
        continue;
      }
      std::size_t n = 0;
      try {
        n = stream.recv_some(buffer.data(), buffer.size());
      } catch (const TransportError&) {
        break;  // peer reset; treat like EOF
      }
      if (n == 0) {
        while (auto line = reader.next_line()) process_line(*line);
        if (auto tail = reader.take_tail()) process_line(*tail);
        break;
      }
      reader.feed(buffer.data(), n);
    }
  } catch (...) {
    record_fatal(std::current_exception());
    request_stop();
  }
  active_connections_.fetch_sub(1, std::memory_order_relaxed);
}

void GatewayServer::record_fatal(std::exception_ptr error) {
  std::lock_guard<std::mutex> lock(fatal_mutex_);
  if (!fatal_) fatal_ = std::move(error);
}

void GatewayServer::join_workers() {
  std::vector<std::thread> workers;
  {
    std::lock_guard<std::mutex> lock(workers_mutex_);
    workers.swap(workers_);
  }
  for (std::thread& worker : workers)
    if (worker.joinable()) worker.join();
}

void GatewayServer::run() {
  while (!stop_.load(std::memory_order_relaxed)) {
    std::optional<TcpStream> accepted = listener_.accept(50);
    if (!accepted) continue;

    if (active_connections_.load(std::memory_order_relaxed) >=
        config_.max_connections) {
      log_line("connection refused: at max_connections=" +
               std::to_string(config_.max_connections));
      continue;  // stream closes as it goes out of scope
    }

    active_connections_.fetch_add(1, std::memory_order_relaxed);
    {
      std::lock_guard<std::mutex> lock(counters_mutex_);
      ++counters_.connections;
    }
    std::lock_guard<std::mutex> lock(workers_mutex_);
    workers_.emplace_back(
        [this, stream = std::move(*accepted)]() mutable {
          serve_connection(std::move(stream));
        });
  }

  join_workers();

  std::exception_ptr fatal;
  {
    std::lock_guard<std::mutex> lock(fatal_mutex_);
    fatal = std::exchange(fatal_, nullptr);
  }
  if (fatal) std::rethrow_exception(fatal);
}

GatewayCounters GatewayServer::counters() const {
  std::lock_guard<std::mutex> lock(counters_mutex_);
  return counters_;
}

std::string GatewayServer::summary_line() const {
  const GatewayCounters c = counters();
  return "gateway summary: received=" + std::to_string(c.received) +
         " persisted=" + std::to_string(c.persisted) +
         " rejected=" + std::to_string(c.rejected) +
         " parse_errors=" + std::to_string(c.parse_errors) +
         " calibration_errors=" + std::to_string(c.calibration_errors) +
         " stale_drops=" + std::to_string(c.stale_drops) +
         " alerts=" + std::to_string(c.alerts);
}

std::vector<std::string> GatewayServer::device_ids() const {
  std::lock_guard<std::mutex> lock(devices_mutex_);
  std::vector<std::string> ids;
  ids.reserve(devices_.size());
  for (const auto& [id, state] : devices_) ids.push_back(id);
  return ids;
}

std::optional<ReadingStats> GatewayServer::device_stats(
    const std::string& device_id) const {
  std::shared_ptr<DeviceState> device;
  {
    std::lock_guard<std::mutex> lock(devices_mutex_);
    const auto it = devices_.find(device_id);
    if (it == devices_.end()) return std::nullopt;
    device = it->second;
  }
  std::lock_guard<std::mutex> lock(device->mutex);
  return device->stats;
}

}  // namespace aquamon
