#pragma once

#include <cstddef>
#include <cstdint>
#include <deque>

#include "aquamon/calibration.hpp"

namespace aquamon {

// Rounds half-up to two decimal places, for display and summary output.
// Stored readings are never rounded; only derived summaries are.
double round_2dp(double value);

// Running count, mean, min and max over a stream of samples. The mean is
// kept as an exact sum divided on demand.
class StatsAccumulator {
 public:
  void add(double value);
  std::size_t count() const { return count_; }
  // The three below throw EmptyInput when no sample has been added.
  double mean() const;
  double min() const;
  double max() const;

 private:
  std::size_t count_ = 0;
  double sum_ = 0.0;
  double min_ = 0.0;
  double max_ = 0.0;
};

// Per-parameter accumulators over whole readings.
struct ReadingStats {
  StatsAccumulator temp_c;
  StatsAccumulator ph;
  StatsAccumulator tds_ppm;
  StatsAccumulator turbidity_ntu;

  void add(const Reading& reading);
  std::size_t count() const { return temp_c.count(); }
};

// Fixed-capacity window over the most recent readings. Statistics are
// recomputed from the retained samples on demand, so eviction introduces
// no floating-point drift.
class RollingWindow {
 public:
  // Throws ConfigError when capacity is zero.
  explicit RollingWindow(std::size_t capacity);

  void push(const Reading& reading);
  std::size_t size() const { return window_.size(); }
  std::size_t capacity() const { return capacity_; }
  ReadingStats stats() const;
  // Mean reading over the window; throws EmptyInput when empty.
  Reading mean() const;

 private:
  std::size_t capacity_;
  std::deque<Reading> window_;
};

// Accepts a frame sequence number when it advances the last accepted one
// under signed 32-bit wraparound arithmetic; duplicates and reordered
// frames are stale. The first observation is always fresh.
class SequenceTracker {
 public:
  enum class Result { Fresh, Stale };

  Result observe(std::uint32_t seq);
  std::uint64_t fresh_count() const { return fresh_; }
  std::uint64_t stale_count() const { return stale_; }
  // Sequence numbers skipped between accepted frames.
  std::uint64_t missed_count() const { return missed_; }

 private:
  bool seen_any_ = false;
  std::uint32_t last_seq_ = 0;
  std::uint64_t fresh_ = 0;
  std::uint64_t stale_ = 0;
  std::uint64_t missed_ = 0;
};

}  // namespace aquamon
