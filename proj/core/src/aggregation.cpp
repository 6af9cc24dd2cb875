#include "aquamon/aggregation.hpp"

#include <cmath>

#include "aquamon/errors.hpp"

namespace aquamon {

double round_2dp(double value) {
  if (!std::isfinite(value)) return value;
  return std::floor(value * 100.0 + 0.5) / 100.0;
}

void StatsAccumulator::add(double value) {
  if (count_ == 0) {
    min_ = value;
    max_ = value;
  } else {
    if (value < min_) min_ = value;
    if (value > max_) max_ = value;
  }
  sum_ += value;
  ++count_;
}

double StatsAccumulator::mean() const {
  if (count_ == 0) throw EmptyInput("mean of zero samples");
  return sum_ / static_cast<double>(count_);
}

double StatsAccumulator::min() const {
  if (count_ == 0) throw EmptyInput("min of zero samples");
  return min_;
}

double StatsAccumulator::max() const {
  if (count_ == 0) throw EmptyInput("max of zero samples");
  return max_;
}

void ReadingStats::add(const Reading& reading) {
  temp_c.add(reading.temp_c);
  ph.add(reading.ph);
  tds_ppm.add(reading.tds_ppm);
  turbidity_ntu.add(reading.turbidity_ntu);
}

RollingWindow::RollingWindow(std::size_t capacity) : capacity_(capacity) {
  if (capacity == 0) throw ConfigError("rolling window capacity must be > 0");
}

void RollingWindow::push(const Reading& reading) {
  window_.push_back(reading);
  if (window_.size() > capacity_) window_.pop_front();
}

ReadingStats RollingWindow::stats() const {
  ReadingStats stats;
  for (const Reading& reading : window_) stats.add(reading);
  return stats;
}

Reading RollingWindow::mean() const {
  if (window_.empty()) throw EmptyInput("mean of an empty window");
  const ReadingStats s = stats();
  return Reading{s.temp_c.mean(), s.ph.mean(), s.tds_ppm.mean(),
                 s.turbidity_ntu.mean()};
}

SequenceTracker::Result SequenceTracker::observe(std::uint32_t seq) {
  if (!seen_any_) {
    seen_any_ = true;
    last_seq_ = seq;
    ++fresh_;
    return Result::Fresh;
  }
  const auto delta = static_cast<std::int32_t>(seq - last_seq_);
  if (delta <= 0) {
    ++stale_;
    return Result::Stale;
  }
  missed_ += static_cast<std::uint64_t>(delta) - 1;
  last_seq_ = seq;
  ++fresh_;
  return Result::Fresh;
}

}  // namespace aquamon
