#include <random>
#include <string>
#include <variant>
#include <vector>

#include <benchmark/benchmark.h>

#include <aquamon/frame.hpp>

using namespace aquamon;

namespace {

std::vector<SensorFrame> sample_frames(std::size_t count) {
    std::mt19937_64 rng(12345);
    std::uniform_int_distribution<int> kind_dist(0, 1);
    std::uniform_int_distribution<std::int32_t> adc(0, kAdcCountMax);
    std::vector<SensorFrame> frames;
    frames.reserve(count);
    for (std::size_t i = 0; i < count; ++i) {
        SensorFrame frame;
        frame.kind = kind_dist(rng) == 0 ? FrameKind::RawAdc : FrameKind::FixedPoint;
        frame.device_id = "dev-" + std::to_string(i % 100);
        frame.seq = static_cast<std::uint32_t>(i);
        frame.uptime_ms = i * 5000ull;
        for (std::size_t c = 0; c < kChannelCount; ++c) {
            if (frame.kind == FrameKind::RawAdc) {
                frame.channels[c] = adc(rng);
            } else {
                std::uniform_int_distribution<std::int32_t> fx(
                    kFixedPointMin[c] < 0 ? 0 : kFixedPointMin[c], kFixedPointMax[c]);
                frame.channels[c] = fx(rng);
            }
        }
        frames.push_back(std::move(frame));
    }
    return frames;
}

void BM_EncodeFrame(benchmark::State& state) {
    const auto frames = sample_frames(1024);
    std::size_t i = 0;
    for (auto _ : state) {
        benchmark::DoNotOptimize(encode_frame(frames[i++ & 1023]));
    }
}
BENCHMARK(BM_EncodeFrame);

void BM_ParseFrame(benchmark::State& state) {
    const auto frames = sample_frames(1024);
    std::vector<std::string> lines;
    lines.reserve(frames.size());
    for (const auto& frame : frames) {
        lines.push_back(encode_frame(frame));
    }
    std::size_t i = 0;
    for (auto _ : state) {
        benchmark::DoNotOptimize(parse_frame(lines[i++ & 1023]));
    }
}
BENCHMARK(BM_ParseFrame);

void BM_ParseRejectBadChecksum(benchmark::State& state) {
    std::string line = encode_frame(sample_frames(1)[0]);
    line[1] ^= 0x01;
    for (auto _ : state) {
        benchmark::DoNotOptimize(parse_frame(line));
    }
}
BENCHMARK(BM_ParseRejectBadChecksum);

void BM_Checksum(benchmark::State& state) {
    const std::string payload = "WQ1,dev01,7,35000,512,430,287,120";
    for (auto _ : state) {
        benchmark::DoNotOptimize(compute_checksum(payload));
    }
}
BENCHMARK(BM_Checksum);

}  // namespace

BENCHMARK_MAIN();
