#include <cstdio>
#include <string>
#include <vector>

#include <benchmark/benchmark.h>

#include <aquamon/config.hpp>
#include <aquamon/frame.hpp>
#include <aquamon/gateway.hpp>

#include <ftw.h>
#include <stdlib.h>

using namespace aquamon;

namespace {

int remove_entry(const char* path, const struct stat*, int, struct FTW*) {
    return ::remove(path);
}

// Gateway writing to a throwaway directory.
struct Scratch {
    Scratch() {
        char tmpl[] = "/tmp/aquamon-bench-XXXXXX";
        if (::mkdtemp(tmpl) == nullptr) {
            std::perror("mkdtemp");
            std::exit(2);
        }
        dir = tmpl;
        GatewayConfig cfg;
        cfg.listen = "127.0.0.1:0";
        cfg.readings_path = dir + "/readings.jsonl";
        cfg.alerts_path = dir + "/alerts.jsonl";
        server = std::make_unique<GatewayServer>(cfg);
    }

    ~Scratch() {
        server.reset();
        ::nftw(dir.c_str(), remove_entry, 16, FTW_DEPTH | FTW_PHYS);
    }

    std::string dir;
    std::unique_ptr<GatewayServer> server;
};

std::vector<std::string> clean_lines(std::size_t count) {
    std::vector<std::string> lines;
    lines.reserve(count);
    for (std::size_t i = 0; i < count; ++i) {
        lines.push_back(encode_frame(SensorFrame{FrameKind::FixedPoint, "dev-001",
                                                 static_cast<std::uint32_t>(i),
                                                 i * 5000ull,
                                                 {2512, 7000, 5000, 500}}));
    }
    return lines;
}

void BM_ProcessCleanLine(benchmark::State& state) {
    Scratch scratch;
    const auto lines = clean_lines(1 << 16);
    std::size_t i = 0;
    for (auto _ : state) {
        benchmark::DoNotOptimize(
            scratch.server->process_line(lines[i++ & ((1 << 16) - 1)]));
    }
    state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations()));
}
BENCHMARK(BM_ProcessCleanLine);

void BM_ProcessAlertingLine(benchmark::State& state) {
    Scratch scratch;
    std::vector<std::string> lines;
    lines.reserve(1 << 16);
    for (std::size_t i = 0; i < (1 << 16); ++i) {
        lines.push_back(encode_frame(SensorFrame{FrameKind::FixedPoint, "Site-2",
                                                 static_cast<std::uint32_t>(i),
                                                 i * 5000ull,
                                                 {2688, 10570, 18736, 1330}}));
    }
    std::size_t i = 0;
    for (auto _ : state) {
        benchmark::DoNotOptimize(
            scratch.server->process_line(lines[i++ & ((1 << 16) - 1)]));
    }
    state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations()));
}
BENCHMARK(BM_ProcessAlertingLine);

void BM_ProcessRejectedLine(benchmark::State& state) {
    Scratch scratch;
    std::string corrupt = encode_frame(SensorFrame{
        FrameKind::FixedPoint, "dev-001", 0, 0, {2512, 7000, 5000, 500}});
    corrupt[5] ^= 0x08;
    for (auto _ : state) {
        benchmark::DoNotOptimize(scratch.server->process_line(corrupt));
    }
    state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations()));
}
BENCHMARK(BM_ProcessRejectedLine);

}  // namespace

BENCHMARK_MAIN();
