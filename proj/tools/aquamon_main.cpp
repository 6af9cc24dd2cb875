#include <csignal>
#include <cstdint>
#include <cstdio>
#include <iostream>
#include <mutex>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "aquamon/assessment.hpp"
#include "aquamon/calibration.hpp"
#include "aquamon/config.hpp"
#include "aquamon/errors.hpp"
#include "aquamon/frame.hpp"
#include "aquamon/gateway.hpp"
#include "aquamon/net.hpp"
#include "aquamon/report.hpp"
#include "aquamon/simulator.hpp"

namespace {

using namespace aquamon;

std::atomic<bool> g_stop{false};
std::atomic<GatewayServer*> g_server{nullptr};

void handle_signal(int) {
  g_stop.store(true);
  if (GatewayServer* server = g_server.load()) server->request_stop();
}

void install_signal_handlers() {
  struct sigaction action {};
  action.sa_handler = handle_signal;
  sigemptyset(&action.sa_mask);
  ::sigaction(SIGINT, &action, nullptr);
  ::sigaction(SIGTERM, &action, nullptr);
}

// Endpoint flags are user syntax; a bad one is a usage error, not a
// runtime failure.
bool parse_endpoint_flag(const std::string& text, Endpoint& out) {
  try {
    out = parse_endpoint(text);
    return true;
  } catch (const ConfigError& error) {
    std::fprintf(stderr, "error: %s\n", error.what());
    return false;
  }
}

int cmd_gateway_run(const std::string& listen, const std::string& config_path,
                    const std::string& out_path,
                    const std::string& alerts_path) {
  Endpoint endpoint;
  if (!parse_endpoint_flag(listen, endpoint)) return 1;

  GatewayConfig config = load_config(config_path);
  config.listen = listen;
  config.readings_path = out_path;
  config.alerts_path = alerts_path;

  GatewayServer server(config);
  g_server.store(&server);
  install_signal_handlers();
  if (g_stop.load()) server.request_stop();

  std::printf("listening on %s\n",
              to_string(server.listen_endpoint()).c_str());
  std::fflush(stdout);

  server.run();
  g_server.store(nullptr);
  std::printf("%s\n", server.summary_line().c_str());
  return 0;
}

void wait_for_duration(std::uint64_t duration_ms) {
  const auto deadline = std::chrono::steady_clock::now() +
                        std::chrono::milliseconds(duration_ms);
  while (!g_stop.load() && std::chrono::steady_clock::now() < deadline)
    std::this_thread::sleep_for(std::chrono::milliseconds(20));
  g_stop.store(true);
}

int cmd_sim_run(const std::string& connect, int devices,
                std::uint32_t cadence_ms, bool cadence_given,
                std::uint64_t seed, const std::string& profile_path,
                std::uint64_t duration_ms, int retries) {
  Endpoint endpoint;
  if (!parse_endpoint_flag(connect, endpoint)) return 1;

  DeviceProfile base;
  if (!profile_path.empty()) base = load_profile(profile_path, base);
  if (cadence_given) base.cadence_ms = cadence_ms;

  install_signal_handlers();

  const CalibrationParams params;
  std::vector<std::thread> threads;
  std::mutex results_mutex;
  std::uint64_t frames_sent = 0;
  std::vector<std::string> errors;

  threads.reserve(static_cast<std::size_t>(devices));
  for (int i = 0; i < devices; ++i) {
    DeviceProfile profile = base;
    char id[32];
    std::snprintf(id, sizeof id, "dev-%03d", i + 1);
    profile.device_id = id;
    profile.rng_seed = seed + static_cast<std::uint64_t>(i);
    threads.emplace_back([profile, params, endpoint, retries, &results_mutex,
                          &frames_sent, &errors]() {
      try {
        const RunStats stats =
            run_synthetic_device(profile, params, endpoint, retries, g_stop);
        std::lock_guard<std::mutex> lock(results_mutex);
        frames_sent += stats.frames_sent;
      } catch (const Error& error) {
        {
          std::lock_guard<std::mutex> lock(results_mutex);
          errors.emplace_back(error.what());
        }
        g_stop.store(true);
      }
    });
  }

  if (duration_ms > 0) wait_for_duration(duration_ms);
  for (std::thread& t : threads) t.join();

  std::printf("sim summary: devices=%d frames_sent=%llu\n", devices,
              static_cast<unsigned long long>(frames_sent));
  if (!errors.empty()) {
    std::fprintf(stderr, "error: %s\n", errors.front().c_str());
    return 2;
  }
  return 0;
}

int cmd_sim_replay(const std::string& connect, const std::string& fixture,
                   const std::string& site, const std::string& device_id,
                   std::uint32_t cadence_ms, int retries) {
  Endpoint endpoint;
  if (!parse_endpoint_flag(connect, endpoint)) return 1;

  std::vector<FixtureRow> rows = load_fixture_csv(fixture);
  if (!site.empty()) {
    std::vector<FixtureRow> filtered;
    for (const FixtureRow& row : rows)
      if (row.site == site) filtered.push_back(row);
    if (filtered.empty())
      throw FixtureParseError("fixture has no rows for site \"" + site +
                              "\"");
    rows = std::move(filtered);
  }

  // One replayed device per site, unless a device id pins all rows to a
  // single stream.
  std::vector<std::pair<std::string, std::vector<FixtureRow>>> groups;
  if (!device_id.empty()) {
    groups.emplace_back(device_id, std::move(rows));
  } else {
    for (const std::string& name : fixture_sites(rows)) {
      std::vector<FixtureRow> site_rows;
      for (const FixtureRow& row : rows)
        if (row.site == name) site_rows.push_back(row);
      groups.emplace_back(name, std::move(site_rows));
    }
  }

  install_signal_handlers();

  std::uint64_t frames_sent = 0;
  for (const auto& [id, group_rows] : groups) {
    if (g_stop.load()) break;
    const RunStats stats = run_replay_device(group_rows, id, cadence_ms,
                                             endpoint, retries, g_stop);
    frames_sent += stats.frames_sent;
  }

  std::printf("sim summary: devices=%zu frames_sent=%llu\n", groups.size(),
              static_cast<unsigned long long>(frames_sent));
  return 0;
}

int cmd_report_summarize(const std::string& in_path, const std::string& by,
                         const std::string& format) {
  const GroupBy group_by = by == "site" ? GroupBy::Site : GroupBy::Device;
  ReportFormat report_format = ReportFormat::Table;
  if (format == "csv") report_format = ReportFormat::Csv;
  if (format == "json") report_format = ReportFormat::Json;

  const SummaryReport report = summarize_file(in_path, group_by);
  std::fputs(render(report, report_format).c_str(), stdout);
  if (report.lines_skipped > 0) {
    std::fprintf(stderr, "summarize: skipped %llu corrupt line(s)\n",
                 static_cast<unsigned long long>(report.lines_skipped));
  }
  return 0;
}

int cmd_classify(double temp_c, double ph, double tds_ppm,
                 double turbidity_ntu, const std::string& config_path) {
  Thresholds thresholds;
  if (!config_path.empty()) thresholds = load_config(config_path).thresholds;

  const Reading reading{temp_c, ph, tds_ppm, turbidity_ntu};
  Assessment assessment;
  try {
    assessment = assess(reading, thresholds);
  } catch (const DomainError& error) {
    std::fprintf(stderr, "error: %s\n", error.what());
    return 1;
  }

  nlohmann::ordered_json out;
  out["temp_c"] = reading.temp_c;
  out["ph"] = reading.ph;
  out["tds_ppm"] = reading.tds_ppm;
  out["turbidity_ntu"] = reading.turbidity_ntu;
  out["ph_status"] = to_string(assessment.ph_status);
  out["turbidity_level"] = to_string(assessment.turbidity_level);
  out["temp_status"] = to_string(assessment.temp_status);
  out["tds_status"] = to_string(assessment.tds_status);
  out["overall"] = to_string(assessment.overall);
  auto violations = nlohmann::ordered_json::array();
  for (Parameter parameter : assessment.violations)
    violations.push_back(to_string(parameter));
  out["violations"] = std::move(violations);
  std::printf("%s\n", out.dump().c_str());
  return 0;
}

int cmd_frame_encode() {
  std::string line;
  std::uint64_t line_no = 0;
  std::uint64_t failures = 0;
  while (std::getline(std::cin, line)) {
    ++line_no;
    try {
      const nlohmann::json j = nlohmann::json::parse(line);
      SensorFrame frame;
      const std::string kind = j.at("kind").get<std::string>();
      if (kind == "WQ1") {
        frame.kind = FrameKind::RawAdc;
      } else if (kind == "WQ2") {
        frame.kind = FrameKind::FixedPoint;
      } else {
        throw InvalidFrame("kind must be WQ1 or WQ2");
      }
      frame.device_id = j.at("device_id").get<std::string>();
      frame.seq = j.at("seq").get<std::uint32_t>();
      frame.uptime_ms = j.at("uptime_ms").get<std::uint64_t>();
      const auto& channels = j.at("channels");
      if (!channels.is_array() || channels.size() != kChannelCount)
        throw InvalidFrame("channels must be an array of 4 integers");
      for (int ch = 0; ch < kChannelCount; ++ch)
        frame.channels[static_cast<std::size_t>(ch)] =
            channels.at(static_cast<std::size_t>(ch)).get<std::int32_t>();
      std::fputs(encode_frame(frame).c_str(), stdout);
    } catch (const std::exception& error) {
      std::fprintf(stderr, "line %llu: %s\n",
                   static_cast<unsigned long long>(line_no), error.what());
      ++failures;
    }
  }
  return failures == 0 ? 0 : 2;
}

int cmd_frame_decode() {
  std::string line;
  while (std::getline(std::cin, line)) {
    const ParseResult result = parse_frame(line);
    nlohmann::ordered_json out;
    if (const auto* frame = std::get_if<SensorFrame>(&result)) {
      out["ok"] = true;
      out["kind"] = frame->kind == FrameKind::RawAdc ? "WQ1" : "WQ2";
      out["device_id"] = frame->device_id;
      out["seq"] = frame->seq;
      out["uptime_ms"] = frame->uptime_ms;
      out["channels"] = frame->channels;
    } else {
      const auto& error = std::get<ParseError>(result);
      out["ok"] = false;
      out["error"] = to_string(error.kind);
      out["detail"] = error.detail;
    }
    std::printf("%s\n", out.dump().c_str());
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"water quality telemetry: gateway, device simulator and "
               "reporting tools"};
  app.require_subcommand(1);
  app.footer("exit codes: 0 success, 1 usage error, 2 runtime failure");

  // gateway run
  auto* gateway_cmd =
      app.add_subcommand("gateway", "telemetry ingestion service");
  gateway_cmd->require_subcommand(1);
  auto* gateway_run = gateway_cmd->add_subcommand(
      "run", "listen for device connections and persist readings");
  std::string gw_listen;
  std::string gw_config;
  std::string gw_out;
  std::string gw_alerts;
  gateway_run->add_option("--listen", gw_listen, "host:port to bind")
      ->required();
  gateway_run->add_option("--config", gw_config, "JSON config file")
      ->required();
  gateway_run->add_option("--out", gw_out, "readings JSONL output path")
      ->required();
  gateway_run->add_option("--alerts", gw_alerts, "alerts JSONL output path")
      ->required();

  // sim run / sim replay
  auto* sim_cmd = app.add_subcommand("sim", "simulated sensor devices");
  sim_cmd->require_subcommand(1);

  auto* sim_run = sim_cmd->add_subcommand(
      "run", "stream synthetic raw frames to a gateway");
  std::string sim_connect;
  int sim_devices = 1;
  std::uint32_t sim_cadence = 5000;
  std::uint64_t sim_seed = 0;
  std::string sim_profile;
  std::uint64_t sim_duration = 0;
  int sim_retries = 5;
  sim_run->add_option("--connect", sim_connect, "gateway host:port")
      ->required();
  sim_run->add_option("--devices", sim_devices, "number of devices")
      ->required()
      ->check(CLI::Range(1, 100000));
  auto* sim_cadence_opt = sim_run->add_option(
      "--cadence-ms", sim_cadence, "frame cadence in ms (default 5000)");
  sim_run->add_option("--seed", sim_seed, "base RNG seed")->required();
  sim_run->add_option("--profile", sim_profile,
                      "JSON device profile (base values, noise, cadence)");
  sim_run->add_option("--duration-ms", sim_duration,
                      "stop after this many ms (default: run until signal)");
  sim_run->add_option("--retries", sim_retries,
                      "reconnect retry budget (default 5)")
      ->check(CLI::Range(0, 1000));

  auto* sim_replay = sim_cmd->add_subcommand(
      "replay", "replay a fixture CSV as fixed-point frames");
  std::string replay_connect;
  std::string replay_fixture;
  std::string replay_site;
  std::string replay_device;
  std::uint32_t replay_cadence = 5000;
  int replay_retries = 5;
  sim_replay->add_option("--connect", replay_connect, "gateway host:port")
      ->required();
  sim_replay->add_option("--fixture", replay_fixture, "fixture CSV path")
      ->required();
  sim_replay->add_option("--site", replay_site,
                         "replay only this site's rows");
  sim_replay->add_option("--device-id", replay_device,
                         "send every row under this device id");
  sim_replay->add_option("--cadence-ms", replay_cadence,
                         "frame cadence in ms (default 5000)");
  sim_replay->add_option("--retries", replay_retries,
                         "reconnect retry budget (default 5)")
      ->check(CLI::Range(0, 1000));

  // report summarize
  auto* report_cmd = app.add_subcommand("report", "offline log reports");
  report_cmd->require_subcommand(1);
  auto* report_summarize = report_cmd->add_subcommand(
      "summarize", "per-group statistics over a readings log");
  std::string report_in;
  std::string report_by = "device";
  std::string report_format = "table";
  report_summarize->add_option("--in", report_in, "readings JSONL path")
      ->required();
  report_summarize
      ->add_option("--by", report_by, "grouping (default device)")
      ->check(CLI::IsMember({"device", "site"}));
  report_summarize
      ->add_option("--format", report_format, "output format (default table)")
      ->check(CLI::IsMember({"table", "csv", "json"}));

  // classify
  auto* classify_cmd = app.add_subcommand(
      "classify", "classify one reading against the thresholds");
  double classify_temp = 0.0;
  double classify_ph = 0.0;
  double classify_tds = 0.0;
  double classify_turbidity = 0.0;
  std::string classify_config;
  classify_cmd->add_option("--temp", classify_temp, "temperature in degC")
      ->required();
  classify_cmd->add_option("--ph", classify_ph, "pH value")->required();
  classify_cmd->add_option("--tds", classify_tds, "TDS in ppm")->required();
  classify_cmd
      ->add_option("--turbidity", classify_turbidity, "turbidity in NTU")
      ->required();
  classify_cmd->add_option("--config", classify_config,
                           "JSON config file with a thresholds section");

  // frame encode|decode
  auto* frame_cmd =
      app.add_subcommand("frame", "debug codec passthrough on stdin/stdout");
  frame_cmd->require_subcommand(1);
  auto* frame_encode = frame_cmd->add_subcommand(
      "encode", "JSON frame descriptions in, wire lines out");
  auto* frame_decode = frame_cmd->add_subcommand(
      "decode", "wire lines in, JSON parse results out");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& help) {
    return app.exit(help);
  } catch (const CLI::CallForAllHelp& help) {
    return app.exit(help);
  } catch (const CLI::ParseError& error) {
    app.exit(error);
    return 1;
  }

  try {
    if (gateway_run->parsed())
      return cmd_gateway_run(gw_listen, gw_config, gw_out, gw_alerts);
    if (sim_run->parsed())
      return cmd_sim_run(sim_connect, sim_devices, sim_cadence,
                         sim_cadence_opt->count() > 0, sim_seed, sim_profile,
                         sim_duration, sim_retries);
    if (sim_replay->parsed())
      return cmd_sim_replay(replay_connect, replay_fixture, replay_site,
                            replay_device, replay_cadence, replay_retries);
    if (report_summarize->parsed())
      return cmd_report_summarize(report_in, report_by, report_format);
    if (classify_cmd->parsed())
      return cmd_classify(classify_temp, classify_ph, classify_tds,
                          classify_turbidity, classify_config);
    if (frame_encode->parsed()) return cmd_frame_encode();
    if (frame_decode->parsed()) return cmd_frame_decode();
  } catch (const Error& error) {
    std::fprintf(stderr, "error: %s\n", error.what());
    return 2;
  } catch (const std::exception& error) {
    std::fprintf(stderr, "error: %s\n", error.what());
    return 2;
  }
  return 0;
}
