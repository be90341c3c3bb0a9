#include "paincert_cli/run_config.hpp"

#include <charconv>
#include <cstdlib>
#include <cstring>
#include <thread>

#include "paincert/errors.hpp"
#include "paincert/report_json.hpp"

namespace paincert::cli {

namespace {

constexpr std::pair<Command, const char*> kCommands[] = {
    {Command::kQhat, "qhat"},         {Command::kSweep, "sweep"},
    {Command::kCheckLemmas, "check-lemmas"}, {Command::kDrift, "drift"},
    {Command::kQhatDepth, "qhat-depth"},     {Command::kSummarize, "summarize"},
};

constexpr std::pair<Format, const char*> kFormats[] = {
    {Format::kJson, "json"}, {Format::kCsv, "csv"}, {Format::kText, "text"}};

void require(bool ok, const std::string& msg) {
  if (!ok) throw ConfigurationError(msg);
}

}  // namespace

const char* to_string(Command c) {
  for (const auto& [k, name] : kCommands)
    if (k == c) return name;
  return "?";
}

Command command_from_string(const std::string& s) {
  for (const auto& [k, name] : kCommands)
    if (s == name) return k;
  throw ConfigurationError("unknown command '" + s + "'");
}

const char* to_string(Format f) {
  for (const auto& [k, name] : kFormats)
    if (k == f) return name;
  return "?";
}

Format format_from_string(const std::string& s) {
  for (const auto& [k, name] : kFormats)
    if (s == name) return k;
  throw ConfigurationError("unknown format '" + s + "'");
}

int default_thread_count() {
  if (const char* env = std::getenv(kThreadsEnv)) {
    int n = 0;
    const auto* end = env + std::strlen(env);
    const auto res = std::from_chars(env, end, n);
    if (res.ec == std::errc{} && res.ptr == end && n > 0) return n;
  }
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : static_cast<int>(hw);
}

void validate(const RunConfig& c) {
  require(c.grid_size >= kMinGridSize, "grid size must be at least 100");
  require(c.accuracy >= kMinAccuracy && c.accuracy <= kMaxAccuracy,
          "accuracy must lie in [1e-13, 1e-6]");
  require(c.threads >= 1, "threads must be at least 1");
  require(c.steps >= 1 && c.steps <= kMaxDriftSteps, "steps must lie in [1, 100000]");
  require(c.paths >= 1, "paths must be at least 1");
  require(c.trajectories >= 0 && c.trajectories <= kMaxCapturedTrajectories,
          "at most 100 trajectories can be captured");
  require(c.fd_step >= 1e-5 && c.fd_step <= 1e-3, "finite-difference step must lie in [1e-5, 1e-3]");
  require(c.depth >= 0 && c.depth <= 10000, "depth must lie in [0, 10000]");
  require(c.trees >= 0, "trees must be non-negative");
  if (c.command == Command::kSummarize) require(!c.input_path.empty(), "summarize needs an input file");
}

nlohmann::json to_json(const RunConfig& c) {
  return nlohmann::json{{"command", to_string(c.command)},
                        {"grid_size", c.grid_size},
                        {"accuracy", c.accuracy},
                        {"threads", c.threads},
                        {"seed", c.seed},
                        {"steps", c.steps},
                        {"paths", c.paths},
                        {"out_path", c.out_path},
                        {"format", to_string(c.format)},
                        {"force", c.force},
                        {"mode", paincert::to_string(c.mode)},
                        {"sweep_report", c.sweep_report},
                        {"trajectories", c.trajectories},
                        {"exceed_threshold", encode_double(c.exceed_threshold)},
                        {"fd_step", c.fd_step},
                        {"depth", c.depth},
                        {"trees", c.trees},
                        {"csv_path", c.csv_path},
                        {"input_path", c.input_path}};
}

RunConfig run_config_from_json(const nlohmann::json& j) {
  StrictObject o(j, "run_config");
  RunConfig c;
  try {
    c.command = command_from_string(o.string("command"));
    c.format = format_from_string(o.string("format"));
    c.mode = drift_mode_from_string(o.string("mode"));
  } catch (const ConfigurationError& e) {
    throw ReportFormatError(std::string("run_config: ") + e.what());
  }
  c.grid_size = static_cast<int>(o.integer("grid_size"));
  c.accuracy = o.number("accuracy");
  c.threads = static_cast<int>(o.integer("threads"));
  const auto& seed = o.at("seed");
  if (!seed.is_number_integer() || (seed.is_number_integer() && !seed.is_number_unsigned() &&
                                    seed.get<std::int64_t>() < 0))
    throw ReportFormatError("run_config.seed: expected a non-negative integer");
  c.seed = seed.get<std::uint64_t>();
  c.steps = static_cast<int>(o.integer("steps"));
  c.paths = static_cast<int>(o.integer("paths"));
  c.out_path = o.string("out_path");
  c.force = o.boolean("force");
  c.sweep_report = o.string("sweep_report");
  c.trajectories = static_cast<int>(o.integer("trajectories"));
  c.exceed_threshold = o.number("exceed_threshold");
  c.fd_step = o.number("fd_step");
  c.depth = static_cast<int>(o.integer("depth"));
  c.trees = static_cast<int>(o.integer("trees"));
  c.csv_path = o.string("csv_path");
  c.input_path = o.string("input_path");
  o.finish();
  return c;
}

}  // namespace paincert::cli
