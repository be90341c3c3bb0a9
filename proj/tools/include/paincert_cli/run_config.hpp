#pragma once

#include <cstdint>
#include <string>

#include "json.hpp"
#include "paincert/drift.hpp"
#include "paincert/qhat.hpp"

namespace paincert::cli {

enum class Command { kQhat, kSweep, kCheckLemmas, kDrift, kQhatDepth, kSummarize };
enum class Format { kJson, kCsv, kText };

const char* to_string(Command c);
Command command_from_string(const std::string& s);
const char* to_string(Format f);
Format format_from_string(const std::string& s);

inline constexpr int kMinGridSize = 100;
inline constexpr double kMinAccuracy = 1e-13;
inline constexpr double kMaxAccuracy = 1e-6;
inline constexpr const char* kThreadsEnv = "PAINCERT_THREADS";

/// PAINCERT_THREADS if set to a positive integer, else the hardware count.
int default_thread_count();

struct RunConfig {
  Command command = Command::kQhat;
  int grid_size = 20000;
  double accuracy = kDefaultAccuracy;
  int threads = 1;
  std::uint64_t seed = 0;
  int steps = 10000;
  int paths = 10000;
  std::string out_path;
  Format format = Format::kJson;
  bool force = false;

  // drift
  DriftMode mode = DriftMode::kLowerBound;
  std::string sweep_report;
  int trajectories = 0;
  double exceed_threshold = 1.0;

  // check-lemmas
  double fd_step = 1e-4;

  // qhat-depth
  int depth = 500;
  int trees = 0;

  // sweep / drift side outputs
  std::string csv_path;

  // summarize
  std::string input_path;
};

/// Throws ConfigurationError when a field is out of range.
void validate(const RunConfig& config);

nlohmann::json to_json(const RunConfig& config);
RunConfig run_config_from_json(const nlohmann::json& j);

}  // namespace paincert::cli
