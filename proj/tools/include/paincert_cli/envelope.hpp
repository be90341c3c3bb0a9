#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"
#include "paincert/certificate.hpp"
#include "paincert_cli/run_config.hpp"

namespace paincert::cli {

inline constexpr const char* kSchemaVersion = "1";

/// Published output of the original verification run.
struct ReferenceValues {
  static constexpr double qhat = 0.9916;
  static constexpr double max_adjacent_diff = 0.22955;
  static constexpr double max_jump_q = 0.32546;
  static constexpr double min_tail = 0.23163;
  static constexpr double rate_s = 0.0010956;
};

struct Envelope {
  std::string schema_version = kSchemaVersion;
  RunConfig run_config;
  std::string started_at;
  std::string finished_at;
  /// Command-specific body; decoded strictly by envelope_from_json.
  nlohmann::json payload = nlohmann::json::object();
  std::vector<Certificate> certificates;

  bool passed() const;
};

nlohmann::json to_json(const Envelope& e);
/// Throws ReportFormatError.
Envelope envelope_from_json(const nlohmann::json& j);
Envelope parse_envelope(std::string_view text);

/// Human-readable report. Depends only on the envelope contents, so a
/// stored envelope prints the same text as the run that produced it.
std::string render_summary(const Envelope& e);

/// Certificate rows as CSV: certificate,kind,check,measured,relation,bound,passed
std::string certificates_csv(const std::vector<Certificate>& certs);

}  // namespace paincert::cli
