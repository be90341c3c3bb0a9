#pragma once

#include <string>

#include "json.hpp"
#include "paincert/drift.hpp"
#include "paincert/sweep.hpp"

namespace paincert::cli {

struct QhatPayload {
  double qhat = 0.0;
  /// |map(q) - q| at the returned value.
  double residual = 0.0;
  double accuracy = 0.0;
  double wall_time_seconds = 0.0;
};

struct LemmaPayload {
  int grid_size = 0;
  double fd_step = 0.0;
  double qhat = 0.0;
  /// Sweep envelope the global bounds were read from; empty if none.
  std::string sweep_report;
  double wall_time_seconds = 0.0;
};

struct DriftPayload {
  DriftStats stats;
  /// Rate the growth check was run against (lower-bound mode), else nan.
  double rate_s = 0.0;
  double wall_time_seconds = 0.0;
};

struct DepthPayload {
  int depth = 0;
  double qhat_by_depth = 0.0;
  double qhat = 0.0;
  /// qhat_by_depth - qhat: how much a depth-limited horizon overstates
  /// non-termination.
  double truncation_bias = 0.0;
  int tree_depth = 0;
  int trees = 0;
  int nonterminating = 0;
  double nonterminating_fraction = 0.0;
  double standard_error = 0.0;
  int zero_pain_checked = 0;
  int zero_pain_failures = 0;
  double wall_time_seconds = 0.0;
};

nlohmann::json to_json(const QhatPayload& p);
nlohmann::json to_json(const LemmaPayload& p);
nlohmann::json to_json(const DriftPayload& p);
nlohmann::json to_json(const DepthPayload& p);

QhatPayload qhat_payload_from_json(const nlohmann::json& j);
LemmaPayload lemma_payload_from_json(const nlohmann::json& j);
DriftPayload drift_payload_from_json(const nlohmann::json& j);
DepthPayload depth_payload_from_json(const nlohmann::json& j);

}  // namespace paincert::cli
