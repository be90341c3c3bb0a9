#include "paincert_cli/payloads.hpp"

#include "paincert/report_json.hpp"

namespace paincert::cli {

using nlohmann::json;

json to_json(const QhatPayload& p) {
  return json{{"qhat", encode_double(p.qhat)},
              {"residual", encode_double(p.residual)},
              {"accuracy", encode_double(p.accuracy)},
              {"wall_time_seconds", encode_double(p.wall_time_seconds)}};
}

QhatPayload qhat_payload_from_json(const json& j) {
  StrictObject o(j, "payload");
  QhatPayload p;
  p.qhat = o.number("qhat");
  p.residual = o.number("residual");
  p.accuracy = o.number("accuracy");
  p.wall_time_seconds = o.number("wall_time_seconds");
  o.finish();
  return p;
}

json to_json(const LemmaPayload& p) {
  return json{{"grid_size", p.grid_size},
              {"fd_step", encode_double(p.fd_step)},
              {"qhat", encode_double(p.qhat)},
              {"sweep_report", p.sweep_report},
              {"wall_time_seconds", encode_double(p.wall_time_seconds)}};
}

LemmaPayload lemma_payload_from_json(const json& j) {
  StrictObject o(j, "payload");
  LemmaPayload p;
  p.grid_size = static_cast<int>(o.integer("grid_size"));
  p.fd_step = o.number("fd_step");
  p.qhat = o.number("qhat");
  p.sweep_report = o.string("sweep_report");
  p.wall_time_seconds = o.number("wall_time_seconds");
  o.finish();
  return p;
}

json to_json(const DriftPayload& p) {
  return json{{"stats", paincert::to_json(p.stats)},
              {"rate_s", encode_double(p.rate_s)},
              {"wall_time_seconds", encode_double(p.wall_time_seconds)}};
}

DriftPayload drift_payload_from_json(const json& j) {
  StrictObject o(j, "payload");
  DriftPayload p;
  p.stats = drift_stats_from_json(o.at("stats"));
  p.rate_s = o.number("rate_s");
  p.wall_time_seconds = o.number("wall_time_seconds");
  o.finish();
  return p;
}

json to_json(const DepthPayload& p) {
  return json{{"depth", p.depth},
              {"qhat_by_depth", encode_double(p.qhat_by_depth)},
              {"qhat", encode_double(p.qhat)},
              {"truncation_bias", encode_double(p.truncation_bias)},
              {"tree_depth", p.tree_depth},
              {"trees", p.trees},
              {"nonterminating", p.nonterminating},
              {"nonterminating_fraction", encode_double(p.nonterminating_fraction)},
              {"standard_error", encode_double(p.standard_error)},
              {"zero_pain_checked", p.zero_pain_checked},
              {"zero_pain_failures", p.zero_pain_failures},
              {"wall_time_seconds", encode_double(p.wall_time_seconds)}};
}

DepthPayload depth_payload_from_json(const json& j) {
  StrictObject o(j, "payload");
  DepthPayload p;
  p.depth = static_cast<int>(o.integer("depth"));
  p.qhat_by_depth = o.number("qhat_by_depth");
  p.qhat = o.number("qhat");
  p.truncation_bias = o.number("truncation_bias");
  p.tree_depth = static_cast<int>(o.integer("tree_depth"));
  p.trees = static_cast<int>(o.integer("trees"));
  p.nonterminating = static_cast<int>(o.integer("nonterminating"));
  p.nonterminating_fraction = o.number("nonterminating_fraction");
  p.standard_error = o.number("standard_error");
  p.zero_pain_checked = static_cast<int>(o.integer("zero_pain_checked"));
  p.zero_pain_failures = static_cast<int>(o.integer("zero_pain_failures"));
  p.wall_time_seconds = o.number("wall_time_seconds");
  o.finish();
  return p;
}

}  // namespace paincert::cli
