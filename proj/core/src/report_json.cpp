#include "paincert/report_json.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <ostream>

#include "paincert/errors.hpp"

namespace paincert {

using nlohmann::json;

namespace {

[[noreturn]] void fail(const std::string& context, const std::string& msg) {
  throw ReportFormatError(context + ": " + msg);
}

json encode_config(const DegreeConfig& c) {
  return json::array({c[0], c[1], c[2], c[3]});
}

DegreeConfig decode_config(const json& j, const std::string& context) {
  if (!j.is_array() || j.size() != kDirections) fail(context, "config must be an array of 4 integers");
  std::array<int, kDirections> v{};
  for (std::size_t i = 0; i < kDirections; ++i) {
    if (!j[i].is_number_integer()) fail(context, "config entries must be integers");
    v[i] = j[i].get<int>();
  }
  try {
    return DegreeConfig(v);
  } catch (const std::exception& e) {
    fail(context, e.what());
  }
}

Relation relation_from_symbol(const std::string& s, const std::string& context) {
  for (Relation r : {Relation::kLess, Relation::kLessEqual, Relation::kGreater, Relation::kGreaterEqual})
    if (s == relation_symbol(r)) return r;
  fail(context, "unknown relation '" + s + "'");
}

}  // namespace

json encode_double(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  return x;
}

double decode_double(const json& j, const std::string& field) {
  if (j.is_number()) return j.get<double>();
  if (j.is_string()) {
    const auto& s = j.get_ref<const std::string&>();
    if (s == "inf") return std::numeric_limits<double>::infinity();
    if (s == "-inf") return -std::numeric_limits<double>::infinity();
    if (s == "nan") return std::numeric_limits<double>::quiet_NaN();
  }
  fail(field, "expected a number");
}

StrictObject::StrictObject(const json& j, std::string context) : j_(j), context_(std::move(context)) {
  if (!j_.is_object()) fail(context_, "expected an object");
}

const json& StrictObject::at(const std::string& key) {
  auto it = j_.find(key);
  if (it == j_.end()) fail(context_, "missing field '" + key + "'");
  seen_.push_back(key);
  return *it;
}

double StrictObject::number(const std::string& key) { return decode_double(at(key), context_ + "." + key); }

std::int64_t StrictObject::integer(const std::string& key) {
  const json& v = at(key);
  if (!v.is_number_integer()) fail(context_ + "." + key, "expected an integer");
  return v.get<std::int64_t>();
}

bool StrictObject::boolean(const std::string& key) {
  const json& v = at(key);
  if (!v.is_boolean()) fail(context_ + "." + key, "expected a boolean");
  return v.get<bool>();
}

std::string StrictObject::string(const std::string& key) {
  const json& v = at(key);
  if (!v.is_string()) fail(context_ + "." + key, "expected a string");
  return v.get<std::string>();
}

void StrictObject::finish() const {
  for (auto it = j_.begin(); it != j_.end(); ++it)
    if (std::find(seen_.begin(), seen_.end(), it.key()) == seen_.end())
      fail(context_, "unknown field '" + it.key() + "'");
}

json to_json(const ConfigStats& s) {
  return json{{"config", encode_config(s.config)},
              {"max_adjacent_diff", encode_double(s.max_adjacent_diff)},
              {"max_jump_q", encode_double(s.max_jump_q)},
              {"min_tail", encode_double(s.min_tail)},
              {"min_drift", encode_double(s.min_drift)},
              {"min_q", encode_double(s.min_q)},
              {"saturated_cells", s.saturated_cells},
              {"max_budget_residual", encode_double(s.max_budget_residual)}};
}

ConfigStats config_stats_from_json(const json& j) {
  StrictObject o(j, "config_stats");
  ConfigStats s;
  s.config = decode_config(o.at("config"), "config_stats.config");
  s.max_adjacent_diff = o.number("max_adjacent_diff");
  s.max_jump_q = o.number("max_jump_q");
  s.min_tail = o.number("min_tail");
  s.min_drift = o.number("min_drift");
  s.min_q = o.number("min_q");
  s.saturated_cells = static_cast<int>(o.integer("saturated_cells"));
  s.max_budget_residual = o.number("max_budget_residual");
  o.finish();
  return s;
}

json to_json(const SweepReport& r) {
  json rows = json::array();
  for (const auto& s : r.per_config) rows.push_back(to_json(s));
  return json{{"qhat", encode_double(r.qhat.value)},
              {"global_max_adjacent_diff", encode_double(r.global_max_adjacent_diff)},
              {"global_max_jump_q", encode_double(r.global_max_jump_q)},
              {"global_min_tail", encode_double(r.global_min_tail)},
              {"rate_s", encode_double(r.rate_s)},
              {"grid_size", r.grid_size},
              {"accuracy", encode_double(r.accuracy)},
              {"wall_time_seconds", encode_double(r.wall_time_seconds)},
              {"thread_count", r.thread_count},
              {"per_config", std::move(rows)}};
}

SweepReport sweep_report_from_json(const json& j) {
  StrictObject o(j, "sweep");
  SweepReport r;
  r.qhat.value = o.number("qhat");
  r.global_max_adjacent_diff = o.number("global_max_adjacent_diff");
  r.global_max_jump_q = o.number("global_max_jump_q");
  r.global_min_tail = o.number("global_min_tail");
  r.rate_s = o.number("rate_s");
  r.grid_size = static_cast<int>(o.integer("grid_size"));
  r.accuracy = o.number("accuracy");
  r.wall_time_seconds = o.number("wall_time_seconds");
  r.thread_count = static_cast<int>(o.integer("thread_count"));
  const json& rows = o.at("per_config");
  if (!rows.is_array()) fail("sweep.per_config", "expected an array");
  for (const auto& row : rows) r.per_config.push_back(config_stats_from_json(row));
  o.finish();
  return r;
}

json to_json(const DriftStats& s) {
  json sums = json::array();
  for (double x : s.final_sums) sums.push_back(encode_double(x));
  return json{{"mode", to_string(s.mode)},
              {"n_paths", s.n_paths},
              {"n_steps", s.n_steps},
              {"n_increments", s.n_increments},
              {"mean_increment", encode_double(s.mean_increment)},
              {"variance", encode_double(s.variance)},
              {"ci_low", encode_double(s.ci_low)},
              {"ci_high", encode_double(s.ci_high)},
              {"exceed_threshold", encode_double(s.exceed_threshold)},
              {"fraction_exceeding", encode_double(s.fraction_exceeding)},
              {"seed", s.seed},
              {"sentinel_events", s.sentinel_events},
              {"max_phi_divergence", encode_double(s.max_phi_divergence)},
              {"final_sums", std::move(sums)}};
}

DriftStats drift_stats_from_json(const json& j) {
  StrictObject o(j, "drift");
  DriftStats s;
  try {
    s.mode = drift_mode_from_string(o.string("mode"));
  } catch (const ConfigurationError& e) {
    fail("drift.mode", e.what());
  }
  s.n_paths = o.integer("n_paths");
  s.n_steps = o.integer("n_steps");
  s.n_increments = o.integer("n_increments");
  s.mean_increment = o.number("mean_increment");
  s.variance = o.number("variance");
  s.ci_low = o.number("ci_low");
  s.ci_high = o.number("ci_high");
  s.exceed_threshold = o.number("exceed_threshold");
  s.fraction_exceeding = o.number("fraction_exceeding");
  const json& seed = o.at("seed");
  if (!seed.is_number_unsigned() && !(seed.is_number_integer() && seed.get<std::int64_t>() >= 0))
    fail("drift.seed", "expected a non-negative integer");
  s.seed = seed.get<std::uint64_t>();
  s.sentinel_events = o.integer("sentinel_events");
  s.max_phi_divergence = o.number("max_phi_divergence");
  const json& sums = o.at("final_sums");
  if (!sums.is_array()) fail("drift.final_sums", "expected an array");
  for (const auto& x : sums) s.final_sums.push_back(decode_double(x, "drift.final_sums"));
  o.finish();
  return s;
}

json to_json(const BoundCheck& c) {
  return json{{"name", c.name},
              {"measured", encode_double(c.measured)},
              {"relation", relation_symbol(c.relation)},
              {"bound", encode_double(c.bound)},
              {"margin", encode_double(c.margin)},
              {"passed", c.passed},
              {"location", c.location}};
}

BoundCheck bound_check_from_json(const json& j) {
  StrictObject o(j, "check");
  BoundCheck c;
  c.name = o.string("name");
  c.measured = o.number("measured");
  c.relation = relation_from_symbol(o.string("relation"), "check.relation");
  c.bound = o.number("bound");
  c.margin = o.number("margin");
  c.passed = o.boolean("passed");
  c.location = o.string("location");
  o.finish();
  return c;
}

json to_json(const Certificate& c) {
  json checks = json::array();
  for (const auto& x : c.checks) checks.push_back(to_json(x));
  json notes = json::array();
  for (const auto& x : c.notes) notes.push_back(to_json(x));
  return json{{"name", c.name}, {"passed", c.passed()}, {"checks", std::move(checks)}, {"notes", std::move(notes)}};
}

Certificate certificate_from_json(const json& j) {
  StrictObject o(j, "certificate");
  Certificate c;
  c.name = o.string("name");
  const bool passed = o.boolean("passed");
  for (const char* key : {"checks", "notes"}) {
    const json& list = o.at(key);
    if (!list.is_array()) fail(std::string("certificate.") + key, "expected an array");
    auto& dest = std::string(key) == "checks" ? c.checks : c.notes;
    for (const auto& x : list) dest.push_back(bound_check_from_json(x));
  }
  o.finish();
  if (passed != c.passed()) fail("certificate " + c.name, "'passed' disagrees with its checks");
  return c;
}

std::string shortest_repr(double x) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, res.ptr);
}

void write_config_csv(std::ostream& out, const SweepReport& report) {
  out << "j1,j2,j3,j4,max_adjacent_diff,max_jump_q,min_tail,min_drift\n";
  for (const auto& s : report.per_config) {
    out << s.config[0] << ',' << s.config[1] << ',' << s.config[2] << ',' << s.config[3] << ','
        << shortest_repr(s.max_adjacent_diff) << ',' << shortest_repr(s.max_jump_q) << ','
        << shortest_repr(s.min_tail) << ',' << shortest_repr(s.min_drift) << '\n';
  }
}

void write_trajectory_csv(std::ostream& out, const DriftStats& stats) {
  out << "path,step,running_sum\n";
  for (std::size_t p = 0; p < stats.trajectories.size(); ++p)
    for (std::size_t k = 0; k < stats.trajectories[p].size(); ++k)
      out << p << ',' << (k + 1) << ',' << shortest_repr(stats.trajectories[p][k]) << '\n';
}

}  // namespace paincert
