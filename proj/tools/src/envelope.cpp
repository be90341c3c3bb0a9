#include "paincert_cli/envelope.hpp"

#include <algorithm>
#include <cstdio>
#include <iomanip>
#include <sstream>

#include "paincert/errors.hpp"
#include "paincert/report_json.hpp"
#include "paincert_cli/payloads.hpp"

namespace paincert::cli {

using nlohmann::json;

namespace {

std::string sig5(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.5g", x);
  return buf;
}

std::string digits9(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.9f", x);
  return buf;
}

json reference_block() {
  return json{{"qhat", ReferenceValues::qhat},
              {"max_adjacent_diff", ReferenceValues::max_adjacent_diff},
              {"max_jump_q", ReferenceValues::max_jump_q},
              {"min_tail", ReferenceValues::min_tail},
              {"rate_s", ReferenceValues::rate_s}};
}

void check_reference_block(const json& j) {
  StrictObject o(j, "reference_values");
  const std::pair<const char*, double> expected[] = {
      {"qhat", ReferenceValues::qhat},
      {"max_adjacent_diff", ReferenceValues::max_adjacent_diff},
      {"max_jump_q", ReferenceValues::max_jump_q},
      {"min_tail", ReferenceValues::min_tail},
      {"rate_s", ReferenceValues::rate_s}};
  for (const auto& [key, value] : expected)
    if (o.number(key) != value)
      throw ReportFormatError(std::string("reference_values.") + key + ": unexpected value");
  o.finish();
}

void validate_payload(Command command, const json& payload) {
  switch (command) {
    case Command::kQhat: qhat_payload_from_json(payload); break;
    case Command::kSweep: sweep_report_from_json(payload); break;
    case Command::kCheckLemmas: lemma_payload_from_json(payload); break;
    case Command::kDrift: drift_payload_from_json(payload); break;
    case Command::kQhatDepth: depth_payload_from_json(payload); break;
    case Command::kSummarize: throw ReportFormatError("summarize does not produce reports");
  }
}

class Table {
 public:
  explicit Table(std::ostringstream& out) : out_(out) {}

  void header() {
    out_ << "  " << std::left << std::setw(30) << "" << std::setw(14) << "measured"
         << "reference\n";
  }
  void row(const std::string& label, const std::string& value, const std::string& ref = {}) {
    out_ << "  " << std::left << std::setw(30) << label;
    if (ref.empty()) {
      out_ << value << '\n';
    } else {
      out_ << std::setw(14) << value << ref << '\n';
    }
  }

 private:
  std::ostringstream& out_;
};

void render_payload(std::ostringstream& out, Command command, const json& payload) {
  Table t(out);
  switch (command) {
    case Command::kQhat: {
      const auto p = qhat_payload_from_json(payload);
      t.header();
      t.row("q-hat", sig5(p.qhat), sig5(ReferenceValues::qhat));
      t.row("q-hat (9 digits)", digits9(p.qhat));
      t.row("fixed-point residual", sig5(p.residual));
      t.row("accuracy", sig5(p.accuracy));
      t.row("wall time (s)", sig5(p.wall_time_seconds));
      break;
    }
    case Command::kSweep: {
      const auto r = sweep_report_from_json(payload);
      int saturated = 0;
      double residual = 0.0;
      double min_q = 1.0;
      for (const auto& s : r.per_config) {
        saturated += s.saturated_cells;
        residual = std::max(residual, s.max_budget_residual);
        min_q = std::min(min_q, s.min_q);
      }
      t.header();
      t.row("q-hat", sig5(r.qhat.value), sig5(ReferenceValues::qhat));
      t.row("max adjacent difference", sig5(r.global_max_adjacent_diff),
            sig5(ReferenceValues::max_adjacent_diff));
      t.row("max jump weight", sig5(r.global_max_jump_q), sig5(ReferenceValues::max_jump_q));
      t.row("min tail", sig5(r.global_min_tail), sig5(ReferenceValues::min_tail));
      t.row("rate s", sig5(r.rate_s), sig5(ReferenceValues::rate_s));
      t.row("configs", std::to_string(r.per_config.size()));
      t.row("grid size", std::to_string(r.grid_size));
      t.row("smallest weight", sig5(min_q));
      t.row("saturated cells", std::to_string(saturated));
      t.row("max budget residual", sig5(residual));
      t.row("threads", std::to_string(r.thread_count));
      t.row("wall time (s)", sig5(r.wall_time_seconds));
      break;
    }
    case Command::kCheckLemmas: {
      const auto p = lemma_payload_from_json(payload);
      t.row("grid size", std::to_string(p.grid_size));
      t.row("finite-difference step", sig5(p.fd_step));
      t.row("q-hat", sig5(p.qhat));
      t.row("sweep report", p.sweep_report.empty() ? "(none)" : p.sweep_report);
      t.row("wall time (s)", sig5(p.wall_time_seconds));
      break;
    }
    case Command::kDrift: {
      const auto p = drift_payload_from_json(payload);
      const auto& s = p.stats;
      t.header();
      t.row("mode", paincert::to_string(s.mode));
      t.row("paths x steps", std::to_string(s.n_paths) + " x " + std::to_string(s.n_steps));
      t.row("mean increment", sig5(s.mean_increment),
            s.mode == DriftMode::kLowerBound ? sig5(ReferenceValues::rate_s) : std::string{});
      t.row("99% interval", "[" + sig5(s.ci_low) + ", " + sig5(s.ci_high) + "]");
      t.row("variance", sig5(s.variance));
      t.row("share exceeding " + sig5(s.exceed_threshold), sig5(s.fraction_exceeding));
      if (s.mode == DriftMode::kPath) {
        t.row("sentinel events", std::to_string(s.sentinel_events));
        t.row("max phi divergence", sig5(s.max_phi_divergence));
      } else {
        t.row("rate s (sweep)", sig5(p.rate_s));
      }
      t.row("seed", std::to_string(s.seed));
      t.row("wall time (s)", sig5(p.wall_time_seconds));
      break;
    }
    case Command::kQhatDepth: {
      const auto p = depth_payload_from_json(payload);
      t.row("depth", std::to_string(p.depth));
      t.row("q at depth", sig5(p.qhat_by_depth));
      t.row("q-hat", sig5(p.qhat));
      t.row("truncation bias", sig5(p.truncation_bias));
      if (p.trees > 0) {
        t.row("sampled trees (depth " + std::to_string(p.tree_depth) + ")", std::to_string(p.trees));
        t.row("non-terminating share", sig5(p.nonterminating_fraction));
        t.row("standard error", sig5(p.standard_error));
        t.row("zero-pain checks", std::to_string(p.zero_pain_checked));
        t.row("zero-pain failures", std::to_string(p.zero_pain_failures));
      }
      t.row("wall time (s)", sig5(p.wall_time_seconds));
      break;
    }
    case Command::kSummarize: break;
  }
}

void render_check(std::ostringstream& out, const BoundCheck& c, bool gating) {
  out << "  " << (gating ? (c.passed ? "PASS  " : "FAIL  ") : "note  ") << c.name << ": "
      << sig5(c.measured) << ' ' << relation_symbol(c.relation) << ' ' << sig5(c.bound);
  if (gating) out << "  (margin " << sig5(c.margin) << ')';
  if (!c.location.empty()) out << "  at " << c.location;
  out << '\n';
}

}  // namespace

bool Envelope::passed() const {
  return std::all_of(certificates.begin(), certificates.end(),
                     [](const Certificate& c) { return c.passed(); });
}

json to_json(const Envelope& e) {
  json certs = json::array();
  for (const auto& c : e.certificates) certs.push_back(paincert::to_json(c));
  return json{{"schema_version", e.schema_version},
              {"command", to_string(e.run_config.command)},
              {"run_config", to_json(e.run_config)},
              {"timestamps", {{"started", e.started_at}, {"finished", e.finished_at}}},
              {"payload", e.payload},
              {"certificates", std::move(certs)},
              {"reference_values", reference_block()}};
}

Envelope envelope_from_json(const json& j) {
  StrictObject o(j, "envelope");
  Envelope e;
  e.schema_version = o.string("schema_version");
  if (e.schema_version != kSchemaVersion)
    throw ReportFormatError("unsupported schema version '" + e.schema_version + "'");
  const std::string command = o.string("command");
  e.run_config = run_config_from_json(o.at("run_config"));
  if (command != to_string(e.run_config.command))
    throw ReportFormatError("envelope: command does not match run_config");
  StrictObject ts(o.at("timestamps"), "timestamps");
  e.started_at = ts.string("started");
  e.finished_at = ts.string("finished");
  ts.finish();
  e.payload = o.at("payload");
  validate_payload(e.run_config.command, e.payload);
  const json& certs = o.at("certificates");
  if (!certs.is_array()) throw ReportFormatError("certificates: expected an array");
  for (const auto& c : certs) e.certificates.push_back(certificate_from_json(c));
  check_reference_block(o.at("reference_values"));
  o.finish();
  return e;
}

Envelope parse_envelope(std::string_view text) {
  json j;
  try {
    j = json::parse(text.begin(), text.end());
  } catch (const json::parse_error& err) {
    throw ReportFormatError(std::string("invalid JSON: ") + err.what());
  }
  return envelope_from_json(j);
}

std::string render_summary(const Envelope& e) {
  std::ostringstream out;
  const auto& rc = e.run_config;
  out << "paincert " << to_string(rc.command) << " (schema " << e.schema_version << ")\n";
  out << "started " << e.started_at << ", finished " << e.finished_at << '\n';
  out << "grid " << rc.grid_size << ", accuracy " << sig5(rc.accuracy) << ", threads " << rc.threads
      << ", seed " << rc.seed << "\n\n";
  render_payload(out, rc.command, e.payload);
  for (const auto& c : e.certificates) {
    out << '\n' << c.name << ": " << (c.passed() ? "PASS" : "FAIL") << '\n';
    for (const auto& check : c.checks) render_check(out, check, true);
    for (const auto& note : c.notes) render_check(out, note, false);
  }
  out << "\noverall: " << (e.passed() ? "PASS" : "FAIL") << '\n';
  return out.str();
}

std::string certificates_csv(const std::vector<Certificate>& certs) {
  std::ostringstream out;
  out << "certificate,kind,check,measured,relation,bound,passed\n";
  const auto quote = [](const std::string& s) {
    std::string q = "\"";
    for (char ch : s) q += ch == '"' ? std::string("\"\"") : std::string(1, ch);
    return q + '"';
  };
  for (const auto& c : certs) {
    for (const auto* list : {&c.checks, &c.notes}) {
      const char* kind = list == &c.checks ? "check" : "note";
      for (const auto& x : *list)
        out << quote(c.name) << ',' << kind << ',' << quote(x.name) << ',' << shortest_repr(x.measured)
            << ',' << relation_symbol(x.relation) << ',' << shortest_repr(x.bound) << ','
            << (x.passed ? "true" : "false") << '\n';
    }
  }
  return out.str();
}

}  // namespace paincert::cli
