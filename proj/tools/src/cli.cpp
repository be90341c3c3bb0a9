#include "paincert_cli/cli.hpp"

#include <chrono>
#include <cmath>
#include <ctime>
#include <fstream>
#include <iostream>
#include <limits>
#include <mutex>
#include <sstream>

#include "CLI11.hpp"
#include "paincert/chain_tree.hpp"
#include "paincert/errors.hpp"
#include "paincert/lemma_checks.hpp"
#include "paincert/report_json.hpp"
#include "paincert/sweep.hpp"
#include "paincert_cli/envelope.hpp"
#include "paincert_cli/payloads.hpp"

namespace paincert::cli {

namespace {

/// Raised for problems the user can fix on the command line.
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

std::string utc_now() {
  const std::time_t t = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ReportFormatError("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write '" + path + "'");
  out << text;
  if (!out) throw std::runtime_error("write to '" + path + "' failed");
}

SweepReport load_sweep_report(const std::string& path) {
  const Envelope e = parse_envelope(read_file(path));
  if (e.run_config.command != Command::kSweep)
    throw ReportFormatError("'" + path + "' is a " + to_string(e.run_config.command) +
                            " report, not a sweep report");
  return sweep_report_from_json(e.payload);
}

Certificate rate_certificate(const SweepReport& report) {
  if (report.grid_size >= kReferenceGridSize) return check_drift_rate(report);
  // Coarse grids distort the worst-case drift; the rate is shown, not gated.
  Certificate cert;
  cert.name = "drift_rate";
  cert.notes.push_back(make_check("rate s (coarse grid, not gated)", report.rate_s,
                                  Relation::kGreaterEqual, 1e-3));
  return cert;
}

struct Artifacts {
  nlohmann::json payload;
  std::vector<Certificate> certificates;
  /// Body written for --format csv.
  std::string csv;
};

Artifacts run_qhat(const RunConfig& c) {
  const auto t0 = std::chrono::steady_clock::now();
  const QHat q = solve_qhat(c.accuracy);
  QhatPayload p;
  p.qhat = q.value;
  p.residual = std::abs(qhat_map(q.value) - q.value);
  p.accuracy = c.accuracy;
  p.wall_time_seconds = seconds_since(t0);

  Certificate cert;
  cert.name = "qhat";
  cert.checks.push_back(make_check("fixed-point residual", p.residual, Relation::kLess, 1e-9));
  cert.checks.push_back(make_check("q-hat lower bound", p.qhat, Relation::kGreater, 0.99));
  cert.checks.push_back(make_check("q-hat upper bound", p.qhat, Relation::kLess, 1.0));

  Artifacts a;
  a.payload = to_json(p);
  a.certificates = {cert};
  a.csv = certificates_csv(a.certificates);
  return a;
}

Artifacts run_sweep_command(const RunConfig& c, std::ostream& err) {
  if (c.grid_size >= kReferenceGridSize && c.threads < 2 && !c.force)
    throw UsageError("a full sweep on " + std::to_string(c.threads) +
                     " thread takes a long time; pass --force to run it anyway");
  const WTable table = build_wtable(GridParams{c.grid_size});
  std::mutex mu;
  int last_decile = 0;
  const SweepProgress progress = [&](int done, int total) {
    std::lock_guard lock(mu);
    const int decile = done * 10 / total;
    if (decile > last_decile) {
      last_decile = decile;
      err << "sweep: " << done << '/' << total << " configs\n" << std::flush;
    }
  };
  const SweepReport report = run_sweep(table, c.accuracy, c.threads, progress);

  Artifacts a;
  a.payload = to_json(report);
  a.certificates = {check_weight_bounds(report), rate_certificate(report)};
  std::ostringstream csv;
  write_config_csv(csv, report);
  a.csv = csv.str();
  if (!c.csv_path.empty()) write_file(c.csv_path, a.csv);
  return a;
}

Artifacts run_check_lemmas(const RunConfig& c) {
  const auto t0 = std::chrono::steady_clock::now();
  const WTable table = build_wtable(GridParams{c.grid_size});
  const QHat q = solve_qhat(std::min(c.accuracy, kDefaultAccuracy));

  Artifacts a;
  a.certificates.push_back(check_weight_shape(table, c.fd_step));
  a.certificates.push_back(check_termination_constant(q));
  if (!c.sweep_report.empty()) {
    const SweepReport report = load_sweep_report(c.sweep_report);
    a.certificates.push_back(check_weight_bounds(report));
    a.certificates.push_back(check_drift_rate(report));
  }
  LemmaPayload p;
  p.grid_size = c.grid_size;
  p.fd_step = c.fd_step;
  p.qhat = q.value;
  p.sweep_report = c.sweep_report;
  p.wall_time_seconds = seconds_since(t0);
  a.payload = to_json(p);
  a.csv = certificates_csv(a.certificates);
  return a;
}

Artifacts run_drift(const RunConfig& c) {
  const auto t0 = std::chrono::steady_clock::now();
  std::optional<SweepReport> report;
  if (c.mode == DriftMode::kLowerBound) {
    if (c.sweep_report.empty())
      throw UsageError("lower-bound drift needs --sweep-report (a sweep envelope)");
    report = load_sweep_report(c.sweep_report);
    if (report->grid_size != c.grid_size)
      throw UsageError("sweep report was computed on grid " + std::to_string(report->grid_size) +
                       ", not " + std::to_string(c.grid_size));
  }
  const WTable table = build_wtable(GridParams{c.grid_size});

  DriftOptions o;
  o.mode = c.mode;
  o.steps = c.steps;
  o.n_paths = c.paths;
  o.seed = c.seed;
  o.threads = c.threads;
  o.exceed_threshold = c.exceed_threshold;
  o.capture_trajectories = c.trajectories;
  o.accuracy = c.accuracy;
  const DriftStats stats = simulate_drift(o, table, report ? &*report : nullptr);

  Artifacts a;
  DriftPayload p;
  p.stats = stats;
  p.rate_s = report ? report->rate_s : std::numeric_limits<double>::quiet_NaN();
  if (report) {
    const double se = std::sqrt(stats.variance / static_cast<double>(stats.n_increments));
    Certificate mean;
    mean.name = "lower_bound_mean";
    mean.checks.push_back(make_check("|mean - rate s| / standard error",
                                     std::abs(stats.mean_increment - report->rate_s) / se,
                                     Relation::kLessEqual, 3.0));
    a.certificates.push_back(mean);
    if (report->rate_s > 0.0) {
      a.certificates.push_back(check_linear_growth(stats, report->rate_s));
    } else {
      Certificate growth;
      growth.name = "linear_growth";
      growth.checks.push_back(make_check("rate s", report->rate_s, Relation::kGreater, 0.0));
      a.certificates.push_back(growth);
    }
  } else {
    Certificate positive;
    positive.name = "path_drift";
    positive.checks.push_back(
        make_check("99% lower confidence limit of mean increment", stats.ci_low, Relation::kGreater, 0.0));
    positive.notes.push_back(make_check("sentinel events", static_cast<double>(stats.sentinel_events),
                                        Relation::kGreaterEqual, 0.0));
    a.certificates.push_back(positive);
  }
  p.wall_time_seconds = seconds_since(t0);
  a.payload = to_json(p);
  std::ostringstream csv;
  write_trajectory_csv(csv, stats);
  a.csv = csv.str();
  if (!c.csv_path.empty()) write_file(c.csv_path, a.csv);
  return a;
}

Artifacts run_qhat_depth(const RunConfig& c) {
  const auto t0 = std::chrono::steady_clock::now();
  DepthPayload p;
  p.depth = c.depth;
  p.qhat_by_depth = qhat_by_depth(c.depth);
  p.qhat = solve_qhat(std::min(c.accuracy, kDefaultAccuracy)).value;
  p.truncation_bias = p.qhat_by_depth - p.qhat;

  Artifacts a;
  if (c.trees > 0) {
    // One iterate of the recursion spans an active and a passive level.
    if (2 * c.depth > kMaxTreeDepth)
      throw UsageError("tree sampling supports --depth up to " + std::to_string(kMaxTreeDepth / 2));
    p.tree_depth = 2 * c.depth;
    p.trees = c.trees;
    for (int i = 0; i < c.trees; ++i) {
      PhiloxStream rng(c.seed, static_cast<std::uint64_t>(i));
      const DegreeTree tree = sample_tree(p.tree_depth, rng);
      const TerminationLabels labels = classify_terminating(tree);
      if (!root_terminating(labels)) {
        ++p.nonterminating;
        continue;
      }
      ++p.zero_pain_checked;
      if (!verify_terminating_zero_pain(tree, labels).ok) ++p.zero_pain_failures;
    }
    p.nonterminating_fraction = p.nonterminating / static_cast<double>(p.trees);
    p.standard_error = std::sqrt(p.qhat_by_depth * (1.0 - p.qhat_by_depth) / p.trees);

    Certificate cert;
    cert.name = "tree_sampling";
    const double deviation = std::abs(p.nonterminating_fraction - p.qhat_by_depth);
    cert.checks.push_back(make_check("|non-terminating share - q at depth|", deviation,
                                     Relation::kLessEqual, 3.0 * p.standard_error));
    cert.checks.push_back(make_check("zero-pain routing failures", p.zero_pain_failures,
                                     Relation::kLessEqual, 0.0));
    a.certificates.push_back(cert);
  }
  p.wall_time_seconds = seconds_since(t0);
  a.payload = to_json(p);
  a.csv = certificates_csv(a.certificates);
  return a;
}

int run_summarize(const RunConfig& c, std::ostream& out, std::ostream& err) {
  try {
    const Envelope e = parse_envelope(read_file(c.input_path));
    out << render_summary(e);
    return e.passed() ? kExitOk : kExitFailure;
  } catch (const ReportFormatError& ex) {
    err << "paincert: cannot read report '" << c.input_path << "': " << ex.what() << '\n';
    return kExitFailure;
  }
}

void add_common(CLI::App& sub, RunConfig& c) {
  sub.add_option("--grid", c.grid_size, "grid size M")->check(CLI::Range(kMinGridSize, 1 << 24));
  sub.add_option("--accuracy", c.accuracy, "bisection accuracy")
      ->check(CLI::Range(kMinAccuracy, kMaxAccuracy));
  sub.add_option("--threads", c.threads, "worker threads (env PAINCERT_THREADS)")
      ->check(CLI::PositiveNumber);
  sub.add_option("--seed", c.seed, "random seed");
  sub.add_option("--out", c.out_path, "write the report here");
  sub.add_option_function<std::string>(
         "--format", [&c](const std::string& s) { c.format = format_from_string(s); },
         "json, csv or text")
      ->check(CLI::IsMember({"json", "csv", "text"}));
}

}  // namespace

ParseOutcome parse_args(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  RunConfig c;
  c.threads = default_thread_count();

  CLI::App app{"Numerical certificates for the pain-equalisation weight function", "paincert"};
  app.require_subcommand(1);
  app.set_help_all_flag("--help-all");

  auto* qhat = app.add_subcommand("qhat", "solve for the non-termination probability q-hat");
  add_common(*qhat, c);

  auto* sweep = app.add_subcommand("sweep", "equalise every config over the grid");
  add_common(*sweep, c);
  sweep->add_flag("--force", c.force, "allow a full sweep on fewer than 2 threads");
  sweep->add_option("--csv", c.csv_path, "per-config CSV");

  auto* lemmas = app.add_subcommand("check-lemmas", "weight-function and global-bound certificates");
  add_common(*lemmas, c);
  lemmas->add_option("--sweep-report", c.sweep_report, "sweep envelope for the global bounds");
  lemmas->add_option("--fd-step", c.fd_step, "finite-difference step")->check(CLI::Range(1e-5, 1e-3));

  auto* drift = app.add_subcommand("drift", "Monte Carlo drift of the weight process");
  add_common(*drift, c);
  drift->add_option_function<std::string>(
           "--mode", [&c](const std::string& s) { c.mode = drift_mode_from_string(s); },
           "lower-bound or path")
      ->check(CLI::IsMember({"lower-bound", "path"}));
  drift->add_option("--steps", c.steps, "steps per path")->check(CLI::Range(1, kMaxDriftSteps));
  drift->add_option("--paths", c.paths, "number of paths")->check(CLI::PositiveNumber);
  drift->add_option("--sweep-report", c.sweep_report, "sweep envelope (lower-bound mode)");
  drift->add_option("--trajectories", c.trajectories, "running sums kept for CSV output")
      ->check(CLI::Range(0, kMaxCapturedTrajectories));
  drift->add_option("--exceed-threshold", c.exceed_threshold, "running-sum level for the exceedance share");
  drift->add_option("--csv", c.csv_path, "trajectory CSV");

  auto* depth = app.add_subcommand("qhat-depth", "depth-limited non-termination probability");
  add_common(*depth, c);
  depth->add_option("--depth", c.depth, "iterations of the recursion")->check(CLI::Range(0, 10000));
  depth->add_option("--trees", c.trees, "sampled trees to compare against")->check(CLI::NonNegativeNumber);

  auto* summarize = app.add_subcommand("summarize", "print the summary of a stored report");
  summarize->add_option("report", c.input_path, "report JSON")->required();

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return ParseOutcome{std::nullopt, code == 0 ? kExitOk : kExitUsage};
  }

  const std::pair<CLI::App*, Command> commands[] = {
      {qhat, Command::kQhat},           {sweep, Command::kSweep},
      {lemmas, Command::kCheckLemmas},  {drift, Command::kDrift},
      {depth, Command::kQhatDepth},     {summarize, Command::kSummarize}};
  for (const auto& [sub, cmd] : commands)
    if (sub->parsed()) c.command = cmd;

  try {
    validate(c);
  } catch (const ConfigurationError& e) {
    err << "paincert: " << e.what() << '\n';
    return ParseOutcome{std::nullopt, kExitUsage};
  }
  return ParseOutcome{c, kExitOk};
}

int run(const RunConfig& c, std::ostream& out, std::ostream& err) {
  try {
    validate(c);
    if (c.command == Command::kSummarize) return run_summarize(c, out, err);

    Envelope e;
    e.run_config = c;
    e.started_at = utc_now();
    Artifacts a;
    switch (c.command) {
      case Command::kQhat: a = run_qhat(c); break;
      case Command::kSweep: a = run_sweep_command(c, err); break;
      case Command::kCheckLemmas: a = run_check_lemmas(c); break;
      case Command::kDrift: a = run_drift(c); break;
      case Command::kQhatDepth: a = run_qhat_depth(c); break;
      case Command::kSummarize: break;
    }
    e.finished_at = utc_now();
    e.payload = std::move(a.payload);
    e.certificates = std::move(a.certificates);

    const std::string json_text = to_json(e).dump(2) + "\n";
    // Render from the serialised form so that summarize reprints it exactly.
    const std::string summary = render_summary(parse_envelope(json_text));
    if (!c.out_path.empty()) {
      switch (c.format) {
        case Format::kJson: write_file(c.out_path, json_text); break;
        case Format::kText: write_file(c.out_path, summary); break;
        case Format::kCsv: write_file(c.out_path, a.csv); break;
      }
    }
    out << summary;
    return e.passed() ? kExitOk : kExitFailure;
  } catch (const UsageError& ex) {
    err << "paincert: " << ex.what() << '\n';
    return kExitUsage;
  } catch (const ConfigurationError& ex) {
    err << "paincert: " << ex.what() << '\n';
    return kExitUsage;
  } catch (const SolverFailure& ex) {
    err << "paincert: solver failure at p_index " << ex.p_index() << ", config " << ex.config()
        << ": " << ex.what() << '\n';
    return kExitFailure;
  } catch (const ReportFormatError& ex) {
    err << "paincert: bad report: " << ex.what() << '\n';
    return kExitFailure;
  } catch (const std::exception& ex) {
    err << "paincert: " << ex.what() << '\n';
    return kExitFailure;
  }
}

int main_entry(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  const ParseOutcome parsed = parse_args(args, out, err);
  if (!parsed.config) return parsed.exit_code;
  return run(*parsed.config, out, err);
}

}  // namespace paincert::cli
