#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "json.hpp"
#include "paincert/certificate.hpp"
#include "paincert/drift.hpp"
#include "paincert/sweep.hpp"

namespace paincert {

// JSON encoding of report types. Decoding is strict: every field must be
// present with the right type and unknown fields are rejected
// (ReportFormatError). Non-finite doubles are written as the strings
// "inf", "-inf" and "nan".

nlohmann::json to_json(const ConfigStats& s);
nlohmann::json to_json(const SweepReport& r);
nlohmann::json to_json(const DriftStats& s);
nlohmann::json to_json(const BoundCheck& c);
nlohmann::json to_json(const Certificate& c);

ConfigStats config_stats_from_json(const nlohmann::json& j);
SweepReport sweep_report_from_json(const nlohmann::json& j);
DriftStats drift_stats_from_json(const nlohmann::json& j);
BoundCheck bound_check_from_json(const nlohmann::json& j);
Certificate certificate_from_json(const nlohmann::json& j);

nlohmann::json encode_double(double x);
double decode_double(const nlohmann::json& j, const std::string& field);

/// Shortest decimal string that reads back to exactly `x`.
std::string shortest_repr(double x);

/// j1,j2,j3,j4,max_adjacent_diff,max_jump_q,min_tail,min_drift
void write_config_csv(std::ostream& out, const SweepReport& report);

/// path,step,running_sum for the captured trajectories (step counts from 1).
void write_trajectory_csv(std::ostream& out, const DriftStats& stats);

/// Reads an object field by field, failing on anything left unread.
class StrictObject {
 public:
  StrictObject(const nlohmann::json& j, std::string context);

  const nlohmann::json& at(const std::string& key);
  double number(const std::string& key);
  std::int64_t integer(const std::string& key);
  bool boolean(const std::string& key);
  std::string string(const std::string& key);
  /// Throws if any field was never read.
  void finish() const;

 private:
  const nlohmann::json& j_;
  std::string context_;
  std::vector<std::string> seen_;
};

}  // namespace paincert
