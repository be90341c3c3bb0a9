#pragma once

#include <string>
#include <vector>

namespace paincert {

enum class Relation { kLess, kLessEqual, kGreater, kGreaterEqual };

const char* relation_symbol(Relation r);

/// One measured quantity compared against a bound.
struct BoundCheck {
  std::string name;
  double measured = 0.0;
  Relation relation = Relation::kLessEqual;
  double bound = 0.0;
  /// Signed distance to the bound, positive when satisfied.
  double margin = 0.0;
  bool passed = false;
  /// Where the worst value occurred, if meaningful.
  std::string location;
};

BoundCheck make_check(std::string name, double measured, Relation relation, double bound,
                      std::string location = {});

/// A named group of checks; passes iff every check passes.
struct Certificate {
  std::string name;
  std::vector<BoundCheck> checks;
  /// Measurements reported alongside the checks without gating them.
  std::vector<BoundCheck> notes;

  bool passed() const;
};

}  // namespace paincert
