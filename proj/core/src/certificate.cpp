#include "paincert/certificate.hpp"

#include <algorithm>

namespace paincert {

const char* relation_symbol(Relation r) {
  switch (r) {
    case Relation::kLess: return "<";
    case Relation::kLessEqual: return "<=";
    case Relation::kGreater: return ">";
    case Relation::kGreaterEqual: return ">=";
  }
  return "?";
}

BoundCheck make_check(std::string name, double measured, Relation relation, double bound,
                      std::string location) {
  BoundCheck c;
  c.name = std::move(name);
  c.measured = measured;
  c.relation = relation;
  c.bound = bound;
  c.location = std::move(location);
  switch (relation) {
    case Relation::kLess:
      c.margin = bound - measured;
      c.passed = measured < bound;
      break;
    case Relation::kLessEqual:
      c.margin = bound - measured;
      c.passed = measured <= bound;
      break;
    case Relation::kGreater:
      c.margin = measured - bound;
      c.passed = measured > bound;
      break;
    case Relation::kGreaterEqual:
      c.margin = measured - bound;
      c.passed = measured >= bound;
      break;
  }
  return c;
}

bool Certificate::passed() const {
  return std::all_of(checks.begin(), checks.end(), [](const BoundCheck& c) { return c.passed; });
}

}  // namespace paincert
