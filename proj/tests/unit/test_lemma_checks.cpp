#include <cmath>
#include <string>

#include "doctest.h"
#include "paincert/certificate.hpp"
#include "paincert/errors.hpp"
#include "paincert/lemma_checks.hpp"

using namespace paincert;

namespace {

const BoundCheck& find(const std::vector<BoundCheck>& list, const std::string& prefix) {
  for (const auto& c : list)
    if (c.name.rfind(prefix, 0) == 0) return c;
  FAIL("no check named " << prefix);
  return list.front();
}

}  // namespace

TEST_CASE("bound checks") {
  CHECK(make_check("x", 1.0, Relation::kLess, 2.0).passed);
  CHECK_FALSE(make_check("x", 2.0, Relation::kLess, 2.0).passed);
  CHECK(make_check("x", 2.0, Relation::kLessEqual, 2.0).passed);
  CHECK(make_check("x", 3.0, Relation::kGreater, 2.0).margin == 1.0);
  CHECK_FALSE(make_check("x", 2.0, Relation::kGreater, 2.0).passed);
  CHECK(make_check("x", 2.0, Relation::kGreaterEqual, 2.0).passed);
  CHECK(make_check("x", 1.5, Relation::kLessEqual, 1.0).margin == -0.5);
  CHECK(std::string(relation_symbol(Relation::kGreaterEqual)) == ">=");

  Certificate cert;
  cert.name = "c";
  CHECK(cert.passed());
  cert.notes.push_back(make_check("n", 5.0, Relation::kLess, 1.0));
  CHECK(cert.passed());
  cert.checks.push_back(make_check("y", 5.0, Relation::kLess, 1.0));
  CHECK_FALSE(cert.passed());
}

TEST_CASE("termination constant") {
  const auto at = [](double q) { return check_termination_constant(QHat{q}); };
  const auto typical = at(0.991603);
  CHECK(typical.passed());
  // independent power computation: eight multiplications
  double base = 1.0 - 0.991603 / 2.0, power = 1.0;
  for (int i = 0; i < 8; ++i) power *= base;
  CHECK(typical.checks[0].measured == doctest::Approx(36.0 * power).epsilon(1e-12));
  CHECK(typical.checks[0].measured == doctest::Approx(0.150).epsilon(1e-2));
  CHECK_FALSE(at(0.0).passed());
  CHECK(at(0.0).checks[0].measured == 36.0);
  CHECK(at(1.0).passed());
  CHECK(at(1.0).checks[0].measured == 0.140625);
}

TEST_CASE("weight shape scans") {
  const WTable t = build_wtable(GridParams{});
  CHECK_THROWS_AS(check_weight_shape(t, 1e-6), ConfigurationError);
  CHECK_THROWS_AS(check_weight_shape(t, 2e-3), ConfigurationError);

  const auto cert = check_weight_shape(t, 1e-4);
  const auto& slope_min = find(cert.checks, "(b) min slope");
  const auto& slope_max = find(cert.checks, "(b) max slope");
  const auto& convex = find(cert.checks, "(c)");
  CHECK(slope_min.passed);
  CHECK(slope_max.passed);
  CHECK(convex.passed);
  // steepest near x = 0, flattest near x = 1
  CHECK(slope_max.measured < 5.0 / 9.0 + 1e-3);
  CHECK(slope_max.measured > 0.5);
  CHECK(std::stod(slope_max.location.substr(2)) < 0.05);
  CHECK(std::stod(slope_min.location.substr(2)) > 0.95);
  CHECK(slope_min.measured > 1.0 / 6.0);
  CHECK(slope_min.measured < 0.2);
  CHECK(find(cert.notes, "f minimum").measured > 0.0);
}
