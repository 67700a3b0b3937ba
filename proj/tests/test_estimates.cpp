#include <cmath>
#include <numbers>

#include "doctest.h"
#include "pwq/error.hpp"
#include "pwq/estimates.hpp"

using namespace pwq;
using namespace pwq::estimates;
using std::numbers::pi;

namespace {

bool throws_kind(ErrorKind kind, auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.kind() == kind;
  }
  return false;
}

}  // namespace

TEST_CASE("stability gate") {
  CHECK(gate_holds(10.0, 0.5));
  CHECK_FALSE(gate_holds(3.0, 0.1));
  CHECK(gate_holds(3.0, 0.7));
}

TEST_CASE("identity checks on small grids") {
  const Report dual = check_dual_representation(8, {1.0, 3.0}, 9, 3.0);
  CHECK(dual.passed);
  CHECK(dual.worst_violation < 1e-8);
  CHECK(check_gamma_representation(8, {1.0, 3.0}, 21).passed);
  CHECK(check_reflection_product(8, {1.0, 3.0}, 9, 3.0).passed);
}

TEST_CASE("exact inequality checks") {
  CHECK(check_separating_line({std::exp(2.0), 50.0}, 500).passed);
  CHECK(throws_kind(ErrorKind::Precondition, [] { check_separating_line({5.0}, 100); }));
  CHECK(check_phi_lower_bound(2000).passed);
  CHECK(check_HR_bound({std::exp(1.0), 10.0}, 500).passed);
  CHECK(check_gamma_ab_bounds(4, 6, 11, 4.0).passed);
}

TEST_CASE("inf_f_at reproduces the sinc value at a half-integer") {
  CHECK(std::abs(inf_f_at(0.5, 1.0) - 2.0 / pi) < 1e-12);
  CHECK(std::abs(inf_f_at(0.5, 1.0) - inf_f_brute_force(0.5, 1.0)) < 1e-12);
  CHECK(std::abs(inf_f_at(1.37, 3.0) - inf_f_brute_force(1.37, 3.0)) < 1e-12);
  CHECK(throws_kind(ErrorKind::ForbiddenParameter, [] { inf_f_at(0.5, 2.0); }));
  CHECK(check_normalization(7, 5).passed);
}

TEST_CASE("boundedness checks on a reduced n-range") {
  GridSpec g;
  g.re_min = 0.0;
  g.re_max = 10.0;
  g.im_max = 2.0;
  g.resolution = 11;
  g.n_max = 40;
  g.R_values = {10.0};
  const Report large = check_largelambda(g);
  CHECK(large.passed);
  CHECK(large.constants.count("C"));
  CHECK(check_smalllambda(0.5, g).passed);
}

TEST_CASE("scaling band is ordered") {
  const Report rep = check_scaling_band(2.0, 0.0, 1.0, 50);
  CHECK(rep.passed);
  CHECK(rep.constants.at("C1") > 0.0);
  CHECK(rep.constants.at("C1") <= rep.constants.at("C2"));
}

TEST_CASE("report serialization and merge") {
  Report a;
  a.check_id = "x";
  a.worst_violation = 0.5;
  a.tolerance = 1.0;
  a.witness = {{"at", 1}};
  a.constants["k"] = 2.0;
  a.finalize();
  Report b = a;
  b.worst_violation = 2.0;
  b.witness = {{"at", 2}};
  b.constants["k"] = 1.0;
  b.finalize();
  CHECK(a.passed);
  CHECK_FALSE(b.passed);
  const Report m = merge(a, b);
  CHECK(m.worst_violation == 2.0);
  CHECK(m.witness == b.witness);
  CHECK(m.constants.at("k") == 2.0);
  CHECK_FALSE(m.passed);
  CHECK(merge(a, b).to_json(false) == merge(b, a).to_json(false));

  const Json j = a.to_json(false);
  CHECK_FALSE(j.contains("runtime_ms"));
  CHECK(a.to_json(true).contains("runtime_ms"));

  Report nan_rep = a;
  nan_rep.worst_violation = std::nan("");
  nan_rep.finalize();
  CHECK_FALSE(nan_rep.passed);
}
