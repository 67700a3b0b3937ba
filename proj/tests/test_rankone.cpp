#include <cmath>

#include "doctest.h"
#include "pwq/error.hpp"
#include "pwq/rankone.hpp"

using namespace pwq;
using namespace pwq::rankone;

namespace {

const cplx I(0.0, 1.0);

bool throws_kind(ErrorKind kind, auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.kind() == kind;
  }
  return false;
}

}  // namespace

TEST_CASE("SL2 Q~ and J by hand") {
  const auto sl2 = preset_sl2();
  // (1 + i lambda)(3 + i lambda)/3 at lambda = -i
  CHECK(std::abs(sl2_q_tilde_closed(2, -I) - 8.0 / 3.0) < 1e-15);
  CHECK(std::abs(q_tilde_eval(sl2, default_ktype(sl2, 2), sl2_z_from_lambda_R(-I)) - 8.0 / 3.0) < 1e-13);
  // (1 - i)/(1 + i)
  CHECK(std::abs(sl2_j_closed(1, 1.0) + I) < 1e-15);
  CHECK(std::abs(j_scalar(sl2, default_ktype(sl2, 1), 0.5) + I) < 1e-13);
  CHECK(std::abs(j_scalar(sl2, default_ktype(sl2, 0), cplx(0.3, 0.7)) - 1.0) < 1e-15);
  CHECK(throws_kind(ErrorKind::Pole, [&] { j_scalar(sl2, default_ktype(sl2, 1), 0.5 * I); }));
}

TEST_CASE("J has modulus one on the real axis") {
  for (const auto& p : all_presets()) {
    for (int s = 0; s <= 8; ++s) {
      const auto k = default_ktype(p, s);
      for (double x : {-3.1, -0.2, 0.45, 2.0}) CHECK(std::abs(std::abs(j_scalar(p, k, x)) - 1.0) < 1e-12);
    }
  }
}

TEST_CASE("J(z) J(-z) = 1") {
  const auto p = preset_su_n1(3);
  const auto k = default_ktype(p, 4);
  const cplx z(0.7, -0.4);
  CHECK(std::abs(j_scalar(p, k, z) * j_scalar(p, k, -z) - 1.0) < 1e-12);
}

TEST_CASE("multiplicity validation and minimal m") {
  CHECK(minimal_m(1, 0) == 1);
  CHECK(minimal_m(1, 0) == preset_sl2().m);
  CHECK(throws_kind(ErrorKind::Precondition, [] { make_params("bad", 3, 1); }));
  const auto su = preset_su_n1(2);
  CHECK(su.m_2alpha == 1);
  CHECK(su.gamma() == 4);
  CHECK(throws_kind(ErrorKind::InconsistentParity, [&] {
    q_tilde_poly(su, KTypeData{3.0, 0, 3});
  }));
}

TEST_CASE("perturb_R clears integer points") {
  CHECK(perturb_R(10.0, {cplx(0.13, -0.2)}) == 10.0);
  const double Rp = perturb_R(10.0, {0.1});
  CHECK(Rp < 10.0);
  CHECK(Rp > 10.0 - 2e-5);
  CHECK(std::abs(Rp * 0.1 - 1.0) >= 1e-6);
}

TEST_CASE("analytic vector JSON") {
  const auto v = AnalyticVector::exponential(0.5, 4);
  CHECK(v.coeffs.size() == 9);
  CHECK(std::abs(v.coeffs.at(-2) - std::exp(-1.0)) < 1e-15);
  const auto w = AnalyticVector::from_json(v.to_json());
  CHECK(w.to_json() == v.to_json());
  CHECK(throws_kind(ErrorKind::MalformedConfig, [] { AnalyticVector::from_json(Json{{"decay", 1.0}}); }));
  CHECK(throws_kind(ErrorKind::MalformedConfig, [] {
    AnalyticVector::from_json(Json{{"decay", 1.0}, {"truncation", 1}, {"coeffs", {{5, 1.0, 0.0}}}});
  }));
}

TEST_CASE("first ansatz interpolates and intertwines") {
  const auto v = AnalyticVector::exponential(0.5, 6);
  const cplx z0 = -2.0 * I;
  const Ansatz1Interpolant F(preset_sl2(), v, z0, 10.0);
  const auto at0 = F(z0);
  for (const auto& [tau, c] : v.coeffs) CHECK(std::abs(at0.at(tau) - c) < 1e-12);
  const Report rep = check_intertwining(F, rect_grid(-3.0, 3.0, -1.03, 0.97, 9));
  CHECK(rep.passed);
  CHECK(throws_kind(ErrorKind::Kostant, [&] { Ansatz1Interpolant(preset_sl2(), v, 2.0 * I, 10.0); }));
  CHECK(throws_kind(ErrorKind::GridPrecondition, [&] { check_intertwining(F, {0.5 * I}); }));
}

TEST_CASE("coroot pairing and the Kostant test") {
  CHECK(std::abs(coroot_pairing(preset_sl2(), cplx(1.0, -1.0)) - cplx(2.0, -2.0)) < 1e-15);
  CHECK(kostant_ok({cplx(0.0, -1.0), 3.0}));
  CHECK_FALSE(kostant_ok({cplx(0.0, 0.1)}));
}
