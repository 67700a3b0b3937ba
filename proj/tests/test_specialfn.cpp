#include <cmath>
#include <numbers>

#include "doctest.h"
#include "pwq/error.hpp"
#include "pwq/specialfn.hpp"

using namespace pwq;
using namespace pwq::specialfn;
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

double rel(cplx a, cplx b) { return std::abs(a - b) / std::max(1.0, std::abs(b)); }

}  // namespace

TEST_CASE("log_gamma at classical values") {
  CHECK(std::abs(log_gamma(1.0)) < 1e-14);
  CHECK(std::abs(log_gamma(2.0)) < 1e-14);
  CHECK(std::abs(std::exp(log_gamma(0.5)) - std::sqrt(pi)) < 1e-13);
  CHECK(std::abs(std::exp(log_gamma(5.0)) - 24.0) < 1e-11);
  CHECK(std::abs(log_gamma(11.0).real() - std::log(3628800.0)) < 1e-12);
  CHECK(std::abs(log_gamma(3.7).real() - std::lgamma(3.7)) < 1e-13);
  CHECK(std::abs(log_gamma(-2.5).real() - std::lgamma(-2.5)) < 1e-13);
}

TEST_CASE("log_gamma satisfies the recurrence off the real axis") {
  for (cplx z : {cplx(0.3, 2.1), cplx(-4.2, 0.7), cplx(12.0, -30.0), cplx(0.01, -0.5)}) {
    const cplx lhs = std::exp(log_gamma(z + 1.0));
    const cplx rhs = z * std::exp(log_gamma(z));
    CHECK(std::abs(lhs - rhs) / std::abs(rhs) < 1e-12);
  }
}

TEST_CASE("log_gamma modulus on the imaginary axis and reflection") {
  for (double y : {0.1, 1.0, 3.0, 7.5}) {
    const double modsq = std::exp(2.0 * log_gamma(cplx(0.0, y)).real());
    const double expect = pi / (y * std::sinh(pi * y));
    CHECK(std::abs(modsq - expect) / expect < 1e-12);
  }
  const cplx z(0.3, 0.8);
  const cplx prod = std::exp(log_gamma(z) + log_gamma(1.0 - z));
  CHECK(std::abs(prod - pi / std::sin(pi * z)) / std::abs(prod) < 1e-12);
}

TEST_CASE("log_gamma rejects poles") {
  CHECK(throws_kind(ErrorKind::Pole, [] { log_gamma(0.0); }));
  CHECK(throws_kind(ErrorKind::Pole, [] { log_gamma(-3.0); }));
}

TEST_CASE("q_n rising products") {
  CHECK(q_eval(0, 5.0) == 1.0);
  CHECK(std::abs(q_eval(2, 1.0) - 3.0) < 1e-15);
  CHECK(std::abs(q_eval(3, 2.0) - 10.0) < 1e-14);
  CHECK(std::abs(log_q_eval(40, 1.5) - std::log(q_eval(40, 1.5))) < 1e-12);
}

TEST_CASE("Gamma ratio polynomials") {
  const GammaRatioPoly g13(HalfInt::from_int(1), HalfInt::from_int(3));
  CHECK(g13.degree() == 2);
  CHECK(std::abs(g13(1.0) - 3.0) < 1e-14);
  CHECK(std::abs(g13(0.0) - 1.0) < 1e-15);
  // (z+1)(z+2)/2 at a complex point
  const cplx z(0.4, -1.3);
  CHECK(std::abs(g13(z) - (z + 1.0) * (z + 2.0) / 2.0) < 1e-13);

  const GammaRatioPoly gh(HalfInt::half(), HalfInt::from_doubled(5));
  CHECK(std::abs(gh(1.0) - 5.0) < 1e-13);
  CHECK(std::abs(FactoredPoly::from(gh)(z) - gh(z)) < 1e-12);
  CHECK(throws_kind(ErrorKind::Precondition, [] { GammaRatioPoly(HalfInt::half(), HalfInt::from_int(2)); }));
}

TEST_CASE("e_tau values and divisibility") {
  const FactoredPoly e1 = e_tau_build(1);
  CHECK(e1.degree() == 4);
  CHECK(std::abs(e1(1.0) - 36.0) < 1e-12);
  CHECK(std::abs(e1(0.0) - 1.0) < 1e-15);
  CHECK(e_tau_build(3).degree() == 12);
  CHECK(throws_kind(ErrorKind::ArgumentZero, [] { e_tau_build(0); }));

  const auto d_ok = FactoredPoly::from(GammaRatioPoly(HalfInt::half(), HalfInt::from_doubled(3)));
  const auto d_bad = FactoredPoly::from(GammaRatioPoly(HalfInt::half(), HalfInt::from_doubled(5)));
  CHECK(factored_divides(d_ok, e1));
  CHECK_FALSE(factored_divides(d_bad, e1));
  CHECK(factored_divides(d_bad, e_tau_build(2)));
  const FactoredPoly q = e1.divided_by(d_ok);
  CHECK(q.degree() == 3);
  CHECK(std::abs((q * d_ok)(cplx(0.7, 0.2)) - e1(cplx(0.7, 0.2))) < 1e-12);
  CHECK(throws_kind(ErrorKind::Precondition, [&] { e1.divided_by(d_bad); }));
}

TEST_CASE("f_{n,R} example values") {
  CHECK(std::abs(f_eval({0, 1.0}, 0.5) - 2.0 / pi) < 1e-14);
  // prod_{j>2} (1 - 1/j^2) telescopes to 2/3
  CHECK(std::abs(f_eval({2, 1.0}, 1.0) - 2.0 / 3.0) < 1e-12);
  CHECK(std::abs(f_eval({5, 3.0}, 0.0) - 1.0) < 1e-15);
}

TEST_CASE("f_{n,R} sine and product forms agree") {
  for (int n : {0, 1, 7, 30}) {
    for (double R : {1.0, 3.0, 10.0}) {
      for (cplx z : {cplx(0.37, 0.0), cplx(1.3, 0.4), cplx(-2.9, -1.1), cplx(0.05, 2.5)}) {
        const SincProduct s{n, R};
        if (distance_to_core_integers(s, z) < 0.05) continue;
        CHECK(rel(std::exp(log_f_sine_form(s, z)), std::exp(log_f_product_form(s, z))) < 1e-9);
      }
    }
  }
}

TEST_CASE("f_{n,R} product form against a long direct product") {
  const SincProduct s{4, 2.0};
  const cplx z(0.8, 0.3);
  cplx direct = 1.0;
  for (int j = 5; j <= 2000000; ++j) {
    const cplx w = s.R * z / static_cast<double>(j);
    direct *= 1.0 - w * w;
  }
  // the neglected tail is about (Rz)^2 / J
  CHECK(std::abs(f_eval(s, z) - direct) < 1e-5);
}

TEST_CASE("f_{n,R} is even and rows match single evaluations") {
  const SincProduct s{6, 3.0};
  const cplx z(1.7, -0.6);
  CHECK(rel(f_eval(s, z), f_eval(s, -z)) < 1e-12);
  const auto row = log_f_row(3.0, z, 12);
  REQUIRE(row.size() == 13);
  for (int n = 0; n <= 12; ++n) CHECK(rel(std::exp(row[n]), f_eval({n, 3.0}, z)) < 1e-10);
}

TEST_CASE("estimate kernel Gamma form on the real segment") {
  for (int n : {5, 20}) {
    for (double x : {0.3, 1.1, 1.9}) {
      const EstimateKernel k{n, 3.0};
      CHECK(rel(std::exp(k.log_eval(x)), std::exp(log_estimate_kernel_gamma_form(n, 3.0, x))) < 1e-9);
    }
  }
}

TEST_CASE("FactoredPoly bookkeeping") {
  const FactoredPoly p(2.0, {{HalfInt::from_int(-1), 2}, {HalfInt::half(), 1}});
  CHECK(p.degree() == 3);
  CHECK(std::abs(p(0.0) - 2.0 * 1.0 * (-0.5)) < 1e-15);
  CHECK(std::abs(p.distance_to_roots(cplx(0.5, 0.25)) - 0.25) < 1e-15);
  CHECK(std::isinf(p.log_eval(-1.0).real()));
  CHECK(p.pow(2).degree() == 6);
}
