#include <cmath>

#include "doctest.h"
#include "pwq/crown.hpp"
#include "pwq/error.hpp"

using namespace pwq;
using namespace pwq::crown;

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

TEST_CASE("SU(1,1) membership") {
  CHECK(su11_member(0.13, 1.0));
  CHECK_FALSE(su11_member(0.5, 1.0));
  CHECK(su11_member(0.0, 5.0));
  const DiscPair p = su11_point(0.1, 0.7);
  CHECK(std::abs(p.z - std::exp(0.2) * std::tanh(0.7)) < 1e-15);
}

TEST_CASE("SU(1,1) closed-form radius") {
  const double e2 = std::exp(2.0);
  // R / sqrt 8 = 1 at R = 2 sqrt 2
  CHECK(std::abs(su11_beta(2.0 * std::sqrt(2.0)) - 0.5 * std::log((e2 + 1.0) / (e2 - 1.0))) < 1e-15);
  CHECK(std::abs(su11_beta_scan(2.0 * std::sqrt(2.0), 1e-3) - su11_beta(2.0 * std::sqrt(2.0))) < 2e-3);
}

TEST_CASE("SO_0(1,n) membership and chamber bound") {
  const std::vector<double> dir{1.0, 0.0};
  CHECK(so1n_member({0.0}, 3.0, dir));
  const double t = std::asinh(1.0);
  const double b = std::asinh(1.0);  // boundary: sinh beta sinh t = 1
  CHECK(so1n_member({b - 1e-6}, t, dir));
  CHECK_FALSE(so1n_member({b + 1e-6}, t, dir));
  CHECK(throws_kind(ErrorKind::DimensionMismatch, [] { so1n_member({0.1, 0.1}, 1.0, {1.0, 0.0}); }));
  // R' = 1 for n = 4 at R = sqrt 6
  const double s1 = (std::exp(1.0) - std::exp(-1.0)) / 2.0;
  CHECK(std::abs(so1n_chamber_bound(std::sqrt(6.0), 4) - std::asinh(1.0 / s1)) < 1e-14);
  CHECK(throws_kind(ErrorKind::Precondition, [] { so1n_rprime(1.0, 3); }));
  CHECK(std::abs(so1n_chamber_scan(std::sqrt(6.0), 4, 5, 1e-3, 1e-2) - so1n_chamber_bound(std::sqrt(6.0), 4)) < 2e-3);
}

TEST_CASE("GL(n) square-root domain") {
  const Eigen::MatrixXd Y = Eigen::MatrixXd::Identity(3, 3);
  CHECK(gln_sqrt_member(Y, {0.0}));
  CHECK(gln_sqrt_member(Y, {3.0}));
  CHECK(throws_kind(ErrorKind::DimensionMismatch, [&] { gln_sqrt_member(Y, {0.1, 0.1}); }));
  Eigen::MatrixXd bad = Y;
  bad(0, 1) = 0.5;
  CHECK(throws_kind(ErrorKind::NonSymmetricInput, [&] { gln_sqrt_member(bad, {0.0}); }));

  // diag(e^R, e^-R): member iff tanh^2 x e^{2R} < 1
  const double R = 1.5;
  const Eigen::MatrixXd D = Eigen::Vector2d(std::exp(R), std::exp(-R)).asDiagonal();
  const double edge = std::atanh(std::exp(-R));
  CHECK(gln_sqrt_member(D, {edge * 0.999}));
  CHECK_FALSE(gln_sqrt_member(D, {edge * 1.001}));

  const Eigen::MatrixXd ext = gln_sample_Y(1.0, 4, 0, 1);
  CHECK(std::abs(ext(0, 0) - std::exp(1.0)) < 1e-14);
  const Eigen::MatrixXd rnd = gln_sample_Y(1.0, 4, 3, 1);
  CHECK((rnd - rnd.transpose()).norm() < 1e-14);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(rnd);
  CHECK(std::abs(es.eigenvalues().maxCoeff() - std::exp(1.0)) < 1e-10);
  CHECK(std::abs(es.eigenvalues().minCoeff() - std::exp(-1.0)) < 1e-10);
}

TEST_CASE("GL(n) radius scan respects the sufficient radius") {
  const GlnScan s = gln_radius_scan(2.0, 4, 10, 3);
  CHECK(s.gate_failures == 0);
  CHECK(s.gate_trials > 0);
  CHECK(s.r_scan >= std::atanh(std::exp(-2.0)) * 0.99);
}

TEST_CASE("least squares recovers a line") {
  const LineFit fit = least_squares({1.0, 2.0, 3.0, 4.0}, {1.0, -1.0, -3.0, -5.0});
  CHECK(std::abs(fit.slope + 2.0) < 1e-14);
  CHECK(std::abs(fit.intercept - 3.0) < 1e-13);
}

TEST_CASE("report-level checks") {
  CHECK(check_su11({1.0}, 1e-3).passed);
  CHECK(check_so1n({2}, {1.0}, 9).passed);
  CHECK(check_gln({1.0, 2.0, 3.0}, 3, 10, 4).passed);
}
