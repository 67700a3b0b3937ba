#include <algorithm>
#include <set>

#include "doctest.h"
#include "pwq/error.hpp"
#include "pwq/weyl.hpp"

using namespace pwq;
using namespace pwq::weyl;

namespace {

bool throws_kind(ErrorKind kind, auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.kind() == kind;
  }
  return false;
}

const WeylElement& longest(const std::vector<WeylElement>& W) {
  return *std::max_element(W.begin(), W.end(),
                           [](const auto& a, const auto& b) { return a.word.size() < b.word.size(); });
}

}  // namespace

TEST_CASE("group orders and positive root counts") {
  const std::vector<std::tuple<std::string, size_t, size_t>> cases = {
      {"A1", 2, 1}, {"A2", 6, 3}, {"B2", 8, 4}, {"G2", 12, 6}, {"A1^3", 8, 3}};
  for (const auto& [kind, order, npos] : cases) {
    const auto rs = build_root_system(kind);
    const auto W = generate_weyl(rs);
    CHECK(W.size() == order);
    CHECK(rs.positive_roots.size() == npos);
    CHECK(static_cast<size_t>(inversion_count(longest(W), rs)) == npos);
    CHECK(longest(W).word.size() == npos);
  }
  CHECK(throws_kind(ErrorKind::UnsupportedKind, [] { build_root_system("E8"); }));
}

TEST_CASE("reduced words of the longest elements") {
  // dihedral groups: the longest element has exactly two reduced words
  for (const char* kind : {"A2", "B2", "G2"}) {
    const auto rs = build_root_system(kind);
    const auto W = generate_weyl(rs);
    CHECK(reduced_words(longest(W), rs).size() == 2);
  }
  const auto rs = build_root_system("A1^3");
  CHECK(reduced_words(longest(generate_weyl(rs)), rs).size() == 6);
}

TEST_CASE("factorization roots are positive and distinct") {
  const auto rs = build_root_system("B2");
  const auto roots = factorization_roots({1, 2, 1, 2}, rs);
  REQUIRE(roots.size() == 4);
  std::set<IntVec> seen(roots.begin(), roots.end());
  CHECK(seen.size() == 4);
  for (const auto& r : roots) CHECK(rs.is_positive_root(r));
  CHECK(throws_kind(ErrorKind::NonReducedWord, [&] { factorization_roots({1, 1}, rs); }));
  CHECK(check_factorization({"A2", "B2", "G2", "A1^3"}).passed);
}

TEST_CASE("group operations") {
  const auto rs = build_root_system("G2");
  const auto a = element_from_word({1, 2, 1}, rs);
  const auto b = element_from_word({2, 1}, rs);
  CHECK(same_element(compose(a, inverse(a, rs), rs), identity_element(rs)));
  CHECK(same_element(compose(a, b, rs), element_from_word({1, 2, 1, 2, 1}, rs)));
  CHECK(rs.reflect(0, {1, 0}) == IntVec{-1, 0});
}

TEST_CASE("orbit interpolant on A1") {
  const auto rs = build_root_system("A1");
  const auto W = generate_weyl(rs);
  // orbit {1, -1} in the realized coordinate: p(lambda) = (lambda + 1)/2
  const Eigen::VectorXd a = rs.realize({1});
  const double unit = 1.0 / a.norm();
  const OrbitInterpolant p({cplx(unit)}, W);
  CHECK(p.degree() == 1);
  CHECK(std::abs(p({cplx(unit)}) - 1.0) < 1e-14);
  CHECK(std::abs(p({cplx(-unit)})) < 1e-14);
  CHECK(std::abs(p({cplx(0.0)}) - 0.5) < 1e-14);
}

TEST_CASE("orbit interpolant with a full stabilizer") {
  const auto rs = build_root_system("B2");
  const auto W = generate_weyl(rs);
  const OrbitInterpolant p({cplx(0.0), cplx(0.0)}, W);
  CHECK(p.stabilizer_order() == 8);
  CHECK(std::abs(p({cplx(0.3, 1.0), cplx(-2.0)}) - 0.125) < 1e-15);
}

TEST_CASE("orbit interpolant values on seeded points") {
  CHECK(check_p_lambda0({"A2", "B2", "G2", "A1^3"}, 5, 11).passed);
}
