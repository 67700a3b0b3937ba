#pragma once

// Small-rank root systems and their Weyl groups. Roots are handled exactly as
// integer coefficient vectors in the basis of simple roots; a real orthonormal
// realization is kept alongside for acting on spectral parameters.

#include <complex>
#include <cstdint>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "pwq/report.hpp"

namespace pwq::weyl {

using cplx = std::complex<double>;
using SpectralParameter = std::vector<cplx>;
using IntVec = std::vector<int>;

struct RootSystemData {
  std::string kind;
  int rank = 0;
  std::vector<IntVec> cartan;  // cartan[i][j] = <alpha_i, alpha_j^vee>
  std::vector<Eigen::VectorXd> simple_roots;
  std::vector<IntVec> positive_roots;  // coefficients in the simple roots

  Eigen::VectorXd realize(const IntVec& coeffs) const;
  /// s_i(beta) = beta - <beta, alpha_i^vee> alpha_i, i zero-based.
  IntVec reflect(int i, const IntVec& beta) const;
  bool is_positive_root(const IntVec& beta) const;
  bool is_negative_root(const IntVec& beta) const;
  Json to_json() const;
};

/// "A1^l" (l = 1, 2, 3, ...), "A1", "A2", "B2", "G2".
RootSystemData build_root_system(const std::string& kind);

struct WeylElement {
  std::vector<int> word;          // 1-based simple reflection labels, w = s_{i1} ... s_{ik}
  std::vector<IntVec> action;     // images of the simple roots
  Eigen::MatrixXd matrix;         // orthogonal action on the real span

  IntVec apply(const IntVec& beta) const;
  SpectralParameter apply(const SpectralParameter& lambda) const;
  Json to_json() const;
};

WeylElement identity_element(const RootSystemData& rs);
WeylElement element_from_word(const std::vector<int>& word, const RootSystemData& rs);
WeylElement compose(const WeylElement& a, const WeylElement& b, const RootSystemData& rs);  // a b
WeylElement inverse(const WeylElement& w, const RootSystemData& rs);
bool same_element(const WeylElement& a, const WeylElement& b);

/// Number of positive roots sent to negative roots.
int inversion_count(const WeylElement& w, const RootSystemData& rs);

/// Breadth-first closure; each element carries a shortest (reduced) word.
std::vector<WeylElement> generate_weyl(const RootSystemData& rs);

/// Every word of minimal length representing w.
std::vector<std::vector<int>> reduced_words(const WeylElement& w, const RootSystemData& rs);

/// [w_j^{-1} alpha_{i_j}] with w_j = s_{i_{j+1}} ... s_{i_n}. Throws
/// NonReducedWord unless the word is reduced; checks positivity and
/// distinctness (Precondition on failure).
std::vector<IntVec> factorization_roots(const std::vector<int>& word, const RootSystemData& rs);

struct Orbit {
  std::vector<SpectralParameter> points;  // points[0] is lambda0
  int stabilizer_order = 1;
};

/// Distinct points w lambda0 (tolerance 1e-9) and |W_lambda0| = |W| / |orbit|.
Orbit orbit_and_stabilizer(const SpectralParameter& lambda0, const std::vector<WeylElement>& W);

struct LinearFactor {
  SpectralParameter functional;
  SpectralParameter shift;  // the orbit point mu
  cplx denominator;
};

/// p(lambda) = (1/|W_lambda0|) prod_{mu != lambda0} B(lambda - mu, nu_mu) / B(lambda0 - mu, nu_mu).
class OrbitInterpolant {
 public:
  OrbitInterpolant(SpectralParameter lambda0, const std::vector<WeylElement>& W);

  cplx operator()(const SpectralParameter& lambda) const;
  int degree() const { return static_cast<int>(factors_.size()); }
  int stabilizer_order() const { return orbit_.stabilizer_order; }
  const Orbit& orbit() const { return orbit_; }
  const SpectralParameter& lambda0() const { return lambda0_; }
  const std::vector<LinearFactor>& factors() const { return factors_; }

 private:
  SpectralParameter lambda0_;
  Orbit orbit_;
  std::vector<LinearFactor> factors_;
};

/// Complex-bilinear extension of the invariant inner product.
cplx bilinear(const SpectralParameter& u, const SpectralParameter& v);

/// Exhaustive checks over every element and every reduced word.
Report check_factorization(const std::vector<std::string>& kinds);
/// p(lambda0) = 1/|W_lambda0| and p = 0 on the rest of the orbit, seeded lambda0.
Report check_p_lambda0(const std::vector<std::string>& kinds, int samples, std::uint64_t seed);

}  // namespace pwq::weyl
