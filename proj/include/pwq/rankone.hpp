#pragma once

// Real rank one: K-type parameters, the normalized Q~ polynomials, the scalar
// intertwining operators J = Q~(-z)/Q~(z), and the first interpolation ansatz.
//
// Coordinates: with m_2alpha = 0 a spectral parameter is lambda = z alpha,
// otherwise lambda = 2 z alpha. In both cases Q~ is evaluated at x = i z.
// For SL(2,R) the closed forms use lambda_R with lambda = lambda_R rho, which
// is z = lambda_R / 2.

#include <complex>
#include <functional>
#include <map>
#include <string>
#include <vector>

#include "pwq/report.hpp"
#include "pwq/specialfn.hpp"

namespace pwq::rankone {

using cplx = std::complex<double>;

struct RankOneParams {
  std::string name;
  int m_alpha = 1;
  int m_2alpha = 0;
  int m = 1;
  double rho_pairing = 1.0;  // rho(alpha^vee) with alpha(alpha^vee) = 2

  int gamma() const { return m_2alpha == 0 ? 2 : 4; }
  /// Throws Precondition when the multiplicities are inconsistent.
  void validate() const;
};

RankOneParams make_params(std::string name, int m_alpha, int m_2alpha);
RankOneParams preset_sl2();
RankOneParams preset_so1n(int n);  // SO_0(1,n), n >= 2
RankOneParams preset_su_n1(int n);  // SU(n,1), n >= 2
RankOneParams preset_sp_n1(int n);  // Sp(n,1), n >= 2
RankOneParams preset_f4();
std::vector<RankOneParams> all_presets();

struct KTypeData {
  double tau_norm = 0.0;
  int r = 0;
  int s = 0;

  int ceil_norm() const;
};

/// Default K-type labelling: |tau| = s = |index|, r = 0 when m_2alpha = 0 and
/// r = s otherwise.
KTypeData default_ktype(const RankOneParams& p, int index);
using KTypeTable = std::function<KTypeData(int)>;

/// Gamma_{a,b} factors of Q~ (one or two of them).
std::vector<specialfn::GammaRatioPoly> q_tilde_factors(const RankOneParams& p, const KTypeData& k);
/// Root multiset of Q~ as a polynomial in x = i z.
specialfn::FactoredPoly q_tilde_poly(const RankOneParams& p, const KTypeData& k);

/// Smallest m such that every Q~ denominator divides e with M = m ceil|tau|,
/// over nontrivial K-types with s <= s_max.
int minimal_m(int m_alpha, int m_2alpha, int s_max = 60);

/// lambda(alpha^vee) in terms of z.
cplx coroot_pairing(const RankOneParams& p, cplx z);
/// Re(i lambda(alpha^vee)) >= -1e-12 for every supplied pairing.
bool kostant_ok(const std::vector<cplx>& coroot_pairings);

cplx q_tilde_eval(const RankOneParams& p, const KTypeData& k, cplx z);
/// Q~(-z)/Q~(z). Throws Pole when |Q~(z)| <= 1e-12.
cplx j_scalar(const RankOneParams& p, const KTypeData& k, cplx z);

// SL(2,R) closed forms in the lambda_R convention.
inline cplx sl2_z_from_lambda_R(cplx lambda_R) { return lambda_R / 2.0; }
inline cplx sl2_lambda_R_from_z(cplx z) { return 2.0 * z; }
cplx sl2_q_tilde_closed(int n, cplx lambda_R);
cplx sl2_j_closed(int n, cplx lambda_R);

/// K-type coefficients tau -> v_tau with |v_tau| <= C e^{-decay |tau|}.
struct AnalyticVector {
  std::map<int, cplx> coeffs;
  double decay = 1.0;
  int truncation = 50;

  static AnalyticVector exponential(double decay, int truncation);
  Json to_json() const;
  static AnalyticVector from_json(const Json& j);
};

/// Largest R' = R - k 1e-6 with |R' c - j| >= 1e-6 for all coordinates c and
/// nonzero integers j. Throws ForbiddenR after 10^6 steps.
double perturb_R(double R, const std::vector<cplx>& coords);

/// u_tau(z) = phi_tau(z) Q~_tau(z) / Q~_tau(z0) v_tau with
/// phi_tau = [f_{M,R}(z) / f_{M,R}(z0)]^kappa, M = m ceil|tau|.
class Ansatz1Interpolant {
 public:
  Ansatz1Interpolant(RankOneParams p, AnalyticVector v, cplx z0, double R, KTypeTable table = {});

  std::map<int, cplx> operator()(cplx z) const;
  cplx coefficient(int tau, cplx z) const;

  const RankOneParams& params() const { return p_; }
  const AnalyticVector& vector() const { return v_; }
  KTypeData ktype(int tau) const { return table_(tau); }
  cplx z0() const { return z0_; }
  double R() const { return R_; }
  double R_requested() const { return R_requested_; }
  int kappa() const { return p_.m_2alpha == 0 ? 1 : 2; }

 private:
  RankOneParams p_;
  AnalyticVector v_;
  cplx z0_;
  double R_requested_;
  double R_;
  KTypeTable table_;
  std::map<int, cplx> q0_;
  std::map<int, cplx> log_f0_;
};

/// Worst |J(z) F(z)_tau - F(-z)_tau| / (1 + |F(z)_tau|) over the grid and the
/// stored K-types; tolerance 1e-8. The grid must stay 1e-6 away from Q~ zeros.
Report check_intertwining(const Ansatz1Interpolant& F, const std::vector<cplx>& grid);

/// sup over the grid of p_k(F(z)) (1 + |z|)^N e^{-rate |Im z|} with
/// p_k(u) = sum_tau (1 + |tau|)^k |u_tau|.
double pw_bound_estimate(const std::function<std::map<int, cplx>(cplx)>& F, double rate, int N, int k,
                         const std::vector<cplx>& grid);

/// Rectangle grid, resolution points per axis.
std::vector<cplx> rect_grid(double re_min, double re_max, double im_min, double im_max, int resolution);

}  // namespace pwq::rankone
