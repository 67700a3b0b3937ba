#pragma once

// Weyl-averaged interpolation on product models A1^l, where every
// intertwining scalar is a product of rank-one scalars. Spectral parameters
// are tuples z = (z_1, ..., z_l) of rank-one coordinates, so that
// lambda(alpha_i^vee / gamma_i) = z_i and W acts by sign changes.

#include <complex>
#include <vector>

#include "pwq/rankone.hpp"
#include "pwq/report.hpp"
#include "pwq/specialfn.hpp"
#include "pwq/weyl.hpp"

namespace pwq::ansatz2 {

using cplx = std::complex<double>;
using weyl::SpectralParameter;
using KTypeTuple = std::vector<int>;

struct ProductModel {
  std::vector<rankone::RankOneParams> factors;
  std::vector<int> gamma;
  double h_const = 0.0;  // 8 pi max ||alpha^vee / gamma||, = 8 pi in these coordinates
  int m_global = 1;
  weyl::RootSystemData roots;
  std::vector<weyl::WeylElement> W;

  int rank() const { return static_cast<int>(factors.size()); }
  Json to_json() const;
};

ProductModel make_product_model(std::vector<rankone::RankOneParams> factors);

/// Per-factor K-type data; |tau| is the Euclidean norm of the factor norms.
std::vector<rankone::KTypeData> ktypes_of(const ProductModel& model, const KTypeTuple& tau);
double tau_norm(const ProductModel& model, const KTypeTuple& tau);
int tau_ceil(const ProductModel& model, const KTypeTuple& tau);

/// Product over the factors flipped by w of the rank-one scalar at that coordinate.
cplx j_product(const ProductModel& model, const KTypeTuple& tau, const weyl::WeylElement& w,
               const SpectralParameter& lambda);

/// prod_i f_{n,R}(z_i) / prod_i f_{n,R}(z0_i).
cplx psi_eval(const ProductModel& model, int n, double R, const SpectralParameter& lambda,
              const SpectralParameter& lambda0);
/// prod_i e_tau(i z_i) / prod_i e_tau(i z0_i); identically 1 for trivial tau.
cplx p_tau_eval(const ProductModel& model, const KTypeTuple& tau, const SpectralParameter& lambda,
                const SpectralParameter& lambda0);

/// e_tau with M = m ceil|tau|, the constant 1 when M = 0.
specialfn::FactoredPoly e_poly(int M);

/// Exact divisibility of every intertwining denominator into e_tau for s <= tau_max.
Report pole_cancellation_check(const ProductModel& model, int tau_max);

class SymmetrizedInterpolant;

/// F_tau(lambda) = sum_w phi_tau(w^{-1} lambda) p_lambda0(w^{-1} lambda) J_{w, w^{-1} lambda}[tau].
class FTau {
 public:
  FTau(const SymmetrizedInterpolant& si, KTypeTuple tau);

  cplx operator()(const SpectralParameter& lambda) const;

  int M() const { return M_; }
  /// Number of f-factors in phi_tau: exponent times positive roots.
  int f_factor_count() const { return kPsiPower * static_cast<int>(lambda0_.size()); }
  int e_factor_count() const { return static_cast<int>(lambda0_.size()); }

  static constexpr int kPsiPower = 8;

  /// e(x) D(-x)/D(x) at x, switching to the exact quotient near roots of D.
  cplx flipped_factor(int i, cplx x) const;

 private:
  const SymmetrizedInterpolant* si_;
  KTypeTuple tau_;
  SpectralParameter lambda0_;
  int M_;
  specialfn::FactoredPoly e_;
  std::vector<specialfn::FactoredPoly> D_;
  std::vector<specialfn::FactoredPoly> quotient_;  // e / D
  cplx log_norm_;  // -8 sum log f(z0_i) - sum log e(i z0_i)
};

class SymmetrizedInterpolant {
 public:
  SymmetrizedInterpolant(ProductModel model, SpectralParameter lambda0, double R);

  const ProductModel& model() const { return model_; }
  const SpectralParameter& lambda0() const { return lambda0_; }
  double R() const { return R_; }
  double R_requested() const { return R_requested_; }
  const weyl::OrbitInterpolant& p_poly() const { return p_; }

  FTau build_F_tau(const KTypeTuple& tau) const { return FTau(*this, tau); }

 private:
  ProductModel model_;
  SpectralParameter lambda0_;
  double R_requested_;
  double R_;
  weyl::OrbitInterpolant p_;
};

/// |F_tau(lambda0) - 1| over tau in [0, tau_max]^l.
Report check_interpolation(const SymmetrizedInterpolant& si, int tau_max);
/// |j_product(w, lambda) F(lambda) - F(w lambda)| / (1 + |F(lambda)|), tolerance 1e-8.
Report check_w_invariance(const SymmetrizedInterpolant& si, int tau_max, const std::vector<SpectralParameter>& grid);
/// j(w2, w1 lambda) j(w1, lambda) = j(w2 w1, lambda), tolerance 1e-10.
Report check_cocycle(const ProductModel& model, int tau_max, const std::vector<SpectralParameter>& grid);

struct CoordinateGrid {
  double re_min = -3.0;
  double re_max = 3.0;
  double im_min = -1.0;
  double im_max = 1.0;
  int resolution = 21;
};

struct ScanRow {
  KTypeTuple tau;
  double tau_norm = 0.0;
  double log_sup = 0.0;  // log of the normalized sup over the fine grid
};

/// sup |F_tau(lambda)| / [(1+|tau|)^{4l} e^{a r' |tau|} (1+||lambda||)^{deg p} e^{A R ||Im lambda||}]
/// with a = 8 m l, A = h l, r' halfway between the gate minimum and r. Compares
/// the grid against its doubling (2 res - 1 points per axis); tolerance 2%.
/// Per-K-type sups go to rows when given.
Report estimate_condition_iii(const SymmetrizedInterpolant& si, int tau_max, double r, const CoordinateGrid& grid,
                              std::vector<ScanRow>* rows = nullptr);

/// Product grid of rectangle grids, one per coordinate.
std::vector<SpectralParameter> product_grid(int rank, const CoordinateGrid& g);

}  // namespace pwq::ansatz2
