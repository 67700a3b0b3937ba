#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <numbers>

#include "pwq/ansatz2.hpp"
#include "pwq/error.hpp"
#include "pwq/estimates.hpp"

namespace pwq::ansatz2 {

namespace sf = pwq::specialfn;

namespace {

constexpr cplx kI{0.0, 1.0};

// Sign changes of w in A1^l, as a bitmask over coordinates.
unsigned flip_mask(const weyl::WeylElement& w) {
  unsigned mask = 0;
  const auto n = w.matrix.rows();
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) {
      const double v = w.matrix(i, j);
      const double expect = i == j ? 1.0 : 0.0;
      if (i == j && std::abs(v + 1.0) < 1e-12) {
        mask |= 1u << i;
      } else if (std::abs(v - expect) > 1e-12) {
        throw Error(ErrorKind::Precondition, "Weyl element is not a sign change");
      }
    }
  }
  return mask;
}

std::vector<KTypeTuple> all_tuples(int rank, int tau_max) {
  std::vector<KTypeTuple> out;
  KTypeTuple t(static_cast<std::size_t>(rank), 0);
  while (true) {
    out.push_back(t);
    std::size_t i = 0;
    while (i < t.size() && t[i] == tau_max) t[i++] = 0;
    if (i == t.size()) break;
    ++t[i];
  }
  return out;
}

void require_kostant(const ProductModel& model, const SpectralParameter& lambda0) {
  if (static_cast<int>(lambda0.size()) != model.rank()) {
    throw Error(ErrorKind::DimensionMismatch, "lambda0 has wrong rank");
  }
  std::vector<cplx> pairings;
  for (std::size_t i = 0; i < lambda0.size(); ++i) {
    pairings.push_back(rankone::coroot_pairing(model.factors[i], lambda0[i]));
  }
  if (!rankone::kostant_ok(pairings)) {
    throw Error(ErrorKind::Kostant, "lambda0 violates Re(i lambda0(alpha^vee)) >= 0");
  }
}

Json cjson(cplx z) { return Json::array({z.real(), z.imag()}); }

Json lambda_json(const SpectralParameter& l) {
  Json j = Json::array();
  for (cplx z : l) j.push_back(cjson(z));
  return j;
}

double norm2(const SpectralParameter& l) {
  double s = 0.0;
  for (cplx z : l) s += std::norm(z);
  return std::sqrt(s);
}

}  // namespace

Json ProductModel::to_json() const {
  Json j;
  Json fs = Json::array();
  for (const auto& f : factors) {
    fs.push_back({{"name", f.name}, {"m_alpha", f.m_alpha}, {"m_2alpha", f.m_2alpha}, {"m", f.m}});
  }
  j["factors"] = fs;
  j["gamma"] = gamma;
  j["h"] = h_const;
  j["m"] = m_global;
  j["weyl_order"] = W.size();
  return j;
}

ProductModel make_product_model(std::vector<rankone::RankOneParams> factors) {
  if (factors.empty()) throw Error(ErrorKind::Precondition, "product model needs at least one factor");
  ProductModel model;
  for (const auto& f : factors) {
    f.validate();
    model.gamma.push_back(f.gamma());
    model.m_global = std::max(model.m_global, f.m);
  }
  model.factors = std::move(factors);
  model.h_const = 8.0 * std::numbers::pi;
  model.roots = weyl::build_root_system("A1^" + std::to_string(model.factors.size()));
  model.W = weyl::generate_weyl(model.roots);
  return model;
}

std::vector<rankone::KTypeData> ktypes_of(const ProductModel& model, const KTypeTuple& tau) {
  if (static_cast<int>(tau.size()) != model.rank()) throw Error(ErrorKind::DimensionMismatch, "K-type tuple has wrong rank");
  std::vector<rankone::KTypeData> out;
  for (std::size_t i = 0; i < tau.size(); ++i) out.push_back(rankone::default_ktype(model.factors[i], tau[i]));
  return out;
}

double tau_norm(const ProductModel& model, const KTypeTuple& tau) {
  double s = 0.0;
  for (const auto& k : ktypes_of(model, tau)) s += k.tau_norm * k.tau_norm;
  return std::sqrt(s);
}

int tau_ceil(const ProductModel& model, const KTypeTuple& tau) {
  return static_cast<int>(std::ceil(tau_norm(model, tau) - 1e-12));
}

cplx j_product(const ProductModel& model, const KTypeTuple& tau, const weyl::WeylElement& w,
               const SpectralParameter& lambda) {
  const auto ks = ktypes_of(model, tau);
  const unsigned mask = flip_mask(w);
  cplx out = 1.0;
  for (std::size_t i = 0; i < ks.size(); ++i) {
    if (mask & (1u << i)) out *= rankone::j_scalar(model.factors[i], ks[i], lambda[i]);
  }
  return out;
}

cplx psi_eval(const ProductModel& model, int n, double R, const SpectralParameter& lambda,
              const SpectralParameter& lambda0) {
  if (static_cast<int>(lambda.size()) != model.rank() || lambda0.size() != lambda.size()) {
    throw Error(ErrorKind::DimensionMismatch, "spectral parameter has wrong rank");
  }
  const sf::SincProduct s{n, R};
  cplx log_v = 0.0;
  for (std::size_t i = 0; i < lambda.size(); ++i) {
    const cplx num = sf::log_f_eval(s, lambda[i]);
    if (std::isinf(num.real()) && num.real() < 0.0) return 0.0;
    log_v += num - sf::log_f_eval(s, lambda0[i]);
  }
  return std::exp(log_v);
}

sf::FactoredPoly e_poly(int M) { return M <= 0 ? sf::FactoredPoly(1.0) : sf::e_tau_build(M); }

cplx p_tau_eval(const ProductModel& model, const KTypeTuple& tau, const SpectralParameter& lambda,
                const SpectralParameter& lambda0) {
  require_kostant(model, lambda0);
  const int M = model.m_global * tau_ceil(model, tau);
  if (M == 0) return 1.0;
  const auto e = e_poly(M);
  cplx v = 1.0;
  for (std::size_t i = 0; i < lambda.size(); ++i) {
    const cplx den = e(kI * lambda0[i]);
    if (std::abs(den) < 1.0 - 1e-12) throw Error(ErrorKind::Precondition, "|e_tau(i lambda0)| < 1");
    v *= e(kI * lambda[i]) / den;
  }
  return v;
}

Report pole_cancellation_check(const ProductModel& model, int tau_max) {
  Stopwatch sw;
  Report rep;
  rep.check_id = "pole-cancellation";
  Json names = Json::array();
  for (const auto& f : model.factors) names.push_back(f.name);
  rep.grid = {{"factors", names}, {"tau_max", tau_max}, {"m", model.m_global}};
  ViolationTracker tr;
  long cases = 0;
  for (std::size_t i = 0; i < model.factors.size(); ++i) {
    const auto& p = model.factors[i];
    // |tau| is smallest, and so e_tau weakest, when the other components vanish
    for (int s = 1; s <= tau_max; ++s) {
      const auto e = e_poly(model.m_global * s);
      for (int r = 0; r <= s; ++r) {
        if (p.m_2alpha == 0 && r > 0) break;
        if (p.m_2alpha > 0 && (s - r) % 2 != 0) continue;
        const rankone::KTypeData k{static_cast<double>(s), r, s};
        const auto D = rankone::q_tilde_poly(p, k);
        ++cases;
        const bool ok = sf::factored_divides(D, e);
        if (ok && cases > 1) continue;
        tr.update(ok ? 0.0 : 1.0, {{"factor", p.name}, {"s", s}, {"r", r}, {"denominator", D.to_string()}});
      }
    }
  }
  tr.store(rep);
  rep.tolerance = 0.0;
  rep.constants["cases"] = static_cast<double>(cases);
  rep.constants["m"] = model.m_global;
  rep.runtime_ms = sw.elapsed_ms();
  rep.finalize();
  return rep;
}

SymmetrizedInterpolant::SymmetrizedInterpolant(ProductModel model, SpectralParameter lambda0, double R)
    : model_(std::move(model)), lambda0_(std::move(lambda0)), R_requested_(R), R_(0.0),
      p_((require_kostant(model_, lambda0_), lambda0_), model_.W) {
  R_ = rankone::perturb_R(R, lambda0_);
}

FTau::FTau(const SymmetrizedInterpolant& si, KTypeTuple tau)
    : si_(&si), tau_(std::move(tau)), lambda0_(si.lambda0()) {
  const auto& model = si.model();
  const auto ks = ktypes_of(model, tau_);
  M_ = model.m_global * tau_ceil(model, tau_);
  e_ = e_poly(M_);
  for (std::size_t i = 0; i < ks.size(); ++i) {
    D_.push_back(rankone::q_tilde_poly(model.factors[i], ks[i]));
    quotient_.push_back(e_.divided_by(D_.back()));
  }
  const sf::SincProduct s{M_, si.R()};
  log_norm_ = 0.0;
  for (cplx z0 : lambda0_) {
    log_norm_ -= static_cast<double>(kPsiPower) * sf::log_f_eval(s, z0);
    log_norm_ -= e_.log_eval(kI * z0);
  }
}

cplx FTau::flipped_factor(int i, cplx x) const {
  const auto& D = D_[static_cast<std::size_t>(i)];
  if (D.distance_to_roots(x) < 1e-3) return quotient_[static_cast<std::size_t>(i)](x) * D(-x);
  return e_(x) * D(-x) / D(x);
}

cplx FTau::operator()(const SpectralParameter& lambda) const {
  if (lambda.size() != lambda0_.size()) throw Error(ErrorKind::DimensionMismatch, "spectral parameter has wrong rank");
  const sf::SincProduct s{M_, si_->R()};
  cplx log_psi = 0.0;
  for (cplx z : lambda) {
    const cplx lf = sf::log_f_eval(s, z);
    if (std::isinf(lf.real()) && lf.real() < 0.0) return 0.0;
    log_psi += static_cast<double>(kPsiPower) * lf;
  }
  cplx sum = 0.0;
  for (const auto& w : si_->model().W) {
    const unsigned mask = flip_mask(w);
    cplx term = si_->p_poly()(w.apply(lambda));
    for (std::size_t i = 0; i < lambda.size(); ++i) {
      term *= (mask & (1u << i)) ? flipped_factor(static_cast<int>(i), -kI * lambda[i]) : e_(kI * lambda[i]);
    }
    sum += term;
  }
  if (sum == 0.0) return 0.0;
  return std::exp(log_psi + log_norm_ + std::log(sum));
}

Report check_interpolation(const SymmetrizedInterpolant& si, int tau_max) {
  Stopwatch sw;
  Report rep;
  rep.check_id = "ansatz2-interpolation";
  rep.grid = {{"lambda0", lambda_json(si.lambda0())}, {"tau_max", tau_max}, {"R", si.R()}};
  ViolationTracker tr;
  for (const auto& tau : all_tuples(si.model().rank(), tau_max)) {
    const FTau F = si.build_F_tau(tau);
    tr.update(std::abs(F(si.lambda0()) - 1.0), {{"tau", tau}});
    if (F.f_factor_count() != FTau::kPsiPower * static_cast<int>(si.model().roots.positive_roots.size())) {
      tr.update(1.0, {{"tau", tau}, {"f_factor_count", F.f_factor_count()}});
    }
  }
  tr.store(rep);
  rep.tolerance = 1e-10;
  rep.constants["R_used"] = si.R();
  rep.constants["deg_p"] = si.p_poly().degree();
  rep.runtime_ms = sw.elapsed_ms();
  rep.finalize();
  return rep;
}

Report check_w_invariance(const SymmetrizedInterpolant& si, int tau_max, const std::vector<SpectralParameter>& grid) {
  Stopwatch sw;
  Report rep;
  rep.check_id = "ansatz2-w-invariance";
  rep.grid = {{"points", grid.size()}, {"tau_max", tau_max}, {"R", si.R()}};
  const auto& model = si.model();
  const auto tuples = all_tuples(model.rank(), tau_max);
  for (const auto& tau : tuples) {
    const auto ks = ktypes_of(model, tau);
    for (std::size_t i = 0; i < ks.size(); ++i) {
      const auto D = rankone::q_tilde_poly(model.factors[i], ks[i]);
      for (const auto& l : grid) {
        if (D.distance_to_roots(kI * l[i]) < 1e-6 || D.distance_to_roots(-kI * l[i]) < 1e-6) {
          throw Error(ErrorKind::GridPrecondition, "grid point within 1e-6 of a zero of Q~");
        }
      }
    }
  }
  ViolationTracker tr;
  double max_rel = 0.0;
  for (const auto& tau : tuples) {
    const FTau F = si.build_F_tau(tau);
    for (const auto& l : grid) {
      const cplx Fl = F(l);
      for (std::size_t k = 1; k < model.W.size(); ++k) {
        const auto& w = model.W[k];
        const cplx lhs = j_product(model, tau, w, l) * Fl;
        const cplx rhs = F(w.apply(l));
        const double diff = std::abs(lhs - rhs);
        const double res = diff / (1.0 + std::abs(Fl));
        const double scale = std::max(std::abs(lhs), std::abs(rhs));
        if (scale > 1e-300) max_rel = std::max(max_rel, diff / scale);
        if (!(res <= tr.worst())) tr.update(res, {{"tau", tau}, {"w", w.word}, {"lambda", lambda_json(l)}});
      }
    }
  }
  tr.store(rep);
  rep.tolerance = 1e-8;
  rep.constants["max_relative_residual"] = max_rel;
  rep.runtime_ms = sw.elapsed_ms();
  rep.finalize();
  return rep;
}

Report check_cocycle(const ProductModel& model, int tau_max, const std::vector<SpectralParameter>& grid) {
  Stopwatch sw;
  Report rep;
  rep.check_id = "ansatz2-cocycle";
  rep.grid = {{"points", grid.size()}, {"tau_max", tau_max}};
  ViolationTracker tr;
  for (const auto& tau : all_tuples(model.rank(), tau_max)) {
    for (const auto& l : grid) {
      for (const auto& w1 : model.W) {
        const SpectralParameter l1 = w1.apply(l);
        const cplx j1 = j_product(model, tau, w1, l);
        for (const auto& w2 : model.W) {
          const cplx lhs = j_product(model, tau, w2, l1) * j1;
          const cplx rhs = j_product(model, tau, weyl::compose(w2, w1, model.roots), l);
          const double res = std::abs(lhs - rhs) / (1.0 + std::abs(rhs));
          if (!(res <= tr.worst())) {
            tr.update(res, {{"tau", tau}, {"w1", w1.word}, {"w2", w2.word}, {"lambda", lambda_json(l)}});
          }
        }
      }
    }
  }
  tr.store(rep);
  rep.tolerance = 1e-10;
  rep.runtime_ms = sw.elapsed_ms();
  rep.finalize();
  return rep;
}

std::vector<SpectralParameter> product_grid(int rank, const CoordinateGrid& g) {
  const auto axis = rankone::rect_grid(g.re_min, g.re_max, g.im_min, g.im_max, g.resolution);
  std::vector<SpectralParameter> out;
  std::vector<std::size_t> idx(static_cast<std::size_t>(rank), 0);
  while (true) {
    SpectralParameter l;
    for (std::size_t i : idx) l.push_back(axis[i]);
    out.push_back(std::move(l));
    std::size_t k = 0;
    while (k < idx.size() && idx[k] + 1 == axis.size()) idx[k++] = 0;
    if (k == idx.size()) break;
    ++idx[k];
  }
  return out;
}

namespace {

struct SupResult {
  double log_sup = -std::numeric_limits<double>::infinity();
  KTypeTuple tau;
  SpectralParameter lambda;
  std::vector<double> per_tau;
};

// Normalized log sup over a product grid, using per-coordinate tables so the
// inner loop only combines 2^l precomputed factors per point and K-type.
SupResult normalized_sup(const SymmetrizedInterpolant& si, const std::vector<KTypeTuple>& tuples, double a,
                         double A, double r_prime, const std::vector<cplx>& axis) {
  const auto& model = si.model();
  const auto l = static_cast<std::size_t>(model.rank());
  const double R = si.R();
  const std::size_t P = axis.size();
  const int deg_p = si.p_poly().degree();
  const double psi = static_cast<double>(FTau::kPsiPower);

  // per-tuple data
  struct TupleData {
    int M;
    double log_const;
    std::vector<std::size_t> slot;  // table slot per coordinate
  };
  std::map<std::pair<int, int>, std::size_t> slot_index;  // (M, tau_i) per coordinate shares the key
  std::vector<std::pair<int, int>> slots;
  std::vector<TupleData> tdata;
  int M_max = 0;
  for (const auto& tau : tuples) {
    const FTau F = si.build_F_tau(tau);
    TupleData td;
    td.M = F.M();
    M_max = std::max(M_max, td.M);
    const double tn = tau_norm(model, tau);
    const auto e = e_poly(td.M);
    double c = -4.0 * static_cast<double>(l) * std::log1p(tn) - a * r_prime * tn;
    const sf::SincProduct s{td.M, R};
    for (cplx z0 : si.lambda0()) c -= psi * sf::log_f_eval(s, z0).real() + e.log_eval(kI * z0).real();
    td.log_const = c;
    for (std::size_t i = 0; i < l; ++i) {
      const auto key = std::make_pair(td.M, tau[i]);
      auto it = slot_index.find(key);
      if (it == slot_index.end()) {
        it = slot_index.emplace(key, slots.size()).first;
        slots.push_back(key);
      }
      td.slot.push_back(it->second);
    }
    tdata.push_back(std::move(td));
  }

  // log|f_M| per grid point, normalized by 8 pi R |Im z|
  std::vector<std::vector<double>> lf(P);
  for (std::size_t k = 0; k < P; ++k) {
    const auto row = sf::log_f_row(R, axis[k], M_max);
    lf[k].resize(row.size());
    for (std::size_t n = 0; n < row.size(); ++n) {
      lf[k][n] = psi * row[n].real() - psi * std::numbers::pi * R * std::abs(axis[k].imag());
    }
  }

  // unflipped and flipped factors per slot, coordinate and grid point, with a shared scale
  struct Entry {
    cplx plus, minus;
    double log_scale;
  };
  std::vector<std::vector<std::vector<Entry>>> table(l, std::vector<std::vector<Entry>>(slots.size()));
  for (std::size_t i = 0; i < l; ++i) {
    for (std::size_t sidx = 0; sidx < slots.size(); ++sidx) {
      const auto [M, ti] = slots[sidx];
      const auto k = rankone::default_ktype(model.factors[i], ti);
      const auto D = rankone::q_tilde_poly(model.factors[i], k);
      const auto e = e_poly(M);
      const auto q = e.divided_by(D);
      auto& col = table[i][sidx];
      col.resize(P);
      for (std::size_t g = 0; g < P; ++g) {
        const cplx x = kI * axis[g];
        const cplx plus = e(x);
        const cplx y = -x;
        const cplx minus = D.distance_to_roots(y) < 1e-3 ? q(y) * D(-y) : e(y) * D(-y) / D(y);
        double sc = std::max(std::abs(plus), std::abs(minus));
        if (!(sc > 0.0)) sc = 1.0;
        col[g] = {plus / sc, minus / sc, std::log(sc)};
      }
    }
  }

  std::vector<unsigned> masks;
  for (const auto& w : model.W) masks.push_back(flip_mask(w));

  SupResult best;
  best.per_tau.assign(tuples.size(), -std::numeric_limits<double>::infinity());
  std::vector<std::size_t> idx(l, 0);
  SpectralParameter lam(l);
  std::vector<cplx> pw(model.W.size());
  while (true) {
    double nrm2 = 0.0, im2 = 0.0, im1 = 0.0;
    for (std::size_t i = 0; i < l; ++i) {
      lam[i] = axis[idx[i]];
      nrm2 += std::norm(lam[i]);
      im2 += lam[i].imag() * lam[i].imag();
      im1 += std::abs(lam[i].imag());
    }
    double pw_abs = 0.0;
    for (std::size_t w = 0; w < model.W.size(); ++w) {
      pw[w] = si.p_poly()(model.W[w].apply(lam));
      pw_abs += std::abs(pw[w]);
    }
    const double log_pw_abs = std::log(pw_abs);
    const double point_log = psi * std::numbers::pi * R * im1 - A * R * std::sqrt(im2) -
                             static_cast<double>(deg_p) * std::log1p(std::sqrt(nrm2));
    for (std::size_t t = 0; t < tuples.size(); ++t) {
      const auto& td = tdata[t];
      double base = td.log_const + point_log;
      const Entry* ent[8];
      for (std::size_t i = 0; i < l; ++i) {
        ent[i] = &table[i][td.slot[i]][idx[i]];
        base += lf[idx[i]][static_cast<std::size_t>(td.M)] + ent[i]->log_scale;
      }
      // the scaled factors have modulus <= 1, so |S| <= sum |p_w|
      if (!(base + log_pw_abs > best.per_tau[t])) continue;
      double sr = 0.0, si_ = 0.0;
      for (std::size_t w = 0; w < masks.size(); ++w) {
        double tr = pw[w].real(), ti = pw[w].imag();
        for (std::size_t i = 0; i < l; ++i) {
          const cplx& fct = (masks[w] & (1u << i)) ? ent[i]->minus : ent[i]->plus;
          const double nr = tr * fct.real() - ti * fct.imag();
          ti = tr * fct.imag() + ti * fct.real();
          tr = nr;
        }
        sr += tr;
        si_ += ti;
      }
      const double v = base + 0.5 * std::log(sr * sr + si_ * si_);
      if (v > best.per_tau[t]) best.per_tau[t] = v;
      if (v > best.log_sup) {
        best.log_sup = v;
        best.tau = tuples[t];
        best.lambda = lam;
      }
    }
    std::size_t k = 0;
    while (k < l && idx[k] + 1 == P) idx[k++] = 0;
    if (k == l) break;
    ++idx[k];
  }
  return best;
}

}  // namespace

Report estimate_condition_iii(const SymmetrizedInterpolant& si, int tau_max, double r, const CoordinateGrid& grid,
                              std::vector<ScanRow>* rows) {
  Stopwatch sw;
  const double R = si.R();
  if (!estimates::gate_holds(R, r)) {
    throw Error(ErrorKind::Precondition, "gate (log R)^2 / R^2 < c r fails");
  }
  const auto& model = si.model();
  if (model.rank() > 8) throw Error(ErrorKind::Precondition, "rank too large for the tabulated scan");
  const double l = static_cast<double>(model.roots.positive_roots.size());
  const double r_min = std::log(R) * std::log(R) / (estimates::kGateC * R * R);
  const double r_prime = 0.5 * (r_min + r);
  const double a = 8.0 * model.m_global * l;
  const double A = model.h_const * l;

  const auto tuples = all_tuples(model.rank(), tau_max);
  CoordinateGrid fine = grid;
  fine.resolution = 2 * grid.resolution - 1;
  const auto coarse_axis = rankone::rect_grid(grid.re_min, grid.re_max, grid.im_min, grid.im_max, grid.resolution);
  const auto fine_axis = rankone::rect_grid(fine.re_min, fine.re_max, fine.im_min, fine.im_max, fine.resolution);
  const SupResult c = normalized_sup(si, tuples, a, A, r_prime, coarse_axis);
  const SupResult f = normalized_sup(si, tuples, a, A, r_prime, fine_axis);

  Report rep;
  rep.check_id = "ansatz2-condition-iii";
  rep.grid = {{"re", {grid.re_min, grid.re_max}},
              {"im", {grid.im_min, grid.im_max}},
              {"resolution", grid.resolution},
              {"resolution_refined", fine.resolution},
              {"tau_max", tau_max},
              {"lambda0", lambda_json(si.lambda0())},
              {"R", si.R_requested()},
              {"r", r}};
  rep.worst_violation = std::abs(std::expm1(f.log_sup - c.log_sup));
  rep.witness = {{"tau", f.tau}, {"lambda", lambda_json(f.lambda)}};
  rep.constants["log_C_prime"] = f.log_sup;
  rep.constants["log_C_prime_coarse"] = c.log_sup;
  rep.constants["C_prime"] = std::exp(f.log_sup);
  rep.constants["a"] = a;
  rep.constants["A"] = A;
  rep.constants["r_prime"] = r_prime;
  rep.constants["R_used"] = R;
  rep.constants["deg_p"] = si.p_poly().degree();
  rep.constants["norm_of_witness"] = norm2(f.lambda);
  rep.tolerance = 0.02;
  if (rows) {
    rows->clear();
    for (std::size_t t = 0; t < tuples.size(); ++t) {
      rows->push_back({tuples[t], tau_norm(model, tuples[t]), f.per_tau[t]});
    }
  }
  rep.runtime_ms = sw.elapsed_ms();
  rep.finalize();
  return rep;
}

}  // namespace pwq::ansatz2
