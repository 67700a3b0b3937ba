#include <algorithm>
#include <cmath>
#include <random>

#include "pwq/error.hpp"
#include "pwq/weyl.hpp"

namespace pwq::weyl {

namespace {

double distance(const SpectralParameter& a, const SpectralParameter& b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += std::norm(a[i] - b[i]);
  return std::sqrt(s);
}

SpectralParameter minus(const SpectralParameter& a, const SpectralParameter& b) {
  SpectralParameter d(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) d[i] = a[i] - b[i];
  return d;
}

// Fallback functionals: e_k, then e_i + e_j and e_i - e_j for i < j.
std::vector<SpectralParameter> fallback_functionals(std::size_t n) {
  std::vector<SpectralParameter> out;
  for (std::size_t k = 0; k < n; ++k) {
    SpectralParameter e(n, 0.0);
    e[k] = 1.0;
    out.push_back(e);
  }
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      SpectralParameter p(n, 0.0), m(n, 0.0);
      p[i] = 1.0;
      p[j] = 1.0;
      m[i] = 1.0;
      m[j] = -1.0;
      out.push_back(p);
      out.push_back(m);
    }
  }
  return out;
}

}  // namespace

cplx bilinear(const SpectralParameter& u, const SpectralParameter& v) {
  if (u.size() != v.size()) throw Error(ErrorKind::DimensionMismatch, "bilinear form on different ranks");
  cplx s = 0.0;
  for (std::size_t i = 0; i < u.size(); ++i) s += u[i] * v[i];
  return s;
}

Orbit orbit_and_stabilizer(const SpectralParameter& lambda0, const std::vector<WeylElement>& W) {
  Orbit o;
  for (const auto& w : W) {
    const SpectralParameter mu = w.apply(lambda0);
    const bool fresh = std::none_of(o.points.begin(), o.points.end(),
                                    [&](const SpectralParameter& p) { return distance(p, mu) < 1e-9; });
    if (fresh) o.points.push_back(mu);
  }
  // keep lambda0 itself (not its image under the identity's matrix) in front
  if (!o.points.empty()) o.points.front() = lambda0;
  o.stabilizer_order = static_cast<int>(W.size() / o.points.size());
  return o;
}

OrbitInterpolant::OrbitInterpolant(SpectralParameter lambda0, const std::vector<WeylElement>& W)
    : lambda0_(std::move(lambda0)), orbit_(orbit_and_stabilizer(lambda0_, W)) {
  const auto fallbacks = fallback_functionals(lambda0_.size());
  for (std::size_t k = 1; k < orbit_.points.size(); ++k) {
    const SpectralParameter& mu = orbit_.points[k];
    const SpectralParameter diff = minus(lambda0_, mu);
    SpectralParameter nu = diff;
    cplx den = bilinear(diff, nu);
    for (std::size_t f = 0; std::abs(den) < 1e-9 && f < fallbacks.size(); ++f) {
      nu = fallbacks[f];
      den = bilinear(diff, nu);
    }
    if (std::abs(den) < 1e-9) throw Error(ErrorKind::DegenerateOrbit, "no functional separates an orbit point");
    factors_.push_back({nu, mu, den});
  }
}

cplx OrbitInterpolant::operator()(const SpectralParameter& lambda) const {
  cplx p = 1.0 / static_cast<double>(orbit_.stabilizer_order);
  for (const auto& f : factors_) p *= bilinear(minus(lambda, f.shift), f.functional) / f.denominator;
  return p;
}

Report check_factorization(const std::vector<std::string>& kinds) {
  Stopwatch sw;
  Report rep;
  rep.check_id = "weyl-factorization";
  rep.grid = {{"root_systems", kinds}, {"words", "all reduced words of all elements"}};
  ViolationTracker tr;
  long words = 0;
  for (const auto& kind : kinds) {
    const RootSystemData rs = build_root_system(kind);
    const auto W = generate_weyl(rs);
    rep.constants["order_" + kind] = static_cast<double>(W.size());
    rep.constants["positive_roots_" + kind] = static_cast<double>(rs.positive_roots.size());
    // closure under multiplication
    for (const auto& a : W) {
      for (const auto& b : W) {
        const WeylElement ab = compose(a, b, rs);
        const bool found = std::any_of(W.begin(), W.end(), [&](const WeylElement& c) { return same_element(c, ab); });
        tr.update(found ? 0.0 : 1.0, {{"kind", kind}, {"closure", {a.word, b.word}}});
      }
    }
    for (const auto& w : W) {
      const int len = inversion_count(w, rs);
      tr.update(len == static_cast<int>(w.word.size()) ? 0.0 : 1.0, {{"kind", kind}, {"length", w.word}});
      for (const auto& word : reduced_words(w, rs)) {
        ++words;
        double bad = 0.0;
        if (!same_element(element_from_word(word, rs), w)) bad = 1.0;
        try {
          const auto roots = factorization_roots(word, rs);
          if (static_cast<int>(roots.size()) != len) bad = 1.0;
        } catch (const Error&) {
          bad = 1.0;
        }
        tr.update(bad, {{"kind", kind}, {"word", word}});
      }
    }
  }
  tr.store(rep);
  rep.tolerance = 0.0;
  rep.constants["reduced_words_checked"] = static_cast<double>(words);
  rep.runtime_ms = sw.elapsed_ms();
  rep.finalize();
  return rep;
}

Report check_p_lambda0(const std::vector<std::string>& kinds, int samples, std::uint64_t seed) {
  Stopwatch sw;
  Report rep;
  rep.check_id = "weyl-p-lambda0";
  rep.grid = {{"root_systems", kinds}, {"samples", samples}, {"seed", seed}, {"box", {-2.0, 2.0}}};
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> U(-2.0, 2.0);
  ViolationTracker tr;
  double max_degree = 0.0;
  for (const auto& kind : kinds) {
    const RootSystemData rs = build_root_system(kind);
    const auto W = generate_weyl(rs);
    const auto n = static_cast<std::size_t>(rs.simple_roots.front().size());
    for (int s = 0; s < samples; ++s) {
      SpectralParameter l0(n);
      for (auto& c : l0) c = cplx(U(rng), U(rng));
      // every third sample lies on a reflecting hyperplane, so the stabilizer is nontrivial
      if (s % 3 == 1) {
        const auto& beta = rs.positive_roots[static_cast<std::size_t>(s) % rs.positive_roots.size()];
        const Eigen::VectorXd a = rs.realize(beta);
        cplx dot = 0.0;
        for (std::size_t i = 0; i < n; ++i) dot += l0[i] * a(static_cast<Eigen::Index>(i));
        for (std::size_t i = 0; i < n; ++i) l0[i] -= dot / a.squaredNorm() * a(static_cast<Eigen::Index>(i));
      }
      const OrbitInterpolant p(l0, W);
      max_degree = std::max(max_degree, static_cast<double>(p.degree()));
      const double target = 1.0 / p.stabilizer_order();
      const Json where = {{"kind", kind}, {"sample", s}};
      tr.update(std::abs(p(l0) - target), where);
      tr.update(p.degree() == static_cast<int>(p.orbit().points.size()) - 1 ? 0.0 : 1.0, where);
      for (const auto& w : W) {
        const SpectralParameter mu = w.apply(l0);
        if (distance(mu, l0) < 1e-9) {
          tr.update(std::abs(p(mu) - target), where);
        } else {
          tr.update(std::abs(p(mu)), where);
        }
      }
    }
  }
  tr.store(rep);
  rep.tolerance = 1e-12;
  rep.constants["max_degree"] = max_degree;
  rep.runtime_ms = sw.elapsed_ms();
  rep.finalize();
  return rep;
}

}  // namespace pwq::weyl
