#include <cmath>
#include <limits>
#include <sstream>

#include "pwq/error.hpp"
#include "pwq/specialfn.hpp"

namespace pwq::specialfn {

GammaRatioPoly::GammaRatioPoly(HalfInt a, HalfInt b) : a_(a), b_(b) {
  if (a.doubled() <= 0) throw Error(ErrorKind::Precondition, "Gamma_{a,b} needs a > 0, got a = " + a.to_string());
  const HalfInt d = b - a;
  if (d.doubled() < 0 || !d.is_integer()) {
    throw Error(ErrorKind::Precondition,
                "Gamma_{a,b} needs b - a in N, got a = " + a.to_string() + ", b = " + b.to_string());
  }
}

cplx GammaRatioPoly::operator()(cplx z) const {
  cplx p = 1.0;
  const double a = a_.value();
  for (int k = 0; k < degree(); ++k) p *= (z + a + static_cast<double>(k)) / (a + k);
  return p;
}

FactoredPoly::FactoredPoly(cplx leading, std::map<HalfInt, int> roots) : leading_(leading) {
  for (const auto& [root, mult] : roots) {
    if (mult < 0) throw Error(ErrorKind::Precondition, "negative root multiplicity");
    if (mult > 0) roots_.emplace(root, mult);
  }
}

FactoredPoly FactoredPoly::from(const GammaRatioPoly& p) {
  // prod (z + a + k)/(a + k): roots -(a + k), leading 1/prod(a + k)
  std::map<HalfInt, int> roots;
  double norm = 1.0;
  HalfInt c = p.a();
  for (int k = 0; k < p.degree(); ++k) {
    ++roots[-c];
    norm *= c.value();
    c += HalfInt::from_int(1);
  }
  return FactoredPoly(1.0 / norm, std::move(roots));
}

int FactoredPoly::degree() const {
  int d = 0;
  for (const auto& [root, mult] : roots_) d += mult;
  return d;
}

cplx FactoredPoly::operator()(cplx z) const {
  cplx p = leading_;
  for (const auto& [root, mult] : roots_) {
    const cplx f = z - root.value();
    for (int i = 0; i < mult; ++i) p *= f;
  }
  return p;
}

cplx FactoredPoly::log_eval(cplx z) const {
  cplx s = std::log(leading_);
  for (const auto& [root, mult] : roots_) {
    const cplx f = z - root.value();
    if (f == cplx(0.0, 0.0)) return {-std::numeric_limits<double>::infinity(), 0.0};
    s += static_cast<double>(mult) * std::log(f);
  }
  return s;
}

double FactoredPoly::distance_to_roots(cplx z) const {
  double d = std::numeric_limits<double>::infinity();
  for (const auto& [root, mult] : roots_) d = std::min(d, std::abs(z - root.value()));
  return d;
}

FactoredPoly FactoredPoly::operator*(const FactoredPoly& other) const {
  FactoredPoly out(leading_ * other.leading_, roots_);
  for (const auto& [root, mult] : other.roots_) out.roots_[root] += mult;
  return out;
}

FactoredPoly FactoredPoly::pow(int k) const {
  if (k < 0) throw Error(ErrorKind::Precondition, "negative power of a polynomial");
  FactoredPoly out;
  for (int i = 0; i < k; ++i) out = out * *this;
  return out;
}

FactoredPoly FactoredPoly::divided_by(const FactoredPoly& d) const {
  if (!factored_divides(d, *this)) {
    throw Error(ErrorKind::Precondition, d.to_string() + " does not divide " + to_string());
  }
  std::map<HalfInt, int> roots = roots_;
  for (const auto& [root, mult] : d.roots_) roots[root] -= mult;
  return FactoredPoly(leading_ / d.leading_, std::move(roots));
}

std::string FactoredPoly::to_string() const {
  std::ostringstream os;
  os.precision(17);
  os << "(" << leading_.real();
  if (leading_.imag() != 0.0) os << (leading_.imag() < 0 ? "-" : "+") << std::abs(leading_.imag()) << "i";
  os << ")";
  for (const auto& [root, mult] : roots_) {
    os << "(z" << (root.doubled() <= 0 ? "+" : "-") << (root.doubled() <= 0 ? (-root).to_string() : root.to_string())
       << ")";
    if (mult > 1) os << "^" << mult;
  }
  return os.str();
}

bool factored_divides(const FactoredPoly& d, const FactoredPoly& e) {
  for (const auto& [root, mult] : d.roots()) {
    const auto it = e.roots().find(root);
    if (it == e.roots().end() || it->second < mult) return false;
  }
  return true;
}

FactoredPoly e_tau_build(int m_ceil_tau) {
  if (m_ceil_tau <= 0) throw Error(ErrorKind::ArgumentZero, "e_tau needs m*ceil|tau| >= 1");
  const HalfInt M = HalfInt::from_int(m_ceil_tau);
  const auto g1 = FactoredPoly::from(GammaRatioPoly(HalfInt::from_int(1), M + HalfInt::from_int(1)));
  const auto g2 = FactoredPoly::from(GammaRatioPoly(HalfInt::half(), M + HalfInt::half()));
  return (g1 * g2).pow(2);
}

}  // namespace pwq::specialfn
