#include <array>
#include <cmath>
#include <limits>
#include <numbers>

#include "pwq/error.hpp"
#include "pwq/specialfn.hpp"

namespace pwq::specialfn {

namespace {

constexpr double kPi = std::numbers::pi;

constexpr double kLanczosG = 7.0;
constexpr std::array<double, 9> kLanczos = {
    0.99999999999980993,  676.5203681218851,     -1259.1392167224028,
    771.32342877765313,   -176.61502916214059,   12.507343278686905,
    -0.13857109526572012, 9.9843695780195716e-6, 1.5056327351493116e-7};

cplx wrap_imag(cplx z) {
  double im = std::remainder(z.imag(), 2.0 * kPi);
  if (im <= -kPi) im += 2.0 * kPi;
  return {z.real(), im};
}

cplx log_gamma_right(cplx z) {
  // Re z >= 1/2
  z -= 1.0;
  cplx x = kLanczos[0];
  for (std::size_t i = 1; i < kLanczos.size(); ++i) x += kLanczos[i] / (z + static_cast<double>(i));
  const cplx t = z + kLanczosG + 0.5;
  return 0.5 * std::log(2.0 * kPi) + (z + 0.5) * std::log(t) - t + std::log(x);
}

}  // namespace

cplx log_sin_pi(cplx w) {
  const double m = std::round(w.real());
  const cplx d = w - m;
  const cplx x = kPi * d;
  cplx out;
  if (std::abs(x.imag()) < 20.0) {
    const cplx s = std::sin(x);
    if (s == cplx(0.0, 0.0)) return {-std::numeric_limits<double>::infinity(), 0.0};
    out = std::log(s);
  } else if (x.imag() > 0.0) {
    // sin x = e^{-ix} (i/2) (1 - e^{2ix}), |e^{2ix}| < e^{-40}
    out = cplx(0.0, -1.0) * x + std::log(cplx(0.0, 0.5));
  } else {
    out = cplx(0.0, 1.0) * x + std::log(cplx(0.0, -0.5));
  }
  if (std::fmod(std::abs(m), 2.0) == 1.0) out += cplx(0.0, kPi);
  return out;
}

cplx log_gamma(cplx z) {
  if (z.real() <= 0.5) {
    const double k = std::round(z.real());
    if (k <= 0.0 && std::abs(z - k) < 1e-12) {
      throw Error(ErrorKind::Pole, "log_gamma at non-positive integer " + std::to_string(k));
    }
  }
  if (z.real() < 0.5) {
    // Gamma(z) Gamma(1-z) = pi / sin(pi z)
    return wrap_imag(std::log(kPi) - log_sin_pi(z) - log_gamma_right(1.0 - z));
  }
  return wrap_imag(log_gamma_right(z));
}

}  // namespace pwq::specialfn
