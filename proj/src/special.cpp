#include "vstate/special.hpp"

#include <array>
#include <cmath>
#include <numbers>

#include "vstate/error.hpp"

namespace vstate {

namespace {

constexpr double kLanczosG = 7.0;
constexpr std::array<double, 9> kLanczos = {
    0.99999999999980993,  676.5203681218851,     -1259.1392167224028,
    771.32342877765313,   -176.61502916214059,   12.507343278686905,
    -0.13857109526572012, 9.9843695780195716e-6, 1.5056327351493116e-7};

}  // namespace

double gamma_fn(double x) {
  if (!std::isfinite(x)) throw DomainError("gamma: non-finite argument");
  if (x <= 0.0 && x == std::floor(x)) throw DomainError("gamma: pole at non-positive integer");
  if (x < 0.5) {
    const double pi = std::numbers::pi;
    return pi / (std::sin(pi * x) * gamma_fn(1.0 - x));
  }
  x -= 1.0;
  double a = kLanczos[0];
  const double t = x + kLanczosG + 0.5;
  for (std::size_t i = 1; i < kLanczos.size(); ++i) a += kLanczos[i] / (x + static_cast<double>(i));
  return std::sqrt(2.0 * std::numbers::pi) * std::pow(t, x + 0.5) * std::exp(-t) * a;
}

double c_alpha(double alpha) {
  if (!(alpha >= 0.0 && alpha < 2.0)) throw DomainError("alpha must lie in [0, 2)");
  if (alpha == 0.0) return 1.0 / (4.0 * std::numbers::pi);
  return gamma_fn(alpha / 2.0) /
         (2.0 * std::numbers::pi * std::pow(2.0, 1.0 - alpha) * gamma_fn(1.0 - alpha / 2.0));
}

}  // namespace vstate
