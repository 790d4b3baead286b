#include <cmath>
#include <numbers>
#include <random>

#include "doctest.h"
#include "vstate/error.hpp"
#include "vstate/quadrature.hpp"
#include "vstate/special.hpp"

using namespace vstate;
using std::numbers::pi;

namespace {

// ∫_0^{2π} g(y) log(4 sin²(y/2)) dy by Gauss-Legendre panels graded geometrically toward both ends
double graded_reference(const std::function<double(double)>& g) {
  const auto gl = gauss_legendre(24);
  auto panel = [&](double a, double b) {
    double s = 0.0;
    for (std::size_t i = 0; i < gl.y.size(); ++i) {
      const double y = 0.5 * (a + b) + 0.5 * (b - a) * gl.y[i];
      s += gl.w[i] * g(y) * std::log(4.0 * std::sin(0.5 * y) * std::sin(0.5 * y));
    }
    return 0.5 * (b - a) * s;
  };
  double total = 0.0;
  // middle in uniform panels, ends graded by factor 0.2 down to ~1e-16
  const int uniform = 16;
  for (int i = 0; i < uniform; ++i) {
    total += panel(0.5 + (2.0 * pi - 1.0) * i / uniform, 0.5 + (2.0 * pi - 1.0) * (i + 1) / uniform);
  }
  double hi = 0.5;
  while (hi > 1e-16) {
    const double lo = 0.2 * hi;
    total += panel(lo, hi) + panel(2.0 * pi - hi, 2.0 * pi - lo);
    hi = lo;
  }
  return total;
}

}  // namespace

TEST_CASE("poisson kernel closed form") {
  CHECK(poisson_kernel_integral(0, 0.5) == doctest::Approx(2.0 * pi));
  CHECK(poisson_kernel_integral(2, 1.0 / 3.0) == doctest::Approx(3.0 * pi / 4.0));
  CHECK(poisson_kernel_integral(-2, 1.0 / 3.0) == doctest::Approx(3.0 * pi / 4.0));
  CHECK_THROWS_AS(poisson_kernel_integral(1, 0.0), DomainError);
  CHECK_THROWS_AS(poisson_kernel_integral(1, 1.0), DomainError);
}

TEST_CASE("log sin closed form") {
  CHECK(log_sin_integral(1) == doctest::Approx(-2.0 * pi));
  CHECK(log_sin_integral(0) == doctest::Approx(-4.0 * pi * std::log(2.0)));
  CHECK(log_sin_integral(-3) == doctest::Approx(-2.0 * pi / 3.0));
}

TEST_CASE("log shifted cos closed form") {
  CHECK(log_shifted_cos_integral(1, 1.0 / 3.0) == doctest::Approx(-pi));
  CHECK(std::abs(log_shifted_cos_integral(0, 1.0 / 3.0)) < 1e-14);
  CHECK(log_shifted_cos_integral(2, 0.5) == doctest::Approx(-pi / 9.0));
  CHECK_THROWS_AS(log_shifted_cos_integral(2, 1.5), DomainError);
}

TEST_CASE("closed forms are even in k") {
  for (int k = 0; k <= 8; ++k) {
    CHECK(log_sin_integral(k) == log_sin_integral(-k));
    for (double r = 0.1; r < 0.95; r += 0.1) {
      CHECK(poisson_kernel_integral(k, r) == poisson_kernel_integral(-k, r));
      CHECK(log_shifted_cos_integral(k, r) == log_shifted_cos_integral(-k, r));
    }
  }
}

TEST_CASE("quadrature rule validation") {
  CHECK_NOTHROW(QuadratureRule::trapezoid(8).validate());
  CHECK_THROWS_AS(QuadratureRule::trapezoid(7).validate(), Error);
  CHECK_THROWS_AS(QuadratureRule::trapezoid(6).validate(), Error);
  CHECK_THROWS_AS(QuadratureRule::power_graded(64, 2.0).validate(), Error);
  CHECK(QuadratureRule::power_graded(64, 0.5).grading == doctest::Approx(2.0));
}

TEST_CASE("integrate_periodic examples") {
  CHECK(integrate_periodic([](double) { return 1.0; }, QuadratureRule::trapezoid(16)) == doctest::Approx(2.0 * pi));
  // log-split carries the weight itself, so the smooth factor is 1
  CHECK(std::abs(integrate_periodic([](double) { return 1.0; }, QuadratureRule::log_split(64))) < 1e-13);
  const double r = 0.5;
  const double q = integrate_periodic(
      [r](double y) { return std::cos(y) / ((1 + r * r) + (r * r - 1) * std::cos(y)); }, QuadratureRule::trapezoid(512));
  CHECK(std::abs(q - poisson_kernel_integral(1, 0.5)) < 1e-12);
  CHECK_THROWS_AS(integrate_periodic([](double) { return std::nan(""); }, QuadratureRule::trapezoid(16)), Error);
}

TEST_CASE("gauss-legendre integrates polynomials exactly") {
  const auto gl = gauss_legendre(10);
  for (int p = 0; p < 20; ++p) {
    double s = 0.0;
    for (std::size_t i = 0; i < gl.y.size(); ++i) s += gl.w[i] * std::pow(gl.y[i], p);
    const double exact = (p % 2 == 1) ? 0.0 : 2.0 / (p + 1);
    CHECK(std::abs(s - exact) < 1e-14);
  }
}

TEST_CASE("log-split matches a graded-mesh reference for random trig polynomials") {
  std::mt19937_64 rng(21);
  std::normal_distribution<double> nd;
  for (int trial = 0; trial < 5; ++trial) {
    std::vector<double> ca(17), sa(17);
    for (auto& v : ca) v = nd(rng);
    for (auto& v : sa) v = nd(rng);
    auto g = [&](double y) {
      double s = 0.0;
      for (int j = 0; j <= 16; ++j) s += ca[j] * std::cos(j * y) + sa[j] * std::sin(j * y);
      return s;
    };
    const double split = integrate_periodic(g, QuadratureRule::log_split(64));
    CHECK(std::abs(split - graded_reference(g)) < 1e-8);
  }
}

TEST_CASE("power-graded rule converges on an |y|^(1-alpha) integrand") {
  // ∫_{-π}^{π} |2 sin(y/2)|^p dy = 2^{p+1} B((p+1)/2, 1/2), p = 1-α
  for (double alpha : {0.5, 1.0, 1.5}) {
    const double p = 1.0 - alpha;
    const double exact =
        std::pow(2.0, p + 1.0) * gamma_fn((p + 1.0) / 2.0) * gamma_fn(0.5) / gamma_fn(p / 2.0 + 1.0);
    auto f = [p](double y) { return std::pow(std::abs(2.0 * std::sin(0.5 * y)), p); };
    const double e1 = std::abs(integrate_periodic(f, QuadratureRule::power_graded(256, alpha)) - exact);
    const double e2 = std::abs(integrate_periodic(f, QuadratureRule::power_graded(512, alpha)) - exact);
    CHECK(e2 < 1e-6);
    // at least third order once out of the rounding floor
    if (e2 > 1e-13) CHECK(e1 / e2 > 7.0);
  }
}

TEST_CASE("oracle table covers the grid and agrees to 1e-10") {
  const auto rows = oracle_table(1024);
  std::size_t poisson = 0, logsin = 0, shifted = 0;
  for (const auto& row : rows) {
    CHECK(row.delta() < 1e-10);
    if (row.integral == "poisson_kernel") ++poisson;
    if (row.integral == "log_sin") ++logsin;
    if (row.integral == "log_shifted_cos") ++shifted;
  }
  CHECK(poisson == 17 * 9);
  CHECK(shifted == 17 * 9);
  CHECK(logsin == 17);
}

TEST_CASE("gamma function") {
  CHECK(gamma_fn(0.5) == doctest::Approx(std::sqrt(pi)).epsilon(1e-14));
  CHECK(gamma_fn(5.0) == doctest::Approx(24.0).epsilon(1e-14));
  // 50-digit reference values
  CHECK(gamma_fn(0.1) == doctest::Approx(9.5135076986687318363).epsilon(1e-13));
  CHECK(gamma_fn(-0.5) == doctest::Approx(-3.5449077018110320546).epsilon(1e-13));
  CHECK(gamma_fn(-1.5) == doctest::Approx(2.3632718012073547031).epsilon(1e-13));
  CHECK(gamma_fn(3.7) == doctest::Approx(4.1706517837966031654).epsilon(1e-13));
  CHECK_THROWS_AS(gamma_fn(0.0), DomainError);
  CHECK_THROWS_AS(gamma_fn(-2.0), DomainError);
}

TEST_CASE("normalizing constant") {
  CHECK(c_alpha(0.0) == doctest::Approx(1.0 / (4.0 * pi)));
  CHECK(c_alpha(0.5) == doctest::Approx(0.33296793550170026196).epsilon(1e-13));
  CHECK(c_alpha(1.0) == doctest::Approx(0.15915494309189533577).epsilon(1e-13));
  CHECK(c_alpha(1.5) == doctest::Approx(0.076074279862467707967).epsilon(1e-13));
  CHECK_THROWS_AS(c_alpha(2.0), DomainError);
}
