#include <cmath>
#include <numbers>
#include <random>

#include "doctest.h"
#include "vstate/error.hpp"
#include "vstate/functional.hpp"
#include "vstate/linearized.hpp"
#include "vstate/special.hpp"

using namespace vstate;
using std::numbers::pi;

namespace {

PatchConfig disk(double alpha) {
  PatchConfig cfg;
  cfg.family = Family::Disk;
  cfg.alpha = alpha;
  return cfg;
}

CosineSeries smooth_random(std::mt19937_64& rng, std::size_t n, double size, int m = 1,
                           FrequencyClass cls = FrequencyClass::MultiplesOfM) {
  std::normal_distribution<double> nd;
  std::vector<double> a(n, 0.0);
  for (std::size_t j = 1; j <= n; ++j) {
    if (in_class(j, m, cls)) a[j - 1] = nd(rng) * std::exp(-0.6 * j);
  }
  CosineSeries s(a);
  return (size / s.max_abs()) * s;
}

}  // namespace

TEST_CASE("config validation") {
  CHECK(disk(0.5).calpha() == doctest::Approx(c_alpha(0.5)));
  PatchConfig bad;
  bad.alpha = 0.5;  // ellipse with alpha
  CHECK_THROWS_AS(bad.validate(), Error);
  CHECK_THROWS_AS(disk(2.0).validate(), Error);
  CHECK_NOTHROW(disk(1.5).validate());
  CHECK(collocation_nodes(32, PatchConfig{}) >= 96);
  CHECK(PatchConfig{}.n_quad % collocation_nodes(32, PatchConfig{}) == 0);
}

TEST_CASE("Kirchhoff ellipses are zeros of the ellipse functional") {
  for (double r : {0.2, 1.0 / 3.0, 0.5, 0.8}) {
    const auto res = eval_F_ellipse(r, CosineSeries(32));
    CHECK(res.sup_norm < 1e-10);
    CHECK(res.sine_coeffs.max_abs() < 1e-10);
  }
}

TEST_CASE("ellipse functional linearizes to the tridiagonal operator") {
  const double eps = 1e-6;
  {
    const auto h = CosineSeries::unit_mode(16, 3);
    const auto res = eval_F_ellipse(1.0 / 3.0, eps * h);
    const auto lin = eps * apply_DF(1.0 / 3.0, h);
    CHECK((res.sine_coeffs - lin).max_abs() < 1e-10);
  }
  {
    const auto h = CosineSeries::unit_mode(16, 2);
    const auto res = eval_F_ellipse(0.5, eps * h);
    const auto df = tri_coeffs(0.5, 16);
    CHECK(res.sine_coeffs.coeff(2) == doctest::Approx(eps * df.y[1]).epsilon(1e-5));
  }
}

TEST_CASE("gateaux derivative matches apply_DF on random directions") {
  std::mt19937_64 rng(41);
  const auto h = smooth_random(rng, 24, 1.0);
  const double r = 0.4;
  const auto fd = gateaux_fd(PatchConfig{}, r, CosineSeries(24), h, 1e-5);
  CHECK((fd - apply_DF(r, h)).max_abs() < 1e-6);
}

TEST_CASE("gateaux derivative is linear in h and second-order in the step") {
  std::mt19937_64 rng(43);
  const auto R = smooth_random(rng, 16, 0.02);
  const auto h1 = smooth_random(rng, 16, 1.0);
  const auto h2 = smooth_random(rng, 16, 1.0);
  const double r = 0.45;
  const PatchConfig cfg;
  const auto sum = gateaux_fd(cfg, r, R, h1 + h2, 1e-4);
  const auto parts = gateaux_fd(cfg, r, R, h1, 1e-4) + gateaux_fd(cfg, r, R, h2, 1e-4);
  CHECK((sum - parts).max_abs() < 1e-7);

  // step halving at R=0 against the exact linearization
  const auto h = CosineSeries::unit_mode(16, 3);
  const auto exact = apply_DF(r, h);
  const double e1 = (gateaux_fd(cfg, r, CosineSeries(16), h, 4e-2) - exact).max_abs();
  const double e2 = (gateaux_fd(cfg, r, CosineSeries(16), h, 2e-2) - exact).max_abs();
  CHECK(e1 / e2 == doctest::Approx(4.0).epsilon(0.05));
  CHECK_THROWS_AS(gateaux_fd(cfg, r, CosineSeries(16), h, 0.0), Error);
}

TEST_CASE("disk functional vanishes on the circle") {
  for (double alpha : {0.0, 0.5, 1.0, 1.5}) {
    for (double omega : {0.0, 0.3}) {
      CHECK(eval_F_disk(omega, CosineSeries(16), disk(alpha)).sup_norm < 1e-10);
    }
  }
}

TEST_CASE("disk thresholds from the linearization") {
  const double eps = 1e-6;
  // the m-th sine coefficient is affine in Ω; locate its zero from two evaluations
  auto locate = [&](int m, double alpha) {
    const auto R = CosineSeries::unit_mode(16, m, eps);
    const double f0 = eval_F_disk(0.0, R, disk(alpha)).sine_coeffs.coeff(m);
    const double f1 = eval_F_disk(1.0, R, disk(alpha)).sine_coeffs.coeff(m);
    return f0 / (f0 - f1);
  };
  for (int m = 2; m <= 3; ++m) CHECK(std::abs(locate(m, 0.0) - (m - 1.0) / (2.0 * m)) < 1e-6);
  CHECK(std::abs(locate(2, 1.0) - 2.0 / (3.0 * pi)) < 1e-5);
}

TEST_CASE("disk functional preserves m-fold symmetry") {
  std::mt19937_64 rng(47);
  for (int m : {2, 3}) {
    for (double alpha : {0.0, 0.7}) {
      const auto R = smooth_random(rng, 24, 0.05, m);
      const auto res = eval_F_disk(0.2, R, disk(alpha));
      const auto proj = project_symmetry(res.sine_coeffs, m, FrequencyClass::MultiplesOfM);
      CHECK((res.sine_coeffs - proj).max_abs() < 1e-13);
      CHECK(proj.max_abs() > 1e-6);
    }
  }
}

TEST_CASE("ellipse functional transports the even class") {
  std::mt19937_64 rng(53);
  const auto R = smooth_random(rng, 24, 0.05, 1, FrequencyClass::EvenFrequencies);
  const auto res = eval_F_ellipse(0.4, R);
  // R(x)=R(π-x) gives F(x) = -F(π-x): only even sine modes
  CHECK(project_symmetry(res.sine_coeffs, 1, FrequencyClass::OddFrequencies).max_abs() < 1e-12);
  const std::size_t M = res.collocation_n;
  REQUIRE(M % 2 == 0);
  for (std::size_t i = 0; i < M; ++i) {
    const std::size_t mirror = (M / 2 + M - i) % M;  // x_i -> π - x_i
    CHECK(std::abs(res.samples[i] + res.samples[mirror]) < 1e-12);
  }
}

TEST_CASE("quadrature refinement changes the residual by less than 1e-9") {
  std::mt19937_64 rng(59);
  const auto Re = smooth_random(rng, 24, 0.05, 1, FrequencyClass::EvenFrequencies);
  PatchConfig e1, e2;
  e2.n_quad = 2 * e1.n_quad;
  CHECK((eval_F_ellipse(0.4, Re, e1).sine_coeffs - eval_F_ellipse(0.4, Re, e2).sine_coeffs).max_abs() < 1e-9);
  const auto Rd = smooth_random(rng, 24, 0.05, 2);
  auto d1 = disk(0.0), d2 = disk(0.0);
  d2.n_quad *= 2;
  CHECK((eval_F_disk(0.3, Rd, d1).sine_coeffs - eval_F_disk(0.3, Rd, d2).sine_coeffs).max_abs() < 1e-9);
}

TEST_CASE("chord degeneracy is reported") {
  // R = -cos(2x) sends x=0 and x=π to the origin
  CHECK_THROWS_AS(eval_F_ellipse(0.3, CosineSeries::unit_mode(8, 2, -1.0)), NumericalError);
  CHECK_THROWS_AS(eval_F_disk(0.2, CosineSeries::unit_mode(8, 2, 1.2), disk(0.0)), Error);
  CHECK_THROWS_AS(eval_F_ellipse(1.0, CosineSeries(8)), DomainError);
}

TEST_CASE("curvature") {
  CHECK(curvature_min(Family::Disk, CosineSeries(8), 1.0) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(curvature_min(Family::Ellipse, CosineSeries(8), 0.5) == doctest::Approx(0.5).epsilon(1e-10));
  CHECK(curvature_min(Family::Ellipse, CosineSeries(8), 0.2) == doctest::Approx(0.2).epsilon(1e-10));
  // strongly dented shape is not convex
  CHECK(curvature_min(Family::Disk, CosineSeries::unit_mode(8, 3, 0.3), 1.0) < 0.0);
}

TEST_CASE("admissibility helpers") {
  CHECK(admissible(Family::Ellipse, CosineSeries::unit_mode(8, 2, 0.01), 0.5));
  CHECK_FALSE(admissible(Family::Ellipse, CosineSeries::unit_mode(8, 2, 0.2), 0.5));
  CHECK(chord_floor(Family::Disk, 1.0) == doctest::Approx(0.25));
  CHECK(chord_floor(Family::Ellipse, 0.3) == doctest::Approx(0.0225));
}
