#include <cmath>
#include <numbers>
#include <random>

#include "doctest.h"
#include "vstate/error.hpp"
#include "vstate/linearized.hpp"

using namespace vstate;
using std::numbers::pi;

namespace {

// r(m) for m = 3..12 from 50-digit bisection
constexpr double kRoots[] = {0.33333333333333333333, 0.21684533543747511672, 0.16135931629096176517,
                             0.12863202076986151613, 0.10699065541489116698, 0.091602501546440423408,
                             0.080093595935378543395, 0.071158736603897716372, 0.064020024686006174044,
                             0.058184690519164157879};

SineSeries random_target(std::mt19937_64& rng, std::size_t n, int parity, int skip) {
  std::normal_distribution<double> nd;
  std::vector<double> t(n, 0.0);
  for (std::size_t j = 1; j <= n; ++j) {
    if (static_cast<int>(j % 2) == parity && static_cast<int>(j) != skip) t[j - 1] = nd(rng) * std::exp(-0.5 * j);
  }
  return SineSeries(t);
}

}  // namespace

TEST_CASE("bracket values") {
  CHECK(std::abs(bracket(3, 1.0 / 3.0)) < 1e-15);
  CHECK(bracket(2, 0.5) == doctest::Approx(-0.5));
  CHECK(bracket(10, 0.5) == doctest::Approx(7.7499618960524310318549).epsilon(1e-14));
  CHECK_THROWS_AS(bracket(3, 0.0), DomainError);
  CHECK_THROWS_AS(bracket(3, 1.2), DomainError);
}

TEST_CASE("m=2 bracket is -2(1-r)^2 and negative") {
  for (int i = 1; i < 200; ++i) {
    const double r = i / 200.0;
    CHECK(bracket(2, r) < 0.0);
    CHECK(bracket(2, r) == doctest::Approx(-2.0 * (1 - r) * (1 - r)).epsilon(1e-13));
  }
  CHECK_THROWS_AS(bifurcation_ratio(2), DomainError);
}

TEST_CASE("bifurcation ratios match a high-precision oracle and decrease") {
  CHECK(std::abs(bifurcation_ratio(3) - 1.0 / 3.0) < 1e-12);
  double prev = 1.0;
  for (int m = 3; m <= 12; ++m) {
    const double r = bifurcation_ratio(m);
    CHECK(std::abs(r - kRoots[m - 3]) < 1e-13);
    CHECK(r > 0.0);
    CHECK(r < prev);
    CHECK(bracket(m, r * (1 - 1e-9)) * bracket(m, r * (1 + 1e-9)) < 0.0);
    prev = r;
  }
  CHECK_THROWS_AS(bifurcation_ratio(4, 0.0), Error);
}

TEST_CASE("tridiagonal coefficients") {
  const auto df = tri_coeffs(1.0 / 3.0, 16);
  CHECK(df.y[0] == doctest::Approx(-9.0 / 32.0).epsilon(1e-15));
  const auto d3 = tri_coeffs(bifurcation_ratio(3), 16);
  CHECK(std::abs(d3.K[2]) < 1e-15);
  CHECK(std::abs(d3.x[2]) < 1e-15);
  CHECK(std::abs(d3.zc[2]) < 1e-15);
  for (double r : {0.1, 0.4, 0.77}) {
    const auto d = tri_coeffs(r, 30);
    for (std::size_t k = 2; k <= 30; ++k) {
      CHECK(d.x[k - 1] == d.K[k - 1]);
      CHECK(d.zc[k - 1] == d.K[k - 1]);
      CHECK(d.K[k - 1] == doctest::Approx(-(1 - r) / (8 * (1 + r) * (1 + r)) * bracket(int(k), r)).epsilon(1e-14));
      if (d.K[k - 1] != 0.0) CHECK(d.y[k - 1] / d.K[k - 1] == doctest::Approx(-2 * (1 + r) / (1 - r)).epsilon(1e-14));
    }
  }
  CHECK_THROWS_AS(tri_coeffs(0.5, 3), Error);
}

TEST_CASE("apply_DF examples and structure") {
  const auto out = apply_DF(1.0 / 3.0, CosineSeries(std::vector<double>{1.0}));
  CHECK(out.coeff(1) == doctest::Approx(-9.0 / 32.0));

  std::mt19937_64 rng(17);
  std::normal_distribution<double> nd;
  const std::size_t n = 40;
  std::vector<double> a(n), b(n);
  for (auto& v : a) v = nd(rng);
  for (auto& v : b) v = nd(rng);
  const CosineSeries h1(a), h2(b);
  for (double r : {0.2, 0.4, 0.9}) {
    const auto lhs = apply_DF(r, 1.5 * h1 + (-0.7) * h2);
    const auto rhs = 1.5 * apply_DF(r, h1) + (-0.7) * apply_DF(r, h2);
    CHECK((lhs - rhs).max_abs() < 1e-13 * (1.0 + rhs.max_abs()));

    // parity decoupling
    for (auto cls : {FrequencyClass::EvenFrequencies, FrequencyClass::OddFrequencies}) {
      const auto p = project_symmetry(h1, 1, cls);
      const auto img = apply_DF(r, p);
      CHECK((img - project_symmetry(img, 1, cls)).max_abs() == 0.0);
    }
  }
}

TEST_CASE("kernel generator, even m closed form") {
  for (int m : {4, 6, 8}) {
    const double r = bifurcation_ratio(m);
    const auto g = kernel_generator(m, r, 64);
    const double z = (1 + r) / (1 - r);
    const double lp = z + std::sqrt(z * z - 1), lm = z - std::sqrt(z * z - 1);
    CHECK(g.mode_class == FrequencyClass::EvenFrequencies);
    CHECK(g.k == std::size_t(m / 2));
    CHECK(std::abs(g.lambda_plus * g.lambda_minus - 1.0) < 1e-14);
    CHECK(g.lambda_plus > 1.0);
    CHECK(g.lambda_minus > 0.0);
    CHECK(g.lambda_minus < 1.0);
    const std::size_t k = g.k;
    for (std::size_t p = 1; p <= g.cp.size(); ++p) {
      const double expect = p <= k ? std::pow(lp, p) - std::pow(lm, p)
                                   : (std::pow(lp, k) - std::pow(lm, k)) * std::pow(lm, double(p - k));
      CHECK(g.cp[p - 1] == doctest::Approx(expect).epsilon(1e-12));
    }
    auto c = [&](std::size_t p) { return p == 0 ? 0.0 : g.cp[p - 1]; };
    for (std::size_t p = 1; p + 1 <= g.cp.size(); ++p) {
      if (p == k) continue;
      CHECK(std::abs(c(p - 1) - 2 * z * c(p) + c(p + 1)) < 1e-12 * std::abs(c(p)) + 1e-300);
    }
    CHECK(g.row_defect() == doctest::Approx(std::pow(lp, k) * (lm - lp)).epsilon(1e-12));
    for (std::size_t j = 1; j <= g.w.size(); ++j) {
      CHECK(g.w[j - 1] == doctest::Approx((std::pow(lp, j) - std::pow(lm, j)) / (lp - lm)).epsilon(1e-12));
    }
  }
}

TEST_CASE("illustrative z=2 kernel values") {
  const double z = 2.0;
  const double lp = z + std::sqrt(z * z - 1), lm = z - std::sqrt(z * z - 1);
  CHECK(lp - lm == doctest::Approx(2 * std::sqrt(3.0)));
  CHECK(lp * lp - lm * lm == doctest::Approx(8 * std::sqrt(3.0)));
  CHECK(lp + lm == doctest::Approx(2 * z));
  // r = 1/3 gives z = 2
  const auto g = kernel_generator(3, bifurcation_ratio(3), 64);
  CHECK(g.z == doctest::Approx(2.0).epsilon(1e-13));
}

TEST_CASE("kernel generator, odd m null vector") {
  // the odd-frequency null vector matches λ₊^{p-1/2} + λ₋^{p-1/2} up to the mode index, then decays like λ₋
  for (int m : {3, 5, 7}) {
    const double r = bifurcation_ratio(m);
    const auto g = kernel_generator(m, r, 256);
    CHECK(g.mode_class == FrequencyClass::OddFrequencies);
    CHECK(g.k == std::size_t((m + 1) / 2));
    CHECK(g.frequency(g.k) == std::size_t(m));
    const double lp = g.lambda_plus, lm = g.lambda_minus;
    const double ck = std::pow(lp, g.k - 0.5) + std::pow(lm, g.k - 0.5);
    for (std::size_t p = 1; p <= 30; ++p) {
      const double expect = p <= g.k ? std::pow(lp, p - 0.5) + std::pow(lm, p - 0.5) : ck * std::pow(lm, double(p - g.k));
      CHECK(g.cp[p - 1] == doctest::Approx(expect).epsilon(1e-10));
    }
    CHECK(g.row_defect() != 0.0);
  }
}

TEST_CASE("kernel annihilation") {
  for (int m : {3, 4, 5, 6}) {
    const double r = bifurcation_ratio(m);
    const auto g = kernel_generator(m, r, 256);
    const auto h0 = g.as_series(256);
    CHECK(apply_DF(r, h0).max_abs() < 1e-10 * h0.l2_norm());
  }
  // odd blocks: the truncated null vector is annihilated at N = 4m already
  for (int m : {3, 5, 7}) {
    const double r = bifurcation_ratio(m);
    const auto h0 = kernel_generator(m, r, 4 * m).as_series(4 * m);
    CHECK(apply_DF(r, h0).max_abs() < 1e-10 * h0.l2_norm());
  }
  // even closed form: at N = 4m the only defect is the dropped next coefficient in the last row
  for (int m : {4, 6, 8}) {
    const double r = bifurcation_ratio(m);
    const std::size_t n = 4 * m;
    const auto g = kernel_generator(m, r, n);
    const auto img = apply_DF(r, g.as_series(n));
    const std::size_t last_p = n / 2;
    const double next = g.cp[g.k - 1] * std::pow(g.lambda_minus, double(last_p + 1 - g.k));
    const double expect = -k_coeff(int(n), r) * next;
    CHECK(img.coeff(n) == doctest::Approx(expect).epsilon(1e-8));
    CHECK((img - SineSeries::unit_mode(n, n, img.coeff(n))).max_abs() < 1e-12 * g.as_series(n).l2_norm());
  }
  CHECK_THROWS_AS(kernel_generator(3, 0.3, 64), PreconditionError);
  CHECK_THROWS_AS(kernel_generator(4, bifurcation_ratio(4), 7), Error);
}

TEST_CASE("preimage round trip") {
  std::mt19937_64 rng(29);
  for (int m : {3, 4, 5, 6}) {
    const double r = bifurcation_ratio(m);
    const std::size_t n = 64;
    for (int parity : {0, 1}) {
      for (int trial = 0; trial < 3; ++trial) {
        const auto t = random_target(rng, n, parity, m);
        const auto h = preimage(m, r, t);
        CHECK((apply_DF(r, h) - t).max_abs() < 1e-9);
      }
    }
    // unit mode not in the kernel comes back modulo the kernel
    const int j = (m % 2 == 0) ? m + 2 : m - 2;
    const auto e = CosineSeries::unit_mode(n, j);
    const auto back = preimage(m, r, apply_DF(r, e));
    CHECK((apply_DF(r, back - e)).max_abs() < 1e-9);
    CHECK(preimage(m, r, SineSeries(n)).max_abs() == 0.0);
    CHECK_THROWS_AS(preimage(m, r, SineSeries::unit_mode(n, m)), PreconditionError);
  }
  std::vector<double> mixed(20, 0.0);
  mixed[0] = 1.0;
  mixed[1] = 1.0;
  CHECK_THROWS_AS(preimage(3, bifurcation_ratio(3), SineSeries(mixed)), PreconditionError);
}

TEST_CASE("thomas solve") {
  // diagonal -2z with unit off-diagonals
  const std::size_t n = 12;
  std::vector<double> sub(n, 1.0), diag(n, -2.0 * 1.7), sup(n, 1.0), x(n), rhs(n);
  sub[0] = 0.0;
  sup[n - 1] = 0.0;
  for (std::size_t i = 0; i < n; ++i) x[i] = std::sin(1.0 + i);
  for (std::size_t i = 0; i < n; ++i) {
    rhs[i] = diag[i] * x[i] + (i > 0 ? x[i - 1] : 0.0) + (i + 1 < n ? x[i + 1] : 0.0);
  }
  const auto sol = thomas_solve(sub, diag, sup, rhs);
  for (std::size_t i = 0; i < n; ++i) CHECK(sol[i] == doctest::Approx(x[i]).epsilon(1e-13));
}

TEST_CASE("omega table") {
  CHECK(omega_m(2, 0.0) == doctest::Approx(0.25));
  CHECK(omega_m(3, 0.0) == doctest::Approx(1.0 / 3.0));
  CHECK(omega_m(2, 1.0) == doctest::Approx(2.0 / (3.0 * pi)));
  CHECK(omega_m(4, 1.0) == doctest::Approx(2.0 / pi * (1.0 / 3 + 1.0 / 5 + 1.0 / 7)));
  // displayed Γ-expression at 50 digits; the calibrated value is its negative
  const double disp05[] = {-0.235179968596959593, -0.3420799543228503171, -0.40621994575838475155,
                           -0.45010520305638199618};
  const double disp15[] = {-0.1546827007578281999, -0.27499146801391679981, -0.37679119415368407667,
                           -0.46661448192406696801};
  for (int m = 2; m <= 5; ++m) {
    CHECK(omega_m(m, 0.5) == doctest::Approx(-disp05[m - 2]).epsilon(1e-13));
    CHECK(omega_m(m, 1.5) == doctest::Approx(-disp15[m - 2]).epsilon(1e-13));
  }
  // continuity towards the closed-form entries
  CHECK(omega_m(3, 1e-7) == doctest::Approx(omega_m(3, 0.0)).epsilon(1e-6));
  CHECK(omega_m(3, 1.0 - 1e-7) == doctest::Approx(omega_m(3, 1.0)).epsilon(1e-6));
  CHECK_THROWS_AS(omega_m(1, 0.0), DomainError);
  CHECK_THROWS_AS(omega_m(3, 2.0), DomainError);
}

TEST_CASE("transversality") {
  for (int m = 3; m <= 6; ++m) {
    const double t = transversality_index(m, bifurcation_ratio(m));
    CHECK(std::abs(t) > 1e-6);
  }
  // K' against the symbolic derivative of the bracket, and sign stability under step refinement
  const double r4 = bifurcation_ratio(4);
  const double a = k_coeff_derivative(4, r4, 1e-6);
  const double b = k_coeff_derivative(4, r4, 1e-4);
  CHECK(a == doctest::Approx(b).epsilon(1e-8));
  const double m = 4, r = r4;
  const double dbr = -2 + 2 * m - 2 * r + m * std::pow(1 - r, m - 1) / std::pow(1 + r, m - 2) +
                     (m - 2) * std::pow(1 - r, m) / std::pow(1 + r, m - 1);
  const double symbolic = -(1 - r) / (8 * (1 + r) * (1 + r)) * dbr;  // bracket vanishes at r(m)
  CHECK(a == doctest::Approx(symbolic).epsilon(1e-8));
  CHECK_THROWS_AS(transversality_index(4, 0.3), PreconditionError);
}

TEST_CASE("K_n growth") {
  CHECK(std::isfinite(k_growth_ratio(1.0 / 3.0, 1)));
  CHECK(k_growth_ratio(1.0 / 3.0, 1000) == doctest::Approx(1.0 / 32.0).epsilon(0.01));
  for (int m = 3; m <= 6; ++m) {
    const double r = bifurcation_ratio(m);
    const double limit = r * (1 - r) / (4 * (1 + r) * (1 + r));
    CHECK(k_growth_ratio(r, 100000) == doctest::Approx(limit).epsilon(1e-4));
  }
}
