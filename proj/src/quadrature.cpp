#include "vstate/quadrature.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <numbers>

#include "vstate/error.hpp"

namespace vstate {

namespace {

constexpr double kPi = std::numbers::pi;

void require_ratio(double r) {
  if (!(r > 0.0 && r < 1.0)) throw DomainError("ratio r must lie in (0, 1)");
}

}  // namespace

double poisson_kernel_integral(int k, double r) {
  require_ratio(r);
  return (kPi / r) * std::pow((1.0 - r) / (1.0 + r), std::abs(k));
}

double log_sin_integral(int k) {
  if (k == 0) return -4.0 * kPi * std::log(2.0);
  return -2.0 * kPi / std::abs(k);
}

double log_shifted_cos_integral(int k, double r) {
  require_ratio(r);
  const double q = (1.0 - r) / (1.0 + r);
  if (k == 0) return -2.0 * kPi * std::log(2.0 * q);
  return -(2.0 * kPi / std::abs(k)) * std::pow(q, std::abs(k));
}

QuadratureRule QuadratureRule::trapezoid(std::size_t n) {
  QuadratureRule q{n, QuadScheme::Trapezoid, 1.0};
  q.validate();
  return q;
}

QuadratureRule QuadratureRule::log_split(std::size_t n) {
  QuadratureRule q{n, QuadScheme::LogSplit, 1.0};
  q.validate();
  return q;
}

QuadratureRule QuadratureRule::power_graded(std::size_t n, double alpha) {
  if (!(alpha >= 0.0 && alpha < 2.0)) throw DomainError("alpha must lie in [0, 2)");
  QuadratureRule q{n, QuadScheme::PowerGraded, 3.0 / (2.0 - alpha)};
  q.validate();
  return q;
}

void QuadratureRule::validate() const {
  require(n_nodes >= 8 && n_nodes % 2 == 0, "quadrature needs an even node count >= 8");
  require(grading > 0.0 && std::isfinite(grading), "grading exponent must be positive");
}

NodesWeights gauss_legendre(std::size_t n) {
  require(n >= 1, "Gauss-Legendre needs at least one node");
  NodesWeights out{std::vector<double>(n), std::vector<double>(n)};
  const double nd = static_cast<double>(n);
  for (std::size_t i = 0; i < (n + 1) / 2; ++i) {
    double x = std::cos(kPi * (static_cast<double>(i) + 0.75) / (nd + 0.5));
    double dp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = x;
      for (std::size_t j = 2; j <= n; ++j) {
        const double jd = static_cast<double>(j);
        const double p2 = ((2.0 * jd - 1.0) * x * p1 - (jd - 1.0) * p0) / jd;
        p0 = p1;
        p1 = p2;
      }
      dp = nd * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    out.y[i] = -x;
    out.y[n - 1 - i] = x;
    out.w[i] = out.w[n - 1 - i] = w;
  }
  return out;
}

std::vector<double> log_split_weights(std::size_t n) {
  require(n >= 2 && n % 2 == 0, "log-split weights need an even node count");
  static std::mutex mu;
  static std::map<std::size_t, std::vector<double>> cache;
  std::lock_guard<std::mutex> lock(mu);
  if (auto it = cache.find(n); it != cache.end()) return it->second;
  const std::size_t half = n / 2;
  const double h = 2.0 * kPi / static_cast<double>(n);
  std::vector<double> w(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double y = h * static_cast<double>(i);
    double s = 0.0;
    for (std::size_t m = 1; m < half; ++m) s += std::cos(static_cast<double>(m) * y) / static_cast<double>(m);
    s += std::cos(static_cast<double>(half) * y) / (2.0 * static_cast<double>(half));
    w[i] = -2.0 * h * s;
  }
  cache.emplace(n, w);
  return w;
}

NodesWeights graded_nodes(std::size_t n, double grading) {
  require(n >= 2 && n % 2 == 0, "graded rule needs an even node count");
  require(grading > 0.0, "grading exponent must be positive");
  const std::size_t side = n / 2;
  const NodesWeights gl = gauss_legendre(side);
  NodesWeights out{std::vector<double>(n), std::vector<double>(n)};
  for (std::size_t i = 0; i < side; ++i) {
    const double s = 0.5 * (gl.y[i] + 1.0);
    const double ws = 0.5 * gl.w[i];
    const double y = kPi * std::pow(s, grading);
    const double w = ws * grading * kPi * std::pow(s, grading - 1.0);
    out.y[i] = y;
    out.w[i] = w;
    out.y[side + i] = -y;
    out.w[side + i] = w;
  }
  return out;
}

double integrate_periodic(const std::function<double(double)>& f, const QuadratureRule& rule) {
  rule.validate();
  const std::size_t n = rule.n_nodes;
  auto value = [&](double y) {
    const double v = f(y);
    if (!std::isfinite(v)) throw NumericalError("non-finite integrand at y = " + std::to_string(y));
    return v;
  };
  double sum = 0.0;
  switch (rule.scheme) {
    case QuadScheme::Trapezoid: {
      const double h = 2.0 * kPi / static_cast<double>(n);
      for (std::size_t i = 0; i < n; ++i) sum += value(h * static_cast<double>(i));
      return h * sum;
    }
    case QuadScheme::LogSplit: {
      const auto w = log_split_weights(n);
      const double h = 2.0 * kPi / static_cast<double>(n);
      for (std::size_t i = 0; i < n; ++i) sum += w[i] * value(h * static_cast<double>(i));
      return sum;
    }
    case QuadScheme::PowerGraded: {
      const auto nw = graded_nodes(n, rule.grading);
      for (std::size_t i = 0; i < n; ++i) sum += nw.w[i] * value(nw.y[i]);
      return sum;
    }
  }
  throw Error("unknown quadrature scheme");
}

double OracleRow::delta() const { return std::abs(closed - quadrature); }

std::vector<OracleRow> oracle_table(std::size_t n_nodes) {
  const auto trap = QuadratureRule::trapezoid(n_nodes);
  const auto split = QuadratureRule::log_split(n_nodes);
  std::vector<OracleRow> rows;
  for (int k = -8; k <= 8; ++k) {
    const double kd = k;
    // log(sin²) = log(4 sin²) - log 4
    const double q = integrate_periodic([&](double y) { return std::cos(kd * y); }, split) -
                     std::log(4.0) * integrate_periodic([&](double y) { return std::cos(kd * y); }, trap);
    rows.push_back({"log_sin", k, 0.0, log_sin_integral(k), q});
    for (int i = 1; i <= 9; ++i) {
      const double r = 0.1 * i;
      const double p = integrate_periodic(
          [&](double y) { return std::cos(kd * y) / ((1.0 + r * r) + (r * r - 1.0) * std::cos(y)); }, trap);
      rows.push_back({"poisson_kernel", k, r, poisson_kernel_integral(k, r), p});
      const double a = (1.0 + r * r) / (1.0 - r * r);
      const double l = integrate_periodic([&](double y) { return std::cos(kd * y) * std::log(a - std::cos(y)); }, trap);
      rows.push_back({"log_shifted_cos", k, r, log_shifted_cos_integral(k, r), l});
    }
  }
  return rows;
}

}  // namespace vstate
