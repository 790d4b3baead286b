#include "vstate/linearized.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <numbers>

#include "vstate/error.hpp"
#include "vstate/special.hpp"

namespace vstate {

namespace {

void require_ratio(double r) {
  if (!(r > 0.0 && r < 1.0)) throw DomainError("ratio r must lie in (0, 1)");
}

double zparam(double r) { return (1.0 + r) / (1.0 - r); }

}  // namespace

double bracket(int m, double r) {
  require_ratio(r);
  const double md = m;
  return -1.0 - 2.0 * r + 2.0 * md * r - r * r - std::pow(1.0 - r, md) / std::pow(1.0 + r, md - 2.0);
}

double bifurcation_ratio(int m, double tol) {
  if (m <= 2) throw DomainError("the bracket has no root in (0,1) for m <= 2");
  require(tol > 0.0, "tolerance must be positive");
  double lo = 1e-12, hi = 1.0 - 1e-12;
  double flo = bracket(m, lo);
  if (flo >= 0.0 || bracket(m, hi) <= 0.0) throw ConvergenceError("bracket has no sign change");
  for (int it = 0; it < 200 && hi - lo > std::max(tol, 1e-15); ++it) {
    const double mid = 0.5 * (lo + hi);
    const double fm = bracket(m, mid);
    if ((fm < 0.0) == (flo < 0.0)) {
      lo = mid;
      flo = fm;
    } else {
      hi = mid;
    }
  }
  double r = 0.5 * (lo + hi);
  // Newton polish; the root is simple.
  for (int it = 0; it < 4; ++it) {
    const double h = 1e-7;
    const double d = (bracket(m, r + h) - bracket(m, r - h)) / (2.0 * h);
    if (d == 0.0) break;
    const double next = r - bracket(m, r) / d;
    if (!(next > lo - tol && next < hi + tol)) break;
    r = next;
  }
  if (!(r > 0.0 && r < 1.0)) throw ConvergenceError("root left (0,1)");
  return r;
}

double k_coeff(int k, double r) {
  return -(1.0 - r) / (8.0 * (1.0 + r) * (1.0 + r)) * bracket(k, r);
}

TriDiagonalDF tri_coeffs(double r, std::size_t n) {
  require_ratio(r);
  require(n >= 4, "tridiagonal truncation needs N >= 4");
  TriDiagonalDF df;
  df.r = r;
  df.z = zparam(r);
  df.K.resize(n);
  df.x.resize(n);
  df.y.resize(n);
  df.zc.resize(n);
  for (std::size_t k = 1; k <= n; ++k) {
    const double K = k_coeff(static_cast<int>(k), r);
    df.K[k - 1] = K;
    df.x[k - 1] = K;
    df.zc[k - 1] = K;
    df.y[k - 1] = -2.0 * df.z * K;
  }
  df.y[0] = -(3.0 * r + 1.0) / (4.0 * (1.0 + r) * (1.0 + r));
  return df;
}

SineSeries apply_DF(const TriDiagonalDF& df, const CosineSeries& h) {
  const std::size_t n = h.size();
  require(df.size() >= n, "tridiagonal table shorter than the series");
  std::vector<double> out(n);
  for (std::size_t k = 1; k <= n; ++k) {
    const long kl = static_cast<long>(k);
    out[k - 1] = df.x[k - 1] * h.coeff(kl - 2) + df.y[k - 1] * h.coeff(kl) + df.zc[k - 1] * h.coeff(kl + 2);
  }
  return SineSeries(std::move(out));
}

SineSeries apply_DF(double r, const CosineSeries& h) {
  return apply_DF(tri_coeffs(r, std::max<std::size_t>(h.size(), 4)), h);
}

double KernelGenerator::row_defect() const {
  auto c = [&](std::size_t p) { return p >= 1 && p <= cp.size() ? cp[p - 1] : 0.0; };
  return c(k - 1) - 2.0 * z * c(k) + c(k + 1);
}

CosineSeries KernelGenerator::as_series(std::size_t n) const {
  std::vector<double> a(n, 0.0);
  for (std::size_t p = 1; p <= cp.size(); ++p) {
    const std::size_t f = frequency(p);
    if (f <= n) a[f - 1] = cp[p - 1];
  }
  return CosineSeries(std::move(a));
}

KernelGenerator kernel_generator(int m, double r_m, std::size_t n) {
  if (m <= 2) throw DomainError("kernel generator needs m > 2");
  require_ratio(r_m);
  require(n >= static_cast<std::size_t>(2 * m), "kernel generator needs N >= 2m");
  if (std::abs(bracket(m, r_m)) >= 1e-10) {
    throw PreconditionError("r is not a root of the bracket for m = " + std::to_string(m));
  }
  KernelGenerator g;
  g.m = m;
  g.r = r_m;
  g.z = zparam(r_m);
  const double disc = std::sqrt(g.z * g.z - 1.0);
  g.lambda_plus = g.z + disc;
  g.lambda_minus = 1.0 / g.lambda_plus;  // = z - disc without cancellation
  const double lp = g.lambda_plus, lm = g.lambda_minus;

  if (m % 2 == 0) {
    g.mode_class = FrequencyClass::EvenFrequencies;
    g.k = static_cast<std::size_t>(m / 2);
    const std::size_t nb = n / 2;
    g.cp.resize(nb);
    const double ck = std::pow(lp, static_cast<double>(g.k)) - std::pow(lm, static_cast<double>(g.k));
    for (std::size_t p = 1; p <= nb; ++p) {
      const double pd = static_cast<double>(p);
      g.cp[p - 1] = p <= g.k ? std::pow(lp, pd) - std::pow(lm, pd)
                             : ck * std::pow(lm, pd - static_cast<double>(g.k));
    }
  } else {
    g.mode_class = FrequencyClass::OddFrequencies;
    g.k = static_cast<std::size_t>((m + 1) / 2);
    const std::size_t nb = (n + 1) / 2;
    const auto df = tri_coeffs(r_m, n);
    Eigen::MatrixXd B = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(nb), static_cast<Eigen::Index>(nb));
    for (std::size_t p = 1; p <= nb; ++p) {
      const std::size_t f = 2 * p - 1;
      const auto i = static_cast<Eigen::Index>(p - 1);
      B(i, i) = df.y[f - 1];
      if (p >= 2) B(i, i - 1) = df.x[f - 1];
      if (p < nb) B(i, i + 1) = df.zc[f - 1];
    }
    const double shift = 1e-13 * B.cwiseAbs().maxCoeff();
    Eigen::PartialPivLU<Eigen::MatrixXd> lu(B - shift * Eigen::MatrixXd::Identity(B.rows(), B.cols()));
    Eigen::VectorXd v = Eigen::VectorXd::Ones(B.rows());
    for (int it = 0; it < 6; ++it) {
      v = lu.solve(v);
      if (!v.allFinite()) throw NumericalError("inverse iteration diverged");
      v /= v.norm();
    }
    if (v(0) == 0.0) throw NumericalError("odd null vector has vanishing head");
    v *= (std::sqrt(lp) + std::sqrt(lm)) / v(0);
    g.cp.assign(v.data(), v.data() + v.size());
  }
  g.w.resize(g.cp.size());
  for (std::size_t j = 1; j <= g.w.size(); ++j) {
    const double jd = static_cast<double>(j);
    g.w[j - 1] = (std::pow(lp, jd) - std::pow(lm, jd)) / (lp - lm);
  }
  return g;
}

std::vector<double> thomas_solve(const std::vector<double>& sub, const std::vector<double>& diag,
                                 const std::vector<double>& sup, std::vector<double> rhs) {
  const std::size_t n = diag.size();
  require(sub.size() == n && sup.size() == n && rhs.size() == n, "tridiagonal sizes disagree");
  if (n == 0) return rhs;
  std::vector<double> c(n);
  double piv = diag[0];
  if (piv == 0.0) throw NumericalError("zero pivot in tridiagonal solve");
  c[0] = sup[0] / piv;
  rhs[0] /= piv;
  for (std::size_t i = 1; i < n; ++i) {
    piv = diag[i] - sub[i] * c[i - 1];
    if (piv == 0.0) throw NumericalError("zero pivot in tridiagonal solve");
    c[i] = sup[i] / piv;
    rhs[i] = (rhs[i] - sub[i] * rhs[i - 1]) / piv;
  }
  for (std::size_t i = n - 1; i-- > 0;) rhs[i] -= c[i] * rhs[i + 1];
  return rhs;
}

CosineSeries preimage(int m, double r_m, const SineSeries& target, double tol) {
  if (m <= 2) throw DomainError("preimage needs m > 2");
  require_ratio(r_m);
  const std::size_t n = target.size();
  require(n >= static_cast<std::size_t>(m), "target shorter than the bifurcating mode");
  const double scale = target.max_abs();
  if (scale == 0.0) return CosineSeries(n);

  bool has_even = false, has_odd = false;
  for (std::size_t j = 1; j <= n; ++j) {
    if (std::abs(target.coeff(static_cast<long>(j))) > tol * scale) (j % 2 == 0 ? has_even : has_odd) = true;
  }
  if (has_even && has_odd) throw PreconditionError("target mixes even and odd frequencies");
  const bool odd = has_odd;
  const auto df = tri_coeffs(r_m, std::max<std::size_t>(n, 4));
  const double z = df.z;
  const std::size_t nb = odd ? (n + 1) / 2 : n / 2;
  auto freq = [&](std::size_t p) { return odd ? 2 * p - 1 : 2 * p; };

  std::vector<double> a(nb, 0.0);
  const bool kernel_class = (m % 2 == 1) == odd;
  if (!kernel_class) {
    std::vector<double> sub(nb, 1.0), diag(nb, -2.0 * z), sup(nb, 1.0), rhs(nb);
    if (odd) diag[0] = 1.0 - 2.0 * z;
    for (std::size_t p = 1; p <= nb; ++p) rhs[p - 1] = target.coeff(static_cast<long>(freq(p))) / df.K[freq(p) - 1];
    a = thomas_solve(sub, diag, sup, std::move(rhs));
  } else {
    const std::size_t k = odd ? static_cast<std::size_t>((m + 1) / 2) : static_cast<std::size_t>(m / 2);
    if (std::abs(target.coeff(m)) > tol * std::max(1.0, scale)) {
      throw PreconditionError("target has a component along the bifurcating mode");
    }
    std::vector<double> ct(nb, 0.0);
    for (std::size_t p = 1; p <= nb; ++p) {
      if (p != k) ct[p - 1] = target.coeff(static_cast<long>(freq(p))) / df.K[freq(p) - 1];
    }
    if (k > 1) {
      const std::size_t h = k - 1;
      std::vector<double> sub(h, 1.0), diag(h, -2.0 * z), sup(h, 1.0);
      if (odd) diag[0] = 1.0 - 2.0 * z;
      std::vector<double> rhs(ct.begin(), ct.begin() + static_cast<long>(h));
      const auto head = thomas_solve(sub, diag, sup, std::move(rhs));
      std::copy(head.begin(), head.end(), a.begin());
    }
    const double lm = 1.0 / (z + std::sqrt(z * z - 1.0));
    const double gap = 1.0 / lm - lm;
    for (std::size_t s = 1; k + s <= nb; ++s) {
      double acc = 0.0;
      for (std::size_t j = 1; k + j <= nb; ++j) {
        const double dist = static_cast<double>(s > j ? s - j : j - s);
        acc += ct[k + j - 1] * (std::pow(lm, dist) - std::pow(lm, static_cast<double>(s + j)));
      }
      a[k + s - 1] = -acc / gap;
    }
  }
  std::vector<double> out(n, 0.0);
  for (std::size_t p = 1; p <= nb; ++p) {
    if (freq(p) <= n) out[freq(p) - 1] = a[p - 1];
  }
  return CosineSeries(std::move(out));
}

double omega_m(int m, double alpha) {
  if (m < 2) throw DomainError("omega_m needs m >= 2");
  if (!(alpha >= 0.0 && alpha < 2.0)) throw DomainError("alpha must lie in [0, 2)");
  const double md = m;
  if (alpha == 0.0) return (md - 1.0) / (2.0 * md);
  if (alpha == 1.0) {
    double s = 0.0;
    for (int k = 2; k <= m; ++k) s += 1.0 / (2.0 * k - 1.0);
    return 2.0 / std::numbers::pi * s;
  }
  const double a2 = alpha / 2.0;
  const double pre = std::pow(2.0, alpha - 1.0) * gamma_fn(1.0 - alpha) / std::pow(gamma_fn(1.0 - a2), 2);
  const double head = gamma_fn(1.0 + a2) / gamma_fn(2.0 - a2);
  // Γ(m+α/2)/Γ(1+m-α/2) via logs to stay finite for large m
  const double tail = std::exp(std::lgamma(md + a2) - std::lgamma(1.0 + md - a2));
  return pre * (head - tail);
}

double k_coeff_derivative(int m, double r, double step) {
  require_ratio(r);
  require(step > 0.0 && r - step > 0.0 && r + step < 1.0, "derivative step leaves (0,1)");
  auto central = [&](double h) { return (k_coeff(m, r + h) - k_coeff(m, r - h)) / (2.0 * h); };
  return (4.0 * central(0.5 * step) - central(step)) / 3.0;
}

double transversality_index(int m, double r_m) {
  const auto g = kernel_generator(m, r_m, static_cast<std::size_t>(std::max(4 * m, 64)));
  const double value = k_coeff_derivative(m, r_m) * g.row_defect();
  if (std::abs(value) < 1e-8) throw NumericalError("transversality index vanishes");
  return value;
}

double k_growth_ratio(double r, int n) {
  require(n >= 1, "k_growth_ratio needs n >= 1");
  return std::abs(k_coeff(n, r)) / static_cast<double>(n);
}

}  // namespace vstate
