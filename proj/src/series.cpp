#include "vstate/series.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "vstate/error.hpp"

namespace vstate {

template <Basis B>
TrigSeries<B>::TrigSeries(std::size_t n) : coeffs_(n, 0.0) {
  require(n >= 1, "series needs at least one mode");
}

template <Basis B>
TrigSeries<B>::TrigSeries(std::vector<double> coeffs) : coeffs_(std::move(coeffs)) {
  require(!coeffs_.empty(), "series needs at least one mode");
  for (double a : coeffs_) require(std::isfinite(a), "series coefficients must be finite");
}

template <Basis B>
TrigSeries<B> TrigSeries<B>::unit_mode(std::size_t n, std::size_t j, double amplitude) {
  require(j >= 1 && j <= n, "unit mode index out of range");
  TrigSeries s(n);
  s.coeffs_[j - 1] = amplitude;
  return s;
}

template <Basis B>
TrigSeries<B> TrigSeries<B>::resized(std::size_t n) const {
  std::vector<double> c(n, 0.0);
  std::copy_n(coeffs_.begin(), std::min(n, coeffs_.size()), c.begin());
  return TrigSeries(std::move(c));
}

template <Basis B>
double TrigSeries<B>::l2_norm() const {
  double s = 0.0;
  for (double a : coeffs_) s += a * a;
  return std::sqrt(s);
}

template <Basis B>
double TrigSeries<B>::max_abs() const {
  double m = 0.0;
  for (double a : coeffs_) m = std::max(m, std::abs(a));
  return m;
}

template <Basis B>
TrigSeries<B> TrigSeries<B>::combine(double alpha, const TrigSeries& other, double beta) const {
  const std::size_t n = std::max(size(), other.size());
  std::vector<double> c(n);
  for (std::size_t j = 1; j <= n; ++j) {
    c[j - 1] = alpha * coeff(static_cast<long>(j)) + beta * other.coeff(static_cast<long>(j));
  }
  return TrigSeries(std::move(c));
}

template class TrigSeries<Basis::Cosine>;
template class TrigSeries<Basis::Sine>;

namespace {

// Clenshaw for Σ a_j φ_j with φ_{j+1} = 2cos(x) φ_j - φ_{j-1}.
// Returns (b_1, b_2).
std::pair<double, double> clenshaw(std::span<const double> a, double c2) {
  double b1 = 0.0, b2 = 0.0;
  for (std::size_t j = a.size(); j-- > 0;) {
    const double b0 = a[j] + c2 * b1 - b2;
    b2 = b1;
    b1 = b0;
  }
  return {b1, b2};
}

}  // namespace

double eval(const CosineSeries& s, double x) {
  const double c = std::cos(x);
  const auto [b1, b2] = clenshaw(s.coeffs(), 2.0 * c);
  return b1 * c - b2;
}

double eval(const SineSeries& s, double x) {
  const auto [b1, b2] = clenshaw(s.coeffs(), 2.0 * std::cos(x));
  (void)b2;
  return b1 * std::sin(x);
}

namespace {

template <class S>
std::vector<double> sample_impl(const S& s, std::size_t n, double x0) {
  std::vector<double> out(n);
  const double h = 2.0 * std::numbers::pi / static_cast<double>(n);
  for (std::size_t i = 0; i < n; ++i) out[i] = eval(s, x0 + h * static_cast<double>(i));
  return out;
}

}  // namespace

std::vector<double> sample(const CosineSeries& s, std::size_t n, double x0) { return sample_impl(s, n, x0); }
std::vector<double> sample(const SineSeries& s, std::size_t n, double x0) { return sample_impl(s, n, x0); }

SineSeries derivative(const CosineSeries& s) {
  std::vector<double> b(s.size());
  for (std::size_t j = 1; j <= s.size(); ++j) b[j - 1] = -static_cast<double>(j) * s.coeffs()[j - 1];
  return SineSeries(std::move(b));
}

CosineSeries derivative(const SineSeries& s) {
  std::vector<double> a(s.size());
  for (std::size_t j = 1; j <= s.size(); ++j) a[j - 1] = static_cast<double>(j) * s.coeffs()[j - 1];
  return CosineSeries(std::move(a));
}

double dot(const CosineSeries& a, const CosineSeries& b) {
  const std::size_t n = std::min(a.size(), b.size());
  double s = 0.0;
  for (std::size_t j = 0; j < n; ++j) s += a.coeffs()[j] * b.coeffs()[j];
  return s;
}

double strip_norm(const CosineSeries& s, StripNormSpec spec) {
  require(spec.c >= 0.0 && spec.k >= 0, "strip norm needs c >= 0 and k >= 0");
  double total = 0.0;
  for (std::size_t j = 1; j <= s.size(); ++j) {
    const double a = s.coeffs()[j - 1];
    if (a == 0.0) continue;
    const double jd = static_cast<double>(j);
    const double weight = (1.0 + std::pow(jd, 2.0 * spec.k)) * std::cosh(2.0 * jd * spec.c);
    const double term = a * a * weight;
    if (!std::isfinite(weight) || !std::isfinite(term)) {
      throw OverflowError("strip norm overflows at mode " + std::to_string(j));
    }
    total += term;
  }
  if (!std::isfinite(total)) throw OverflowError("strip norm overflows");
  return std::sqrt(2.0 * std::numbers::pi * total);
}

double fit_decay_rate(const CosineSeries& s) {
  const double floor = kDecayFitNoiseFloor * s.max_abs();
  std::vector<double> js, ys;
  for (std::size_t j = 1; j <= s.size(); ++j) {
    const double a = std::abs(s.coeffs()[j - 1]);
    if (a > floor && a > 0.0) {
      js.push_back(static_cast<double>(j));
      ys.push_back(-std::log(a));
    }
  }
  if (js.size() < 4) {
    throw InsufficientDataError("decay fit needs at least 4 usable coefficients, got " +
                                std::to_string(js.size()));
  }
  const double n = static_cast<double>(js.size());
  double jm = 0.0, ym = 0.0;
  for (std::size_t i = 0; i < js.size(); ++i) {
    jm += js[i];
    ym += ys[i];
  }
  jm /= n;
  ym /= n;
  double sxy = 0.0, sxx = 0.0;
  for (std::size_t i = 0; i < js.size(); ++i) {
    sxy += (js[i] - jm) * (ys[i] - ym);
    sxx += (js[i] - jm) * (js[i] - jm);
  }
  return sxy / sxx;
}

bool in_class(std::size_t j, int m, FrequencyClass cls) {
  switch (cls) {
    case FrequencyClass::EvenFrequencies: return j % 2 == 0;
    case FrequencyClass::OddFrequencies: return j % 2 == 1;
    case FrequencyClass::MultiplesOfM: return j % static_cast<std::size_t>(m) == 0;
  }
  return false;
}

namespace {

template <class S>
S project_impl(const S& s, int m, FrequencyClass cls) {
  require(m >= 1, "symmetry fold must be >= 1");
  std::vector<double> c(s.coeffs().begin(), s.coeffs().end());
  for (std::size_t j = 1; j <= c.size(); ++j) {
    if (!in_class(j, m, cls)) c[j - 1] = 0.0;
  }
  return S(std::move(c));
}

}  // namespace

CosineSeries project_symmetry(const CosineSeries& s, int m, FrequencyClass cls) { return project_impl(s, m, cls); }
SineSeries project_symmetry(const SineSeries& s, int m, FrequencyClass cls) { return project_impl(s, m, cls); }

}  // namespace vstate
