#pragma once

// Truncated Fourier series on the 2π-periodic circle.
//
// A CosineSeries holds a_1..a_N for Σ a_j cos(jx); a SineSeries holds
// b_1..b_N for Σ b_j sin(jx). There is no constant mode. Coefficients are
// addressed with the 1-based frequency index; indices outside [1, N] read as
// zero, which is the convention every tridiagonal formula in the toolkit uses.

#include <cstddef>
#include <span>
#include <vector>

namespace vstate {

enum class Basis { Cosine, Sine };

template <Basis B>
class TrigSeries {
 public:
  static constexpr Basis basis = B;

  // Zero series with n modes (n >= 1).
  explicit TrigSeries(std::size_t n);
  // Takes a_1..a_N; throws PreconditionError when empty or non-finite.
  explicit TrigSeries(std::vector<double> coeffs);

  static TrigSeries unit_mode(std::size_t n, std::size_t j, double amplitude = 1.0);

  std::size_t size() const { return coeffs_.size(); }
  // a_j for 1 <= j <= N, zero otherwise.
  double coeff(long j) const {
    return (j >= 1 && static_cast<std::size_t>(j) <= coeffs_.size()) ? coeffs_[j - 1] : 0.0;
  }
  std::span<const double> coeffs() const { return coeffs_; }

  // Truncates or zero-pads to n modes.
  TrigSeries resized(std::size_t n) const;

  double l2_norm() const;  // sqrt(Σ a_j²)
  double max_abs() const;

  friend TrigSeries operator+(const TrigSeries& a, const TrigSeries& b) { return a.combine(1.0, b, 1.0); }
  friend TrigSeries operator-(const TrigSeries& a, const TrigSeries& b) { return a.combine(1.0, b, -1.0); }
  friend TrigSeries operator*(double s, const TrigSeries& a) { return a.combine(s, a, 0.0); }

  // alpha*this + beta*other over max(size, other.size) modes.
  TrigSeries combine(double alpha, const TrigSeries& other, double beta) const;

 private:
  std::vector<double> coeffs_;
};

using CosineSeries = TrigSeries<Basis::Cosine>;
using SineSeries = TrigSeries<Basis::Sine>;

extern template class TrigSeries<Basis::Cosine>;
extern template class TrigSeries<Basis::Sine>;

double eval(const CosineSeries& s, double x);
double eval(const SineSeries& s, double x);

// Values at x_i = x0 + 2πi/n, i = 0..n-1.
std::vector<double> sample(const CosineSeries& s, std::size_t n, double x0 = 0.0);
std::vector<double> sample(const SineSeries& s, std::size_t n, double x0 = 0.0);

// d/dx, exact on the truncated space.
SineSeries derivative(const CosineSeries& s);
CosineSeries derivative(const SineSeries& s);

// Σ a_j b_j.
double dot(const CosineSeries& a, const CosineSeries& b);

struct StripNormSpec {
  double c = 0.0;  // strip half-width
  int k = 0;       // derivative order
};

// sqrt(2π Σ a_j² (1 + j^{2k}) cosh(2jc)): Parseval form of
// Σ± ∫|f(x±ic)|² + Σ± ∫|∂^k f(x±ic)|². Throws OverflowError when a term
// leaves the floating range.
double strip_norm(const CosineSeries& s, StripNormSpec spec);

// Relative floor below which coefficients are treated as round-off when
// fitting the decay rate.
inline constexpr double kDecayFitNoiseFloor = 1e-13;

// Least-squares slope of -log|a_j| against j over every coefficient above
// kDecayFitNoiseFloor * max|a_j|. A positive value estimates the half-width of
// the strip of analyticity. Throws InsufficientDataError with fewer than four
// usable coefficients.
double fit_decay_rate(const CosineSeries& s);

enum class FrequencyClass { EvenFrequencies, OddFrequencies, MultiplesOfM };

bool in_class(std::size_t j, int m, FrequencyClass cls);

// Zeroes every mode outside the selected class. Idempotent.
CosineSeries project_symmetry(const CosineSeries& s, int m, FrequencyClass cls);
SineSeries project_symmetry(const SineSeries& s, int m, FrequencyClass cls);

}  // namespace vstate
