#pragma once

// Linear theory around the ellipse family: root of the bracket, the
// tridiagonal linearization, its kernel and a right inverse on the range.

#include <cstddef>
#include <vector>

#include "vstate/series.hpp"

namespace vstate {

// -1 - 2r + 2mr - r² - (1-r)^m / (1+r)^{m-2}.
double bracket(int m, double r);

// Unique root of bracket(m, ·) in (0, 1) for m > 2: bisection, then Newton.
double bifurcation_ratio(int m, double tol = 1e-14);

// K_k(r) = -(1-r)/(8(1+r)²) · bracket(k, r).
double k_coeff(int k, double r);

struct TriDiagonalDF {
  double r = 0.0;
  double z = 0.0;         // (1+r)/(1-r)
  std::vector<double> K;  // K[k-1] = K_k
  std::vector<double> x;  // sub-diagonal, multiplies a_{k-2}
  std::vector<double> y;  // diagonal
  std::vector<double> zc; // super-diagonal, multiplies a_{k+2}
  std::size_t size() const { return K.size(); }
};

TriDiagonalDF tri_coeffs(double r, std::size_t n);

// Σ_k (x_k a_{k-2} + y_k a_k + z_k a_{k+2}) sin(kx), truncated at h.size().
SineSeries apply_DF(double r, const CosineSeries& h);
SineSeries apply_DF(const TriDiagonalDF& df, const CosineSeries& h);

struct KernelGenerator {
  int m = 0;
  double r = 0.0;
  double z = 0.0;
  double lambda_plus = 0.0;
  double lambda_minus = 0.0;
  // Index of the bifurcating mode in the class: m/2 (even m), (m+1)/2 (odd m).
  std::size_t k = 0;
  FrequencyClass mode_class = FrequencyClass::EvenFrequencies;
  // cp[p-1] multiplies cos(f_p x) with f_p = 2p (even) or 2p-1 (odd).
  std::vector<double> cp;
  // w_j = (λ₊^j - λ₋^j)/(λ₊ - λ₋), j = 1..cp.size()
  std::vector<double> w;

  std::size_t frequency(std::size_t p) const {
    return mode_class == FrequencyClass::EvenFrequencies ? 2 * p : 2 * p - 1;
  }
  // c_{k-1} - 2z c_k + c_{k+1}, with the reflected head row for odd m.
  double row_defect() const;
  // Coefficients placed on their frequencies, n modes.
  CosineSeries as_series(std::size_t n) const;
};

// Requires |bracket(m, r_m)| < 1e-10 and n >= 2m. Even m uses the closed
// form; odd m the null vector of the truncated odd block by inverse
// iteration, scaled so that c_1 = λ₊^{1/2} + λ₋^{1/2}.
KernelGenerator kernel_generator(int m, double r_m, std::size_t n);

// h with apply_DF(r_m, h) = target, up to the truncation tail. Target
// frequencies must share one parity class; in the class of m the m-th
// coefficient must vanish (|t_m| <= tol·max|t|) and the kernel component
// a_k is chosen to be zero.
CosineSeries preimage(int m, double r_m, const SineSeries& target, double tol = 1e-10);

// Tridiagonal solve, sub[0] and sup[n-1] ignored. Throws NumericalError on a
// zero pivot.
std::vector<double> thomas_solve(const std::vector<double>& sub, const std::vector<double>& diag,
                                 const std::vector<double>& sup, std::vector<double> rhs);

// Threshold angular velocity of the m-fold disk branch for the exponent alpha.
double omega_m(int m, double alpha);

// dK_m/dr at r by Richardson-extrapolated central differences.
double k_coeff_derivative(int m, double r, double step = 1e-6);

// K_m'(r_m) · (c_{k-1} - 2z c_k + c_{k+1}). Throws NumericalError when
// |value| < 1e-8.
double transversality_index(int m, double r_m);

// |K_n(r)| / n.
double k_growth_ratio(double r, int n);

}  // namespace vstate
