#pragma once

// Closed-form periodic integrals with a log or Poisson kernel, and the
// quadrature rules that are checked against them.

#include <cstddef>
#include <functional>
#include <string>
#include <vector>

namespace vstate {

// ∫_0^{2π} cos(ky) / ((1+r²) + (r²-1) cos y) dy = (π/r) ((1-r)/(1+r))^|k|.
double poisson_kernel_integral(int k, double r);

// ∫_0^{2π} cos(ky) log(sin²(y/2)) dy: -2π/|k|, or -4π log 2 at k = 0.
double log_sin_integral(int k);

// ∫_0^{2π} cos(ky) log((1+r²)/(1-r²) - cos y) dy:
// -(2π/|k|) ((1-r)/(1+r))^|k|, or -2π log(2(1-r)/(1+r)) at k = 0.
double log_shifted_cos_integral(int k, double r);

enum class QuadScheme { Trapezoid, LogSplit, PowerGraded };

struct QuadratureRule {
  std::size_t n_nodes = 1024;
  QuadScheme scheme = QuadScheme::Trapezoid;
  double grading = 1.0;  // mesh exponent, PowerGraded only

  static QuadratureRule trapezoid(std::size_t n);
  static QuadratureRule log_split(std::size_t n);
  // Graded for a |y|^{-alpha} singularity: exponent 3/(2-alpha), n/2 nodes
  // per side of y = 0.
  static QuadratureRule power_graded(std::size_t n, double alpha);

  // Throws PreconditionError unless n_nodes >= 8, even, and grading > 0.
  void validate() const;
};

struct NodesWeights {
  std::vector<double> y;
  std::vector<double> w;
};

// Gauss-Legendre on [-1, 1].
NodesWeights gauss_legendre(std::size_t n);

// Weights w_i at y_i = 2πi/n such that Σ w_i g(y_i) = ∫ g(y) log(4 sin²(y/2)) dy
// exactly for trigonometric polynomials g of degree < n/2.
std::vector<double> log_split_weights(std::size_t n);

// Nodes on (-π, π) excluding 0, symmetric, clustered at 0 like y = π s^q.
NodesWeights graded_nodes(std::size_t n, double grading);

// Trapezoid: ∫_0^{2π} f. LogSplit: ∫_0^{2π} f(y) log(4 sin²(y/2)) dy with f
// the smooth factor. PowerGraded: ∫_{-π}^{π} f with f allowed to blow up like
// |y|^{1-α} at 0. Throws NumericalError on a non-finite node value.
double integrate_periodic(const std::function<double(double)>& f, const QuadratureRule& rule);

struct OracleRow {
  std::string integral;
  int k = 0;
  double r = 0.0;  // 0 where the integral has no ratio
  double closed = 0.0;
  double quadrature = 0.0;
  double delta() const;
};

// Every closed form against its quadrature for k in -8..8 and
// r in {0.1, ..., 0.9}, with n_nodes-point rules.
std::vector<OracleRow> oracle_table(std::size_t n_nodes = 1024);

}  // namespace vstate
