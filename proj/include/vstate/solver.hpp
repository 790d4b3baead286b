#pragma once

// Branch switching and amplitude continuation of rotating patches.
//
// Unknowns are the shape coefficients on the active frequency class and the
// parameter (r for the ellipse family, Ω for the disk). The amplitude is
// pinned by the extra equation <R, h0> = ε, h0 being the unit kernel
// direction with positive lowest coefficient.

#include <cstddef>
#include <limits>
#include <string>
#include <vector>

#include "vstate/error.hpp"
#include "vstate/functional.hpp"
#include "vstate/series.hpp"

namespace vstate {

struct ContinuationConfig {
  double newton_tol = 1e-11;
  int max_newton_iters = 20;
  double epsilon_step = 5e-3;
  int n_steps = 10;
  std::size_t n_modes = 64;
  PatchConfig patch;  // family and alpha are overwritten by the problem

  void validate() const;
};

struct BranchPoint {
  Family family = Family::Ellipse;
  int m = 0;
  double alpha = 0.0;
  double param = 0.0;
  double epsilon = 0.0;
  CosineSeries shape{1};
  // max over the projected sine coefficients k <= N and the amplitude
  // constraint: the residual of the discrete system
  double residual_norm = 0.0;
  double sup_residual = 0.0;  // max |F(x_i)| over collocation nodes, all modes
  double decay_rate = std::numeric_limits<double>::infinity();  // inf: no shape to fit
  double min_curvature = 0.0;
  double min_chord = 0.0;  // smallest normalized squared chord at the nodes
  int newton_iters = 0;
  std::vector<double> newton_history;  // residual before each update, then final
};

struct BranchProblem {
  Family family = Family::Ellipse;
  int m = 0;
  double alpha = 0.0;
  double base_param = 0.0;  // r(m) or Ω_m
  CosineSeries h0{1};
  // Active frequencies (1-based). Odd m on the ellipse uses every frequency:
  // the odd class is not invariant under the nonlinear map.
  std::vector<std::size_t> active;
  PatchConfig patch;
};

BranchProblem make_problem(Family family, int m, double alpha, const ContinuationConfig& cfg);

// Point at amplitude eps0 corrected from eps0·h0. Below 1e-12 the trivial
// solution is returned without iterating.
BranchPoint branch_switch(const BranchProblem& problem, double eps0, const ContinuationConfig& cfg);

// Newton with a forward-difference Jacobian on (active coefficients, param),
// holding <R, h0> at point.epsilon. Throws ConvergenceError on divergence and
// NumericalError on a singular Jacobian.
BranchPoint newton_correct(const BranchProblem& problem, const BranchPoint& guess, const ContinuationConfig& cfg);

// Raised when a continuation step fails; carries every accepted point.
class BranchStepError : public ConvergenceError {
 public:
  BranchStepError(const std::string& what, std::vector<BranchPoint> accepted)
      : ConvergenceError(what), accepted_(std::move(accepted)) {}
  const std::vector<BranchPoint>& accepted() const { return accepted_; }

 private:
  std::vector<BranchPoint> accepted_;
};

// Trivial point followed by up to n_steps corrected points at ε = i·epsilon_step.
// Stops early, without error, at the first predictor or corrected point whose
// normalized chord drops below chord_floor.
std::vector<BranchPoint> trace_branch(const BranchProblem& problem, const ContinuationConfig& cfg);

}  // namespace vstate
