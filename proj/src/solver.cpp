#include "vstate/solver.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <cstdio>

#include "vstate/error.hpp"
#include "vstate/linearized.hpp"

namespace vstate {

namespace {

constexpr double kTrivialEpsilon = 1e-12;

double base_of(const BranchProblem& p, double param) { return p.family == Family::Ellipse ? param : 1.0; }

void fill_diagnostics(const BranchProblem& p, BranchPoint& pt) {
  pt.min_curvature = curvature_min(p.family, pt.shape, base_of(p, pt.param));
  if (pt.shape.max_abs() == 0.0) {
    pt.decay_rate = std::numeric_limits<double>::infinity();
  } else {
    pt.decay_rate = fit_decay_rate(pt.shape);
  }
}

bool chord_ok(const BranchProblem& p, const BranchPoint& pt) {
  const double base = base_of(p, pt.param);
  if (p.family == Family::Ellipse && !(base > 0.0 && base < 1.0)) return false;
  try {
    return eval_F(p.patch, pt.param, pt.shape).min_chord >= chord_floor(p.family, base);
  } catch (const Error&) {
    return false;
  }
}

BranchPoint trivial_point(const BranchProblem& p, std::size_t n) {
  BranchPoint pt;
  pt.family = p.family;
  pt.m = p.m;
  pt.alpha = p.alpha;
  pt.param = p.base_param;
  pt.epsilon = 0.0;
  pt.shape = CosineSeries(n);
  const auto F = eval_F(p.patch, pt.param, pt.shape);
  pt.residual_norm = F.sine_coeffs.max_abs();
  pt.sup_residual = F.sup_norm;
  pt.min_chord = F.min_chord;
  pt.newton_history = {pt.residual_norm};
  fill_diagnostics(p, pt);
  return pt;
}

}  // namespace

void ContinuationConfig::validate() const {
  require(newton_tol > 0.0, "newton_tol must be positive");
  require(max_newton_iters >= 1, "max_newton_iters must be >= 1");
  require(epsilon_step > 0.0, "epsilon_step must be positive");
  require(n_steps >= 0, "n_steps must be >= 0");
  require(n_modes >= 8, "n_modes must be >= 8");
}

BranchProblem make_problem(Family family, int m, double alpha, const ContinuationConfig& cfg) {
  cfg.validate();
  BranchProblem p;
  p.family = family;
  p.m = m;
  p.alpha = alpha;
  p.patch = cfg.patch;
  p.patch.family = family;
  p.patch.alpha = alpha;
  p.patch.validate();
  const std::size_t n = cfg.n_modes;
  if (family == Family::Ellipse) {
    if (m <= 2) throw DomainError("ellipse branches need m > 2");
    require(n >= static_cast<std::size_t>(2 * m), "n_modes must be at least 2m");
    p.base_param = bifurcation_ratio(m);
    p.h0 = kernel_generator(m, p.base_param, n).as_series(n);
    for (std::size_t j = 1; j <= n; ++j) {
      if (m % 2 == 1 || j % 2 == 0) p.active.push_back(j);
    }
  } else {
    if (m < 2) throw DomainError("disk branches need m >= 2");
    require(n >= static_cast<std::size_t>(2 * m), "n_modes must be at least 2m");
    p.base_param = omega_m(m, alpha);
    p.h0 = CosineSeries::unit_mode(n, static_cast<std::size_t>(m));
    for (std::size_t j = 1; j <= n; ++j) {
      if (in_class(j, m, FrequencyClass::MultiplesOfM)) p.active.push_back(j);
    }
  }
  p.h0 = (1.0 / p.h0.l2_norm()) * p.h0;
  for (double c : p.h0.coeffs()) {
    if (c != 0.0) {
      if (c < 0.0) p.h0 = -1.0 * p.h0;
      break;
    }
  }
  return p;
}

BranchPoint newton_correct(const BranchProblem& p, const BranchPoint& guess, const ContinuationConfig& cfg) {
  const std::size_t n = cfg.n_modes;
  const std::size_t na = p.active.size();
  const auto dim = static_cast<Eigen::Index>(na + 1);

  auto pack = [&](const CosineSeries& s, double param) {
    Eigen::VectorXd u(dim);
    for (std::size_t i = 0; i < na; ++i) u(static_cast<Eigen::Index>(i)) = s.coeff(static_cast<long>(p.active[i]));
    u(dim - 1) = param;
    return u;
  };
  auto shape_of = [&](const Eigen::VectorXd& u) {
    std::vector<double> a(n, 0.0);
    for (std::size_t i = 0; i < na; ++i) a[p.active[i] - 1] = u(static_cast<Eigen::Index>(i));
    return CosineSeries(std::move(a));
  };
  struct Eval {
    Eigen::VectorXd G;
    double norm;
    double sup;
    double chord;
  };
  auto evaluate = [&](const Eigen::VectorXd& u) {
    const CosineSeries R = shape_of(u);
    const auto F = eval_F(p.patch, u(dim - 1), R);
    Eval e{Eigen::VectorXd(dim), 0.0, F.sup_norm, F.min_chord};
    for (std::size_t i = 0; i < na; ++i) e.G(static_cast<Eigen::Index>(i)) = F.sine_coeffs.coeff(static_cast<long>(p.active[i]));
    const double constraint = dot(R, p.h0) - guess.epsilon;
    e.G(dim - 1) = constraint;
    e.norm = std::max(F.sine_coeffs.max_abs(), std::abs(constraint));
    return e;
  };

  Eigen::VectorXd u = pack(guess.shape.resized(n), guess.param);
  Eval cur = evaluate(u);
  BranchPoint out = guess;
  out.family = p.family;
  out.m = p.m;
  out.alpha = p.alpha;
  out.newton_history.assign(1, cur.norm);
  int it = 0;
  while (cur.norm >= cfg.newton_tol) {
    if (it >= cfg.max_newton_iters) {
      char buf[32];
      std::snprintf(buf, sizeof buf, "%.3e", cur.norm);
      throw ConvergenceError("Newton did not converge in " + std::to_string(cfg.max_newton_iters) +
                             " iterations (residual " + buf + ")");
    }
    Eigen::MatrixXd J(dim, dim);
    for (Eigen::Index c = 0; c < dim; ++c) {
      const double h = 1e-6 * std::max(1.0, std::abs(u(c)));
      Eigen::VectorXd up = u;
      up(c) += h;
      J.col(c) = (evaluate(up).G - cur.G) / h;
    }
    Eigen::PartialPivLU<Eigen::MatrixXd> lu(J);
    if (!(std::abs(lu.determinant()) > 0.0) || !std::isfinite(lu.determinant())) {
      throw NumericalError("singular Newton Jacobian");
    }
    const Eigen::VectorXd du = lu.solve(-cur.G);
    if (!du.allFinite()) throw NumericalError("singular Newton Jacobian");
    u += du;
    ++it;
    try {
      cur = evaluate(u);
    } catch (const NumericalError& e) {
      throw ConvergenceError(std::string("Newton iterate left the admissible set: ") + e.what());
    } catch (const DomainError& e) {
      throw ConvergenceError(std::string("Newton iterate left the admissible set: ") + e.what());
    }
    out.newton_history.push_back(cur.norm);
    if (!std::isfinite(cur.norm) || cur.norm > 1e6) throw ConvergenceError("Newton diverged");
  }
  out.shape = shape_of(u);
  out.param = u(dim - 1);
  out.residual_norm = cur.norm;
  out.sup_residual = cur.sup;
  out.min_chord = cur.chord;
  out.newton_iters = it;
  // symmetry closure: nothing outside the active class may appear
  for (std::size_t j = 1; j <= n; ++j) {
    if (std::find(p.active.begin(), p.active.end(), j) == p.active.end() &&
        std::abs(out.shape.coeff(static_cast<long>(j))) > 1e-13) {
      throw Error("iterate left the symmetry class");
    }
  }
  fill_diagnostics(p, out);
  return out;
}

BranchPoint branch_switch(const BranchProblem& p, double eps0, const ContinuationConfig& cfg) {
  require(eps0 >= 0.0, "amplitude must be non-negative");
  if (eps0 < kTrivialEpsilon) return trivial_point(p, cfg.n_modes);
  BranchPoint guess;
  guess.param = p.base_param;
  guess.epsilon = eps0;
  guess.shape = eps0 * p.h0.resized(cfg.n_modes);
  if (!chord_ok(p, guess)) throw DomainError("initial amplitude degenerates the boundary chord");
  return newton_correct(p, guess, cfg);
}

std::vector<BranchPoint> trace_branch(const BranchProblem& p, const ContinuationConfig& cfg) {
  cfg.validate();
  std::vector<BranchPoint> pts{trivial_point(p, cfg.n_modes)};
  const CosineSeries h0 = p.h0.resized(cfg.n_modes);
  for (int i = 1; i <= cfg.n_steps; ++i) {
    BranchPoint guess;
    guess.epsilon = cfg.epsilon_step * i;
    if (pts.size() >= 2) {
      const auto& a = pts[pts.size() - 2];
      const auto& b = pts.back();
      guess.shape = 2.0 * b.shape - a.shape;
      guess.param = 2.0 * b.param - a.param;
    } else {
      guess.shape = pts.back().shape + cfg.epsilon_step * h0;
      guess.param = pts.back().param;
    }
    if (!chord_ok(p, guess)) break;
    BranchPoint next;
    try {
      next = newton_correct(p, guess, cfg);
    } catch (const Error& e) {
      throw BranchStepError("continuation step " + std::to_string(i) + " failed: " + e.what(), pts);
    }
    if (next.min_chord < chord_floor(p.family, base_of(p, next.param))) break;
    pts.push_back(std::move(next));
  }
  return pts;
}

}  // namespace vstate
