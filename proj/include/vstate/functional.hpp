#pragma once

// Nonlinear residuals whose zeros are uniformly rotating patches.
//
// Ellipse family: boundary ((1+R(x)) cos x, (r+R(x)) sin x), unknown r.
// Disk family: boundary (1+R(x)) (cos x, sin x), unknown angular velocity Ω,
// with a log kernel (α = 0) or the power kernel |chord|^{-α} (0 < α < 2).
//
// Both residuals are odd in x when R is even, so they are sampled at
// equispaced collocation nodes and projected onto sine modes.

#include <cstddef>
#include <vector>

#include "vstate/series.hpp"

namespace vstate {

enum class Family { Ellipse, Disk };

struct PatchConfig {
  Family family = Family::Ellipse;
  // ω₂-ω₁ (or θ₂-θ₁). The nonlocal terms are scaled by -jump, so the
  // default makes the Kirchhoff ellipse and the disk exact zeros with
  // counterclockwise rotation.
  double jump = -1.0;
  double alpha = 0.0;
  std::size_t n_quad = 1024;    // y nodes for the periodic and log-split rules
  std::size_t n_graded = 1024;  // graded nodes, both sides together
  std::size_t n_collocation = 0;  // 0: smallest divisor of n_quad that is >= 3N

  double calpha() const;
  void validate() const;
};

struct ResidualVector {
  SineSeries sine_coeffs{1};
  std::vector<double> samples;  // F(x_i), x_i = 2πi/M
  double sup_norm = 0.0;        // max |F(x_i)|
  std::size_t collocation_n = 0;
  double min_chord = 0.0;       // smallest normalized squared chord met
};

std::size_t collocation_nodes(std::size_t n_modes, const PatchConfig& cfg);

// Throws DomainError for r outside (0,1), NumericalError when the normalized
// chord vanishes at a node.
ResidualVector eval_F_ellipse(double r, const CosineSeries& R, const PatchConfig& cfg = {});

// R is the perturbation of the unit radius; sup|R| < 1 is required.
ResidualVector eval_F_disk(double omega, const CosineSeries& R, const PatchConfig& cfg);

// Dispatches on cfg.family; param is r or Ω.
ResidualVector eval_F(const PatchConfig& cfg, double param, const CosineSeries& R);

// (F(R + step h) - F(R - step h)) / (2 step).
SineSeries gateaux_fd(const PatchConfig& cfg, double param, const CosineSeries& R, const CosineSeries& h,
                      double step = 1e-5);

// Minimum signed curvature of the boundary on a grid of n points (0: auto).
// base is r for the ellipse family and ignored for the disk. Throws
// NumericalError when |z_x| < 1e-8 somewhere.
double curvature_min(Family family, const CosineSeries& R, double base, std::size_t n = 0);

// max(sup|R|, sup|R'|) on a grid fine enough for the truncation.
double c1_norm(const CosineSeries& R);

// Conservative admissibility radius: C¹ norm at most min(base, 1)/4.
bool admissible(Family family, const CosineSeries& R, double base);

// Lower bound for the normalized squared chord accepted during continuation:
// a quarter of its unperturbed minimum, (min(base,1)/2)² (base = 1 for the disk).
double chord_floor(Family family, double base);

}  // namespace vstate
