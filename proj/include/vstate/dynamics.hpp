#pragma once

// Contour dynamics: boundary velocity of a patch, RK4 time stepping and a
// rigid-rotation fit used to confirm that solved shapes rotate uniformly.

#include <array>
#include <cstddef>
#include <functional>
#include <string>
#include <vector>

#include "vstate/error.hpp"
#include "vstate/functional.hpp"
#include "vstate/series.hpp"

namespace vstate {

using Point = std::array<double, 2>;

struct Contour {
  std::vector<Point> nodes;  // z(x_i), x_i = 2πi/n
  std::size_t size() const { return nodes.size(); }
};

// Boundary of a shape in either family on n equispaced nodes; base is r for
// the ellipse and ignored for the disk.
Contour make_contour(Family family, const CosineSeries& R, double base, std::size_t n);

enum class Kernel { Euler, Gsqg };

struct VelocityModel {
  Kernel kernel = Kernel::Euler;
  double alpha = 0.0;     // Gsqg only, in (0, 2)
  double jump = -1.0;     // same convention as PatchConfig::jump
  std::size_t n_graded = 512;  // graded nodes for Gsqg, both sides

  void validate() const;
};

// dz/dt at every node. Euler: -jump/(4π) ∫ (z_x(x) - z_x(x-y)) log|z(x)-z(x-y)|² dy
// with the log-split rule on the node grid. Gsqg: jump C(α) ∫ (z_x(x) - z_x(x-y))
// |z(x)-z(x-y)|^{-α} dy with graded quadrature and trigonometric interpolation.
// Throws NumericalError when the arc-chord ratio is below 1e-3.
std::vector<Point> boundary_velocity(const Contour& c, const VelocityModel& model);

// Spectral derivative dz/dx of the periodic node sequence.
std::vector<Point> tangent(const Contour& c);

// min over i != j of |z_i - z_j| / periodic parameter distance.
double arc_chord(const Contour& c);

// ½∮(z1 dz2 - z2 dz1) with the spectral derivative; shoelace on the polygon.
double area_spectral(const Contour& c);
double area_shoelace(const Contour& c);

struct StepDiagnostics {
  int step = 0;
  double time = 0.0;
  double area = 0.0;
  double arc_chord = 0.0;
  double omega_fit = 0.0;  // against the initial contour
};

// Carries the last contour that passed the arc-chord check.
class IntegrationAborted : public NumericalError {
 public:
  IntegrationAborted(const std::string& what, Contour last, double time)
      : NumericalError(what), last_(std::move(last)), time_(time) {}
  const Contour& last_valid() const { return last_; }
  double time() const { return time_; }

 private:
  Contour last_;
  double time_;
};

// Classical RK4. Requires dt·max|v| < (min node spacing)/4 at the start.
// on_step (optional) receives diagnostics after every step.
Contour integrate(const Contour& c, const VelocityModel& model, double dt, int n_steps,
                  const std::function<void(const StepDiagnostics&)>& on_step = {});

struct RotationFit {
  double omega_fit = 0.0;
  double angle = 0.0;
  double shape_error = 0.0;  // sup over polar angles at the fitted rotation
};

// Both contours are resampled as radius against polar angle about the origin
// (which removes any tangential reparametrization), the rotation angle is
// found in [-window, window] by a scan refined with golden section on the L2
// discrepancy, and the sup discrepancy at that angle is reported.
RotationFit fit_rotation(const Contour& before, const Contour& after, double elapsed,
                         double window = 0.7853981633974483);

// Sup discrepancy of the polar radii after rotating `before` by theta.
double rotation_discrepancy(const Contour& before, const Contour& after, double theta);

// Radius at m equispaced polar angles φ_k = 2πk/m; needs a contour that is
// star-shaped about the origin.
std::vector<double> polar_radius(const Contour& c, std::size_t m);

}  // namespace vstate
