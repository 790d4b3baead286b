#include <cmath>
#include <numbers>

#include "doctest.h"
#include "vstate/dynamics.hpp"
#include "vstate/error.hpp"

using namespace vstate;
using std::numbers::pi;

namespace {

// max over nodes of |(v - Ω z^⊥)·n| / |n|
double normal_mismatch(const Contour& c, const std::vector<Point>& v, double omega) {
  const auto t = tangent(c);
  double worst = 0.0;
  for (std::size_t i = 0; i < c.size(); ++i) {
    const double nx = t[i][1], ny = -t[i][0];
    const double ux = v[i][0] + omega * c.nodes[i][1];
    const double uy = v[i][1] - omega * c.nodes[i][0];
    worst = std::max(worst, std::abs(ux * nx + uy * ny) / std::hypot(nx, ny));
  }
  return worst;
}

Contour rotated(const Contour& c, double theta) {
  Contour out = c;
  for (auto& p : out.nodes) {
    const double x = p[0], y = p[1];
    p = {std::cos(theta) * x - std::sin(theta) * y, std::sin(theta) * x + std::cos(theta) * y};
  }
  return out;
}

VelocityModel gsqg(double alpha) {
  VelocityModel m;
  m.kernel = Kernel::Gsqg;
  m.alpha = alpha;
  return m;
}

}  // namespace

TEST_CASE("contour construction and areas") {
  const auto e = make_contour(Family::Ellipse, CosineSeries(4), 0.5, 64);
  CHECK(e.nodes[0][0] == doctest::Approx(1.0));
  CHECK(e.nodes[16][1] == doctest::Approx(0.5));
  CHECK(area_spectral(e) == doctest::Approx(pi * 0.5).epsilon(1e-14));
  CHECK(area_shoelace(e) == doctest::Approx(pi * 0.5).epsilon(1e-3));
  const auto d = make_contour(Family::Disk, CosineSeries(4), 1.0, 32);
  CHECK(area_spectral(d) == doctest::Approx(pi).epsilon(1e-14));
  CHECK(arc_chord(d) > 0.5);
  CHECK_THROWS_AS(make_contour(Family::Disk, CosineSeries(4), 1.0, 7), Error);
}

TEST_CASE("circle has purely tangential velocity") {
  const auto c = make_contour(Family::Disk, CosineSeries(4), 1.0, 64);
  CHECK(normal_mismatch(c, boundary_velocity(c, VelocityModel{}), 0.0) < 1e-10);
  const auto c32 = make_contour(Family::Disk, CosineSeries(4), 1.0, 32);
  CHECK(normal_mismatch(c32, boundary_velocity(c32, gsqg(0.5)), 0.0) < 1e-10);
}

TEST_CASE("Kirchhoff ellipse normal velocity is a rigid rotation at 2/9") {
  const auto c = make_contour(Family::Ellipse, CosineSeries(4), 0.5, 128);
  const auto v = boundary_velocity(c, VelocityModel{});
  CHECK(normal_mismatch(c, v, 2.0 / 9.0) < 1e-10);
  CHECK(normal_mismatch(c, v, 0.2) > 1e-3);
}

TEST_CASE("velocity model validation and arc-chord guard") {
  CHECK_THROWS_AS(gsqg(0.0).validate(), DomainError);
  CHECK_THROWS_AS(gsqg(2.0).validate(), DomainError);
  const auto thin = make_contour(Family::Ellipse, CosineSeries(4), 1e-4, 64);
  CHECK(arc_chord(thin) < 1e-3);
  CHECK_THROWS_AS(boundary_velocity(thin, VelocityModel{}), NumericalError);
}

TEST_CASE("fit_rotation on constructed input") {
  // radius resampling is spectrally accurate; at 256 nodes it sits at rounding for this shape
  const auto c = make_contour(Family::Ellipse, CosineSeries::unit_mode(8, 3, 0.05), 0.5, 256);
  const auto fit = fit_rotation(c, rotated(c, 0.3), 1.0);
  CHECK(fit.omega_fit == doctest::Approx(0.3).epsilon(1e-10));
  CHECK(fit.shape_error < 1e-12);
  const auto same = fit_rotation(c, c, 1.0);
  CHECK(std::abs(same.omega_fit) < 1e-10);
  CHECK(same.shape_error < 1e-12);
  CHECK(rotation_discrepancy(c, rotated(c, 0.3), 0.3) < 1e-12);
  CHECK(rotation_discrepancy(c, rotated(c, 0.3), 0.0) > 1e-3);
  // node counts must agree
  const auto shifted = make_contour(Family::Ellipse, CosineSeries::unit_mode(8, 3, 0.05), 0.5, 96);
  CHECK_THROWS_AS(fit_rotation(c, shifted, 1.0), Error);
}

TEST_CASE("Kirchhoff ellipse rotates rigidly") {
  const auto c0 = make_contour(Family::Ellipse, CosineSeries(4), 0.5, 128);
  std::vector<double> areas;
  const auto c1 = integrate(c0, VelocityModel{}, 0.004, 25, [&](const StepDiagnostics& d) { areas.push_back(d.area); });
  CHECK(areas.size() == 25);
  const auto fit = fit_rotation(c0, c1, 0.1);
  CHECK(fit.omega_fit == doctest::Approx(2.0 / 9.0).epsilon(1e-9));
  CHECK(fit.shape_error < 1e-10);
  CHECK(rotation_discrepancy(c0, c1, 0.1 * 2.0 / 9.0) < 1e-10);
  CHECK(std::abs(area_spectral(c1) - area_spectral(c0)) / area_spectral(c0) < 1e-12);
}

TEST_CASE("RK4 is fourth order") {
  const auto c0 = make_contour(Family::Ellipse, CosineSeries::unit_mode(8, 3, 0.05), 0.5, 64);
  const VelocityModel m;
  const auto ref = integrate(c0, m, 1.0 / 400, 400);
  auto err = [&](int n) {
    const auto c = integrate(c0, m, 1.0 / n, n);
    double e = 0.0;
    for (std::size_t i = 0; i < c.size(); ++i) {
      e = std::max(e, std::hypot(c.nodes[i][0] - ref.nodes[i][0], c.nodes[i][1] - ref.nodes[i][1]));
    }
    return e;
  };
  const double e20 = err(20), e40 = err(40);
  CHECK(e20 / e40 == doctest::Approx(16.0).epsilon(0.1));
}

TEST_CASE("integration preconditions") {
  const auto c0 = make_contour(Family::Disk, CosineSeries(4), 1.0, 64);
  CHECK_THROWS_AS(integrate(c0, VelocityModel{}, 0.5, 2), PreconditionError);
  CHECK_THROWS_AS(integrate(c0, VelocityModel{}, -0.01, 2), Error);
}

TEST_CASE("disk stays stationary") {
  const auto c0 = make_contour(Family::Disk, CosineSeries(4), 1.0, 64);
  const auto c1 = integrate(c0, VelocityModel{}, 0.025, 40);
  CHECK(fit_rotation(c0, c1, 1.0).shape_error < 1e-8);
  const auto g0 = make_contour(Family::Disk, CosineSeries(4), 1.0, 32);
  const auto g1 = integrate(g0, gsqg(0.5), 0.02, 5);
  CHECK(fit_rotation(g0, g1, 0.1).shape_error < 1e-8);
}

TEST_CASE("polar radius of a disk") {
  const auto c = make_contour(Family::Disk, CosineSeries::unit_mode(8, 2, 0.05), 1.0, 64);
  const auto rad = polar_radius(c, 16);
  REQUIRE(rad.size() == 16);
  // the disk parametrization is already polar
  for (std::size_t i = 0; i < 16; ++i) {
    CHECK(rad[i] == doctest::Approx(1.0 + 0.05 * std::cos(2.0 * 2.0 * pi * i / 16.0)).epsilon(1e-10));
  }
}
