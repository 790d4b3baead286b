#include "vstate/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>

#include "vstate/parallel.hpp"
#include "vstate/quadrature.hpp"
#include "vstate/special.hpp"

namespace vstate {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kMinArcChord = 1e-3;

// Trigonometric interpolant of a real sequence on n equispaced nodes (n even).
class TrigInterp {
 public:
  explicit TrigInterp(const std::vector<double>& f) : n_(f.size()), a_(n_ / 2 + 1, 0.0), b_(n_ / 2 + 1, 0.0) {
    const std::size_t half = n_ / 2;
    const double nd = static_cast<double>(n_);
    for (std::size_t k = 0; k <= half; ++k) {
      double sa = 0.0, sb = 0.0;
      for (std::size_t i = 0; i < n_; ++i) {
        const double t = 2.0 * kPi * static_cast<double>((k * i) % n_) / nd;
        sa += f[i] * std::cos(t);
        sb += f[i] * std::sin(t);
      }
      const double scale = (k == 0 || k == half) ? 1.0 / nd : 2.0 / nd;
      a_[k] = sa * scale;
      b_[k] = (k == 0 || k == half) ? 0.0 : sb * scale;
    }
  }

  std::size_t modes() const { return n_ / 2; }
  double a(std::size_t k) const { return a_[k]; }
  double b(std::size_t k) const { return b_[k]; }

  // value and derivative at x; the Nyquist cosine is kept in the value and
  // dropped from the derivative
  std::pair<double, double> eval(double x) const {
    const std::complex<double> step(std::cos(x), std::sin(x));
    std::complex<double> e = step;
    double v = a_[0], d = 0.0;
    const std::size_t half = n_ / 2;
    for (std::size_t k = 1; k <= half; ++k) {
      const double c = e.real(), s = e.imag();
      const double kd = static_cast<double>(k);
      v += a_[k] * c + b_[k] * s;
      if (k < half) d += kd * (b_[k] * c - a_[k] * s);
      e *= step;
      if (k % 32 == 0) e = std::polar(1.0, static_cast<double>(k + 1) * x);  // limit drift
    }
    return {v, d};
  }

 private:
  std::size_t n_;
  std::vector<double> a_, b_;
};

std::vector<double> component(const Contour& c, int k) {
  std::vector<double> v(c.size());
  for (std::size_t i = 0; i < c.size(); ++i) v[i] = c.nodes[i][static_cast<std::size_t>(k)];
  return v;
}

void require_contour(const Contour& c) {
  require(c.size() >= 8 && c.size() % 2 == 0, "contour needs an even node count >= 8");
  for (const auto& p : c.nodes) require(std::isfinite(p[0]) && std::isfinite(p[1]), "contour nodes must be finite");
}

double min_spacing(const Contour& c) {
  double s = 1e300;
  for (std::size_t i = 0; i < c.size(); ++i) {
    const auto& p = c.nodes[i];
    const auto& q = c.nodes[(i + 1) % c.size()];
    s = std::min(s, std::hypot(p[0] - q[0], p[1] - q[1]));
  }
  return s;
}

Contour axpy(const Contour& c, double h, const std::vector<Point>& v) {
  Contour out = c;
  for (std::size_t i = 0; i < c.size(); ++i) {
    out.nodes[i][0] += h * v[i][0];
    out.nodes[i][1] += h * v[i][1];
  }
  return out;
}

}  // namespace

Contour make_contour(Family family, const CosineSeries& R, double base, std::size_t n) {
  require(n >= 8 && n % 2 == 0, "contour needs an even node count >= 8");
  const auto Rv = sample(R, n);
  Contour c;
  c.nodes.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double x = 2.0 * kPi * static_cast<double>(i) / static_cast<double>(n);
    if (family == Family::Ellipse) {
      c.nodes[i] = {(1.0 + Rv[i]) * std::cos(x), (base + Rv[i]) * std::sin(x)};
    } else {
      c.nodes[i] = {(1.0 + Rv[i]) * std::cos(x), (1.0 + Rv[i]) * std::sin(x)};
    }
  }
  return c;
}

void VelocityModel::validate() const {
  require(std::isfinite(jump), "jump must be finite");
  if (kernel == Kernel::Gsqg) {
    if (!(alpha > 0.0 && alpha < 2.0)) throw DomainError("gSQG exponent must lie in (0, 2)");
    require(n_graded >= 8 && n_graded % 2 == 0, "n_graded must be even and >= 8");
  }
}

std::vector<Point> tangent(const Contour& c) {
  require_contour(c);
  const TrigInterp i1(component(c, 0)), i2(component(c, 1));
  std::vector<Point> t(c.size());
  for (std::size_t i = 0; i < c.size(); ++i) {
    const double x = 2.0 * kPi * static_cast<double>(i) / static_cast<double>(c.size());
    t[i] = {i1.eval(x).second, i2.eval(x).second};
  }
  return t;
}

double arc_chord(const Contour& c) {
  const std::size_t n = c.size();
  double m = 1e300;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      const std::size_t d = std::min(j - i, n - (j - i));
      const double dist = 2.0 * kPi * static_cast<double>(d) / static_cast<double>(n);
      const double chord = std::hypot(c.nodes[i][0] - c.nodes[j][0], c.nodes[i][1] - c.nodes[j][1]);
      m = std::min(m, chord / dist);
    }
  }
  return m;
}

double area_spectral(const Contour& c) {
  const auto t = tangent(c);
  double s = 0.0;
  for (std::size_t i = 0; i < c.size(); ++i) s += c.nodes[i][0] * t[i][1] - c.nodes[i][1] * t[i][0];
  return 0.5 * s * 2.0 * kPi / static_cast<double>(c.size());
}

double area_shoelace(const Contour& c) {
  double s = 0.0;
  for (std::size_t i = 0; i < c.size(); ++i) {
    const auto& p = c.nodes[i];
    const auto& q = c.nodes[(i + 1) % c.size()];
    s += p[0] * q[1] - p[1] * q[0];
  }
  return 0.5 * s;
}

std::vector<Point> boundary_velocity(const Contour& c, const VelocityModel& model) {
  require_contour(c);
  model.validate();
  const double ac = arc_chord(c);
  if (ac < kMinArcChord) throw NumericalError("arc-chord ratio " + std::to_string(ac) + " below 1e-3");
  const std::size_t n = c.size();
  const auto zx = tangent(c);
  std::vector<Point> v(n);

  if (model.kernel == Kernel::Euler) {
    const auto W = log_split_weights(n);
    const double h = 2.0 * kPi / static_cast<double>(n);
    const double pref = -model.jump / (4.0 * kPi);
    parallel_for(n, [&](std::size_t i) {
      double s1 = 0.0, s2 = 0.0;
      for (std::size_t j = 0; j < n; ++j) {
        const std::size_t idx = (i + n - j) % n;
        const double g1 = zx[i][0] - zx[idx][0], g2 = zx[i][1] - zx[idx][1];
        double L;
        if (j == 0) {
          L = std::log(zx[i][0] * zx[i][0] + zx[i][1] * zx[i][1]);
        } else {
          const double d1 = c.nodes[i][0] - c.nodes[idx][0], d2 = c.nodes[i][1] - c.nodes[idx][1];
          const double sh = 2.0 * std::sin(0.5 * h * static_cast<double>(j));
          L = std::log((d1 * d1 + d2 * d2) / (sh * sh));
        }
        const double w = h * L + W[j];
        s1 += w * g1;
        s2 += w * g2;
      }
      v[i] = {pref * s1, pref * s2};
    });
    return v;
  }

  const TrigInterp i1(component(c, 0)), i2(component(c, 1));
  const auto nw = graded_nodes(model.n_graded, 3.0 / (2.0 - model.alpha));
  const double pref = model.jump * c_alpha(model.alpha);
  const double half_alpha = 0.5 * model.alpha;
  parallel_for(n, [&](std::size_t i) {
    const double x = 2.0 * kPi * static_cast<double>(i) / static_cast<double>(n);
    double s1 = 0.0, s2 = 0.0;
    for (std::size_t k = 0; k < nw.y.size(); ++k) {
      const auto [p1, t1] = i1.eval(x - nw.y[k]);
      const auto [p2, t2] = i2.eval(x - nw.y[k]);
      const double d1 = c.nodes[i][0] - p1, d2 = c.nodes[i][1] - p2;
      const double ker = std::pow(d1 * d1 + d2 * d2, -half_alpha);
      s1 += nw.w[k] * ker * (zx[i][0] - t1);
      s2 += nw.w[k] * ker * (zx[i][1] - t2);
    }
    v[i] = {pref * s1, pref * s2};
  });
  return v;
}

Contour integrate(const Contour& c0, const VelocityModel& model, double dt, int n_steps,
                  const std::function<void(const StepDiagnostics&)>& on_step) {
  require(dt > 0.0 && std::isfinite(dt), "time step must be positive");
  require(n_steps >= 0, "step count must be non-negative");
  require_contour(c0);
  const auto v0 = boundary_velocity(c0, model);
  double vmax = 0.0;
  for (const auto& p : v0) vmax = std::max(vmax, std::hypot(p[0], p[1]));
  if (!(dt * vmax < min_spacing(c0) / 4.0)) {
    throw PreconditionError("time step violates dt*max|v| < spacing/4");
  }
  Contour c = c0;
  for (int s = 0; s < n_steps; ++s) {
    Contour next;
    try {
      const auto k1 = s == 0 ? v0 : boundary_velocity(c, model);
      const auto k2 = boundary_velocity(axpy(c, 0.5 * dt, k1), model);
      const auto k3 = boundary_velocity(axpy(c, 0.5 * dt, k2), model);
      const auto k4 = boundary_velocity(axpy(c, dt, k3), model);
      next = c;
      for (std::size_t i = 0; i < c.size(); ++i) {
        for (std::size_t d = 0; d < 2; ++d) {
          next.nodes[i][d] += dt / 6.0 * (k1[i][d] + 2.0 * k2[i][d] + 2.0 * k3[i][d] + k4[i][d]);
        }
      }
      if (arc_chord(next) < kMinArcChord) throw NumericalError("arc-chord ratio below 1e-3");
    } catch (const NumericalError& e) {
      throw IntegrationAborted(std::string("integration aborted: ") + e.what(), c, dt * s);
    }
    c = std::move(next);
    if (on_step) {
      StepDiagnostics d;
      d.step = s + 1;
      d.time = dt * (s + 1);
      d.area = area_spectral(c);
      d.arc_chord = arc_chord(c);
      d.omega_fit = fit_rotation(c0, c, d.time).omega_fit;
      on_step(d);
    }
  }
  return c;
}

std::vector<double> polar_radius(const Contour& c, std::size_t m) {
  require_contour(c);
  require(m >= 8 && m % 2 == 0, "polar resampling needs an even count >= 8");
  const std::size_t n = c.size();
  const TrigInterp i1(component(c, 0)), i2(component(c, 1));
  // unwrapped node angles, required to increase once around the origin
  std::vector<double> th(n + 1);
  th[0] = std::atan2(c.nodes[0][1], c.nodes[0][0]);
  for (std::size_t i = 1; i <= n; ++i) {
    const auto& p = c.nodes[i % n];
    double a = std::atan2(p[1], p[0]);
    while (a - th[i - 1] > kPi) a -= 2.0 * kPi;
    while (a - th[i - 1] < -kPi) a += 2.0 * kPi;
    if (!(a > th[i - 1])) throw NumericalError("contour is not star-shaped about the origin");
    th[i] = a;
  }
  if (std::abs(th[n] - th[0] - 2.0 * kPi) > 1e-9) throw NumericalError("contour does not wind once around the origin");
  const double h = 2.0 * kPi / static_cast<double>(n);
  std::vector<double> rho(m);
  for (std::size_t k = 0; k < m; ++k) {
    double phi = 2.0 * kPi * static_cast<double>(k) / static_cast<double>(m);
    while (phi < th[0]) phi += 2.0 * kPi;
    while (phi >= th[0] + 2.0 * kPi) phi -= 2.0 * kPi;
    const auto it = std::upper_bound(th.begin(), th.end(), phi);
    const std::size_t i = static_cast<std::size_t>(std::distance(th.begin(), it)) - 1;
    const double frac = (phi - th[i]) / (th[i + 1] - th[i]);
    double x = h * (static_cast<double>(i) + frac);
    // Newton on the continuous angle of the interpolant
    for (int iter = 0; iter < 30; ++iter) {
      const auto [z1, d1] = i1.eval(x);
      const auto [z2, d2] = i2.eval(x);
      double ang = std::atan2(z2, z1);
      double diff = ang - phi;
      diff -= 2.0 * kPi * std::round(diff / (2.0 * kPi));
      const double dang = (z1 * d2 - z2 * d1) / (z1 * z1 + z2 * z2);
      if (dang <= 0.0) throw NumericalError("contour is not star-shaped about the origin");
      const double dx = diff / dang;
      x -= dx;
      if (std::abs(dx) < 1e-15) break;
    }
    rho[k] = std::hypot(i1.eval(x).first, i2.eval(x).first);
  }
  return rho;
}

namespace {

struct PolarPair {
  TrigInterp before, after;
  std::vector<double> rho_after;
};

PolarPair polar_pair(const Contour& before, const Contour& after) {
  require(before.size() == after.size(), "contours must have the same node count");
  const std::size_t m = before.size();
  auto rb = polar_radius(before, m);
  auto ra = polar_radius(after, m);
  return {TrigInterp(rb), TrigInterp(ra), ra};
}

// L2 mismatch of the rotated interpolant, Parseval over the modes below Nyquist.
double l2_mismatch(const PolarPair& pp, double theta) {
  double s = std::pow(pp.before.a(0) - pp.after.a(0), 2) * 2.0;
  for (std::size_t k = 1; k < pp.before.modes(); ++k) {
    const double kt = static_cast<double>(k) * theta;
    const double A = pp.before.a(k) * std::cos(kt) - pp.before.b(k) * std::sin(kt);
    const double B = pp.before.a(k) * std::sin(kt) + pp.before.b(k) * std::cos(kt);
    s += std::pow(A - pp.after.a(k), 2) + std::pow(B - pp.after.b(k), 2);
  }
  return s;
}

double sup_mismatch(const PolarPair& pp, double theta) {
  const std::size_t m = pp.rho_after.size();
  double e = 0.0;
  for (std::size_t k = 0; k < m; ++k) {
    const double phi = 2.0 * kPi * static_cast<double>(k) / static_cast<double>(m);
    e = std::max(e, std::abs(pp.before.eval(phi - theta).first - pp.rho_after[k]));
  }
  return e;
}

}  // namespace

double rotation_discrepancy(const Contour& before, const Contour& after, double theta) {
  return sup_mismatch(polar_pair(before, after), theta);
}

RotationFit fit_rotation(const Contour& before, const Contour& after, double elapsed, double window) {
  require(window > 0.0, "rotation window must be positive");
  const auto pp = polar_pair(before, after);
  const int scan = 720;
  const double step = 2.0 * window / scan;
  int best = 0;
  double fbest = 1e300;
  for (int i = 0; i <= scan; ++i) {
    const double f = l2_mismatch(pp, -window + step * i);
    if (f < fbest) {
      fbest = f;
      best = i;
    }
  }
  double lo = -window + step * std::max(best - 1, 0);
  double hi = -window + step * std::min(best + 1, scan);
  const double g = 0.5 * (std::sqrt(5.0) - 1.0);
  double x1 = hi - g * (hi - lo), x2 = lo + g * (hi - lo);
  double f1 = l2_mismatch(pp, x1), f2 = l2_mismatch(pp, x2);
  for (int it = 0; it < 200 && hi - lo > 1e-15; ++it) {
    if (f1 < f2) {
      hi = x2;
      x2 = x1;
      f2 = f1;
      x1 = hi - g * (hi - lo);
      f1 = l2_mismatch(pp, x1);
    } else {
      lo = x1;
      x1 = x2;
      f1 = f2;
      x2 = lo + g * (hi - lo);
      f2 = l2_mismatch(pp, x2);
    }
  }
  RotationFit fit;
  fit.angle = 0.5 * (lo + hi);
  fit.omega_fit = elapsed > 0.0 ? fit.angle / elapsed : 0.0;
  fit.shape_error = sup_mismatch(pp, fit.angle);
  return fit;
}

}  // namespace vstate
