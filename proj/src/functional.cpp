#include "vstate/functional.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "vstate/error.hpp"
#include "vstate/parallel.hpp"
#include "vstate/quadrature.hpp"
#include "vstate/special.hpp"

namespace vstate {

namespace {

constexpr double kPi = std::numbers::pi;

// R and R' on an equispaced grid of n points.
struct GridValues {
  std::vector<double> R, Rp;
};

GridValues on_grid(const CosineSeries& R, std::size_t n) {
  return {sample(R, n), sample(derivative(R), n)};
}

ResidualVector project(std::vector<double> samples, std::size_t n_modes, double min_chord) {
  const std::size_t M = samples.size();
  std::vector<double> b(n_modes, 0.0);
  for (std::size_t k = 1; k <= n_modes; ++k) {
    double s = 0.0;
    for (std::size_t i = 0; i < M; ++i) {
      // exact index reduction keeps sin(k x_i) on the grid
      const std::size_t idx = (k * i) % M;
      s += samples[i] * std::sin(2.0 * kPi * static_cast<double>(idx) / static_cast<double>(M));
    }
    b[k - 1] = 2.0 * s / static_cast<double>(M);
  }
  ResidualVector out;
  out.sine_coeffs = SineSeries(std::move(b));
  out.sup_norm = 0.0;
  for (double v : samples) out.sup_norm = std::max(out.sup_norm, std::abs(v));
  out.collocation_n = M;
  out.min_chord = min_chord;
  out.samples = std::move(samples);
  return out;
}

// Shared evaluation skeleton: for each collocation node i, body(i, stride)
// returns (value, smallest chord). stride = n_quad / M.
template <class Body>
ResidualVector run_nodes(std::size_t M, std::size_t n_modes, Body body) {
  std::vector<double> vals(M), chords(M);
  parallel_for(M, [&](std::size_t i) {
    const auto [v, c] = body(i);
    vals[i] = v;
    chords[i] = c;
  });
  for (std::size_t i = 0; i < M; ++i) {
    if (!std::isfinite(vals[i])) throw NumericalError("residual is not finite at a collocation node");
  }
  return project(std::move(vals), n_modes, *std::min_element(chords.begin(), chords.end()));
}

void check_chord(double A) {
  if (!(A > 1e-14) || !std::isfinite(A)) throw NumericalError("chord degenerates: perturbation too large");
}

}  // namespace

double PatchConfig::calpha() const { return c_alpha(alpha); }

void PatchConfig::validate() const {
  require(std::isfinite(jump), "jump must be finite");
  if (!(alpha >= 0.0 && alpha < 2.0)) throw DomainError("alpha must lie in [0, 2)");
  require(n_quad >= 8 && n_quad % 2 == 0, "n_quad must be even and >= 8");
  require(n_graded >= 8 && n_graded % 2 == 0, "n_graded must be even and >= 8");
  if (family == Family::Ellipse) require(alpha == 0.0, "the ellipse family is Euler only (alpha = 0)");
}

std::size_t collocation_nodes(std::size_t n_modes, const PatchConfig& cfg) {
  if (cfg.n_collocation != 0) {
    require(cfg.n_collocation > 2 * n_modes, "collocation must resolve every mode (M > 2N)");
    return cfg.n_collocation;
  }
  const std::size_t want = 3 * n_modes;
  for (std::size_t d = cfg.n_quad; d >= 1; --d) {
    if (cfg.n_quad % d == 0 && cfg.n_quad / d >= want) return cfg.n_quad / d;
  }
  return want;
}

ResidualVector eval_F_ellipse(double r, const CosineSeries& R, const PatchConfig& cfg) {
  if (!(r > 0.0 && r < 1.0)) throw DomainError("ratio r must lie in (0, 1)");
  cfg.validate();
  const std::size_t nq = cfg.n_quad;
  const std::size_t M = collocation_nodes(R.size(), cfg);
  const double s = -cfg.jump;
  const double h = 2.0 * kPi / static_cast<double>(nq);
  const auto W = log_split_weights(nq);
  const bool aligned = nq % M == 0;
  const GridValues fine = aligned ? on_grid(R, nq) : GridValues{};
  const GridValues coarse = on_grid(R, M);
  const SineSeries dR = derivative(R);
  std::vector<double> sin_half(nq), sin_y(nq), cos_y(nq);
  for (std::size_t j = 0; j < nq; ++j) {
    const double y = h * static_cast<double>(j);
    sin_half[j] = 2.0 * std::sin(0.5 * y);
    sin_y[j] = std::sin(y);
    cos_y[j] = std::cos(y);
  }
  const double pref = r / ((1.0 + r) * (1.0 + r));

  return run_nodes(M, R.size(), [&](std::size_t i) -> std::pair<double, double> {
    const double x = 2.0 * kPi * static_cast<double>(i) / static_cast<double>(M);
    const double cx = std::cos(x), sx = std::sin(x);
    const double Rx = coarse.R[i], Rpx = coarse.Rp[i];
    const double P = cx * (r + Rx) + sx * Rpx;
    const double S = sx * (1.0 + Rx) - cx * Rpx;
    const std::size_t stride = aligned ? nq / M : 0;
    double smooth = 0.0, singular = 0.0, min_chord = 1e300;
    for (std::size_t j = 0; j < nq; ++j) {
      double Ry, Rpy;
      if (aligned) {
        const std::size_t idx = (i * stride + nq - j) % nq;
        Ry = fine.R[idx];
        Rpy = fine.Rp[idx];
      } else {
        Ry = eval(R, x - h * static_cast<double>(j));
        Rpy = eval(dR, x - h * static_cast<double>(j));
      }
      // t = x - y
      const double ct = cx * cos_y[j] + sx * sin_y[j];
      const double st = sx * cos_y[j] - cx * sin_y[j];
      const double Py = ct * (r + Ry) + st * Rpy;
      const double Sy = st * (1.0 + Ry) - ct * Rpy;
      const double g = P * Sy - S * Py;
      const double Q = j == 0 ? Rpx : (Rx - Ry) / sin_half[j];
      // x - y/2
      const double yh = 0.5 * h * static_cast<double>(j);
      const double cm = std::cos(x - yh), sm = std::sin(x - yh);
      const double u = -sm * (1.0 + Rx) + ct * Q;
      const double v = cm * (r + Rx) + st * Q;
      const double A = u * u + v * v;
      check_chord(A);
      min_chord = std::min(min_chord, A);
      smooth += std::log(A) * g;
      singular += W[j] * g;
    }
    const double F0 = pref * ((r * r - 1.0) / 2.0 * std::sin(2.0 * x) + Rpx * (cx * cx + r * sx * sx) +
                              (r - 1.0) * std::sin(2.0 * x) * Rx + Rx * Rpx);
    return {F0 + s * (h * smooth + singular) / (4.0 * kPi), min_chord};
  });
}

ResidualVector eval_F_disk(double omega, const CosineSeries& R, const PatchConfig& cfg) {
  require(std::isfinite(omega), "angular velocity must be finite");
  cfg.validate();
  const std::size_t M = collocation_nodes(R.size(), cfg);
  const double s = -cfg.jump;
  const GridValues coarse = on_grid(R, M);
  for (double v : coarse.R) {
    if (!(1.0 + v > 0.0)) throw DomainError("radius 1 + R must stay positive");
  }
  const SineSeries dR = derivative(R);

  if (cfg.alpha == 0.0) {
    const std::size_t nq = cfg.n_quad;
    const double h = 2.0 * kPi / static_cast<double>(nq);
    const auto W = log_split_weights(nq);
    const bool aligned = nq % M == 0;
    const GridValues fine = aligned ? on_grid(R, nq) : GridValues{};
    return run_nodes(M, R.size(), [&](std::size_t i) -> std::pair<double, double> {
      const double x = 2.0 * kPi * static_cast<double>(i) / static_cast<double>(M);
      const double Rx = 1.0 + coarse.R[i], Rpx = coarse.Rp[i];
      const std::size_t stride = aligned ? nq / M : 0;
      double smooth = 0.0, singular = 0.0, min_chord = 1e300;
      for (std::size_t j = 0; j < nq; ++j) {
        const double y = h * static_cast<double>(j);
        double Ry, Rpy;
        if (aligned) {
          const std::size_t idx = (i * stride + nq - j) % nq;
          Ry = 1.0 + fine.R[idx];
          Rpy = fine.Rp[idx];
        } else {
          Ry = 1.0 + eval(R, x - y);
          Rpy = eval(dR, x - y);
        }
        const double sy = std::sin(y), cy = std::cos(y);
        const double g = sy * (Rx * Ry + Rpx * Rpy) / Rx + cy * (Rpy - Rpx) + (Rpx / Rx) * cy * (Rx - Ry);
        const double Q = j == 0 ? Rpx : (Rx - Ry) / (2.0 * std::sin(0.5 * y));
        const double A = Rx * Ry + Q * Q;
        check_chord(A);
        min_chord = std::min(min_chord, A);
        smooth += std::log(A) * g;
        singular += W[j] * g;
      }
      return {omega * Rpx - s * (h * smooth + singular) / (4.0 * kPi), min_chord};
    });
  }

  const auto nw = graded_nodes(cfg.n_graded, 3.0 / (2.0 - cfg.alpha));
  const double Ca = cfg.calpha();
  const double half_alpha = 0.5 * cfg.alpha;
  return run_nodes(M, R.size(), [&](std::size_t i) -> std::pair<double, double> {
    const double x = 2.0 * kPi * static_cast<double>(i) / static_cast<double>(M);
    const double Rx = 1.0 + coarse.R[i], Rpx = coarse.Rp[i];
    double acc = 0.0, min_chord = 1e300;
    for (std::size_t j = 0; j < nw.y.size(); ++j) {
      const double y = nw.y[j];
      const double Ry = 1.0 + eval(R, x - y);
      const double Rpy = eval(dR, x - y);
      const double sy = std::sin(y), cy = std::cos(y);
      const double g = sy * (Rx * Ry + Rpx * Rpy) / Rx + cy * (Rpy - Rpx) + (Rpx / Rx) * cy * (Rx - Ry);
      const double sh = std::sin(0.5 * y);
      const double chord2 = (Rx - Ry) * (Rx - Ry) + 4.0 * Rx * Ry * sh * sh;
      const double A = chord2 / (4.0 * sh * sh);
      check_chord(A);
      min_chord = std::min(min_chord, A);
      acc += nw.w[j] * std::pow(chord2, -half_alpha) * g;
    }
    return {omega * Rpx + s * Ca * acc, min_chord};
  });
}

ResidualVector eval_F(const PatchConfig& cfg, double param, const CosineSeries& R) {
  return cfg.family == Family::Ellipse ? eval_F_ellipse(param, R, cfg) : eval_F_disk(param, R, cfg);
}

SineSeries gateaux_fd(const PatchConfig& cfg, double param, const CosineSeries& R, const CosineSeries& h,
                      double step) {
  require(step > 0.0, "difference step must be positive");
  const std::size_t n = std::max(R.size(), h.size());
  const CosineSeries Rn = R.resized(n), hn = h.resized(n);
  const auto plus = eval_F(cfg, param, Rn + step * hn);
  const auto minus = eval_F(cfg, param, Rn - step * hn);
  return (1.0 / (2.0 * step)) * (plus.sine_coeffs - minus.sine_coeffs);
}

double curvature_min(Family family, const CosineSeries& R, double base, std::size_t n) {
  if (n == 0) n = std::max<std::size_t>(4096, 32 * R.size());
  const auto Rv = sample(R, n);
  const auto R1 = sample(derivative(R), n);
  const auto R2 = sample(derivative(derivative(R)), n);
  double kmin = 1e300;
  for (std::size_t i = 0; i < n; ++i) {
    const double x = 2.0 * kPi * static_cast<double>(i) / static_cast<double>(n);
    const double c = std::cos(x), s = std::sin(x);
    double x1, y1, x2, y2;
    if (family == Family::Ellipse) {
      const double a = 1.0 + Rv[i], b = base + Rv[i];
      x1 = R1[i] * c - a * s;
      y1 = R1[i] * s + b * c;
      x2 = R2[i] * c - 2.0 * R1[i] * s - a * c;
      y2 = R2[i] * s + 2.0 * R1[i] * c - b * s;
    } else {
      const double rho = 1.0 + Rv[i];
      x1 = R1[i] * c - rho * s;
      y1 = R1[i] * s + rho * c;
      x2 = R2[i] * c - 2.0 * R1[i] * s - rho * c;
      y2 = R2[i] * s + 2.0 * R1[i] * c - rho * s;
    }
    const double speed = std::hypot(x1, y1);
    if (speed < 1e-8) throw NumericalError("degenerate parametrization: |z_x| vanishes");
    kmin = std::min(kmin, (x1 * y2 - y1 * x2) / (speed * speed * speed));
  }
  return kmin;
}

double c1_norm(const CosineSeries& R) {
  const std::size_t n = std::max<std::size_t>(1024, 16 * R.size());
  const auto a = sample(R, n);
  const auto b = sample(derivative(R), n);
  double m = 0.0;
  for (std::size_t i = 0; i < n; ++i) m = std::max({m, std::abs(a[i]), std::abs(b[i])});
  return m;
}

bool admissible(Family family, const CosineSeries& R, double base) {
  const double radius = family == Family::Ellipse ? std::min(base, 1.0) / 4.0 : 0.25;
  return c1_norm(R) <= radius;
}

double chord_floor(Family family, double base) {
  const double b = family == Family::Ellipse ? std::min(base, 1.0) : 1.0;
  return 0.25 * b * b;
}

}  // namespace vstate
