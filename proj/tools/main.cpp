// vstate: command-line front end over the C interface.

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "vstate/vstate.h"

namespace {

constexpr int kExitValidation = 2;
constexpr int kExitNumerical = 3;

struct Failure {
  int code;
  std::string status;
  std::string message;
};

bool is_validation(vs_status s) {
  return s == VS_ERR_INVALID_ARGUMENT || s == VS_ERR_DOMAIN || s == VS_ERR_PRECONDITION;
}

void check(vs_status s, const std::string& message) {
  if (s != VS_OK) throw Failure{is_validation(s) ? kExitValidation : kExitNumerical, vs_status_name(s), message};
}

void check(vs_status s) { check(s, s == VS_OK ? "" : vs_last_error_message()); }

void invalid(const std::string& msg) { throw Failure{kExitValidation, "invalid_argument", msg}; }

// RAII holders for C handles
template <class T, void (*Free)(T*)>
struct Handle {
  T* p = nullptr;
  Handle() = default;
  Handle(const Handle&) = delete;
  Handle& operator=(const Handle&) = delete;
  ~Handle() { Free(p); }
  T** out() { return &p; }
};
using Text = Handle<vs_text, vs_text_free>;
using Series = Handle<vs_series, vs_series_free>;
using Kernel = Handle<vs_kernel, vs_kernel_free>;
using Branch = Handle<vs_branch, vs_branch_free>;

std::string fmt(double v) {
  if (!std::isfinite(v)) return std::isnan(v) ? "nan" : (v > 0 ? "inf" : "-inf");
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

struct Options {
  std::string command;
  std::string family = "ellipse";
  int m = 3;
  int m_max = 12;
  std::vector<double> alpha{0.0};
  double r = 0.0;  // 0: use r(m)
  std::size_t n_modes = 64;
  std::size_t n_quad = 1024;
  double epsilon_step = 5e-3;
  int steps = 10;
  double tol = 1e-11;
  double epsilon = 0.02;
  double t_final = 0.05;
  double dt = 1e-3;
  std::size_t nodes = 256;
  unsigned seed = 1;
  std::string out;
  std::string diagnostics;
  std::string plot_script;
};

class Output {
 public:
  explicit Output(const std::string& path) : path_(path) {}
  std::ostream& stream() { return path_.empty() ? std::cout : buf_; }
  void flush() {
    if (path_.empty()) return;
    std::ofstream f(path_);
    if (!f) invalid("cannot write " + path_);
    f << buf_.str();
  }

 private:
  std::string path_;
  std::ostringstream buf_;
};

void write_file(const std::string& path, const std::string& body) {
  std::ofstream f(path);
  if (!f) invalid("cannot write " + path);
  f << body;
}

std::string plot_script(const std::string& data_path, const std::string& x, const std::string& y,
                        const std::string& group) {
  std::string s = "# plotting script for " + data_path + "\n";
  s += "import csv\nimport matplotlib.pyplot as plt\n\n";
  s += "rows = list(csv.DictReader(open('" + data_path + "')))\n";
  if (group.empty()) {
    s += "plt.plot([float(r['" + x + "']) for r in rows], [float(r['" + y + "']) for r in rows], 'o-')\n";
  } else {
    s += "for g in sorted({r['" + group + "'] for r in rows}):\n";
    s += "    sel = [r for r in rows if r['" + group + "'] == g]\n";
    s += "    plt.plot([float(r['" + x + "']) for r in sel], [float(r['" + y + "']) for r in sel], 'o-', label='" +
         group + "=' + g)\n";
    s += "plt.legend()\n";
  }
  s += "plt.xlabel('" + x + "')\nplt.ylabel('" + y + "')\nplt.savefig('" + data_path + ".png')\n";
  return s;
}

vs_family family_of(const Options& o) { return o.family == "disk" ? VS_FAMILY_DISK : VS_FAMILY_ELLIPSE; }

double single_alpha(const Options& o) {
  if (o.alpha.size() != 1) invalid("this command takes a single --alpha");
  return o.alpha.front();
}

vs_continuation_config continuation(const Options& o) {
  vs_continuation_config cfg;
  vs_continuation_config_default(&cfg);
  cfg.newton_tol = o.tol;
  cfg.epsilon_step = o.epsilon_step;
  cfg.n_steps = o.steps;
  cfg.n_modes = o.n_modes;
  cfg.patch.n_quad = o.n_quad;
  cfg.patch.family = family_of(o);
  cfg.patch.alpha = single_alpha(o);
  return cfg;
}

double ratio_for(const Options& o) {
  if (o.r > 0.0) return o.r;
  double r = 0.0;
  check(vs_bifurcation_ratio(o.m, 1e-14, &r));
  return r;
}

int cmd_bifurcation_points(const Options& o) {
  if (o.m_max < 3) invalid("--m-max must be >= 3");
  if (o.family == "disk") invalid("bifurcation-points tabulates ellipse ratios; use omega-table for disk thresholds");
  Output out(o.out);
  out.stream() << "m,r\n";
  for (int m = 3; m <= o.m_max; ++m) {
    double r = 0.0;
    check(vs_bifurcation_ratio(m, 1e-14, &r));
    out.stream() << m << "," << fmt(r) << "\n";
  }
  out.flush();
  if (!o.plot_script.empty()) write_file(o.plot_script, plot_script(o.out.empty() ? "points.csv" : o.out, "m", "r", ""));
  return 0;
}

int cmd_omega_table(const Options& o) {
  if (o.m_max < 2) invalid("--m-max must be >= 2");
  Output out(o.out);
  out.stream() << "m,alpha,value\n";
  for (double a : o.alpha) {
    for (int m = 2; m <= o.m_max; ++m) {
      double v = 0.0;
      check(vs_omega_m(m, a, &v));
      out.stream() << m << "," << fmt(a) << "," << fmt(v) << "\n";
    }
  }
  out.flush();
  if (!o.plot_script.empty()) write_file(o.plot_script, plot_script(o.out.empty() ? "omega.csv" : o.out, "m", "value", "alpha"));
  return 0;
}

std::vector<double> coeffs(const vs_series* s) {
  std::vector<double> c(vs_series_size(s));
  check(vs_series_coeffs(s, c.data(), c.size()));
  return c;
}

int cmd_linearize(const Options& o) {
  const double r = ratio_for(o);
  const std::size_t n = o.n_modes;
  Text csv;
  check(vs_tri_coeffs_csv(r, n, csv.out()));
  vs_patch_config pc;
  vs_patch_config_default(&pc);
  pc.n_quad = o.n_quad;
  std::vector<double> zero(n, 0.0);
  Series R;
  check(vs_series_new(VS_BASIS_COS, zero.data(), n, R.out()));
  const std::size_t checked = std::min<std::size_t>(n, 24);
  std::istringstream rows(vs_text_data(csv.p));
  std::string line;
  std::getline(rows, line);
  Output out(o.out);
  out.stream() << line << ",fd_delta\n";
  double worst = 0.0;
  for (std::size_t k = 1; std::getline(rows, line); ++k) {
    std::string delta = "";
    if (k <= checked) {
      std::vector<double> e(n, 0.0);
      e[k - 1] = 1.0;
      Series h, fd, df;
      check(vs_series_new(VS_BASIS_COS, e.data(), n, h.out()));
      check(vs_gateaux_fd(&pc, r, R.p, h.p, 1e-5, fd.out()));
      check(vs_apply_df(r, h.p, df.out()));
      const auto a = coeffs(fd.p), b = coeffs(df.p);
      double d = 0.0;
      for (std::size_t j = 0; j < n; ++j) d = std::max(d, std::abs(a[j] - b[j]));
      worst = std::max(worst, d);
      delta = fmt(d);
    }
    out.stream() << line << "," << delta << "\n";
  }
  // one seeded random direction as a linearity spot check
  std::mt19937_64 rng(o.seed);
  std::normal_distribution<double> nd;
  std::vector<double> hr(n);
  for (std::size_t j = 0; j < n; ++j) hr[j] = nd(rng) * std::exp(-0.5 * static_cast<double>(j + 1));
  Series h, fd, df;
  check(vs_series_new(VS_BASIS_COS, hr.data(), n, h.out()));
  check(vs_gateaux_fd(&pc, r, R.p, h.p, 1e-5, fd.out()));
  check(vs_apply_df(r, h.p, df.out()));
  const auto a = coeffs(fd.p), b = coeffs(df.p);
  double d = 0.0;
  for (std::size_t j = 0; j < n; ++j) d = std::max(d, std::abs(a[j] - b[j]));
  out.flush();
  std::cerr << nlohmann::json{{"r", r}, {"max_unit_mode_delta", worst}, {"random_direction_delta", d}, {"seed", o.seed}}.dump()
            << "\n";
  return 0;
}

int cmd_kernel(const Options& o) {
  const double r = ratio_for(o);
  Kernel g;
  check(vs_kernel_generator(o.m, r, o.n_modes, g.out()));
  Text t;
  check(vs_kernel_to_json(g.p, o.n_modes, t.out()));
  Output out(o.out);
  out.stream() << vs_text_data(t.p) << "\n";
  out.flush();
  return 0;
}

int cmd_trace(const Options& o) {
  const auto cfg = continuation(o);
  Branch b;
  const vs_status s = vs_trace_branch(family_of(o), o.m, single_alpha(o), &cfg, b.out());
  const std::string message = vs_last_error_message();
  if (b.p) {
    Text t;
    check(vs_branch_to_jsonl(b.p, t.out()));
    Output out(o.out);
    out.stream() << vs_text_data(t.p);
    out.flush();
    if (!o.plot_script.empty()) {
      const std::string data = o.out.empty() ? "branch.jsonl" : o.out;
      std::string sc = "# plotting script for " + data + "\nimport json\nimport matplotlib.pyplot as plt\n\n";
      sc += "pts = [json.loads(l) for l in open('" + data + "') if l.strip()]\n";
      sc += "plt.plot([p['epsilon'] for p in pts], [p['param'] for p in pts], 'o-')\n";
      sc += "plt.xlabel('epsilon')\nplt.ylabel('param')\nplt.savefig('" + data + ".png')\n";
      write_file(o.plot_script, sc);
    }
  }
  check(s, message);
  return 0;
}

int cmd_verify_rotation(const Options& o) {
  vs_rotation_request req;
  vs_rotation_request_default(&req);
  req.family = family_of(o);
  req.n_nodes = o.nodes;
  req.dt = o.dt;
  req.t_final = o.t_final;
  const double alpha = single_alpha(o);
  req.kernel = alpha > 0.0 ? VS_KERNEL_GSQG : VS_KERNEL_EULER;
  req.alpha = alpha;
  Branch b;
  Series shape;
  double param = 0.0;
  if (o.epsilon > 0.0) {
    auto cfg = continuation(o);
    check(vs_branch_switch(family_of(o), o.m, alpha, o.epsilon, &cfg, b.out()));
    vs_branch_point_info info;
    check(vs_branch_point(b.p, 0, &info));
    check(vs_branch_shape(b.p, 0, shape.out()));
    param = info.param;
  } else if (req.family == VS_FAMILY_ELLIPSE) {
    param = o.r > 0.0 ? o.r : 0.5;
  } else {
    check(vs_omega_m(o.m, alpha, &param));
  }
  req.shape = shape.p;
  if (req.family == VS_FAMILY_ELLIPSE) {
    req.base = param;
    req.omega_expected = param / ((1.0 + param) * (1.0 + param));
  } else {
    req.omega_expected = o.epsilon > 0.0 ? param : 0.0;
  }
  vs_rotation_report rep;
  Text diag, contour;
  check(vs_verify_rotation(&req, &rep, o.diagnostics.empty() ? nullptr : diag.out(), nullptr));
  if (!o.diagnostics.empty()) write_file(o.diagnostics, vs_text_data(diag.p));
  Output out(o.out);
  out.stream() << nlohmann::json{{"family", o.family},
                                 {"m", o.m},
                                 {"alpha", alpha},
                                 {"epsilon", o.epsilon},
                                 {"param", param},
                                 {"omega_expected", rep.omega_expected},
                                 {"omega_fit", rep.omega_fit},
                                 {"shape_error", rep.shape_error},
                                 {"exact_discrepancy", rep.exact_discrepancy},
                                 {"area_drift", rep.area_drift},
                                 {"min_arc_chord", rep.min_arc_chord},
                                 {"t_final", rep.t_final},
                                 {"steps", rep.steps}}
                      .dump()
                << "\n";
  out.flush();
  return 0;
}

int cmd_selftest(const Options& o) {
  Text csv;
  double worst = 0.0;
  check(vs_selftest_integrals(o.n_quad, csv.out(), &worst));
  Output out(o.out);
  out.stream() << vs_text_data(csv.p);
  out.flush();
  if (!(worst < 1e-10)) {
    throw Failure{kExitNumerical, "numerical", "oracle delta " + fmt(worst) + " exceeds 1e-10"};
  }
  return 0;
}

int cmd_curvature(const Options& o) {
  const auto cfg = continuation(o);
  Branch b;
  const vs_status s = vs_trace_branch(family_of(o), o.m, single_alpha(o), &cfg, b.out());
  const std::string message = vs_last_error_message();
  Output out(o.out);
  out.stream() << "epsilon,param,min_curvature,convex\n";
  for (std::size_t i = 0; b.p && i < vs_branch_size(b.p); ++i) {
    vs_branch_point_info info;
    check(vs_branch_point(b.p, i, &info));
    out.stream() << fmt(info.epsilon) << "," << fmt(info.param) << "," << fmt(info.min_curvature) << ","
                 << (info.min_curvature > 0.0 ? 1 : 0) << "\n";
  }
  out.flush();
  check(s, message);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Rotating patch toolkit"};
  app.allow_config_extras(CLI::config_extras_mode::error);
  Options o;
  const std::map<std::string, int (*)(const Options&)> commands{
      {"bifurcation-points", cmd_bifurcation_points}, {"omega-table", cmd_omega_table},
      {"linearize", cmd_linearize},                   {"kernel", cmd_kernel},
      {"trace", cmd_trace},                           {"verify-rotation", cmd_verify_rotation},
      {"selftest-integrals", cmd_selftest},           {"curvature", cmd_curvature}};
  std::vector<std::string> names;
  for (const auto& [k, v] : commands) names.push_back(k);

  app.add_option("command", o.command, "Subcommand")->required()->check(CLI::IsMember(names));
  app.set_config("--config", "", "Flat key=value file; flags override it");
  app.add_option("--family", o.family, "ellipse or disk")->check(CLI::IsMember({"ellipse", "disk"}));
  app.add_option("--m", o.m, "Fold index");
  app.add_option("--m-max", o.m_max, "Largest m in tables");
  app.add_option("--alpha", o.alpha, "Exponent(s) in [0,2)")->expected(1, 64);
  app.add_option("--r", o.r, "Ellipse ratio (default r(m))");
  app.add_option("--n-modes", o.n_modes, "Series truncation")->check(CLI::Range(8, 4096));
  app.add_option("--n-quad", o.n_quad, "Quadrature nodes")->check(CLI::Range(8, 1 << 16));
  app.add_option("--epsilon-step", o.epsilon_step, "Continuation amplitude step");
  app.add_option("--steps", o.steps, "Continuation steps")->check(CLI::Range(0, 100000));
  app.add_option("--tol", o.tol, "Newton tolerance");
  app.add_option("--epsilon", o.epsilon, "Branch amplitude for verify-rotation (0: base shape)");
  app.add_option("--t-final", o.t_final, "Integration time");
  app.add_option("--dt", o.dt, "Time step");
  app.add_option("--nodes", o.nodes, "Contour nodes")->check(CLI::Range(8, 1 << 14));
  app.add_option("--seed", o.seed, "Random seed");
  app.add_option("--out", o.out, "Output file (default stdout)");
  app.add_option("--diagnostics", o.diagnostics, "Per-step JSON lines for verify-rotation");
  app.add_option("--plot-script", o.plot_script, "Write a plotting script for the output data");

  auto report = [&](int code, const std::string& status, const std::string& msg) {
    std::cerr << nlohmann::json{{"command", o.command}, {"status", status}, {"error", msg}, {"exit", code}}.dump()
              << "\n";
    return code;
  };
  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    return report(kExitValidation, "invalid_argument", e.what());
  }
  for (double a : o.alpha) {
    if (!(a >= 0.0 && a < 2.0)) return report(kExitValidation, "domain", "alpha must lie in [0, 2)");
  }
  if (o.family == "ellipse" && (o.alpha.size() != 1 || o.alpha[0] != 0.0) && o.command != "omega-table") {
    return report(kExitValidation, "invalid_argument", "the ellipse family takes alpha = 0 only");
  }
  if (!(o.tol > 0.0) || !(o.epsilon_step > 0.0) || !(o.dt > 0.0) || !(o.t_final > 0.0) || o.epsilon < 0.0) {
    return report(kExitValidation, "invalid_argument", "tol, epsilon-step, dt and t-final must be positive");
  }
  try {
    return commands.at(o.command)(o);
  } catch (const Failure& f) {
    return report(f.code, f.status, f.message);
  } catch (const std::exception& e) {
    return report(kExitNumerical, "internal", e.what());
  }
}
