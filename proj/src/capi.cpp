#include "vstate/vstate.h"

#include <cmath>
#include <memory>
#include <new>
#include <string>

#include "vstate/dynamics.hpp"
#include "vstate/error.hpp"
#include "vstate/functional.hpp"
#include "vstate/io.hpp"
#include "vstate/linearized.hpp"
#include "vstate/quadrature.hpp"
#include "vstate/series.hpp"
#include "vstate/solver.hpp"
#include "vstate/special.hpp"

struct vs_text {
  std::string data;
};

struct vs_series {
  vs_basis basis;
  std::vector<double> coeffs;
};

struct vs_kernel {
  vstate::KernelGenerator g;
};

struct vs_branch {
  std::vector<vstate::BranchPoint> points;
};

namespace {

thread_local std::string g_last_error;

struct InvalidArgument : vstate::Error {
  using vstate::Error::Error;
};

vs_status fail(vs_status s, const std::string& msg) {
  g_last_error = msg;
  return s;
}

template <class F>
vs_status guard(F&& f) {
  g_last_error.clear();
  try {
    f();
    return VS_OK;
  } catch (const InvalidArgument& e) {
    return fail(VS_ERR_INVALID_ARGUMENT, e.what());
  } catch (const vstate::DomainError& e) {
    return fail(VS_ERR_DOMAIN, e.what());
  } catch (const vstate::PreconditionError& e) {
    return fail(VS_ERR_PRECONDITION, e.what());
  } catch (const vstate::ConvergenceError& e) {
    return fail(VS_ERR_NO_CONVERGENCE, e.what());
  } catch (const vstate::InsufficientDataError& e) {
    return fail(VS_ERR_INSUFFICIENT_DATA, e.what());
  } catch (const vstate::OverflowError& e) {
    return fail(VS_ERR_OVERFLOW, e.what());
  } catch (const vstate::NumericalError& e) {
    return fail(VS_ERR_NUMERICAL, e.what());
  } catch (const std::bad_alloc&) {
    return fail(VS_ERR_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return fail(VS_ERR_INTERNAL, e.what());
  } catch (...) {
    return fail(VS_ERR_INTERNAL, "unknown error");
  }
}

void need(const void* p, const char* name) {
  if (p == nullptr) throw InvalidArgument(std::string(name) + " must not be null");
}

vstate::CosineSeries as_cos(const vs_series* s, const char* name) {
  need(s, name);
  if (s->basis != VS_BASIS_COS) throw InvalidArgument(std::string(name) + " must be a cosine series");
  return vstate::CosineSeries(s->coeffs);
}

vstate::SineSeries as_sin(const vs_series* s, const char* name) {
  need(s, name);
  if (s->basis != VS_BASIS_SIN) throw InvalidArgument(std::string(name) + " must be a sine series");
  return vstate::SineSeries(s->coeffs);
}

template <class S>
vs_series* wrap(const S& s) {
  return new vs_series{S::basis == vstate::Basis::Cosine ? VS_BASIS_COS : VS_BASIS_SIN,
                       std::vector<double>(s.coeffs().begin(), s.coeffs().end())};
}

vs_text* text(std::string s) { return new vs_text{std::move(s)}; }

vstate::Family family_of(vs_family f) {
  if (f == VS_FAMILY_ELLIPSE) return vstate::Family::Ellipse;
  if (f == VS_FAMILY_DISK) return vstate::Family::Disk;
  throw InvalidArgument("unknown family");
}

vstate::PatchConfig patch_of(const vs_patch_config* c) {
  need(c, "config");
  vstate::PatchConfig p;
  p.family = family_of(c->family);
  p.jump = c->jump;
  p.alpha = c->alpha;
  p.n_quad = c->n_quad;
  p.n_graded = c->n_graded;
  p.n_collocation = c->n_collocation;
  p.validate();
  return p;
}

vstate::ContinuationConfig continuation_of(const vs_continuation_config* c) {
  need(c, "config");
  vstate::ContinuationConfig cc;
  cc.newton_tol = c->newton_tol;
  cc.max_newton_iters = c->max_newton_iters;
  cc.epsilon_step = c->epsilon_step;
  cc.n_steps = c->n_steps;
  cc.n_modes = c->n_modes;
  cc.patch = patch_of(&c->patch);
  cc.validate();
  return cc;
}

}  // namespace

extern "C" {

const char* vs_version(void) { return "0.1.0"; }

const char* vs_status_name(vs_status s) {
  switch (s) {
    case VS_OK: return "ok";
    case VS_ERR_INVALID_ARGUMENT: return "invalid_argument";
    case VS_ERR_DOMAIN: return "domain";
    case VS_ERR_PRECONDITION: return "precondition";
    case VS_ERR_NO_CONVERGENCE: return "no_convergence";
    case VS_ERR_NUMERICAL: return "numerical";
    case VS_ERR_INSUFFICIENT_DATA: return "insufficient_data";
    case VS_ERR_OVERFLOW: return "overflow";
    case VS_ERR_INTERNAL: return "internal";
  }
  return "unknown";
}

const char* vs_last_error_message(void) { return g_last_error.c_str(); }

const char* vs_text_data(const vs_text* t) { return t ? t->data.c_str() : ""; }
size_t vs_text_size(const vs_text* t) { return t ? t->data.size() : 0; }
void vs_text_free(vs_text* t) { delete t; }

vs_status vs_series_new(vs_basis basis, const double* coeffs, size_t n, vs_series** out) {
  return guard([&] {
    need(out, "out");
    if (n > 0) need(coeffs, "coeffs");
    if (basis != VS_BASIS_COS && basis != VS_BASIS_SIN) throw InvalidArgument("unknown basis");
    std::vector<double> c(coeffs, coeffs + n);
    vstate::CosineSeries check(c);  // validates size and finiteness
    *out = new vs_series{basis, std::move(c)};
  });
}

void vs_series_free(vs_series* s) { delete s; }
vs_basis vs_series_basis(const vs_series* s) { return s ? s->basis : VS_BASIS_COS; }
size_t vs_series_size(const vs_series* s) { return s ? s->coeffs.size() : 0; }

vs_status vs_series_coeffs(const vs_series* s, double* out, size_t cap) {
  return guard([&] {
    need(s, "series");
    if (cap > 0) need(out, "out");
    for (size_t i = 0; i < cap && i < s->coeffs.size(); ++i) out[i] = s->coeffs[i];
  });
}

vs_status vs_series_eval(const vs_series* s, double x, double* out) {
  return guard([&] {
    need(s, "series");
    need(out, "out");
    if (!std::isfinite(x)) throw vstate::PreconditionError("x must be finite");
    *out = s->basis == VS_BASIS_COS ? vstate::eval(vstate::CosineSeries(s->coeffs), x)
                                    : vstate::eval(vstate::SineSeries(s->coeffs), x);
  });
}

vs_status vs_series_to_json(const vs_series* s, vs_text** out) {
  return guard([&] {
    need(s, "series");
    need(out, "out");
    *out = text(s->basis == VS_BASIS_COS ? vstate::io::to_json(vstate::CosineSeries(s->coeffs))
                                         : vstate::io::to_json(vstate::SineSeries(s->coeffs)));
  });
}

vs_status vs_series_to_csv(const vs_series* s, vs_text** out) {
  return guard([&] {
    need(s, "series");
    need(out, "out");
    *out = text(s->basis == VS_BASIS_COS ? vstate::io::to_csv(vstate::CosineSeries(s->coeffs))
                                         : vstate::io::to_csv(vstate::SineSeries(s->coeffs)));
  });
}

vs_status vs_series_from_json(const char* json_text, vs_series** out) {
  return guard([&] {
    need(json_text, "text");
    need(out, "out");
    const auto v = vstate::io::series_from_json(json_text);
    *out = std::visit([](const auto& s) { return wrap(s); }, v);
  });
}

vs_status vs_strip_norm(const vs_series* s, double c, int k, double* out) {
  return guard([&] {
    need(out, "out");
    *out = vstate::strip_norm(as_cos(s, "series"), {c, k});
  });
}

vs_status vs_fit_decay_rate(const vs_series* s, double* out) {
  return guard([&] {
    need(out, "out");
    *out = vstate::fit_decay_rate(as_cos(s, "series"));
  });
}

vs_status vs_poisson_kernel_integral(int k, double r, double* out) {
  return guard([&] {
    need(out, "out");
    *out = vstate::poisson_kernel_integral(k, r);
  });
}

vs_status vs_log_sin_integral(int k, double* out) {
  return guard([&] {
    need(out, "out");
    *out = vstate::log_sin_integral(k);
  });
}

vs_status vs_log_shifted_cos_integral(int k, double r, double* out) {
  return guard([&] {
    need(out, "out");
    *out = vstate::log_shifted_cos_integral(k, r);
  });
}

vs_status vs_selftest_integrals(size_t n_nodes, vs_text** csv, double* worst_delta) {
  return guard([&] {
    need(csv, "csv");
    const auto rows = vstate::oracle_table(n_nodes);
    double worst = 0.0;
    for (const auto& r : rows) worst = std::max(worst, r.delta());
    *csv = text(vstate::io::oracle_table_csv(rows));
    if (worst_delta) *worst_delta = worst;
  });
}

vs_status vs_gamma(double x, double* out) {
  return guard([&] {
    need(out, "out");
    *out = vstate::gamma_fn(x);
  });
}

vs_status vs_bracket(int m, double r, double* out) {
  return guard([&] {
    need(out, "out");
    *out = vstate::bracket(m, r);
  });
}

vs_status vs_bifurcation_ratio(int m, double tol, double* out) {
  return guard([&] {
    need(out, "out");
    *out = vstate::bifurcation_ratio(m, tol);
  });
}

vs_status vs_omega_m(int m, double alpha, double* out) {
  return guard([&] {
    need(out, "out");
    *out = vstate::omega_m(m, alpha);
  });
}

vs_status vs_k_coeff(int k, double r, double* out) {
  return guard([&] {
    need(out, "out");
    if (!(r > 0.0 && r < 1.0)) throw vstate::DomainError("ratio r must lie in (0, 1)");
    *out = vstate::k_coeff(k, r);
  });
}

vs_status vs_tri_coeffs_csv(double r, size_t n, vs_text** out) {
  return guard([&] {
    need(out, "out");
    *out = text(vstate::io::tri_coeffs_csv(vstate::tri_coeffs(r, n)));
  });
}

vs_status vs_apply_df(double r, const vs_series* h, vs_series** out) {
  return guard([&] {
    need(out, "out");
    *out = wrap(vstate::apply_DF(r, as_cos(h, "h")));
  });
}

vs_status vs_preimage(int m, double r_m, const vs_series* target, vs_series** out) {
  return guard([&] {
    need(out, "out");
    *out = wrap(vstate::preimage(m, r_m, as_sin(target, "target")));
  });
}

vs_status vs_transversality_index(int m, double r_m, double* out) {
  return guard([&] {
    need(out, "out");
    *out = vstate::transversality_index(m, r_m);
  });
}

vs_status vs_k_growth_ratio(double r, int n, double* out) {
  return guard([&] {
    need(out, "out");
    if (!(r > 0.0 && r < 1.0)) throw vstate::DomainError("ratio r must lie in (0, 1)");
    *out = vstate::k_growth_ratio(r, n);
  });
}

vs_status vs_kernel_generator(int m, double r_m, size_t n, vs_kernel** out) {
  return guard([&] {
    need(out, "out");
    *out = new vs_kernel{vstate::kernel_generator(m, r_m, n)};
  });
}

void vs_kernel_free(vs_kernel* g) { delete g; }

vs_status vs_kernel_get_info(const vs_kernel* g, vs_kernel_info* out) {
  return guard([&] {
    need(g, "kernel");
    need(out, "out");
    out->r = g->g.r;
    out->z = g->g.z;
    out->lambda_plus = g->g.lambda_plus;
    out->lambda_minus = g->g.lambda_minus;
    out->row_defect = g->g.row_defect();
    out->k = g->g.k;
    out->odd = g->g.mode_class == vstate::FrequencyClass::OddFrequencies ? 1 : 0;
    out->n_cp = g->g.cp.size();
  });
}

vs_status vs_kernel_cp(const vs_kernel* g, double* out, size_t cap) {
  return guard([&] {
    need(g, "kernel");
    if (cap > 0) need(out, "out");
    for (size_t i = 0; i < cap && i < g->g.cp.size(); ++i) out[i] = g->g.cp[i];
  });
}

vs_status vs_kernel_series(const vs_kernel* g, size_t n_modes, vs_series** out) {
  return guard([&] {
    need(g, "kernel");
    need(out, "out");
    *out = wrap(g->g.as_series(n_modes));
  });
}

vs_status vs_kernel_to_json(const vs_kernel* g, size_t n_modes, vs_text** out) {
  return guard([&] {
    need(g, "kernel");
    need(out, "out");
    *out = text(vstate::io::to_json(g->g, n_modes));
  });
}

void vs_patch_config_default(vs_patch_config* cfg) {
  if (!cfg) return;
  const vstate::PatchConfig p;
  cfg->family = VS_FAMILY_ELLIPSE;
  cfg->jump = p.jump;
  cfg->alpha = p.alpha;
  cfg->n_quad = p.n_quad;
  cfg->n_graded = p.n_graded;
  cfg->n_collocation = p.n_collocation;
}

vs_status vs_eval_F(const vs_patch_config* cfg, double param, const vs_series* R, vs_series** residual,
                    double* sup_norm) {
  return guard([&] {
    need(residual, "residual");
    const auto res = vstate::eval_F(patch_of(cfg), param, as_cos(R, "R"));
    *residual = wrap(res.sine_coeffs);
    if (sup_norm) *sup_norm = res.sup_norm;
  });
}

vs_status vs_gateaux_fd(const vs_patch_config* cfg, double param, const vs_series* R, const vs_series* h, double step,
                        vs_series** out) {
  return guard([&] {
    need(out, "out");
    *out = wrap(vstate::gateaux_fd(patch_of(cfg), param, as_cos(R, "R"), as_cos(h, "h"), step));
  });
}

vs_status vs_curvature_min(vs_family family, const vs_series* R, double base, double* out) {
  return guard([&] {
    need(out, "out");
    *out = vstate::curvature_min(family_of(family), as_cos(R, "R"), base);
  });
}

void vs_continuation_config_default(vs_continuation_config* cfg) {
  if (!cfg) return;
  const vstate::ContinuationConfig c;
  cfg->newton_tol = c.newton_tol;
  cfg->max_newton_iters = c.max_newton_iters;
  cfg->epsilon_step = c.epsilon_step;
  cfg->n_steps = c.n_steps;
  cfg->n_modes = c.n_modes;
  vs_patch_config_default(&cfg->patch);
}

vs_status vs_trace_branch(vs_family family, int m, double alpha, const vs_continuation_config* cfg, vs_branch** out) {
  if (out) *out = nullptr;
  return guard([&] {
    need(out, "out");
    const auto cc = continuation_of(cfg);
    const auto problem = vstate::make_problem(family_of(family), m, alpha, cc);
    try {
      *out = new vs_branch{vstate::trace_branch(problem, cc)};
    } catch (const vstate::BranchStepError& e) {
      *out = new vs_branch{e.accepted()};
      throw;
    }
  });
}

vs_status vs_branch_switch(vs_family family, int m, double alpha, double eps0, const vs_continuation_config* cfg,
                           vs_branch** out) {
  if (out) *out = nullptr;
  return guard([&] {
    need(out, "out");
    const auto cc = continuation_of(cfg);
    const auto problem = vstate::make_problem(family_of(family), m, alpha, cc);
    *out = new vs_branch{{vstate::branch_switch(problem, eps0, cc)}};
  });
}

void vs_branch_free(vs_branch* b) { delete b; }
size_t vs_branch_size(const vs_branch* b) { return b ? b->points.size() : 0; }

vs_status vs_branch_point(const vs_branch* b, size_t i, vs_branch_point_info* out) {
  return guard([&] {
    need(b, "branch");
    need(out, "out");
    if (i >= b->points.size()) throw InvalidArgument("branch index out of range");
    const auto& p = b->points[i];
    out->param = p.param;
    out->epsilon = p.epsilon;
    out->residual = p.residual_norm;
    out->sup_residual = p.sup_residual;
    out->decay_rate = p.decay_rate;
    out->min_curvature = p.min_curvature;
    out->min_chord = p.min_chord;
    out->newton_iters = p.newton_iters;
  });
}

vs_status vs_branch_shape(const vs_branch* b, size_t i, vs_series** out) {
  return guard([&] {
    need(b, "branch");
    need(out, "out");
    if (i >= b->points.size()) throw InvalidArgument("branch index out of range");
    *out = wrap(b->points[i].shape);
  });
}

vs_status vs_branch_to_jsonl(const vs_branch* b, vs_text** out) {
  return guard([&] {
    need(b, "branch");
    need(out, "out");
    std::string s;
    for (const auto& p : b->points) s += vstate::io::to_json(p) + "\n";
    *out = text(std::move(s));
  });
}

void vs_rotation_request_default(vs_rotation_request* req) {
  if (!req) return;
  req->family = VS_FAMILY_ELLIPSE;
  req->shape = nullptr;
  req->base = 0.5;
  req->omega_expected = 0.5 / 2.25;
  req->kernel = VS_KERNEL_EULER;
  req->alpha = 0.0;
  req->jump = -1.0;
  req->n_nodes = 256;
  req->n_graded = 512;
  req->dt = 1e-3;
  req->t_final = 0.1;
}

vs_status vs_verify_rotation(const vs_rotation_request* req, vs_rotation_report* report, vs_text** diagnostics,
                             vs_text** final_contour) {
  return guard([&] {
    need(req, "request");
    need(report, "report");
    const auto fam = family_of(req->family);
    const vstate::CosineSeries R = req->shape ? as_cos(req->shape, "shape") : vstate::CosineSeries(1);
    if (!(req->t_final > 0.0) || !(req->dt > 0.0)) throw vstate::PreconditionError("dt and t_final must be positive");
    const int steps = static_cast<int>(std::lround(req->t_final / req->dt));
    if (steps < 1 || std::abs(steps * req->dt - req->t_final) > 1e-9 * req->t_final) {
      throw vstate::PreconditionError("t_final must be a whole number of steps");
    }
    vstate::VelocityModel model;
    model.kernel = req->kernel == VS_KERNEL_GSQG ? vstate::Kernel::Gsqg : vstate::Kernel::Euler;
    if (req->kernel != VS_KERNEL_EULER && req->kernel != VS_KERNEL_GSQG) throw InvalidArgument("unknown kernel");
    model.alpha = req->alpha;
    model.jump = req->jump;
    model.n_graded = req->n_graded;
    const auto c0 = vstate::make_contour(fam, R, req->base, req->n_nodes);
    std::string diag;
    std::function<void(const vstate::StepDiagnostics&)> cb;
    if (diagnostics) cb = [&](const vstate::StepDiagnostics& d) { diag += vstate::io::to_json(d) + "\n"; };
    const auto c1 = vstate::integrate(c0, model, req->dt, steps, cb);
    const auto fit = vstate::fit_rotation(c0, c1, req->t_final);
    const double a0 = vstate::area_spectral(c0);
    report->omega_fit = fit.omega_fit;
    report->omega_expected = req->omega_expected;
    report->shape_error = fit.shape_error;
    report->exact_discrepancy = vstate::rotation_discrepancy(c0, c1, req->omega_expected * req->t_final);
    report->area_drift = std::abs(vstate::area_spectral(c1) - a0) / std::abs(a0);
    report->min_arc_chord = std::min(vstate::arc_chord(c0), vstate::arc_chord(c1));
    report->t_final = req->t_final;
    report->steps = steps;
    if (diagnostics) *diagnostics = text(std::move(diag));
    if (final_contour) *final_contour = text(vstate::io::to_csv(c1));
  });
}

}  // extern "C"
