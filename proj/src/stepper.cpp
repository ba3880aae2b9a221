#include "ttheat/stepper.hpp"

#include <cmath>
#include <limits>

#include "ttheat/errors.hpp"
#include "ttheat/fg_ops.hpp"
#include "ttheat/tt_ops.hpp"

namespace ttheat {

void SolverConfig::validate() const {
  if (!(dt > 0.0) || !std::isfinite(dt)) throw InvalidInput("dt must be positive");
  if (!(t_final >= 0.0) || !std::isfinite(t_final)) throw InvalidInput("t_final must be nonnegative");
  if (t_final > 0.0 && dt > t_final * (1.0 + 1e-12)) throw InvalidInput("dt must not exceed t_final");
  if (!(eps_round >= 0.0)) throw InvalidInput("eps_round must be nonnegative");
  if (!(pcg_tol > 0.0 && pcg_tol < 1.0)) throw InvalidInput("pcg_tol must lie in (0, 1)");
  if (pcg_maxiter == 0) throw InvalidInput("pcg_maxiter must be positive");
  if (initial_rank_cap && *initial_rank_cap == 0) throw InvalidInput("rank cap must be positive");
}

std::size_t step_count(double t_final, double dt) {
  if (!(dt > 0.0)) throw InvalidInput("dt must be positive");
  const double n = std::round(t_final / dt);
  if (std::abs(n * dt - t_final) > 1e-9 * std::max(t_final, dt))
    throw InvalidInput("t_final is not an integer multiple of dt");
  return static_cast<std::size_t>(n);
}

// ---- field algebra ----

DenseField3 lincomb(double a, const DenseField3& x, double b, const DenseField3& y, double) {
  return axpby(a, x, b, y);
}
TTTensor3 lincomb(double a, const TTTensor3& x, double b, const TTTensor3& y, double eps) {
  return round(axpby(a, x, b, y), eps);
}
double field_dot(const DenseField3& a, const DenseField3& b) { return dot(a, b); }
double field_dot(const TTTensor3& a, const TTTensor3& b) { return inner(a, b); }
std::size_t field_rank(const DenseField3&) { return 0; }
std::size_t field_rank(const TTTensor3& a) { return a.max_rank(); }
DenseField3 apply_mask(const DenseField3& u, const Grid3& g) { return mask_interior(u, g); }
TTTensor3 apply_mask(const TTTensor3& u, const Grid3& g) { return tt_mask_interior(u, g); }
DenseField3 vertex_laplacian(const DenseField3& u, const Grid3& g, double, const StencilOptions& opt) {
  return laplacian_vertex(u, g, opt);
}
TTTensor3 vertex_laplacian(const TTTensor3& u, const Grid3& g, double eps, const StencilOptions& opt) {
  return tt_laplacian_vertex(u, g, eps, opt);
}
DenseField3 apply_boundary(const DenseField3& u, const Grid3& g, const DenseField3& b, double) {
  return set_dirichlet(u, g, b);
}
TTTensor3 apply_boundary(const TTTensor3& u, const Grid3& g, const TTTensor3& b, double eps) {
  return tt_set_dirichlet(u, g, b, eps);
}

namespace {

double field_norm(const DenseField3& a) { return norm(a); }
double field_norm(const TTTensor3& a) { return norm(a); }

DenseField3 field_scale(const DenseField3& a, double s) { return axpby(s, a, 0.0, a); }
TTTensor3 field_scale(const TTTensor3& a, double s) { return scale(a, s); }

bool field_finite(const DenseField3& a) { return a.values.all_finite(); }
bool field_finite(const TTTensor3& a) { return std::isfinite(norm(a)); }

// Boundary layers of b, zero inside.
template <class Field>
Field boundary_part(const Field& b, const Grid3& g) {
  return lincomb(1.0, b, -1.0, apply_mask(b, g), 0.0);
}

}  // namespace

DenseField3 heat_matvec(const DenseField3& p, const Grid3& g, double tau_dt, double,
                        const StencilOptions& opt) {
  return mask_interior(axpby(1.0, p, -tau_dt, laplacian_vertex(p, g, opt)), g);
}

TTTensor3 heat_matvec(const TTTensor3& p, const Grid3& g, double tau_dt, double eps,
                      const StencilOptions& opt) {
  if (tau_dt == 0.0) return tt_mask_interior(p, g);
  const TTTensor3 lap = tt_laplacian_vertex(p, g, eps, opt);
  return round(tt_mask_interior(axpby(1.0, p, -tau_dt, lap), g), eps);
}

// ---- tridiagonal solves and the preconditioner ----

std::vector<double> thomas(std::span<const double> lower, std::span<const double> diag,
                           std::span<const double> upper, std::span<const double> rhs) {
  const std::size_t n = diag.size();
  if (n == 0 || rhs.size() != n || lower.size() + 1 != n || upper.size() + 1 != n)
    throw InvalidInput("inconsistent tridiagonal system sizes");
  std::vector<double> c(n), x(rhs.begin(), rhs.end());
  double pivot = diag[0];
  if (pivot == 0.0 || !std::isfinite(pivot)) throw SingularSystem("zero pivot in tridiagonal solve");
  x[0] /= pivot;
  for (std::size_t i = 1; i < n; ++i) {
    c[i - 1] = upper[i - 1] / pivot;
    pivot = diag[i] - lower[i - 1] * c[i - 1];
    if (pivot == 0.0 || !std::isfinite(pivot)) throw SingularSystem("zero pivot in tridiagonal solve");
    x[i] = (x[i] - lower[i - 1] * x[i - 1]) / pivot;
  }
  for (std::size_t i = n - 1; i-- > 0;) x[i] -= c[i] * x[i + 1];
  return x;
}

TridiagonalFactor preconditioner_factor(const GridAxis& ax, double tau_dt) {
  const std::size_t b = ax.interior_begin();
  const std::size_t e = ax.interior_end();
  const std::size_t n = e - b;
  // Edge weight between vertices i and i+1: inverse square of the local step of cell i.
  auto weight = [&](std::size_t cell) {
    double s = ax.cell_steps[cell];
    if (ax.kind == AxisKind::remapped) s = (*ax.metric_at_centers)[cell] * ax.h;
    return 1.0 / (s * s);
  };
  TridiagonalFactor f;
  f.diag.resize(n);
  f.lower.resize(n - 1);
  f.upper.resize(n - 1);
  for (std::size_t m = 0; m < n; ++m) {
    const std::size_t v = b + m;
    f.diag[m] = 1.0 + tau_dt * (weight(v - 1) + weight(v));
    if (m + 1 < n) f.upper[m] = f.lower[m] = -tau_dt * weight(v);
  }
  return f;
}

namespace {

// Precomputed forward elimination of a tridiagonal factor, reused across many right-hand sides.
struct ThomasPlan {
  std::vector<double> lower, c, inv_pivot;

  explicit ThomasPlan(const TridiagonalFactor& f) : lower(f.lower), c(f.diag.size()), inv_pivot(f.diag.size()) {
    // Validate once through the reference implementation.
    (void)thomas(f.lower, f.diag, f.upper, std::vector<double>(f.diag.size(), 0.0));
    double pivot = f.diag[0];
    inv_pivot[0] = 1.0 / pivot;
    for (std::size_t i = 1; i < f.diag.size(); ++i) {
      c[i - 1] = f.upper[i - 1] / pivot;
      pivot = f.diag[i] - f.lower[i - 1] * c[i - 1];
      inv_pivot[i] = 1.0 / pivot;
    }
  }

  // Solves in place on a strided fiber.
  void solve(double* x, std::size_t stride) const {
    const std::size_t n = inv_pivot.size();
    x[0] *= inv_pivot[0];
    for (std::size_t i = 1; i < n; ++i)
      x[i * stride] = (x[i * stride] - lower[i - 1] * x[(i - 1) * stride]) * inv_pivot[i];
    for (std::size_t i = n - 1; i-- > 0;) x[i * stride] -= c[i] * x[(i + 1) * stride];
  }
};

}  // namespace

DenseField3 precond_apply(const DenseField3& r, const Grid3& g, double tau_dt) {
  DenseField3 z = mask_interior(r, g);
  if (tau_dt == 0.0) return z;
  const Shape3 n = z.shape();
  const std::array<std::size_t, 3> stride{n[1] * n[2], n[2], 1};
  for (std::size_t a = 0; a < 3; ++a) {
    const ThomasPlan plan(preconditioner_factor(g.axis(a), tau_dt));
    const std::size_t t1 = a == 0 ? 1 : 0;
    const std::size_t t2 = a == 2 ? 1 : 2;
    const auto& ax1 = g.axis(t1);
    const auto& ax2 = g.axis(t2);
    // Fibers whose transverse index is a boundary layer are identically zero.
    for (std::size_t i = ax1.interior_begin(); i < ax1.interior_end(); ++i)
      for (std::size_t j = ax2.interior_begin(); j < ax2.interior_end(); ++j) {
        double* p = z.values.data() + i * stride[t1] + j * stride[t2] +
                    g.axis(a).interior_begin() * stride[a];
        plan.solve(p, stride[a]);
      }
  }
  return z;
}

TTTensor3 precond_apply(const TTTensor3& r, const Grid3& g, double tau_dt) {
  TTTensor3 z = tt_mask_interior(r, g);
  if (tau_dt == 0.0) return z;
  auto cores = z.cores();
  for (std::size_t l = 0; l < 3; ++l) {
    const ThomasPlan plan(preconditioner_factor(g.axis(l), tau_dt));
    Core& c = cores[l];
    const std::size_t r1 = c.right_rank();
    for (std::size_t a = 0; a < c.left_rank(); ++a)
      for (std::size_t b = 0; b < r1; ++b)
        plan.solve(c.array().data() + c.array().offset(a, g.axis(l).interior_begin(), b), r1);
  }
  return TTTensor3(std::move(cores), z.centering());
}

// ---- Krylov solver ----

template <class Field>
PcgResult<Field> pcg(const Field& x0, const Field& b, const Grid3& g, double tau_dt,
                     const SolverConfig& cfg) {
  const double eps = cfg.eps_round;
  const auto& opt = cfg.stencil;
  auto A = [&](const Field& p) { return heat_matvec(p, g, tau_dt, eps, opt); };
  auto M = [&](const Field& r) {
    return cfg.preconditioner == Preconditioner::dimension_split ? precond_apply(r, g, tau_dt)
                                                                 : r;
  };

  PcgResult<Field> res{x0, 0, 0.0, 0.0, false};
  Field r = lincomb(1.0, b, -1.0, A(x0), eps);
  const double r0 = field_norm(r);
  res.initial_residual = r0;
  res.residual = r0;
  if (r0 == 0.0) {
    res.converged = true;
    return res;
  }
  Field z = M(r);
  Field p = z;
  double rz = field_dot(r, z);
  for (std::size_t k = 1; k <= cfg.pcg_maxiter; ++k) {
    const Field q = A(p);
    const double alpha = rz / field_dot(p, q);
    res.x = lincomb(1.0, res.x, alpha, p, eps);
    r = lincomb(1.0, r, -alpha, q, eps);
    res.iterations = k;
    res.residual = field_norm(r);
    if (res.residual < cfg.pcg_tol * r0) {
      res.converged = true;
      return res;
    }
    z = M(r);
    const double rz_next = field_dot(r, z);
    const double beta = rz_next / rz;
    rz = rz_next;
    p = lincomb(1.0, z, beta, p, eps);
  }
  return res;
}

// ---- time steps ----

namespace {

// Solves (I - tau_dt L) x = rhs on the interior with Dirichlet data lifted from `bc`, then
// attaches the boundary layers of `bc_out`. `guess` supplies the initial iterate.
template <class Field>
Field implicit_solve(const Field& rhs, const Field& guess, const Grid3& g, const Field& bc,
                     const Field& bc_out, double tau_dt, const SolverConfig& cfg,
                     StepReport* report) {
  const double eps = cfg.eps_round;
  const Field lift = boundary_part(bc, g);
  const Field b_hom = apply_mask(
      lincomb(1.0, rhs, tau_dt, vertex_laplacian(lift, g, eps, cfg.stencil), eps), g);
  const auto sol = pcg(apply_mask(guess, g), b_hom, g, tau_dt, cfg);
  if (report) {
    report->pcg_iterations += sol.iterations;
    report->pcg_residual = sol.residual;
    report->pcg_converged = report->pcg_converged && sol.converged;
  }
  return apply_boundary(sol.x, g, bc_out, eps);
}

}  // namespace

template <class Field>
Field explicit_step(const Field& u, const Grid3& g, const Problem<Field>& prob, double t,
                    double dt, const SolverConfig& cfg) {
  const double eps = cfg.eps_round;
  const Field ub = apply_boundary(u, g, prob.boundary(t), eps);
  const Field rate =
      apply_mask(lincomb(1.0, vertex_laplacian(ub, g, eps, cfg.stencil), 1.0, prob.forcing(t), eps), g);
  return lincomb(1.0, ub, dt, rate, eps);
}

template <class Field>
Field implicit_step(const Field& u, const Grid3& g, const Problem<Field>& prob, double t,
                    double dt, const SolverConfig& cfg, StepReport* report) {
  const double t_bc = cfg.bc_time_convention == BcTimeConvention::as_printed ? t : t + dt;
  const Field rhs = lincomb(1.0, u, dt, prob.forcing(t + dt), cfg.eps_round);
  return implicit_solve(rhs, u, g, prob.boundary(t_bc), prob.boundary(t + dt), dt, cfg, report);
}

template <class Field>
Field cn_step(const Field& u, const Grid3& g, const Problem<Field>& prob, double t, double dt,
              const SolverConfig& cfg, StepReport* report) {
  const double half = 0.5 * dt;
  const Field mid = explicit_step(u, g, prob, t, half, cfg);
  const double t_bc =
      cfg.bc_time_convention == BcTimeConvention::as_printed ? t + half : t + dt;
  const Field rhs = lincomb(1.0, mid, half, prob.forcing(t + dt), cfg.eps_round);
  return implicit_solve(rhs, mid, g, prob.boundary(t_bc), prob.boundary(t + dt), half, cfg, report);
}

template <class Field>
PowerResult power_method_lambda_max(const std::function<Field(const Field&)>& op,
                                    const Field& start, std::size_t iters, double tol) {
  const double n0 = field_norm(start);
  if (n0 == 0.0) throw InvalidInput("power method needs a nonzero start vector");
  Field v = field_scale(start, 1.0 / n0);
  PowerResult res;
  double previous = std::numeric_limits<double>::quiet_NaN();
  for (std::size_t k = 1; k <= iters; ++k) {
    const Field w = op(v);
    res.lambda = field_dot(v, w) / field_dot(v, v);
    res.iterations = k;
    const double nw = field_norm(w);
    if (nw == 0.0) {
      res.converged = true;
      return res;
    }
    if (std::isfinite(previous) && std::abs(res.lambda - previous) < tol * std::abs(res.lambda)) {
      res.converged = true;
      return res;
    }
    previous = res.lambda;
    v = field_scale(w, 1.0 / nw);
  }
  return res;
}

template <class Field>
SimulationResult<Field> run_simulation(const Field& u0, const Grid3& g, const Problem<Field>& prob,
                                       const SolverConfig& cfg) {
  cfg.validate();
  const std::size_t n = step_count(cfg.t_final, cfg.dt);
  SimulationResult<Field> out{u0, {}};
  out.steps.reserve(n);
  const double n0 = field_norm(u0);
  const double limit = 1e12 * (n0 > 0.0 ? n0 : 1.0);
  for (std::size_t s = 0; s < n; ++s) {
    const double t = static_cast<double>(s) * cfg.dt;
    StepReport rep;
    rep.step = s + 1;
    rep.time = t + cfg.dt;
    switch (cfg.scheme) {
      case Scheme::explicit_euler: out.u = explicit_step(out.u, g, prob, t, cfg.dt, cfg); break;
      case Scheme::implicit_euler: out.u = implicit_step(out.u, g, prob, t, cfg.dt, cfg, &rep); break;
      case Scheme::crank_nicolson: out.u = cn_step(out.u, g, prob, t, cfg.dt, cfg, &rep); break;
    }
    rep.max_rank = field_rank(out.u);
    out.steps.push_back(rep);
    const double nu = field_norm(out.u);
    if (!std::isfinite(nu) || !field_finite(out.u) || nu > limit)
      throw DivergenceError("solution diverged at step " + std::to_string(s + 1) + " (t = " +
                            std::to_string(rep.time) + ")");
  }
  return out;
}

#define TTHEAT_INSTANTIATE(F)                                                                    \
  template PcgResult<F> pcg<F>(const F&, const F&, const Grid3&, double, const SolverConfig&);  \
  template F explicit_step<F>(const F&, const Grid3&, const Problem<F>&, double, double,         \
                              const SolverConfig&);                                              \
  template F implicit_step<F>(const F&, const Grid3&, const Problem<F>&, double, double,         \
                              const SolverConfig&, StepReport*);                                 \
  template F cn_step<F>(const F&, const Grid3&, const Problem<F>&, double, double,               \
                        const SolverConfig&, StepReport*);                                       \
  template PowerResult power_method_lambda_max<F>(const std::function<F(const F&)>&, const F&,   \
                                                  std::size_t, double);                          \
  template SimulationResult<F> run_simulation<F>(const F&, const Grid3&, const Problem<F>&,      \
                                                 const SolverConfig&);

TTHEAT_INSTANTIATE(DenseField3)
TTHEAT_INSTANTIATE(TTTensor3)

#undef TTHEAT_INSTANTIATE

}  // namespace ttheat
