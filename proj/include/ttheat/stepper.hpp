#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "ttheat/dense.hpp"
#include "ttheat/grid.hpp"
#include "ttheat/stencil.hpp"
#include "ttheat/tt_tensor.hpp"

namespace ttheat {

enum class Scheme { explicit_euler, implicit_euler, crank_nicolson };
enum class Backend { fg, tt, both };

/// Time at which Dirichlet data enters the implicit solve.
enum class BcTimeConvention {
  as_printed,   ///< t^n for implicit Euler, t^{n+1/2} for the implicit half of Crank-Nicolson
  target_time,  ///< the time level the implicit system solves for
};

enum class Preconditioner { none, dimension_split };

struct SolverConfig {
  Scheme scheme = Scheme::explicit_euler;
  double dt = 1e-4;
  double t_final = 1e-2;
  double eps_round = 1e-4;
  double pcg_tol = 1e-8;
  std::size_t pcg_maxiter = 500;
  Backend backend = Backend::both;
  /// Rank cap applied when the problem data are compressed (bench_cli).
  std::optional<std::size_t> initial_rank_cap;
  BcTimeConvention bc_time_convention = BcTimeConvention::as_printed;
  Preconditioner preconditioner = Preconditioner::dimension_split;
  StencilOptions stencil;

  /// Throws InvalidInput when a field is out of range.
  void validate() const;
};

struct StepReport {
  std::size_t step = 0;
  double time = 0.0;
  std::size_t max_rank = 0;  ///< 0 for full-grid fields
  std::size_t pcg_iterations = 0;
  double pcg_residual = 0.0;
  bool pcg_converged = true;
};

/// Time-dependent data of a Dirichlet heat problem in a given field representation.
/// `boundary(t)` is a vertex field whose boundary layers hold the Dirichlet values at t.
template <class Field>
struct Problem {
  std::function<Field(double)> forcing;
  std::function<Field(double)> boundary;
};

template <class Field>
struct PcgResult {
  Field x;
  std::size_t iterations = 0;
  double residual = 0.0;
  double initial_residual = 0.0;
  bool converged = false;
};

template <class Field>
struct SimulationResult {
  Field u;
  std::vector<StepReport> steps;
};

struct PowerResult {
  double lambda = 0.0;
  std::size_t iterations = 0;
  bool converged = false;
};

// Field algebra shared by the two backends. TT results are rounded at eps; dense ones are exact.
[[nodiscard]] DenseField3 lincomb(double a, const DenseField3& x, double b, const DenseField3& y, double eps);
[[nodiscard]] TTTensor3 lincomb(double a, const TTTensor3& x, double b, const TTTensor3& y, double eps);
[[nodiscard]] double field_dot(const DenseField3& a, const DenseField3& b);
[[nodiscard]] double field_dot(const TTTensor3& a, const TTTensor3& b);
[[nodiscard]] std::size_t field_rank(const DenseField3&);
[[nodiscard]] std::size_t field_rank(const TTTensor3& a);
[[nodiscard]] DenseField3 apply_mask(const DenseField3& u, const Grid3& g);
[[nodiscard]] TTTensor3 apply_mask(const TTTensor3& u, const Grid3& g);
[[nodiscard]] DenseField3 vertex_laplacian(const DenseField3& u, const Grid3& g, double eps, const StencilOptions& opt);
[[nodiscard]] TTTensor3 vertex_laplacian(const TTTensor3& u, const Grid3& g, double eps, const StencilOptions& opt);
[[nodiscard]] DenseField3 apply_boundary(const DenseField3& u, const Grid3& g, const DenseField3& b, double eps);
[[nodiscard]] TTTensor3 apply_boundary(const TTTensor3& u, const Grid3& g, const TTTensor3& b, double eps);

/// p - tau_dt * Laplacian(p) with zeroed boundary layers; p must vanish on the boundary layers.
[[nodiscard]] DenseField3 heat_matvec(const DenseField3& p, const Grid3& g, double tau_dt, double eps,
                                      const StencilOptions& opt = {});
[[nodiscard]] TTTensor3 heat_matvec(const TTTensor3& p, const Grid3& g, double tau_dt, double eps,
                                    const StencilOptions& opt = {});

/// Solves the tridiagonal system with sub-diagonal `lower` (n-1), `diag` (n), super-diagonal
/// `upper` (n-1). Throws SingularSystem on a zero pivot.
[[nodiscard]] std::vector<double> thomas(std::span<const double> lower, std::span<const double> diag,
                                         std::span<const double> upper, std::span<const double> rhs);

/// One factor I + tau_dt * L of the dimension-split preconditioner on the interior vertices of
/// an axis; L is the three-point negative second difference with Dirichlet ends.
struct TridiagonalFactor {
  std::vector<double> lower, diag, upper;
};
[[nodiscard]] TridiagonalFactor preconditioner_factor(const GridAxis& ax, double tau_dt);

/// Applies the inverse of the three 1D factors in sequence; the result vanishes on the boundary layers.
[[nodiscard]] DenseField3 precond_apply(const DenseField3& r, const Grid3& g, double tau_dt);
/// Same on the TT cores; ranks are unchanged.
[[nodiscard]] TTTensor3 precond_apply(const TTTensor3& r, const Grid3& g, double tau_dt);

/// Preconditioned conjugate gradients for heat_matvec on zero-boundary fields. TT iterates are
/// rounded after the solution, residual and direction updates. Stops when
/// ||r|| < tol ||r0|| or after maxiter iterations.
template <class Field>
[[nodiscard]] PcgResult<Field> pcg(const Field& x0, const Field& b, const Grid3& g, double tau_dt,
                                   const SolverConfig& cfg);

template <class Field>
[[nodiscard]] Field explicit_step(const Field& u, const Grid3& g, const Problem<Field>& prob,
                                  double t, double dt, const SolverConfig& cfg);

template <class Field>
[[nodiscard]] Field implicit_step(const Field& u, const Grid3& g, const Problem<Field>& prob,
                                  double t, double dt, const SolverConfig& cfg,
                                  StepReport* report = nullptr);

template <class Field>
[[nodiscard]] Field cn_step(const Field& u, const Grid3& g, const Problem<Field>& prob, double t,
                            double dt, const SolverConfig& cfg, StepReport* report = nullptr);

/// Rayleigh-quotient power iteration; stops when the relative change drops below tol.
template <class Field>
[[nodiscard]] PowerResult power_method_lambda_max(const std::function<Field(const Field&)>& op,
                                                  const Field& start, std::size_t iters, double tol);

/// Integrates from t = 0 to t_final. Throws DivergenceError when ||u|| exceeds 1e12 times its
/// initial value (or 1e12 if the initial field is zero) or becomes non-finite.
template <class Field>
[[nodiscard]] SimulationResult<Field> run_simulation(const Field& u0, const Grid3& g,
                                                     const Problem<Field>& prob,
                                                     const SolverConfig& cfg);

/// Number of steps of size dt that reach t_final (t_final must be a multiple of dt).
[[nodiscard]] std::size_t step_count(double t_final, double dt);

}  // namespace ttheat
