#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "ttheat/dense.hpp"
#include "ttheat/grid.hpp"
#include "ttheat/manufactured.hpp"
#include "ttheat/stepper.hpp"
#include "ttheat/tt_tensor.hpp"

namespace ttheat {

/// Vertex samples of phi and L phi for a manufactured case on a grid.
template <class Field>
struct CaseFields {
  Field phi;
  Field l_phi;
};

[[nodiscard]] CaseFields<DenseField3> dense_case_fields(const ManufacturedCase& c, const Grid3& g,
                                                        const CoordinateMetric& m);
/// Separable cases are assembled from rank-1 factors; the others are sampled and compressed
/// with build_from_full(eps, rank_cap). `diag` receives the compression diagnostics of phi.
[[nodiscard]] CaseFields<TTTensor3> tt_case_fields(const ManufacturedCase& c, const Grid3& g,
                                                   const CoordinateMetric& m, double eps,
                                                   std::optional<std::size_t> rank_cap = std::nullopt,
                                                   RoundDiagnostics* diag = nullptr);

/// forcing(t) = tau'(t) phi - tau(t) L phi, boundary(t) = tau(t) phi.
template <class Field>
[[nodiscard]] Problem<Field> make_problem(const ManufacturedCase& c, const CaseFields<Field>& f,
                                          double eps);

/// h^{3/2} ||uh - uex||_F over interior vertices, h the smallest physical step; the relative
/// variant divides by h^{3/2} ||uex||_F.
[[nodiscard]] double error_norm(const DenseField3& uh, const DenseField3& uex, const Grid3& g,
                                bool relative = false);

inline constexpr double kMissing = std::numeric_limits<double>::quiet_NaN();

struct LevelResult {
  std::size_t level = 0;
  std::size_t nc = 0;
  double h = kMissing;
  double dt = kMissing;
  double err_fg = kMissing;
  double rate_fg = kMissing;
  double err_tt = kMissing;
  double rate_tt = kMissing;
  double time_fg_s = kMissing;
  double time_tt_s = kMissing;
  double time_ratio = kMissing;
  double strg_fg = kMissing;
  double strg_tt = kMissing;
  double strg_ratio = kMissing;
  double max_rank = kMissing;
  // Not part of the table.
  std::vector<std::size_t> rank_history;
  std::size_t pcg_iterations = 0;
  bool pcg_converged = true;
};

struct RunReport {
  std::vector<LevelResult> levels;
  [[nodiscard]] bool pcg_converged() const;
};

/// Fills rate_* as log2(e_{previous} / e_current) and the time and storage ratios.
void finalize_report(RunReport& r);

struct ConsistencyOptions {
  Scenario scenario = Scenario::regular;
  std::vector<std::size_t> nc_list{20, 40, 80};
  Backend backend = Backend::both;
  double eps = 1e-10;
  StencilOptions stencil;
};

/// Residual of the vertex Laplacian on u1 against the exact operator, per level.
[[nodiscard]] RunReport consistency_study(const ConsistencyOptions& opt);

struct ConvergenceOptions {
  CaseId case_id = CaseId::u2;
  Scenario scenario = Scenario::regular;
  SolverConfig solver;        ///< dt and t_final describe the coarsest level
  std::size_t nc0 = 20;
  std::size_t levels = 2;
  /// Run only this many steps per level and extrapolate the wall time to the full horizon.
  std::optional<std::size_t> truncate_steps;
  std::size_t jobs = 1;
};

/// Time-step refinement per spatial halving: 4 for explicit Euler, 2 otherwise.
[[nodiscard]] double dt_refinement_factor(Scheme s);

/// Relative final-time errors per level. Throws DivergenceError naming the failing level.
[[nodiscard]] RunReport convergence_study(const ConvergenceOptions& opt);

struct EigenRow {
  std::size_t nc = 0;
  double dt = 0.0;
  double lambda_a = 0.0;
  double lambda_pa = 0.0;
  std::size_t iters_a = 0;
  std::size_t iters_pa = 0;
};

struct EigenOptions {
  Scenario scenario = Scenario::regular;
  std::vector<std::size_t> nc_list{20, 40};
  std::vector<double> dt_list{1.0, 0.1, 0.01};
  std::size_t max_iters = 3000;
  double tol = 1e-7;
  std::uint64_t seed = 1;
  StencilOptions stencil;
};

/// Largest eigenvalues of the heat operator and of the preconditioned operator.
[[nodiscard]] std::vector<EigenRow> eigen_study(const EigenOptions& opt);

enum class ReportFormat { csv, markdown };

void write_report(const RunReport& r, ReportFormat f, std::ostream& os);
/// Writes to `path`; throws ResourceError if the file cannot be written.
void emit_report(const RunReport& r, ReportFormat f, const std::string& path);
[[nodiscard]] RunReport parse_csv_report(std::istream& is);

void write_eigen_report(const std::vector<EigenRow>& rows, ReportFormat f, std::ostream& os);

}  // namespace ttheat
