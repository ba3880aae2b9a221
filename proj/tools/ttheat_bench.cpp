#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "ttheat/bench.hpp"
#include "ttheat/errors.hpp"

namespace {

using namespace ttheat;

constexpr int kExitDivergence = 2;
constexpr int kExitPcg = 3;
constexpr int kExitUsage = 64;

// Horizons and grids beyond these need --full.
constexpr double kDeskHorizon = 0.1;
constexpr std::size_t kDeskNc = 80;

struct Args {
  std::string scenario = "regular";
  std::string case_id = "u2";
  std::string scheme = "explicit";
  std::string backend = "both";
  std::vector<std::size_t> nc;
  std::size_t levels = 2;
  double dt0 = 1e-4;
  std::vector<double> dt_list{1.0, 0.1, 0.01};
  double t_final = 1e-2;
  std::optional<double> eps;
  std::optional<std::size_t> rank_cap;
  double pcg_tol = 1e-8;
  std::size_t pcg_maxiter = 500;
  std::string out;
  std::string format = "csv";
  std::uint64_t seed = 1;
  std::optional<std::size_t> extrapolate;
  std::string bc_time = "as_printed";
  std::string preconditioner = "split";
  std::string deriv2_form = "consistent";
  std::string interp_weights = "own_distance";
  std::string rank_log;
  std::size_t jobs = 1;
  bool full = false;
};

template <class E>
E lookup(const std::map<std::string, E>& m, const std::string& key) {
  return m.at(key);
}

StencilOptions stencil_options(const Args& a) {
  StencilOptions s;
  s.second_derivative = lookup<SecondDerivForm>(
      {{"consistent", SecondDerivForm::consistent}, {"cell_steps", SecondDerivForm::cell_steps}},
      a.deriv2_form);
  s.interpolation = lookup<InterpWeights>(
      {{"own_distance", InterpWeights::own_distance}, {"opposite", InterpWeights::opposite}},
      a.interp_weights);
  return s;
}

Backend backend_of(const Args& a) {
  return lookup<Backend>({{"fg", Backend::fg}, {"tt", Backend::tt}, {"both", Backend::both}}, a.backend);
}

void check_desk_scale(const Args& a, std::size_t finest_nc, double horizon) {
  if (a.full) return;
  if (finest_nc > kDeskNc)
    throw InvalidInput("Nc = " + std::to_string(finest_nc) + " exceeds the desk-scale limit; pass --full");
  if (horizon > kDeskHorizon) throw InvalidInput("horizon beyond the desk-scale limit; pass --full");
}

// Writes to --out, or to stdout when no path is given.
template <class Writer>
void emit(const Args& a, Writer&& write) {
  if (a.out.empty()) {
    write(std::cout);
    return;
  }
  std::ofstream os(a.out, std::ios::binary);
  if (!os) throw ResourceError("cannot open '" + a.out + "' for writing");
  write(os);
}

ReportFormat format_of(const Args& a) {
  return a.format == "csv" ? ReportFormat::csv : ReportFormat::markdown;
}

void write_rank_log(const Args& a, const RunReport& r) {
  if (a.rank_log.empty()) return;
  std::ofstream os(a.rank_log);
  if (!os) throw ResourceError("cannot open '" + a.rank_log + "' for writing");
  os << "level,step,max_rank\n";
  for (const auto& l : r.levels)
    for (std::size_t s = 0; s < l.rank_history.size(); ++s)
      os << l.level << ',' << s + 1 << ',' << l.rank_history[s] << '\n';
}

int run_consistency(const Args& a) {
  ConsistencyOptions opt;
  opt.scenario = parse_scenario(a.scenario);
  if (!a.nc.empty()) opt.nc_list = a.nc;
  opt.backend = backend_of(a);
  if (a.eps) opt.eps = *a.eps;
  opt.stencil = stencil_options(a);
  std::size_t finest = 0;
  for (std::size_t n : opt.nc_list) finest = std::max(finest, n);
  check_desk_scale(a, finest, 0.0);
  const RunReport r = consistency_study(opt);
  emit(a, [&](std::ostream& os) { write_report(r, format_of(a), os); });
  write_rank_log(a, r);
  return 0;
}

int run_converge(const Args& a) {
  ConvergenceOptions opt;
  opt.case_id = parse_case(a.case_id);
  opt.scenario = parse_scenario(a.scenario);
  if (!a.nc.empty()) opt.nc0 = a.nc.front();
  opt.levels = a.levels;
  opt.jobs = a.jobs;
  opt.truncate_steps = a.extrapolate;
  SolverConfig& s = opt.solver;
  s.scheme = lookup<Scheme>({{"explicit", Scheme::explicit_euler},
                             {"implicit", Scheme::implicit_euler},
                             {"cn", Scheme::crank_nicolson}},
                            a.scheme);
  s.dt = a.dt0;
  s.t_final = a.t_final;
  s.eps_round = a.eps.value_or(opt.case_id == CaseId::u3 ? 1e-7 : 1e-4);
  s.pcg_tol = a.pcg_tol;
  s.pcg_maxiter = a.pcg_maxiter;
  s.backend = backend_of(a);
  s.initial_rank_cap = a.rank_cap;
  s.bc_time_convention = lookup<BcTimeConvention>(
      {{"as_printed", BcTimeConvention::as_printed}, {"target_time", BcTimeConvention::target_time}},
      a.bc_time);
  s.preconditioner = lookup<Preconditioner>(
      {{"none", Preconditioner::none}, {"split", Preconditioner::dimension_split}}, a.preconditioner);
  s.stencil = stencil_options(a);
  s.validate();
  if (opt.levels == 0) throw InvalidInput("--levels must be positive");
  check_desk_scale(a, opt.nc0 << (opt.levels - 1), s.t_final);
  const RunReport r = convergence_study(opt);
  emit(a, [&](std::ostream& os) { write_report(r, format_of(a), os); });
  write_rank_log(a, r);
  if (!r.pcg_converged()) {
    std::cerr << "error: PCG did not converge in at least one level\n";
    return kExitPcg;
  }
  return 0;
}

int run_eigen(const Args& a) {
  EigenOptions opt;
  opt.scenario = parse_scenario(a.scenario);
  if (!a.nc.empty()) opt.nc_list = a.nc;
  opt.dt_list = a.dt_list;
  opt.seed = a.seed;
  opt.stencil = stencil_options(a);
  std::size_t finest = 0;
  for (std::size_t n : opt.nc_list) finest = std::max(finest, n);
  check_desk_scale(a, finest, 0.0);
  const auto rows = eigen_study(opt);
  emit(a, [&](std::ostream& os) { write_eigen_report(rows, format_of(a), os); });
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Tensor-train and full-grid heat equation benchmarks"};
  app.set_config("--config", "", "key=value file; command-line flags take precedence");
  app.require_subcommand(1);
  app.fallthrough();

  Args a;
  app.add_option("--scenario", a.scenario, "Grid scenario")
      ->check(CLI::IsMember({"regular", "variable", "remapped"}));
  app.add_option("--case", a.case_id, "Manufactured solution")->check(CLI::IsMember({"u1", "u2", "u3"}));
  app.add_option("--scheme", a.scheme, "Time integrator")
      ->check(CLI::IsMember({"explicit", "implicit", "cn"}));
  app.add_option("--backend", a.backend, "Field representation")
      ->check(CLI::IsMember({"fg", "tt", "both"}));
  app.add_option("--nc", a.nc, "Cell counts (consistency, eigen) or the coarsest count (converge)")
      ->delimiter(',')
      ->check(CLI::PositiveNumber);
  app.add_option("--levels", a.levels, "Refinement levels")->check(CLI::PositiveNumber);
  app.add_option("--dt0", a.dt0, "Time step on the coarsest level")->check(CLI::PositiveNumber);
  app.add_option("--dt-list", a.dt_list, "Time steps for the eigenvalue study")->delimiter(',');
  app.add_option("--t-final", a.t_final, "Final time")->check(CLI::NonNegativeNumber);
  app.add_option("--eps", a.eps, "TT rounding tolerance (default 1e-4, or 1e-7 for u3)")
      ->check(CLI::PositiveNumber);
  app.add_option("--rank-cap", a.rank_cap, "Rank cap for the compressed problem data")
      ->check(CLI::PositiveNumber);
  app.add_option("--pcg-tol", a.pcg_tol, "Relative PCG tolerance")->check(CLI::PositiveNumber);
  app.add_option("--pcg-maxiter", a.pcg_maxiter, "PCG iteration limit")->check(CLI::PositiveNumber);
  app.add_option("--out", a.out, "Output path (stdout if omitted)");
  app.add_option("--format", a.format, "Table format")->check(CLI::IsMember({"csv", "markdown"}));
  app.add_option("--seed", a.seed, "Seed for the power-method start vector");
  app.add_option("--extrapolate", a.extrapolate,
                 "Run this many steps per level and scale the wall time to the full horizon")
      ->check(CLI::PositiveNumber);
  app.add_option("--bc-time-convention", a.bc_time, "Time of the Dirichlet data in implicit solves")
      ->check(CLI::IsMember({"as_printed", "target_time"}));
  app.add_option("--preconditioner", a.preconditioner, "PCG preconditioner")
      ->check(CLI::IsMember({"none", "split"}));
  app.add_option("--deriv2-form", a.deriv2_form, "Second-difference denominators on non-uniform axes")
      ->check(CLI::IsMember({"consistent", "cell_steps"}));
  app.add_option("--interp-weights", a.interp_weights, "Cell-to-vertex interpolation weights")
      ->check(CLI::IsMember({"own_distance", "opposite"}));
  app.add_option("--rank-log", a.rank_log, "Write the per-step TT rank history to this CSV");
  app.add_option("--jobs", a.jobs, "Refinement levels run concurrently")->check(CLI::PositiveNumber);
  app.add_flag("--full", a.full, "Allow grids and horizons beyond desk scale");

  auto* consistency = app.add_subcommand("consistency", "Laplacian consistency study on u1");
  auto* converge = app.add_subcommand("converge", "Space-time convergence study");
  auto* eigen = app.add_subcommand("eigen", "Largest eigenvalues of A and of the preconditioned A");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (consistency->parsed()) return run_consistency(a);
    if (converge->parsed()) return run_converge(a);
    if (eigen->parsed()) return run_eigen(a);
  } catch (const InvalidInput& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const DivergenceError& e) {
    std::cerr << "error: divergence: " << e.what() << '\n';
    return kExitDivergence;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return kExitUsage;
}
