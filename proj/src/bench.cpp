#include "ttheat/bench.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <future>
#include <istream>
#include <ostream>
#include <random>
#include <sstream>

#include "ttheat/errors.hpp"
#include "ttheat/fg_ops.hpp"
#include "ttheat/tt_ops.hpp"

namespace ttheat {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

std::vector<double> sample_axis(const GridAxis& ax, const Fn1& f) {
  std::vector<double> v(ax.num_vertices());
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = f(ax.vertices[i]);
  return v;
}

double vertex_count(const Grid3& g) {
  const auto s = g.vertex_shape();
  return static_cast<double>(s[0] * s[1] * s[2]);
}

}  // namespace

CaseFields<DenseField3> dense_case_fields(const ManufacturedCase& c, const Grid3& g,
                                          const CoordinateMetric& m) {
  return {sample_vertices(g, c.phi),
          sample_vertices(g, [&](double x, double y, double z) { return c.l_phi(x, y, z, m); })};
}

CaseFields<TTTensor3> tt_case_fields(const ManufacturedCase& c, const Grid3& g,
                                     const CoordinateMetric& m, double eps,
                                     std::optional<std::size_t> rank_cap, RoundDiagnostics* diag) {
  if (!c.factor) {
    const auto d = dense_case_fields(c, g, m);
    return {build_from_full(d.phi, eps, rank_cap, diag), build_from_full(d.l_phi, eps, rank_cap)};
  }
  const auto& [s, ds, d2s] = *c.factor;
  std::array<std::vector<double>, 3> f, lf;
  for (std::size_t a = 0; a < 3; ++a) {
    const auto& ax = g.axis(a);
    f[a] = sample_axis(ax, s);
    lf[a] = sample_axis(ax, [&](double x) {
      const double q = m.q(x);
      return q * q * d2s(x) + q * m.dq(x) * ds(x);
    });
  }
  const TTTensor3 phi = build_rank1(f[0], f[1], f[2], Centering::vertex);
  TTTensor3 l_phi = build_rank1(lf[0], f[1], f[2], Centering::vertex);
  l_phi = add(l_phi, build_rank1(f[0], lf[1], f[2], Centering::vertex));
  l_phi = add(l_phi, build_rank1(f[0], f[1], lf[2], Centering::vertex));
  if (diag) *diag = RoundDiagnostics{false, {1, 1}, {1, 1}};
  // Only discard directions that are parallel to round-off.
  return {phi, round(l_phi, 1e-14)};
}

template <class Field>
Problem<Field> make_problem(const ManufacturedCase& c, const CaseFields<Field>& f, double eps) {
  Problem<Field> p;
  p.forcing = [c, f, eps](double t) { return lincomb(c.dtau(t), f.phi, -c.tau(t), f.l_phi, eps); };
  p.boundary = [c, f](double t) { return lincomb(c.tau(t), f.phi, 0.0, f.phi, 0.0); };
  return p;
}

template <>
Problem<TTTensor3> make_problem(const ManufacturedCase& c, const CaseFields<TTTensor3>& f,
                                double eps) {
  Problem<TTTensor3> p;
  p.forcing = [c, f, eps](double t) { return round(axpby(c.dtau(t), f.phi, -c.tau(t), f.l_phi), eps); };
  p.boundary = [c, f](double t) { return scale(f.phi, c.tau(t)); };
  return p;
}

double error_norm(const DenseField3& uh, const DenseField3& uex, const Grid3& g, bool relative) {
  if (uh.shape() != uex.shape() || uh.shape() != g.vertex_shape())
    throw InvalidInput("error_norm: field shapes do not match the grid");
  const auto& [ax, ay, az] = g.axes;
  double diff = 0.0, ref = 0.0;
  for (std::size_t i = ax.interior_begin(); i < ax.interior_end(); ++i)
    for (std::size_t j = ay.interior_begin(); j < ay.interior_end(); ++j)
      for (std::size_t k = az.interior_begin(); k < az.interior_end(); ++k) {
        const double d = uh(i, j, k) - uex(i, j, k);
        diff += d * d;
        ref += uex(i, j, k) * uex(i, j, k);
      }
  const double w = std::pow(g.min_step(), 1.5);
  if (!relative) return w * std::sqrt(diff);
  if (ref == 0.0) throw InvalidInput("relative error of a zero reference");
  return std::sqrt(diff) / std::sqrt(ref);
}

bool RunReport::pcg_converged() const {
  for (const auto& l : levels)
    if (!l.pcg_converged) return false;
  return true;
}

void finalize_report(RunReport& r) {
  for (std::size_t i = 0; i < r.levels.size(); ++i) {
    auto& l = r.levels[i];
    if (i > 0) {
      const auto& p = r.levels[i - 1];
      l.rate_fg = std::log2(p.err_fg / l.err_fg);
      l.rate_tt = std::log2(p.err_tt / l.err_tt);
    }
    l.time_ratio = l.time_fg_s / l.time_tt_s;
    l.strg_ratio = l.strg_fg / l.strg_tt;
  }
}

RunReport consistency_study(const ConsistencyOptions& opt) {
  const auto c = manufactured(CaseId::u1);
  const auto metric = scenario_metric(opt.scenario);
  const bool fg = opt.backend != Backend::tt;
  const bool tt = opt.backend != Backend::fg;
  RunReport report;
  for (std::size_t l = 0; l < opt.nc_list.size(); ++l) {
    const Grid3 g = scenario_grid(opt.scenario, opt.nc_list[l]);
    const auto exact = dense_case_fields(c, g, metric);
    LevelResult row;
    row.level = l;
    row.nc = opt.nc_list[l];
    row.h = g.min_step();
    row.strg_fg = vertex_count(g);
    if (fg) {
      const auto t0 = Clock::now();
      const DenseField3 lap = laplacian_vertex(exact.phi, g, opt.stencil);
      row.time_fg_s = seconds_since(t0);
      row.err_fg = error_norm(lap, exact.l_phi, g);
    }
    if (tt) {
      const auto fields = tt_case_fields(c, g, metric, opt.eps);
      const auto t0 = Clock::now();
      const TTTensor3 lap = tt_laplacian_vertex(fields.phi, g, opt.eps, opt.stencil);
      row.time_tt_s = seconds_since(t0);
      row.err_tt = error_norm(to_full(lap), exact.l_phi, g);
      row.strg_tt = static_cast<double>(lap.storage());
      row.max_rank = static_cast<double>(lap.max_rank());
      row.rank_history = {lap.max_rank()};
    }
    report.levels.push_back(std::move(row));
  }
  finalize_report(report);
  return report;
}

double dt_refinement_factor(Scheme s) { return s == Scheme::explicit_euler ? 4.0 : 2.0; }

namespace {

template <class Field>
void record_steps(const SimulationResult<Field>& sim, LevelResult& row) {
  for (const auto& s : sim.steps) {
    row.pcg_iterations += s.pcg_iterations;
    row.pcg_converged = row.pcg_converged && s.pcg_converged;
  }
}

LevelResult run_level(const ConvergenceOptions& opt, std::size_t level) {
  const auto c = manufactured(opt.case_id);
  const auto metric = scenario_metric(opt.scenario);
  const std::size_t nc = opt.nc0 << level;
  const Grid3 g = scenario_grid(opt.scenario, nc);
  SolverConfig cfg = opt.solver;
  cfg.dt = opt.solver.dt / std::pow(dt_refinement_factor(cfg.scheme), static_cast<double>(level));
  const std::size_t full_steps = step_count(opt.solver.t_final, cfg.dt);
  std::size_t steps = full_steps;
  if (opt.truncate_steps) steps = std::min(steps, *opt.truncate_steps);
  cfg.t_final = static_cast<double>(steps) * cfg.dt;
  const double extrapolation = steps == 0 ? 1.0 : static_cast<double>(full_steps) / static_cast<double>(steps);

  LevelResult row;
  row.level = level;
  row.nc = nc;
  row.h = g.min_step();
  row.dt = cfg.dt;
  row.strg_fg = vertex_count(g);
  const auto dense = dense_case_fields(c, g, metric);
  const DenseField3 exact = lincomb(c.tau(cfg.t_final), dense.phi, 0.0, dense.phi, 0.0);

  try {
    if (cfg.backend != Backend::tt) {
      const auto prob = make_problem(c, dense, cfg.eps_round);
      const DenseField3 u0 = lincomb(c.tau(0.0), dense.phi, 0.0, dense.phi, 0.0);
      const auto t0 = Clock::now();
      const auto sim = run_simulation(u0, g, prob, cfg);
      row.time_fg_s = seconds_since(t0) * extrapolation;
      row.err_fg = error_norm(sim.u, exact, g, true);
      record_steps(sim, row);
    }
    if (cfg.backend != Backend::fg) {
      const auto fields = tt_case_fields(c, g, metric, cfg.eps_round, cfg.initial_rank_cap);
      const auto prob = make_problem(c, fields, cfg.eps_round);
      const TTTensor3 u0 = scale(fields.phi, c.tau(0.0));
      const auto t0 = Clock::now();
      const auto sim = run_simulation(u0, g, prob, cfg);
      row.time_tt_s = seconds_since(t0) * extrapolation;
      row.err_tt = error_norm(to_full(sim.u), exact, g, true);
      row.strg_tt = static_cast<double>(sim.u.storage());
      std::size_t mr = sim.u.max_rank();
      for (const auto& s : sim.steps) {
        row.rank_history.push_back(s.max_rank);
        mr = std::max(mr, s.max_rank);
      }
      row.max_rank = static_cast<double>(mr);
      record_steps(sim, row);
    }
  } catch (const DivergenceError& e) {
    throw DivergenceError("level " + std::to_string(level) + " (Nc = " + std::to_string(nc) +
                          "): " + e.what());
  }
  return row;
}

}  // namespace

RunReport convergence_study(const ConvergenceOptions& opt) {
  opt.solver.validate();
  RunReport report;
  if (opt.jobs <= 1) {
    for (std::size_t l = 0; l < opt.levels; ++l) report.levels.push_back(run_level(opt, l));
  } else {
    std::vector<std::future<LevelResult>> pending;
    for (std::size_t l = 0; l < opt.levels; ++l)
      pending.push_back(std::async(std::launch::async, run_level, std::cref(opt), l));
    for (auto& f : pending) report.levels.push_back(f.get());
  }
  finalize_report(report);
  return report;
}

std::vector<EigenRow> eigen_study(const EigenOptions& opt) {
  std::vector<EigenRow> rows;
  for (std::size_t nc : opt.nc_list) {
    const Grid3 g = scenario_grid(opt.scenario, nc);
    std::mt19937_64 rng(opt.seed);
    std::uniform_real_distribution<double> dist(-1.0, 1.0);
    DenseField3 start(g.vertex_shape(), Centering::vertex);
    for (double& v : start.values.values()) v = dist(rng);
    start = mask_interior(start, g);
    for (double dt : opt.dt_list) {
      const std::function<DenseField3(const DenseField3&)> a = [&](const DenseField3& v) {
        return heat_matvec(v, g, dt, 0.0, opt.stencil);
      };
      const std::function<DenseField3(const DenseField3&)> pa = [&](const DenseField3& v) {
        return precond_apply(heat_matvec(v, g, dt, 0.0, opt.stencil), g, dt);
      };
      const auto ra = power_method_lambda_max(a, start, opt.max_iters, opt.tol);
      const auto rp = power_method_lambda_max(pa, start, opt.max_iters, opt.tol);
      rows.push_back({nc, dt, ra.lambda, rp.lambda, ra.iterations, rp.iterations});
    }
  }
  return rows;
}

// ---- report output ----

namespace {

constexpr const char* kColumns[] = {"level",     "Nc",        "h",          "dt",      "err_fg",
                                    "rate_fg",   "err_tt",    "rate_tt",    "time_fg_s",
                                    "time_tt_s", "time_ratio", "strg_fg",   "strg_tt",
                                    "strg_ratio", "max_rank"};
constexpr std::size_t kNumColumns = std::size(kColumns);

std::string format_number(double v, const char* fmt) {
  if (!std::isfinite(v)) return "";
  char buf[64];
  std::snprintf(buf, sizeof buf, fmt, v);
  return buf;
}

std::array<double, kNumColumns> row_values(const LevelResult& l) {
  return {static_cast<double>(l.level), static_cast<double>(l.nc), l.h, l.dt, l.err_fg, l.rate_fg,
          l.err_tt, l.rate_tt, l.time_fg_s, l.time_tt_s, l.time_ratio, l.strg_fg, l.strg_tt,
          l.strg_ratio, l.max_rank};
}

}  // namespace

void write_report(const RunReport& r, ReportFormat f, std::ostream& os) {
  if (f == ReportFormat::csv) {
    for (std::size_t c = 0; c < kNumColumns; ++c) os << (c ? "," : "") << kColumns[c];
    os << '\n';
    for (const auto& l : r.levels) {
      const auto v = row_values(l);
      for (std::size_t c = 0; c < kNumColumns; ++c) os << (c ? "," : "") << format_number(v[c], "%.17g");
      os << '\n';
    }
    return;
  }
  os << '|';
  for (const char* c : kColumns) os << ' ' << c << " |";
  os << "\n|";
  for (std::size_t c = 0; c < kNumColumns; ++c) os << "---|";
  os << '\n';
  for (const auto& l : r.levels) {
    const auto v = row_values(l);
    os << '|';
    for (std::size_t c = 0; c < kNumColumns; ++c) {
      const std::string s = format_number(v[c], c < 2 ? "%.0f" : "%.4g");
      os << ' ' << (s.empty() ? "-" : s) << " |";
    }
    os << '\n';
  }
}

void emit_report(const RunReport& r, ReportFormat f, const std::string& path) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw ResourceError("cannot open '" + path + "' for writing");
  write_report(r, f, os);
  if (!os) throw ResourceError("failed writing '" + path + "'");
}

RunReport parse_csv_report(std::istream& is) {
  std::string line;
  if (!std::getline(is, line)) throw InvalidInput("empty report");
  {
    std::stringstream header(line);
    std::string col;
    for (std::size_t c = 0; c < kNumColumns; ++c)
      if (!std::getline(header, col, ',') || col != kColumns[c])
        throw InvalidInput("unexpected report header");
  }
  RunReport r;
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    std::array<double, kNumColumns> v;
    std::size_t start = 0;
    for (std::size_t c = 0; c < kNumColumns; ++c) {
      const std::size_t end = line.find(',', start);
      const std::string cell = line.substr(start, end == std::string::npos ? std::string::npos : end - start);
      v[c] = cell.empty() ? kMissing : std::stod(cell);
      if (end == std::string::npos && c + 1 < kNumColumns) throw InvalidInput("short report row");
      start = end + 1;
    }
    LevelResult l;
    l.level = static_cast<std::size_t>(v[0]);
    l.nc = static_cast<std::size_t>(v[1]);
    l.h = v[2];
    l.dt = v[3];
    l.err_fg = v[4];
    l.rate_fg = v[5];
    l.err_tt = v[6];
    l.rate_tt = v[7];
    l.time_fg_s = v[8];
    l.time_tt_s = v[9];
    l.time_ratio = v[10];
    l.strg_fg = v[11];
    l.strg_tt = v[12];
    l.strg_ratio = v[13];
    l.max_rank = v[14];
    r.levels.push_back(std::move(l));
  }
  return r;
}

void write_eigen_report(const std::vector<EigenRow>& rows, ReportFormat f, std::ostream& os) {
  if (f == ReportFormat::csv) {
    os << "Nc,dt,lambda_max_A,lambda_max_PinvA,iters_A,iters_PinvA\n";
    for (const auto& r : rows)
      os << r.nc << ',' << format_number(r.dt, "%.17g") << ',' << format_number(r.lambda_a, "%.17g")
         << ',' << format_number(r.lambda_pa, "%.17g") << ',' << r.iters_a << ',' << r.iters_pa << '\n';
    return;
  }
  os << "| Nc | dt | lambda_max(A) | lambda_max(P^-1 A) |\n|---|---|---|---|\n";
  for (const auto& r : rows)
    os << "| " << r.nc << " | " << format_number(r.dt, "%g") << " | "
       << format_number(r.lambda_a, "%.6g") << " | " << format_number(r.lambda_pa, "%.6g") << " |\n";
}

template Problem<DenseField3> make_problem(const ManufacturedCase&, const CaseFields<DenseField3>&, double);

}  // namespace ttheat
