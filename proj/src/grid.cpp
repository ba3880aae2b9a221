#include "ttheat/grid.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "ttheat/errors.hpp"

namespace ttheat {

namespace {

void fill_derived(GridAxis& ax) {
  const std::size_t nc = ax.vertices.size() - 1;
  ax.cell_steps.resize(nc);
  ax.centers.resize(nc);
  for (std::size_t i = 0; i < nc; ++i) {
    ax.cell_steps[i] = ax.vertices[i + 1] - ax.vertices[i];
    ax.centers[i] = 0.5 * (ax.vertices[i] + ax.vertices[i + 1]);
    if (!(ax.cell_steps[i] > 0.0)) throw InvalidInput("grid vertices must be strictly increasing");
  }
}

std::vector<double> equispaced(double a, double b, std::size_t nc, std::size_t g) {
  const double h = (b - a) / static_cast<double>(nc);
  std::vector<double> v(nc + 2 * g + 1);
  for (std::size_t i = 0; i < v.size(); ++i)
    v[i] = a + (static_cast<double>(i) - static_cast<double>(g)) * h;
  // Pin the physical end point so that nc*h = b - a holds exactly at the boundary.
  v[g + nc] = b;
  return v;
}

}  // namespace

double GridAxis::min_step() const noexcept {
  double m = cell_steps[n_ghost];
  for (std::size_t i = n_ghost; i < num_cells() - n_ghost; ++i) m = std::min(m, cell_steps[i]);
  return m;
}

GridAxis regular_axis(double a, double b, std::size_t nc, std::size_t n_ghost) {
  if (!(a < b)) throw InvalidInput("regular_axis requires a < b");
  if (nc == 0) throw InvalidInput("regular_axis requires at least one cell");
  GridAxis ax;
  ax.kind = AxisKind::regular;
  ax.n_ghost = n_ghost;
  ax.h = (b - a) / static_cast<double>(nc);
  ax.vertices = equispaced(a, b, nc, n_ghost);
  fill_derived(ax);
  return ax;
}

GridAxis geometric_axis(double a, double h0, double ratio, std::size_t nc, std::size_t n_ghost) {
  if (!(h0 > 0.0) || !(ratio > 0.0)) throw InvalidInput("geometric_axis requires h0 > 0 and ratio > 0");
  if (nc == 0) throw InvalidInput("geometric_axis requires at least one cell");
  GridAxis ax;
  ax.kind = AxisKind::variable;
  ax.n_ghost = n_ghost;
  const std::size_t total = nc + 2 * n_ghost;
  ax.vertices.assign(total + 1, 0.0);
  ax.vertices[n_ghost] = a;
  // Physical cell c = i - n_ghost has step h0 * ratio^c, for negative c as well.
  auto step = [&](std::size_t i) {
    return h0 * std::pow(ratio, static_cast<double>(i) - static_cast<double>(n_ghost));
  };
  for (std::size_t i = n_ghost; i < total; ++i) ax.vertices[i + 1] = ax.vertices[i] + step(i);
  for (std::size_t i = n_ghost; i-- > 0;) ax.vertices[i] = ax.vertices[i + 1] - step(i);
  fill_derived(ax);
  return ax;
}

GridAxis remapped_axis(double a, double b, std::size_t nc, std::size_t n_ghost,
                       const std::function<double(double)>& metric) {
  GridAxis ax = regular_axis(a, b, nc, n_ghost);
  ax.kind = AxisKind::remapped;
  std::vector<double> mc(ax.centers.size()), mv(ax.vertices.size());
  auto sample = [&](double x) {
    const double m = metric(x);
    if (!(m > 0.0) || !std::isfinite(m))
      throw SingularMap("coordinate map derivative is not positive at x = " + std::to_string(x));
    return m;
  };
  for (std::size_t i = 0; i < mc.size(); ++i) mc[i] = sample(ax.centers[i]);
  for (std::size_t i = 0; i < mv.size(); ++i) mv[i] = sample(ax.vertices[i]);
  ax.metric_at_centers = std::move(mc);
  ax.metric_at_vertices = std::move(mv);
  return ax;
}

Grid3::Grid3(std::array<GridAxis, 3> a) : axes(std::move(a)), n_ghost(axes[0].n_ghost) {
  for (const auto& ax : axes) {
    if (ax.n_ghost != n_ghost) throw InvalidInput("all grid axes must share the ghost count");
    if (ax.vertices.size() < 2 * n_ghost + 3)
      throw InvalidInput("grid axis has no interior vertices");
    if (ax.kind == AxisKind::remapped && (!ax.metric_at_centers || !ax.metric_at_vertices))
      throw InvalidInput("remapped axis is missing metric samples");
  }
}

std::array<std::size_t, 3> Grid3::vertex_shape() const noexcept {
  return {axes[0].num_vertices(), axes[1].num_vertices(), axes[2].num_vertices()};
}

std::array<std::size_t, 3> Grid3::cell_shape() const noexcept {
  return {axes[0].num_cells(), axes[1].num_cells(), axes[2].num_cells()};
}

double Grid3::min_step() const noexcept {
  return std::min({axes[0].min_step(), axes[1].min_step(), axes[2].min_step()});
}

}  // namespace ttheat
