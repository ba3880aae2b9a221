#include "ttheat/stencil.hpp"

namespace ttheat {

AxisStencil axis_stencil(const GridAxis& ax, const StencilOptions& opt) {
  const std::size_t nc = ax.num_cells();
  const std::size_t nv = ax.num_vertices();
  const bool cell_steps = opt.second_derivative == SecondDerivForm::cell_steps;
  AxisStencil s;
  s.h = ax.h;
  s.fused_second = ax.kind == AxisKind::regular;
  s.inv_step.resize(nc);
  s.d2_upper.assign(nc, 0.0);
  s.d2_lower.assign(nc, 0.0);
  s.mixed_inv_span.assign(nc, 0.0);
  s.interp_left.assign(nv, 0.0);
  s.interp_right.assign(nv, 0.0);

  for (std::size_t c = 0; c < nc; ++c) {
    switch (ax.kind) {
      case AxisKind::regular: s.inv_step[c] = 1.0 / ax.h; break;
      case AxisKind::variable: s.inv_step[c] = 1.0 / ax.cell_steps[c]; break;
      case AxisKind::remapped: s.inv_step[c] = 1.0 / ((*ax.metric_at_centers)[c] * ax.h); break;
    }
  }

  for (std::size_t c = 1; c + 1 < nc; ++c) {
    switch (ax.kind) {
      case AxisKind::regular:
        s.d2_upper[c] = s.d2_lower[c] = 1.0 / ax.h;
        break;
      case AxisKind::variable:
        if (cell_steps) {
          s.d2_upper[c] = 1.0 / ax.cell_steps[c + 1];
          s.d2_lower[c] = 1.0 / ax.cell_steps[c];
        } else {
          s.d2_upper[c] = 1.0 / (ax.centers[c + 1] - ax.centers[c]);
          s.d2_lower[c] = 1.0 / (ax.centers[c] - ax.centers[c - 1]);
        }
        break;
      case AxisKind::remapped: {
        const auto& m = cell_steps ? *ax.metric_at_centers : *ax.metric_at_vertices;
        // Centers c+1, c for cell_steps; the shared vertices c+1, c otherwise.
        s.d2_upper[c] = 1.0 / (m[c + 1] * ax.h);
        s.d2_lower[c] = 1.0 / (m[c] * ax.h);
        break;
      }
    }
  }

  for (std::size_t c = 1; c + 1 < nc; ++c) {
    if (ax.kind == AxisKind::remapped)
      s.mixed_inv_span[c] = 1.0 / ((*ax.metric_at_centers)[c] * 2.0 * ax.h);
    else
      s.mixed_inv_span[c] = 1.0 / (ax.centers[c + 1] - ax.centers[c - 1]);
  }

  for (std::size_t v = 1; v + 1 < nv; ++v) {
    double dl = 0.0, dr = 0.0;  // distances belonging to cells v-1 and v
    switch (ax.kind) {
      case AxisKind::regular:
        dl = dr = 1.0;
        break;
      case AxisKind::variable:
        dl = ax.vertices[v] - ax.centers[v - 1];
        dr = ax.centers[v] - ax.vertices[v];
        break;
      case AxisKind::remapped: {
        const auto& mc = *ax.metric_at_centers;
        const auto& mv = *ax.metric_at_vertices;
        dl = (mv[v] - mc[v - 1]) * ax.h;
        dr = (mc[v] - mv[v]) * ax.h;
        break;
      }
    }
    const double sum = dl + dr;
    if (sum == 0.0) {
      // Constant metric: both distances vanish and the rule degenerates to the midpoint average.
      s.interp_left[v] = s.interp_right[v] = 0.5;
    } else if (opt.interpolation == InterpWeights::own_distance) {
      s.interp_left[v] = dl / sum;
      s.interp_right[v] = dr / sum;
    } else {
      s.interp_left[v] = dr / sum;
      s.interp_right[v] = dl / sum;
    }
  }
  return s;
}

}  // namespace ttheat
