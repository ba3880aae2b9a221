#pragma once

#include <cstddef>
#include <vector>

#include "ttheat/grid.hpp"

namespace ttheat {

/// Denominators of the two one-sided quotients in the nonuniform second derivative.
enum class SecondDerivForm {
  consistent,  ///< center-to-center distance (variable), metric at the shared vertex (remapped)
  cell_steps,  ///< neighbouring cell steps (variable), metric at neighbouring centers (remapped)
};

/// Which distance multiplies which cell in the 1D vertex interpolation.
enum class InterpWeights {
  own_distance,  ///< each cell weighted by its own center-to-vertex distance
  opposite,    ///< each cell weighted by the other cell's distance (linear-exact)
};

struct StencilOptions {
  SecondDerivForm second_derivative = SecondDerivForm::consistent;
  InterpWeights interpolation = InterpWeights::own_distance;
};

/// One-dimensional coefficients of the dual-grid operators along one axis.
struct AxisStencil {
  /// First derivative on cell c: (U(c+1) - U(c)) * inv_step[c].
  std::vector<double> inv_step;
  /// Second derivative on cell c (1 <= c <= Nc-2):
  ///   0.5 * [(D(c+1) - D(c)) * d2_upper[c] + (D(c) - D(c-1)) * d2_lower[c]],
  /// D the first derivative. Zero on the first and last cell.
  std::vector<double> d2_upper;
  std::vector<double> d2_lower;
  /// Regular axes use the fused four-vertex form (U(c+2)-U(c+1)-U(c)+U(c-1)) / (2h^2).
  bool fused_second = false;
  double h = 0.0;
  /// Cross difference on cell c (1 <= c <= Nc-2): (D(c+1) - D(c-1)) * mixed_inv_span[c].
  std::vector<double> mixed_inv_span;
  /// Vertex v (1 <= v <= Nv-2) = interp_left[v] * C(v-1) + interp_right[v] * C(v); zero at the ends.
  std::vector<double> interp_left;
  std::vector<double> interp_right;
};

[[nodiscard]] AxisStencil axis_stencil(const GridAxis& ax, const StencilOptions& opt = {});

}  // namespace ttheat
