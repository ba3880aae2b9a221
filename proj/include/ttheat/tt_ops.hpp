#pragma once

#include <array>
#include <vector>

#include "ttheat/grid.hpp"
#include "ttheat/stencil.hpp"
#include "ttheat/tt_tensor.hpp"

namespace ttheat {

/// Sparse linear map acting on the mode index of a core: out(a,i',b) = sum_i M(i',i) in(a,i,b).
struct ModeMap {
  std::size_t n_in = 0;
  std::vector<std::vector<std::pair<std::size_t, double>>> rows;
};

[[nodiscard]] Core apply_mode_map(const Core& c, const ModeMap& m);

/// The ranks never change: the axis core is differenced, the other two averaged.
[[nodiscard]] TTTensor3 tt_deriv1_cell(const TTTensor3& uV, const Grid3& g, Axis axis,
                                       const StencilOptions& opt = {});

[[nodiscard]] TTTensor3 tt_deriv2_cell(const TTTensor3& uV, const Grid3& g, Axis axis,
                                       const StencilOptions& opt = {});

/// Sum of the three second derivatives, rounded at eps.
[[nodiscard]] TTTensor3 tt_laplacian_cell(const TTTensor3& uV, const Grid3& g, double eps,
                                          const StencilOptions& opt = {});

[[nodiscard]] TTTensor3 tt_interp_vertex(const TTTensor3& uC, const Grid3& g,
                                         const StencilOptions& opt = {});

[[nodiscard]] TTTensor3 tt_laplacian_vertex(const TTTensor3& uV, const Grid3& g, double eps,
                                            const StencilOptions& opt = {});

/// Per axis: 0 on boundary vertex layers, 1 on interior layers.
[[nodiscard]] std::array<std::vector<double>, 3> interior_mask(const Grid3& g);

/// Zeroes every boundary-layer vertex (rank-1 Hadamard with the interior mask).
[[nodiscard]] TTTensor3 tt_mask_interior(const TTTensor3& uV, const Grid3& g);

/// round(u.m + (b - b.m), eps): interior values from uV, boundary layers from `boundary`.
[[nodiscard]] TTTensor3 tt_set_dirichlet(const TTTensor3& uV, const Grid3& g,
                                         const TTTensor3& boundary, double eps);

// One-dimensional maps, exposed for the preconditioner and for tests.
[[nodiscard]] ModeMap average_map(std::size_t nv);
[[nodiscard]] ModeMap deriv1_map(const AxisStencil& s);
[[nodiscard]] ModeMap deriv2_map(const AxisStencil& s);
[[nodiscard]] ModeMap interp_map(const AxisStencil& s);

}  // namespace ttheat
