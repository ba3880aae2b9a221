#pragma once

#include <functional>

#include "ttheat/dense.hpp"
#include "ttheat/grid.hpp"
#include "ttheat/stencil.hpp"

namespace ttheat {

using BoundaryFunction = std::function<double(double, double, double, double)>;

/// Forward difference along `axis` averaged over the four cell edges parallel to it.
/// Defined on every cell of the ghost-extended grid.
[[nodiscard]] DenseField3 deriv1_cell(const DenseField3& uV, const Grid3& g, Axis axis,
                                      const StencilOptions& opt = {});

/// Second derivative along `axis` on cells; zero on the first and last cell along the axis.
[[nodiscard]] DenseField3 deriv2_cell(const DenseField3& uV, const Grid3& g, Axis axis,
                                      const StencilOptions& opt = {});

/// Symmetrized cross difference of first derivatives; identical for (a,b) and (b,a).
/// Zero on cells within one layer of the grid edge in either direction.
[[nodiscard]] DenseField3 mixed2_cell(const DenseField3& uV, const Grid3& g, Axis a, Axis b,
                                      const StencilOptions& opt = {});

[[nodiscard]] DenseField3 laplacian_cell(const DenseField3& uV, const Grid3& g,
                                         const StencilOptions& opt = {});

/// Tensor-product 1D interpolation from the eight surrounding cells. Vertex v uses cells v-1
/// and v along each axis; the outermost vertex layers have no such pair and are set to zero.
[[nodiscard]] DenseField3 interp_vertex(const DenseField3& uC, const Grid3& g,
                                        const StencilOptions& opt = {});

[[nodiscard]] DenseField3 laplacian_vertex(const DenseField3& uV, const Grid3& g,
                                           const StencilOptions& opt = {});

/// Boundary-layer vertices receive gfun(x, y, z, t); interior vertices are unchanged.
[[nodiscard]] DenseField3 set_dirichlet(const DenseField3& uV, const Grid3& g,
                                        const BoundaryFunction& gfun, double t);

/// Boundary-layer vertices copied from `boundary`, interior from `uV`.
[[nodiscard]] DenseField3 set_dirichlet(const DenseField3& uV, const Grid3& g,
                                        const DenseField3& boundary);

/// Zeroes every boundary-layer vertex.
[[nodiscard]] DenseField3 mask_interior(const DenseField3& uV, const Grid3& g);

/// Samples f(x, y, z) on all vertices (including ghosts).
[[nodiscard]] DenseField3 sample_vertices(const Grid3& g,
                                          const std::function<double(double, double, double)>& f);

}  // namespace ttheat
