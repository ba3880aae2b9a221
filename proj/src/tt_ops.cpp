#include "ttheat/tt_ops.hpp"

#include "ttheat/errors.hpp"

namespace ttheat {

namespace {

void require_modes(const TTTensor3& u, const Shape3& expected, Centering c, const char* what) {
  if (u.mode_sizes() != expected) throw InvalidInput(std::string(what) + " does not match the grid");
  if (u.centering() != c) throw InvalidInput(std::string(what) + " has the wrong centering");
}

}  // namespace

Core apply_mode_map(const Core& c, const ModeMap& m) {
  if (m.n_in != c.mode()) throw InvalidInput("mode map size does not match the core");
  const std::size_t r0 = c.left_rank();
  const std::size_t r1 = c.right_rank();
  Core out(r0, m.rows.size(), r1);
  for (std::size_t a = 0; a < r0; ++a)
    for (std::size_t o = 0; o < m.rows.size(); ++o) {
      double* dst = &out(a, o, 0);
      for (const auto& [i, w] : m.rows[o]) {
        const double* src = c.array().data() + c.array().offset(a, i, 0);
        for (std::size_t b = 0; b < r1; ++b) dst[b] += w * src[b];
      }
    }
  return out;
}

ModeMap average_map(std::size_t nv) {
  ModeMap m{nv, std::vector<std::vector<std::pair<std::size_t, double>>>(nv - 1)};
  for (std::size_t c = 0; c + 1 < nv; ++c) m.rows[c] = {{c, 0.5}, {c + 1, 0.5}};
  return m;
}

ModeMap deriv1_map(const AxisStencil& s) {
  const std::size_t nc = s.inv_step.size();
  ModeMap m{nc + 1, std::vector<std::vector<std::pair<std::size_t, double>>>(nc)};
  for (std::size_t c = 0; c < nc; ++c) m.rows[c] = {{c, -s.inv_step[c]}, {c + 1, s.inv_step[c]}};
  return m;
}

ModeMap deriv2_map(const AxisStencil& s) {
  const std::size_t nc = s.inv_step.size();
  ModeMap m{nc + 1, std::vector<std::vector<std::pair<std::size_t, double>>>(nc)};
  if (s.fused_second) {
    const double w = 1.0 / (2.0 * s.h * s.h);
    for (std::size_t c = 1; c + 1 < nc; ++c)
      m.rows[c] = {{c - 1, w}, {c, -w}, {c + 1, -w}, {c + 2, w}};
    return m;
  }
  // Half-sum of the one-sided quotients of the first derivative, expanded to vertices.
  for (std::size_t c = 1; c + 1 < nc; ++c) {
    const double up = 0.5 * s.d2_upper[c];
    const double lo = 0.5 * s.d2_lower[c];
    const double dm = s.inv_step[c - 1], d0 = s.inv_step[c], dp = s.inv_step[c + 1];
    // up*(D(c+1) - D(c)) + lo*(D(c) - D(c-1)), D(k) = (U(k+1) - U(k)) * inv_step[k]
    m.rows[c] = {{c - 1, lo * dm},
                 {c, -lo * dm + (up - lo) * d0},
                 {c + 1, -(up - lo) * d0 - up * dp},
                 {c + 2, up * dp}};
  }
  return m;
}

ModeMap interp_map(const AxisStencil& s) {
  const std::size_t nv = s.interp_left.size();
  ModeMap m{nv - 1, std::vector<std::vector<std::pair<std::size_t, double>>>(nv)};
  for (std::size_t v = 1; v + 1 < nv; ++v)
    m.rows[v] = {{v - 1, s.interp_left[v]}, {v, s.interp_right[v]}};
  return m;
}

TTTensor3 tt_deriv1_cell(const TTTensor3& uV, const Grid3& g, Axis axis,
                         const StencilOptions& opt) {
  require_modes(uV, g.vertex_shape(), Centering::vertex, "vertex tensor");
  const auto a = static_cast<std::size_t>(axis);
  std::array<Core, 3> cores;
  for (std::size_t l = 0; l < 3; ++l)
    cores[l] = apply_mode_map(uV.core(l), l == a ? deriv1_map(axis_stencil(g.axis(l), opt))
                                                 : average_map(g.axis(l).num_vertices()));
  return TTTensor3(std::move(cores), Centering::cell);
}

TTTensor3 tt_deriv2_cell(const TTTensor3& uV, const Grid3& g, Axis axis,
                         const StencilOptions& opt) {
  require_modes(uV, g.vertex_shape(), Centering::vertex, "vertex tensor");
  if (g.n_ghost < 2) throw InvalidInput("second derivatives need two ghost frames");
  const auto a = static_cast<std::size_t>(axis);
  std::array<Core, 3> cores;
  for (std::size_t l = 0; l < 3; ++l)
    cores[l] = apply_mode_map(uV.core(l), l == a ? deriv2_map(axis_stencil(g.axis(l), opt))
                                                 : average_map(g.axis(l).num_vertices()));
  return TTTensor3(std::move(cores), Centering::cell);
}

TTTensor3 tt_laplacian_cell(const TTTensor3& uV, const Grid3& g, double eps,
                            const StencilOptions& opt) {
  const TTTensor3 sum = add(add(tt_deriv2_cell(uV, g, Axis::x, opt), tt_deriv2_cell(uV, g, Axis::y, opt)),
                            tt_deriv2_cell(uV, g, Axis::z, opt));
  return round(sum, eps);
}

TTTensor3 tt_interp_vertex(const TTTensor3& uC, const Grid3& g, const StencilOptions& opt) {
  require_modes(uC, g.cell_shape(), Centering::cell, "cell tensor");
  std::array<Core, 3> cores;
  for (std::size_t l = 0; l < 3; ++l)
    cores[l] = apply_mode_map(uC.core(l), interp_map(axis_stencil(g.axis(l), opt)));
  return TTTensor3(std::move(cores), Centering::vertex);
}

TTTensor3 tt_laplacian_vertex(const TTTensor3& uV, const Grid3& g, double eps,
                              const StencilOptions& opt) {
  return tt_interp_vertex(tt_laplacian_cell(uV, g, eps, opt), g, opt);
}

std::array<std::vector<double>, 3> interior_mask(const Grid3& g) {
  std::array<std::vector<double>, 3> m;
  for (std::size_t l = 0; l < 3; ++l) {
    const auto& ax = g.axis(l);
    m[l].assign(ax.num_vertices(), 0.0);
    for (std::size_t i = ax.interior_begin(); i < ax.interior_end(); ++i) m[l][i] = 1.0;
  }
  return m;
}

TTTensor3 tt_mask_interior(const TTTensor3& uV, const Grid3& g) {
  require_modes(uV, g.vertex_shape(), Centering::vertex, "vertex tensor");
  const auto m = interior_mask(g);
  return hadamard_rank1(uV, m[0], m[1], m[2]);
}

TTTensor3 tt_set_dirichlet(const TTTensor3& uV, const Grid3& g, const TTTensor3& boundary,
                           double eps) {
  require_modes(uV, g.vertex_shape(), Centering::vertex, "vertex tensor");
  require_modes(boundary, g.vertex_shape(), Centering::vertex, "boundary tensor");
  const auto m = interior_mask(g);
  const TTTensor3 b = add(boundary, scale(hadamard_rank1(boundary, m[0], m[1], m[2]), -1.0));
  return round(add(hadamard_rank1(uV, m[0], m[1], m[2]), b), eps);
}

}  // namespace ttheat
