#include "ttheat/fg_ops.hpp"

#include <array>

#include "ttheat/errors.hpp"

namespace ttheat {

namespace {

using Index3 = std::array<std::size_t, 3>;

Index3 strides(const Shape3& s) { return {s[1] * s[2], s[2], 1}; }

void require_vertex_field(const DenseField3& u, const Grid3& g) {
  if (u.shape() != g.vertex_shape()) throw InvalidInput("vertex field does not match the grid");
}

void require_cell_field(const DenseField3& u, const Grid3& g) {
  if (u.shape() != g.cell_shape()) throw InvalidInput("cell field does not match the grid");
}

std::array<std::size_t, 2> transverse(std::size_t a) {
  if (a == 0) return {1, 2};
  if (a == 1) return {0, 2};
  return {0, 1};
}

template <class F>
void for_each_index(const Shape3& s, F&& f) {
  for (std::size_t i = 0; i < s[0]; ++i)
    for (std::size_t j = 0; j < s[1]; ++j)
      for (std::size_t k = 0; k < s[2]; ++k) f(Index3{i, j, k});
}

// Average of u[o + shift + d1*t1 + d2*t2] over d1, d2 in {0, 1}.
inline double edge_average(const double* u, std::size_t o, std::ptrdiff_t shift, std::size_t t1,
                           std::size_t t2) {
  const double* p = u + static_cast<std::ptrdiff_t>(o) + shift;
  return 0.25 * (p[0] + p[t1] + p[t2] + p[t1 + t2]);
}

}  // namespace

DenseField3 deriv1_cell(const DenseField3& uV, const Grid3& g, Axis axis,
                        const StencilOptions& opt) {
  require_vertex_field(uV, g);
  const auto a = static_cast<std::size_t>(axis);
  const auto st = axis_stencil(g.axis(a), opt);
  const Index3 sv = strides(uV.shape());
  const auto [t1, t2] = transverse(a);
  const double* u = uV.values.data();
  DenseField3 out(g.cell_shape(), Centering::cell);
  for_each_index(out.shape(), [&](const Index3& c) {
    const std::size_t o = uV.values.offset(c[0], c[1], c[2]);
    const auto sa = static_cast<std::ptrdiff_t>(sv[a]);
    out(c[0], c[1], c[2]) =
        (edge_average(u, o, sa, sv[t1], sv[t2]) - edge_average(u, o, 0, sv[t1], sv[t2])) *
        st.inv_step[c[a]];
  });
  return out;
}

DenseField3 deriv2_cell(const DenseField3& uV, const Grid3& g, Axis axis,
                        const StencilOptions& opt) {
  require_vertex_field(uV, g);
  if (g.n_ghost < 2) throw InvalidInput("second derivatives need two ghost frames");
  const auto a = static_cast<std::size_t>(axis);
  const auto st = axis_stencil(g.axis(a), opt);
  const std::size_t nca = g.axis(a).num_cells();
  DenseField3 out(g.cell_shape(), Centering::cell);

  if (st.fused_second) {
    const Index3 sv = strides(uV.shape());
    const auto [t1, t2] = transverse(a);
    const auto sa = static_cast<std::ptrdiff_t>(sv[a]);
    const double* u = uV.values.data();
    const double w = 1.0 / (2.0 * st.h * st.h);
    for_each_index(out.shape(), [&](const Index3& c) {
      if (c[a] == 0 || c[a] + 1 == nca) return;
      const std::size_t o = uV.values.offset(c[0], c[1], c[2]);
      out(c[0], c[1], c[2]) =
          (edge_average(u, o, 2 * sa, sv[t1], sv[t2]) - edge_average(u, o, sa, sv[t1], sv[t2]) -
           edge_average(u, o, 0, sv[t1], sv[t2]) + edge_average(u, o, -sa, sv[t1], sv[t2])) *
          w;
    });
    return out;
  }

  const DenseField3 d = deriv1_cell(uV, g, axis, opt);
  const auto sc = static_cast<std::ptrdiff_t>(strides(d.shape())[a]);
  const double* dp = d.values.data();
  for_each_index(out.shape(), [&](const Index3& c) {
    const std::size_t ca = c[a];
    if (ca == 0 || ca + 1 == nca) return;
    const double* p = dp + d.values.offset(c[0], c[1], c[2]);
    out(c[0], c[1], c[2]) =
        0.5 * ((p[sc] - p[0]) * st.d2_upper[ca] + (p[0] - p[-sc]) * st.d2_lower[ca]);
  });
  return out;
}

DenseField3 mixed2_cell(const DenseField3& uV, const Grid3& g, Axis a, Axis b,
                        const StencilOptions& opt) {
  require_vertex_field(uV, g);
  if (a == b) throw InvalidInput("mixed derivative needs two distinct axes; use deriv2_cell");
  if (g.n_ghost < 1) throw InvalidInput("mixed derivatives need one ghost frame");
  // Canonical order so that both argument orders produce identical bits.
  const auto p = std::min(static_cast<std::size_t>(a), static_cast<std::size_t>(b));
  const auto q = std::max(static_cast<std::size_t>(a), static_cast<std::size_t>(b));
  const DenseField3 dp = deriv1_cell(uV, g, static_cast<Axis>(p), opt);
  const DenseField3 dq = deriv1_cell(uV, g, static_cast<Axis>(q), opt);
  const auto sp = axis_stencil(g.axis(p), opt);
  const auto sq = axis_stencil(g.axis(q), opt);
  const Index3 sc = strides(dp.shape());
  const auto np = g.axis(p).num_cells();
  const auto nq = g.axis(q).num_cells();
  DenseField3 out(g.cell_shape(), Centering::cell);
  for_each_index(out.shape(), [&](const Index3& c) {
    if (c[p] == 0 || c[p] + 1 == np || c[q] == 0 || c[q] + 1 == nq) return;
    const std::size_t o = dp.values.offset(c[0], c[1], c[2]);
    const double* x = dp.values.data() + o;
    const double* y = dq.values.data() + o;
    const double cross_q = (x[sc[q]] - x[-static_cast<std::ptrdiff_t>(sc[q])]) * sq.mixed_inv_span[c[q]];
    const double cross_p = (y[sc[p]] - y[-static_cast<std::ptrdiff_t>(sc[p])]) * sp.mixed_inv_span[c[p]];
    out(c[0], c[1], c[2]) = 0.5 * (cross_q + cross_p);
  });
  return out;
}

DenseField3 laplacian_cell(const DenseField3& uV, const Grid3& g, const StencilOptions& opt) {
  DenseField3 out = deriv2_cell(uV, g, Axis::x, opt);
  for (Axis ax : {Axis::y, Axis::z}) {
    const DenseField3 d = deriv2_cell(uV, g, ax, opt);
    auto o = out.values.values();
    const auto v = d.values.values();
    for (std::size_t n = 0; n < o.size(); ++n) o[n] += v[n];
  }
  return out;
}

DenseField3 interp_vertex(const DenseField3& uC, const Grid3& g, const StencilOptions& opt) {
  require_cell_field(uC, g);
  const std::array<AxisStencil, 3> st{axis_stencil(g.axis(0), opt), axis_stencil(g.axis(1), opt),
                                      axis_stencil(g.axis(2), opt)};
  const Shape3 nv = g.vertex_shape();
  DenseField3 out(nv, Centering::vertex);
  for (std::size_t i = 1; i + 1 < nv[0]; ++i)
    for (std::size_t j = 1; j + 1 < nv[1]; ++j)
      for (std::size_t k = 1; k + 1 < nv[2]; ++k) {
        const double wx[2] = {st[0].interp_left[i], st[0].interp_right[i]};
        const double wy[2] = {st[1].interp_left[j], st[1].interp_right[j]};
        const double wz[2] = {st[2].interp_left[k], st[2].interp_right[k]};
        double s = 0.0;
        for (std::size_t a = 0; a < 2; ++a)
          for (std::size_t b = 0; b < 2; ++b)
            for (std::size_t c = 0; c < 2; ++c)
              s += wx[a] * wy[b] * wz[c] * uC(i - 1 + a, j - 1 + b, k - 1 + c);
        out(i, j, k) = s;
      }
  return out;
}

DenseField3 laplacian_vertex(const DenseField3& uV, const Grid3& g, const StencilOptions& opt) {
  return interp_vertex(laplacian_cell(uV, g, opt), g, opt);
}

DenseField3 set_dirichlet(const DenseField3& uV, const Grid3& g, const BoundaryFunction& gfun,
                          double t) {
  require_vertex_field(uV, g);
  DenseField3 out = uV;
  const auto& [ax, ay, az] = g.axes;
  for_each_index(out.shape(), [&](const Index3& v) {
    if (ax.is_boundary_vertex(v[0]) || ay.is_boundary_vertex(v[1]) || az.is_boundary_vertex(v[2]))
      out(v[0], v[1], v[2]) = gfun(ax.vertices[v[0]], ay.vertices[v[1]], az.vertices[v[2]], t);
  });
  return out;
}

DenseField3 set_dirichlet(const DenseField3& uV, const Grid3& g, const DenseField3& boundary) {
  require_vertex_field(uV, g);
  require_vertex_field(boundary, g);
  DenseField3 out = uV;
  const auto& [ax, ay, az] = g.axes;
  for_each_index(out.shape(), [&](const Index3& v) {
    if (ax.is_boundary_vertex(v[0]) || ay.is_boundary_vertex(v[1]) || az.is_boundary_vertex(v[2]))
      out(v[0], v[1], v[2]) = boundary(v[0], v[1], v[2]);
  });
  return out;
}

DenseField3 mask_interior(const DenseField3& uV, const Grid3& g) {
  require_vertex_field(uV, g);
  DenseField3 out = uV;
  const auto& [ax, ay, az] = g.axes;
  for_each_index(out.shape(), [&](const Index3& v) {
    if (ax.is_boundary_vertex(v[0]) || ay.is_boundary_vertex(v[1]) || az.is_boundary_vertex(v[2]))
      out(v[0], v[1], v[2]) = 0.0;
  });
  return out;
}

DenseField3 sample_vertices(const Grid3& g,
                            const std::function<double(double, double, double)>& f) {
  DenseField3 out(g.vertex_shape(), Centering::vertex);
  const auto& [ax, ay, az] = g.axes;
  for_each_index(out.shape(), [&](const Index3& v) {
    out(v[0], v[1], v[2]) = f(ax.vertices[v[0]], ay.vertices[v[1]], az.vertices[v[2]]);
  });
  return out;
}

}  // namespace ttheat
