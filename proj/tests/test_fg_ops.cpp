#include <gtest/gtest.h>

#include <cmath>

#include "test_support.hpp"
#include "ttheat/errors.hpp"
#include "ttheat/fg_ops.hpp"

using namespace ttheat;
using namespace ttheat::testing;

namespace {

constexpr std::array kAllKinds{AxisKind::regular, AxisKind::variable, AxisKind::remapped};

// Max |field - f(center)| over cells whose index along each axis lies in [lo, n - lo).
double max_cell_error(const DenseField3& c, const Grid3& g, std::size_t lo,
                      const std::function<double(double, double, double)>& f) {
  const auto n = c.shape();
  double e = 0;
  for (std::size_t i = lo; i + lo < n[0]; ++i)
    for (std::size_t j = lo; j + lo < n[1]; ++j)
      for (std::size_t k = lo; k + lo < n[2]; ++k)
        e = std::max(e, std::abs(c(i, j, k) - f(g.axis(0).centers[i], g.axis(1).centers[j],
                                                g.axis(2).centers[k])));
  return e;
}

// Same over interior vertices.
double max_interior_error(const DenseField3& v, const Grid3& g,
                          const std::function<double(double, double, double)>& f) {
  double e = 0;
  const auto& [ax, ay, az] = g.axes;
  for (std::size_t i = ax.interior_begin(); i < ax.interior_end(); ++i)
    for (std::size_t j = ay.interior_begin(); j < ay.interior_end(); ++j)
      for (std::size_t k = az.interior_begin(); k < az.interior_end(); ++k)
        e = std::max(e, std::abs(v(i, j, k) - f(ax.vertices[i], ay.vertices[j], az.vertices[k])));
  return e;
}

double sin3(double x, double y, double z) {
  return std::sin(two_pi() * x) * std::sin(two_pi() * y) * std::sin(two_pi() * z);
}

}  // namespace

TEST(Deriv1Cell, ExactOnLinearsAndQuadratics) {
  for (auto kind : kAllKinds) {
    if (kind == AxisKind::remapped) continue;  // derivative with respect to the mapped coordinate
    const auto g = make_grid(kind, 16);
    const auto lin = sample(g, [](double x, double, double) { return x; });
    EXPECT_LT(max_cell_error(deriv1_cell(lin, g, Axis::x), g, 0, [](double, double, double) { return 1.0; }), 1e-11);
    EXPECT_LT(max_cell_error(deriv1_cell(lin, g, Axis::y), g, 0, [](double, double, double) { return 0.0; }), 1e-11);
    const auto quad = sample(g, [](double x, double y, double) { return x * x + 3 * x * y + y * y; });
    EXPECT_LT(max_cell_error(deriv1_cell(quad, g, Axis::x), g, 0,
                             [](double x, double y, double) { return 2 * x + 3 * y; }),
              1e-11);
  }
}

TEST(Deriv1Cell, SecondOrderOnSineProduct) {
  std::vector<double> err;
  for (std::size_t nc : {20, 40, 80}) {
    const auto g = make_grid(AxisKind::regular, nc);
    const auto d = deriv1_cell(sample(g, sin3), g, Axis::x);
    err.push_back(max_cell_error(d, g, 0, [](double x, double y, double z) {
      return two_pi() * std::cos(two_pi() * x) * std::sin(two_pi() * y) * std::sin(two_pi() * z);
    }));
  }
  EXPECT_NEAR(err[0] / err[1], 4.0, 0.3);
  EXPECT_NEAR(err[1] / err[2], 4.0, 0.3);
}

TEST(Deriv1Cell, ShapeMismatch) {
  const auto g = make_grid(AxisKind::regular, 4);
  EXPECT_THROW((void)deriv1_cell(DenseField3({3, 3, 3}, Centering::vertex), g, Axis::x), InvalidInput);
}

TEST(Deriv2Cell, ExactOnQuadraticsAndCubics) {
  const auto g = make_grid(AxisKind::regular, 16);
  const auto q = sample(g, [](double x, double, double) { return x * x; });
  EXPECT_LT(max_cell_error(deriv2_cell(q, g, Axis::x), g, 1, [](double, double, double) { return 2.0; }), 1e-11);
  const auto c = sample(g, [](double x, double, double) { return x * x * x; });
  EXPECT_LT(max_cell_error(deriv2_cell(c, g, Axis::x), g, 1, [](double x, double, double) { return 6 * x; }), 1e-11);
  const auto cz = sample(g, [](double, double y, double z) { return z * z * z + y * z * z; });
  EXPECT_LT(max_cell_error(deriv2_cell(cz, g, Axis::z), g, 1,
                           [](double, double y, double z) { return 6 * z + 2 * y; }),
            1e-11);
}

TEST(Deriv2Cell, EdgeCellsAreZero) {
  const auto g = make_grid(AxisKind::regular, 6);
  const auto d = deriv2_cell(sample(g, sin3), g, Axis::y);
  const auto n = d.shape();
  for (std::size_t i = 0; i < n[0]; ++i)
    for (std::size_t k = 0; k < n[2]; ++k) {
      EXPECT_EQ(d(i, 0, k), 0.0);
      EXPECT_EQ(d(i, n[1] - 1, k), 0.0);
    }
}

TEST(Deriv2Cell, AnnihilatesTransverseFunctions) {
  for (auto kind : kAllKinds) {
    const auto g = make_grid(kind, 10);
    const auto u = sample(g, [](double, double y, double z) { return std::sin(3 * y) * std::exp(z); });
    const auto d = deriv2_cell(u, g, Axis::x);
    EXPECT_LT(d.values.frobenius_norm(), 1e-9) << int(kind);
  }
}

TEST(Deriv2Cell, SecondOrderOnSineProduct) {
  for (auto kind : kAllKinds) {
    std::vector<double> err;
    for (std::size_t nc : {20, 40, 80}) {
      const auto g = make_grid(kind, nc);
      const auto d = deriv2_cell(sample(g, sin3), g, Axis::x);
      err.push_back(max_cell_error(d, g, 2, [&](double x, double y, double z) {
        const double s = -two_pi() * two_pi() * sin3(x, y, z);
        if (kind != AxisKind::remapped) return s;
        // (1/m) d/dx (1/m du/dx) with m = 4 exp(-2x)
        const double q = 1.0 / scenario_map_metric(x), dq = 2.0 * q;
        const double ux = two_pi() * std::cos(two_pi() * x) * std::sin(two_pi() * y) * std::sin(two_pi() * z);
        return q * q * s + q * dq * ux;
      }));
    }
    EXPECT_GT(std::log2(err[0] / err[1]), 1.7) << int(kind);
    EXPECT_GT(std::log2(err[1] / err[2]), 1.8) << int(kind);
  }
}

TEST(Deriv2Cell, CellStepDenominatorsLoseOrder) {
  StencilOptions cell_steps;
  cell_steps.second_derivative = SecondDerivForm::cell_steps;
  std::vector<double> err;
  for (std::size_t nc : {20, 40, 80}) {
    const auto g = make_grid(AxisKind::variable, nc);
    const auto d = laplacian_vertex(sample(g, sin3), g, cell_steps);
    err.push_back(max_interior_error(d, g, [](double x, double y, double z) {
      return -3 * two_pi() * two_pi() * sin3(x, y, z);
    }));
  }
  EXPECT_LT(std::log2(err[1] / err[2]), 1.8);
}

TEST(Mixed2Cell, ExactnessAndSymmetry) {
  const auto g = make_grid(AxisKind::regular, 16);
  const auto xy = sample(g, [](double x, double y, double) { return x * y; });
  EXPECT_LT(max_cell_error(mixed2_cell(xy, g, Axis::x, Axis::y), g, 1, [](double, double, double) { return 1.0; }), 1e-11);
  const auto xx = sample(g, [](double x, double, double) { return x * x; });
  EXPECT_LT(max_cell_error(mixed2_cell(xx, g, Axis::x, Axis::y), g, 1, [](double, double, double) { return 0.0; }), 1e-11);
  const auto u = sample(g, sin3);
  const auto a = mixed2_cell(u, g, Axis::x, Axis::z);
  const auto b = mixed2_cell(u, g, Axis::z, Axis::x);
  EXPECT_EQ(max_abs_diff(a, b), 0.0);
  EXPECT_THROW((void)mixed2_cell(u, g, Axis::y, Axis::y), InvalidInput);
}

TEST(Mixed2Cell, SecondOrder) {
  std::vector<double> err;
  for (std::size_t nc : {20, 40, 80}) {
    const auto g = make_grid(AxisKind::regular, nc);
    const auto u = sample(g, [](double x, double y, double) { return std::sin(two_pi() * x) * std::sin(two_pi() * y); });
    err.push_back(max_cell_error(mixed2_cell(u, g, Axis::x, Axis::y), g, 1, [](double x, double y, double) {
      return two_pi() * two_pi() * std::cos(two_pi() * x) * std::cos(two_pi() * y);
    }));
  }
  EXPECT_GT(std::log2(err[1] / err[2]), 1.8);
}

TEST(LaplacianCell, ExactCases) {
  const auto g = make_grid(AxisKind::regular, 16);
  const auto r2 = sample(g, [](double x, double y, double z) { return x * x + y * y + z * z; });
  EXPECT_LT(max_cell_error(laplacian_cell(r2, g), g, 1, [](double, double, double) { return 6.0; }), 1e-10);
  const auto xyz = sample(g, [](double x, double y, double z) { return x * y * z; });
  EXPECT_LT(max_cell_error(laplacian_cell(xyz, g), g, 0, [](double, double, double) { return 0.0; }), 1e-11);
}

TEST(InterpVertex, ConstantsAndLinears) {
  for (auto kind : kAllKinds) {
    const auto g = make_grid(kind, 8);
    DenseField3 c(g.cell_shape(), Centering::cell, 2.5);
    EXPECT_LT(max_interior_error(interp_vertex(c, g), g, [](double, double, double) { return 2.5; }), 1e-14);
  }
  const auto g = make_grid(AxisKind::regular, 8);
  DenseField3 lin(g.cell_shape(), Centering::cell);
  for (std::size_t i = 0; i < lin.shape()[0]; ++i)
    for (std::size_t j = 0; j < lin.shape()[1]; ++j)
      for (std::size_t k = 0; k < lin.shape()[2]; ++k) lin(i, j, k) = g.axis(0).centers[i];
  const auto v = interp_vertex(lin, g);
  EXPECT_LT(max_interior_error(v, g, [](double x, double, double) { return x; }), 1e-14);
  // Outermost layers have no cell pair.
  EXPECT_EQ(v(0, 4, 4), 0.0);
}

TEST(InterpVertex, OwnDistanceWeightsOnGeometricAxis) {
  // Cells [0,1] and [1,3]: centers 0.5 and 2.0, vertex at 1.
  const auto ax = geometric_axis(0.0, 1.0, 2.0, 3, 1);
  const auto g = Grid3::cube(ax);
  DenseField3 c(g.cell_shape(), Centering::cell);
  for (std::size_t i = 0; i < c.shape()[0]; ++i)
    for (std::size_t j = 0; j < c.shape()[1]; ++j)
      for (std::size_t k = 0; k < c.shape()[2]; ++k) c(i, j, k) = ax.centers[i];
  ASSERT_DOUBLE_EQ(ax.centers[1], 0.5);
  ASSERT_DOUBLE_EQ(ax.centers[2], 2.0);
  const auto v = interp_vertex(c, g);
  EXPECT_DOUBLE_EQ(v(2, 2, 2), 1.5);

  StencilOptions opposite;
  opposite.interpolation = InterpWeights::opposite;
  EXPECT_DOUBLE_EQ(interp_vertex(c, g, opposite)(2, 2, 2), 1.0);
}

TEST(LaplacianVertex, ExactCases) {
  const auto g = make_grid(AxisKind::regular, 16);
  const auto r2 = sample(g, [](double x, double y, double z) { return x * x + y * y + z * z; });
  EXPECT_LT(max_interior_error(laplacian_vertex(r2, g), g, [](double, double, double) { return 6.0; }), 1e-10);
  const auto xyz = sample(g, [](double x, double y, double z) { return x * y * z; });
  EXPECT_LT(max_interior_error(laplacian_vertex(xyz, g), g, [](double, double, double) { return 0.0; }), 1e-11);
}

TEST(LaplacianVertex, Linear) {
  const auto g = make_grid(AxisKind::variable, 8);
  const auto a = random_dense(g.vertex_shape(), 1);
  const auto b = random_dense(g.vertex_shape(), 2);
  const auto lhs = laplacian_vertex(axpby(2.0, a, -3.0, b), g);
  const auto rhs = axpby(2.0, laplacian_vertex(a, g), -3.0, laplacian_vertex(b, g));
  EXPECT_LT(rel_diff(lhs, rhs), 1e-13);
}

TEST(LaplacianVertex, UnitMetricReducesToRegular) {
  const auto reg = make_grid(AxisKind::regular, 10);
  const auto rem = Grid3::cube(remapped_axis(0, 1, 10, 2, [](double) { return 1.0; }));
  const auto u = sample(reg, sin3);
  EXPECT_LT(rel_diff(laplacian_vertex(u, reg), laplacian_vertex(u, rem)), 1e-14);
  EXPECT_LT(rel_diff(deriv1_cell(u, reg, Axis::y), deriv1_cell(u, rem, Axis::y)), 1e-14);
}

TEST(SetDirichlet, ZeroSampleIdempotent) {
  const auto g = make_grid(AxisKind::regular, 6);
  const auto u = random_dense(g.vertex_shape(), 5);
  const auto z = set_dirichlet(u, g, [](double, double, double, double) { return 0.0; }, 0.0);
  const auto& ax = g.axis(0);
  for (std::size_t i = 0; i < ax.num_vertices(); ++i)
    for (std::size_t j = 0; j < ax.num_vertices(); ++j)
      for (std::size_t k = 0; k < ax.num_vertices(); ++k) {
        const bool bnd = ax.is_boundary_vertex(i) || ax.is_boundary_vertex(j) || ax.is_boundary_vertex(k);
        EXPECT_EQ(z(i, j, k), bnd ? 0.0 : u(i, j, k));
      }
  const BoundaryFunction gf = [](double x, double y, double z, double t) { return std::cos(t) * sin3(x, y, z); };
  const auto once = set_dirichlet(u, g, gf, 0.3);
  const auto twice = set_dirichlet(once, g, gf, 0.3);
  EXPECT_EQ(max_abs_diff(once, twice), 0.0);
  EXPECT_DOUBLE_EQ(once(0, 3, 3), std::cos(0.3) * sin3(ax.vertices[0], ax.vertices[3], ax.vertices[3]));
}
