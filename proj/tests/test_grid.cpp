#include <gtest/gtest.h>

#include <cmath>

#include "ttheat/errors.hpp"
#include "ttheat/grid.hpp"

using namespace ttheat;

TEST(RegularAxis, DeskGrid) {
  const auto ax = regular_axis(0, 1, 20, 2);
  EXPECT_DOUBLE_EQ(ax.h, 0.05);
  EXPECT_EQ(ax.num_vertices(), 25u);
  EXPECT_EQ(ax.num_cells(), 24u);
  EXPECT_EQ(ax.vertices[ax.n_ghost], 0.0);
  EXPECT_EQ(ax.lower(), 0.0);
  EXPECT_EQ(ax.upper(), 1.0);
  for (double s : ax.cell_steps) EXPECT_NEAR(s, 0.05, 1e-14 * 0.05);
  EXPECT_NEAR(20 * ax.h, 1.0, 1e-14);
}

TEST(RegularAxis, SingleCellAndGhosts) {
  const auto one = regular_axis(0, 1, 1, 0);
  EXPECT_EQ(one.vertices, (std::vector<double>{0, 1}));
  EXPECT_EQ(one.centers, (std::vector<double>{0.5}));

  const auto ax = regular_axis(-1, 1, 4, 1);
  EXPECT_DOUBLE_EQ(ax.vertices.front(), -1.5);
  EXPECT_DOUBLE_EQ(ax.vertices.back(), 1.5);
  for (double s : ax.cell_steps) EXPECT_DOUBLE_EQ(s, 0.5);
  EXPECT_THROW((void)regular_axis(1, 1, 4, 1), InvalidInput);
}

TEST(RegularAxis, DualNumbering) {
  const auto ax = regular_axis(0, 1, 7, 2);
  EXPECT_EQ(ax.num_cells() + 1, ax.num_vertices());
  for (std::size_t i = 0; i < ax.num_cells(); ++i) {
    EXPECT_LT(ax.vertices[i], ax.centers[i]);
    EXPECT_LT(ax.centers[i], ax.vertices[i + 1]);
  }
}

TEST(GeometricAxis, RatioAndGhosts) {
  const auto ax = geometric_axis(0, 0.05, 1.125, 20, 2);
  EXPECT_NEAR(ax.cell_steps[3] / ax.cell_steps[2], 1.125, 1e-12);
  for (std::size_t i = 0; i + 1 < ax.num_cells(); ++i)
    EXPECT_NEAR(ax.cell_steps[i + 1] / ax.cell_steps[i], 1.125, 1e-12);
  EXPECT_EQ(ax.lower(), 0.0);
  EXPECT_EQ(ax.kind, AxisKind::variable);
}

TEST(GeometricAxis, UnitRatioIsRegular) {
  const auto g = geometric_axis(0, 0.05, 1.0, 20, 2);
  const auto r = regular_axis(0, 1, 20, 2);
  for (std::size_t i = 0; i < r.num_vertices(); ++i) EXPECT_NEAR(g.vertices[i], r.vertices[i], 1e-14);
}

TEST(GeometricAxis, GeometricSum) {
  const auto ax = geometric_axis(0, 1, 2, 3, 0);
  EXPECT_EQ(ax.vertices, (std::vector<double>{0, 1, 3, 7}));
  EXPECT_THROW((void)geometric_axis(0, 0, 2, 3, 0), InvalidInput);
  EXPECT_THROW((void)geometric_axis(0, 1, -2, 3, 0), InvalidInput);
}

TEST(RemappedAxis, MetricSamples) {
  const auto metric = [](double x) { return 4.0 * std::exp(-2.0 * x); };
  const auto ax = remapped_axis(0, 1, 10, 2, metric);
  ASSERT_TRUE(ax.metric_at_vertices.has_value());
  ASSERT_TRUE(ax.metric_at_centers.has_value());
  EXPECT_DOUBLE_EQ((*ax.metric_at_vertices)[ax.n_ghost], 4.0);
  for (double m : *ax.metric_at_centers) EXPECT_GT(m, 0.0);
  EXPECT_DOUBLE_EQ(ax.h, 0.1);
  EXPECT_THROW((void)remapped_axis(0, 1, 10, 2, [](double x) { return x - 0.5; }), SingularMap);
}

TEST(Grid3, ShapesAndValidation) {
  const auto g = Grid3::cube(regular_axis(0, 1, 4, 1));
  EXPECT_EQ(g.vertex_shape(), (std::array<std::size_t, 3>{7, 7, 7}));
  EXPECT_EQ(g.cell_shape(), (std::array<std::size_t, 3>{6, 6, 6}));
  EXPECT_EQ(g.axis(0).interior_begin(), 2u);
  EXPECT_EQ(g.axis(0).interior_end(), 5u);
  EXPECT_THROW(Grid3({regular_axis(0, 1, 4, 1), regular_axis(0, 1, 4, 2), regular_axis(0, 1, 4, 1)}),
               InvalidInput);
}
