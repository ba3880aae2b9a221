#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <random>
#include <vector>

#include "ttheat/dense.hpp"
#include "ttheat/tt_tensor.hpp"

namespace ttheat::testing {

inline Core random_core(std::size_t r0, std::size_t n, std::size_t r1, std::mt19937_64& rng) {
  std::normal_distribution<double> dist(0.0, 1.0);
  Core c(r0, n, r1);
  for (double& v : c.array().values()) v = dist(rng);
  return c;
}

inline TTTensor3 random_tt(Shape3 n, std::size_t r1, std::size_t r2, std::uint64_t seed,
                           Centering c = Centering::vertex) {
  std::mt19937_64 rng(seed);
  return TTTensor3({random_core(1, n[0], r1, rng), random_core(r1, n[1], r2, rng),
                    random_core(r2, n[2], 1, rng)},
                   c);
}

inline DenseField3 random_dense(Shape3 n, std::uint64_t seed, Centering c = Centering::vertex) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> dist(0.0, 1.0);
  DenseField3 f(n, c);
  for (double& v : f.values.values()) v = dist(rng);
  return f;
}

inline double rel_diff(const DenseField3& a, const DenseField3& b) {
  const double d = norm(axpby(1.0, a, -1.0, b));
  const double s = std::max(norm(a), norm(b));
  return s == 0.0 ? d : d / s;
}

// Singular values of the two sequential unfoldings of a dense tensor.
inline std::pair<Eigen::VectorXd, Eigen::VectorXd> unfolding_singular_values(const DenseField3& t) {
  const auto [n1, n2, n3] = t.shape();
  Eigen::MatrixXd a1(n1, n2 * n3), a2(n1 * n2, n3);
  for (std::size_t i = 0; i < n1; ++i)
    for (std::size_t j = 0; j < n2; ++j)
      for (std::size_t k = 0; k < n3; ++k) {
        a1(i, j * n3 + k) = t(i, j, k);
        a2(i * n2 + j, k) = t(i, j, k);
      }
  return {Eigen::JacobiSVD<Eigen::MatrixXd>(a1).singularValues(),
          Eigen::JacobiSVD<Eigen::MatrixXd>(a2).singularValues()};
}

inline std::size_t count_above(const Eigen::VectorXd& s, double threshold) {
  std::size_t n = 0;
  for (Eigen::Index i = 0; i < s.size(); ++i)
    if (s[i] > threshold) ++n;
  return n;
}

}  // namespace ttheat::testing

#include <functional>
#include <numbers>

#include "ttheat/fg_ops.hpp"
#include "ttheat/grid.hpp"

namespace ttheat::testing {

inline double scenario_map_metric(double x) { return 4.0 * std::exp(-2.0 * x); }

/// Unit-cube grid of the given kind with nc physical cells per axis.
inline Grid3 make_grid(AxisKind kind, std::size_t nc) {
  switch (kind) {
    case AxisKind::regular:
      return Grid3::cube(regular_axis(0.0, 1.0, nc));
    case AxisKind::variable: {
      const double rho = std::pow(1.125, 20.0 / static_cast<double>(nc));
      const double h0 = (rho - 1.0) / (std::pow(rho, static_cast<double>(nc)) - 1.0);
      return Grid3::cube(geometric_axis(0.0, h0, rho, nc));
    }
    case AxisKind::remapped:
      return Grid3::cube(remapped_axis(0.0, 1.0, nc, kDefaultGhosts, scenario_map_metric));
  }
  return {};
}

inline DenseField3 sample(const Grid3& g, const std::function<double(double, double, double)>& f) {
  return sample_vertices(g, f);
}

inline double two_pi() { return 2.0 * std::numbers::pi; }

}  // namespace ttheat::testing
