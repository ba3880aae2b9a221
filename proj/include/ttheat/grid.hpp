#pragma once

#include <array>
#include <cstddef>
#include <functional>
#include <optional>
#include <vector>

namespace ttheat {

enum class AxisKind { regular, variable, remapped };
enum class Axis { x = 0, y = 1, z = 2 };

inline constexpr std::size_t kDefaultGhosts = 2;

/// Univariate partition including ghost frames. Cell i lies between vertices i and i+1.
/// The first and last n_ghost+1 vertex layers carry Dirichlet data.
struct GridAxis {
  AxisKind kind = AxisKind::regular;
  std::vector<double> vertices;
  std::size_t n_ghost = kDefaultGhosts;
  std::vector<double> cell_steps;
  std::vector<double> centers;
  /// Nominal step of the equispaced kinds (regular, remapped); 0 for variable axes.
  double h = 0.0;
  /// x~'(x) sampled at cell centers and at vertices (remapped kind only).
  std::optional<std::vector<double>> metric_at_centers;
  std::optional<std::vector<double>> metric_at_vertices;

  [[nodiscard]] std::size_t num_vertices() const noexcept { return vertices.size(); }
  [[nodiscard]] std::size_t num_cells() const noexcept { return cell_steps.size(); }
  /// Physical (non-ghost) cell count.
  [[nodiscard]] std::size_t interior_cells() const noexcept { return num_cells() - 2 * n_ghost; }
  /// First and one-past-last interior vertex index.
  [[nodiscard]] std::size_t interior_begin() const noexcept { return n_ghost + 1; }
  [[nodiscard]] std::size_t interior_end() const noexcept { return num_vertices() - n_ghost - 1; }
  [[nodiscard]] bool is_boundary_vertex(std::size_t i) const noexcept {
    return i < interior_begin() || i >= interior_end();
  }
  /// Smallest physical cell step.
  [[nodiscard]] double min_step() const noexcept;
  /// Physical interval [a, b].
  [[nodiscard]] double lower() const noexcept { return vertices[n_ghost]; }
  [[nodiscard]] double upper() const noexcept { return vertices[num_vertices() - 1 - n_ghost]; }
};

[[nodiscard]] GridAxis regular_axis(double a, double b, std::size_t nc,
                                    std::size_t n_ghost = kDefaultGhosts);

/// Physical cell i has step h0 * ratio^i; ghost steps continue the law outward.
[[nodiscard]] GridAxis geometric_axis(double a, double h0, double ratio, std::size_t nc,
                                      std::size_t n_ghost = kDefaultGhosts);

/// Equispaced vertices on [a, b]; the map derivative enters only through the metric samples.
/// Throws SingularMap if the metric is not strictly positive at any sample.
[[nodiscard]] GridAxis remapped_axis(double a, double b, std::size_t nc, std::size_t n_ghost,
                                     const std::function<double(double)>& metric);

struct Grid3 {
  std::array<GridAxis, 3> axes;
  std::size_t n_ghost = kDefaultGhosts;

  Grid3() = default;
  /// Validates matching ghost counts and nonempty interiors.
  explicit Grid3(std::array<GridAxis, 3> a);
  /// Same axis in all three directions.
  static Grid3 cube(const GridAxis& a) { return Grid3({a, a, a}); }

  [[nodiscard]] const GridAxis& axis(std::size_t l) const noexcept { return axes[l]; }
  [[nodiscard]] const GridAxis& axis(Axis l) const noexcept { return axes[static_cast<std::size_t>(l)]; }
  [[nodiscard]] std::array<std::size_t, 3> vertex_shape() const noexcept;
  [[nodiscard]] std::array<std::size_t, 3> cell_shape() const noexcept;
  /// Smallest physical step over all axes.
  [[nodiscard]] double min_step() const noexcept;
};

}  // namespace ttheat
