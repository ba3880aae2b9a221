#pragma once

#include <array>
#include <cstddef>
#include <span>
#include <vector>

namespace ttheat {

/// Which grid entity the indices of a field address.
enum class Centering { vertex, cell };

using Shape3 = std::array<std::size_t, 3>;

/// Row-major 3-axis array; the last index runs fastest.
class Array3 {
 public:
  Array3() = default;
  explicit Array3(Shape3 shape, double fill = 0.0);

  [[nodiscard]] const Shape3& shape() const noexcept { return shape_; }
  [[nodiscard]] std::size_t extent(std::size_t axis) const noexcept { return shape_[axis]; }
  [[nodiscard]] std::size_t size() const noexcept { return data_.size(); }
  [[nodiscard]] bool empty() const noexcept { return data_.empty(); }

  [[nodiscard]] std::size_t offset(std::size_t i, std::size_t j, std::size_t k) const noexcept {
    return (i * shape_[1] + j) * shape_[2] + k;
  }
  double& operator()(std::size_t i, std::size_t j, std::size_t k) noexcept {
    return data_[offset(i, j, k)];
  }
  double operator()(std::size_t i, std::size_t j, std::size_t k) const noexcept {
    return data_[offset(i, j, k)];
  }

  [[nodiscard]] std::span<double> values() noexcept { return data_; }
  [[nodiscard]] std::span<const double> values() const noexcept { return data_; }
  [[nodiscard]] double* data() noexcept { return data_.data(); }
  [[nodiscard]] const double* data() const noexcept { return data_.data(); }

  [[nodiscard]] bool all_finite() const noexcept;
  [[nodiscard]] double frobenius_norm() const noexcept;

 private:
  Shape3 shape_{0, 0, 0};
  std::vector<double> data_;
};

/// Full-grid counterpart of a tensor train: a dense array plus its centering.
struct DenseField3 {
  Array3 values;
  Centering centering = Centering::vertex;

  DenseField3() = default;
  DenseField3(Shape3 shape, Centering c, double fill = 0.0) : values(shape, fill), centering(c) {}
  DenseField3(Array3 a, Centering c) : values(std::move(a)), centering(c) {}

  [[nodiscard]] const Shape3& shape() const noexcept { return values.shape(); }
  double& operator()(std::size_t i, std::size_t j, std::size_t k) noexcept { return values(i, j, k); }
  double operator()(std::size_t i, std::size_t j, std::size_t k) const noexcept {
    return values(i, j, k);
  }
};

// Dense helpers used by the full-grid backend and by tests.
[[nodiscard]] double dot(const DenseField3& a, const DenseField3& b);
[[nodiscard]] double norm(const DenseField3& a);
/// Returns alpha*a + beta*b.
[[nodiscard]] DenseField3 axpby(double alpha, const DenseField3& a, double beta,
                                const DenseField3& b);
[[nodiscard]] double max_abs_diff(const DenseField3& a, const DenseField3& b);

}  // namespace ttheat
