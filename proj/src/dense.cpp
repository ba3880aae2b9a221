#include "ttheat/dense.hpp"

#include <algorithm>
#include <cmath>

#include "ttheat/errors.hpp"

namespace ttheat {

Array3::Array3(Shape3 shape, double fill)
    : shape_(shape), data_(shape[0] * shape[1] * shape[2], fill) {}

bool Array3::all_finite() const noexcept {
  return std::all_of(data_.begin(), data_.end(), [](double v) { return std::isfinite(v); });
}

double Array3::frobenius_norm() const noexcept {
  double s = 0.0;
  for (double v : data_) s += v * v;
  return std::sqrt(s);
}

namespace {
void require_same_shape(const DenseField3& a, const DenseField3& b) {
  if (a.shape() != b.shape()) throw InvalidInput("dense field shape mismatch");
}
}  // namespace

double dot(const DenseField3& a, const DenseField3& b) {
  require_same_shape(a, b);
  const auto x = a.values.values();
  const auto y = b.values.values();
  double s = 0.0;
  for (std::size_t n = 0; n < x.size(); ++n) s += x[n] * y[n];
  return s;
}

double norm(const DenseField3& a) { return a.values.frobenius_norm(); }

DenseField3 axpby(double alpha, const DenseField3& a, double beta, const DenseField3& b) {
  require_same_shape(a, b);
  DenseField3 out(a.shape(), a.centering);
  auto o = out.values.values();
  const auto x = a.values.values();
  const auto y = b.values.values();
  for (std::size_t n = 0; n < o.size(); ++n) o[n] = alpha * x[n] + beta * y[n];
  return out;
}

double max_abs_diff(const DenseField3& a, const DenseField3& b) {
  require_same_shape(a, b);
  const auto x = a.values.values();
  const auto y = b.values.values();
  double m = 0.0;
  for (std::size_t n = 0; n < x.size(); ++n) m = std::max(m, std::abs(x[n] - y[n]));
  return m;
}

}  // namespace ttheat
