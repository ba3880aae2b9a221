#pragma once

#include <array>
#include <cstddef>
#include <optional>
#include <span>
#include <utility>

#include "ttheat/dense.hpp"

namespace ttheat {

/// One tensor-train core of shape (left rank, mode size, right rank).
/// Stored row-major, so the buffer is simultaneously the (r0*n) x r1 left
/// unfolding and the r0 x (n*r1) right unfolding.
class Core {
 public:
  Core() = default;
  Core(std::size_t left_rank, std::size_t mode, std::size_t right_rank, double fill = 0.0)
      : values_({left_rank, mode, right_rank}, fill) {}
  explicit Core(Array3 a) : values_(std::move(a)) {}

  [[nodiscard]] std::size_t left_rank() const noexcept { return values_.extent(0); }
  [[nodiscard]] std::size_t mode() const noexcept { return values_.extent(1); }
  [[nodiscard]] std::size_t right_rank() const noexcept { return values_.extent(2); }

  double& operator()(std::size_t a, std::size_t i, std::size_t b) noexcept { return values_(a, i, b); }
  double operator()(std::size_t a, std::size_t i, std::size_t b) const noexcept {
    return values_(a, i, b);
  }
  [[nodiscard]] const Array3& array() const noexcept { return values_; }
  [[nodiscard]] Array3& array() noexcept { return values_; }

 private:
  Array3 values_;
};

/// Three-dimensional tensor train  A(i,j,k) = G1(i) G2(j) G3(k)  with boundary ranks 1.
class TTTensor3 {
 public:
  TTTensor3() = default;
  /// Validates rank agreement, unit boundary ranks and finiteness.
  TTTensor3(std::array<Core, 3> cores, Centering centering);

  /// Canonical zero tensor: ranks (1,1), zero cores.
  static TTTensor3 zeros(Shape3 modes, Centering centering);

  [[nodiscard]] const Core& core(std::size_t l) const noexcept { return cores_[l]; }
  [[nodiscard]] const std::array<Core, 3>& cores() const noexcept { return cores_; }
  [[nodiscard]] Centering centering() const noexcept { return centering_; }
  [[nodiscard]] Shape3 mode_sizes() const noexcept {
    return {cores_[0].mode(), cores_[1].mode(), cores_[2].mode()};
  }
  /// Internal ranks (r1, r2).
  [[nodiscard]] std::array<std::size_t, 2> ranks() const noexcept {
    return {cores_[0].right_rank(), cores_[1].right_rank()};
  }
  [[nodiscard]] std::size_t max_rank() const noexcept;
  /// Number of stored core entries: n1 r1 + r1 n2 r2 + r2 n3.
  [[nodiscard]] std::size_t storage() const noexcept;

  /// A(i,j,k); throws BoundsError outside the mode sizes.
  [[nodiscard]] double operator()(std::size_t i, std::size_t j, std::size_t k) const;

 private:
  std::array<Core, 3> cores_;
  Centering centering_ = Centering::vertex;
};

/// Optional outputs of a rank truncation.
struct RoundDiagnostics {
  bool cap_active = false;  ///< max_rank removed singular values the eps test would have kept
  std::array<std::size_t, 2> ranks_before{0, 0};
  std::array<std::size_t, 2> ranks_after{0, 0};
};

/// Entry cap used by to_full (doubles); 2^27 entries is 1 GiB.
inline constexpr std::size_t kDefaultDenseEntryCap = std::size_t{1} << 27;

// TT-SVD with relative threshold: ||T - TT||_F <= eps ||T||_F.
[[nodiscard]] TTTensor3 build_from_full(const DenseField3& t, double eps,
                                        std::optional<std::size_t> max_rank = std::nullopt,
                                        RoundDiagnostics* diag = nullptr);

[[nodiscard]] TTTensor3 build_rank1(std::span<const double> a, std::span<const double> b,
                                    std::span<const double> c, Centering centering);

[[nodiscard]] double eval(const TTTensor3& a, std::size_t i, std::size_t j, std::size_t k);

[[nodiscard]] DenseField3 to_full(const TTTensor3& a,
                                  std::size_t entry_cap = kDefaultDenseEntryCap);

/// Exact sum; ranks add, nothing is truncated.
[[nodiscard]] TTTensor3 add(const TTTensor3& a, const TTTensor3& b);

[[nodiscard]] TTTensor3 scale(const TTTensor3& a, double s);

/// alpha*a + beta*b without truncation (convenience over add/scale).
[[nodiscard]] TTTensor3 axpby(double alpha, const TTTensor3& a, double beta, const TTTensor3& b);

/// Entrywise product with the rank-1 tensor vx (x) vy (x) vz; ranks unchanged.
[[nodiscard]] TTTensor3 hadamard_rank1(const TTTensor3& a, std::span<const double> vx,
                                       std::span<const double> vy, std::span<const double> vz);

[[nodiscard]] double inner(const TTTensor3& a, const TTTensor3& b);
[[nodiscard]] double norm(const TTTensor3& a);

/// Orthogonalize right-to-left, then truncate left-to-right with per-separation
/// budget eps*||A||_F/sqrt(2).
[[nodiscard]] TTTensor3 round(const TTTensor3& a, double eps,
                              std::optional<std::size_t> max_rank = std::nullopt,
                              RoundDiagnostics* diag = nullptr);

}  // namespace ttheat
