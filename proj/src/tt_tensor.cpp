#include "ttheat/tt_tensor.hpp"

#include <Eigen/Dense>
#include <Eigen/SVD>
#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "ttheat/errors.hpp"

namespace ttheat {

namespace {

using RMat = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
using RMap = Eigen::Map<RMat>;
using CRMap = Eigen::Map<const RMat>;
using SliceMap = Eigen::Map<const RMat, 0, Eigen::OuterStride<>>;

// (r0*n) x r1 view of a core.
CRMap left_unfolding(const Core& c) {
  return {c.array().data(), static_cast<Eigen::Index>(c.left_rank() * c.mode()),
          static_cast<Eigen::Index>(c.right_rank())};
}
// r0 x (n*r1) view of a core.
CRMap right_unfolding(const Core& c) {
  return {c.array().data(), static_cast<Eigen::Index>(c.left_rank()),
          static_cast<Eigen::Index>(c.mode() * c.right_rank())};
}
SliceMap slice(const Core& c, std::size_t i) {
  const auto r1 = static_cast<Eigen::Index>(c.right_rank());
  return {c.array().data() + i * c.right_rank(), static_cast<Eigen::Index>(c.left_rank()), r1,
          Eigen::OuterStride<>(static_cast<Eigen::Index>(c.mode()) * r1)};
}

Core core_from_matrix(const RMat& m, std::size_t left_rank, std::size_t mode,
                      std::size_t right_rank) {
  Core c(left_rank, mode, right_rank);
  std::copy(m.data(), m.data() + m.size(), c.array().data());
  return c;
}

// Smallest rank r >= 1 whose discarded tail satisfies sqrt(sum_{i>=r} s_i^2) <= budget.
std::size_t truncation_rank(const Eigen::VectorXd& s, double budget) {
  const auto n = static_cast<std::size_t>(s.size());
  double tail = 0.0;
  std::size_t r = n;
  while (r > 1) {
    const double next = tail + s[static_cast<Eigen::Index>(r - 1)] * s[static_cast<Eigen::Index>(r - 1)];
    if (std::sqrt(next) > budget) break;
    tail = next;
    --r;
  }
  return std::max<std::size_t>(r, 1);
}

std::size_t apply_cap(std::size_t r, std::optional<std::size_t> max_rank, bool& cap_active) {
  if (max_rank && r > *max_rank) {
    cap_active = true;
    return std::max<std::size_t>(*max_rank, 1);
  }
  return r;
}

void require_same_modes(const TTTensor3& a, const TTTensor3& b) {
  if (a.mode_sizes() != b.mode_sizes()) throw InvalidInput("tensor train mode sizes differ");
}

}  // namespace

TTTensor3::TTTensor3(std::array<Core, 3> cores, Centering centering)
    : cores_(std::move(cores)), centering_(centering) {
  if (cores_[0].left_rank() != 1 || cores_[2].right_rank() != 1)
    throw InvalidInput("tensor train boundary ranks must be 1");
  if (cores_[0].right_rank() != cores_[1].left_rank() ||
      cores_[1].right_rank() != cores_[2].left_rank())
    throw InvalidInput("tensor train adjacent ranks disagree");
  for (const auto& c : cores_) {
    if (c.mode() == 0 || c.left_rank() == 0 || c.right_rank() == 0)
      throw InvalidInput("tensor train core has an empty dimension");
    if (!c.array().all_finite()) throw InvalidInput("tensor train core has non-finite entries");
  }
}

TTTensor3 TTTensor3::zeros(Shape3 modes, Centering centering) {
  return TTTensor3({Core(1, modes[0], 1), Core(1, modes[1], 1), Core(1, modes[2], 1)}, centering);
}

std::size_t TTTensor3::max_rank() const noexcept {
  return std::max(cores_[0].right_rank(), cores_[1].right_rank());
}

std::size_t TTTensor3::storage() const noexcept {
  std::size_t s = 0;
  for (const auto& c : cores_) s += c.array().size();
  return s;
}

double TTTensor3::operator()(std::size_t i, std::size_t j, std::size_t k) const {
  return eval(*this, i, j, k);
}

TTTensor3 build_from_full(const DenseField3& t, double eps, std::optional<std::size_t> max_rank,
                          RoundDiagnostics* diag) {
  if (eps < 0.0 || !std::isfinite(eps)) throw InvalidInput("eps must be a finite nonnegative value");
  if (t.values.empty()) throw InvalidInput("cannot decompose an empty tensor");
  if (!t.values.all_finite()) throw InvalidInput("input tensor has non-finite entries");
  const auto [n1, n2, n3] = t.shape();
  const double total = t.values.frobenius_norm();
  if (total == 0.0) {
    if (diag) *diag = RoundDiagnostics{false, {1, 1}, {1, 1}};
    return TTTensor3::zeros(t.shape(), t.centering);
  }
  const double budget = eps * total / std::sqrt(2.0);
  bool cap_active = false;

  CRMap a1(t.values.data(), static_cast<Eigen::Index>(n1), static_cast<Eigen::Index>(n2 * n3));
  Eigen::BDCSVD<RMat> svd1(a1, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const std::size_t full1 = truncation_rank(svd1.singularValues(), budget);
  const std::size_t r1 = apply_cap(full1, max_rank, cap_active);
  const auto er1 = static_cast<Eigen::Index>(r1);
  RMat g1 = svd1.matrixU().leftCols(er1);
  RMat w = svd1.singularValues().head(er1).asDiagonal() * svd1.matrixV().leftCols(er1).transpose();

  // w is r1 x (n2*n3); the same row-major buffer is (r1*n2) x n3.
  RMap w2(w.data(), static_cast<Eigen::Index>(r1 * n2), static_cast<Eigen::Index>(n3));
  Eigen::BDCSVD<RMat> svd2(w2, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const std::size_t full2 = truncation_rank(svd2.singularValues(), budget);
  const std::size_t r2 = apply_cap(full2, max_rank, cap_active);
  const auto er2 = static_cast<Eigen::Index>(r2);
  RMat g2 = svd2.matrixU().leftCols(er2);
  RMat g3 = svd2.singularValues().head(er2).asDiagonal() * svd2.matrixV().leftCols(er2).transpose();

  if (diag) *diag = RoundDiagnostics{cap_active, {full1, full2}, {r1, r2}};
  return TTTensor3({core_from_matrix(g1, 1, n1, r1), core_from_matrix(g2, r1, n2, r2),
                    core_from_matrix(g3, r2, n3, 1)},
                   t.centering);
}

TTTensor3 build_rank1(std::span<const double> a, std::span<const double> b,
                      std::span<const double> c, Centering centering) {
  if (a.empty() || b.empty() || c.empty()) throw InvalidInput("rank-1 factors must be nonempty");
  std::array<Core, 3> cores;
  const std::array<std::span<const double>, 3> f{a, b, c};
  for (std::size_t l = 0; l < 3; ++l) {
    cores[l] = Core(1, f[l].size(), 1);
    std::copy(f[l].begin(), f[l].end(), cores[l].array().data());
  }
  return TTTensor3(std::move(cores), centering);
}

double eval(const TTTensor3& a, std::size_t i, std::size_t j, std::size_t k) {
  const auto m = a.mode_sizes();
  if (i >= m[0] || j >= m[1] || k >= m[2]) throw BoundsError("tensor train index out of range");
  const Eigen::RowVectorXd v = slice(a.core(0), i) * slice(a.core(1), j) * slice(a.core(2), k);
  return v[0];
}

DenseField3 to_full(const TTTensor3& a, std::size_t entry_cap) {
  const auto [n1, n2, n3] = a.mode_sizes();
  if (n1 * n2 * n3 > entry_cap)
    throw ResourceError("dense reconstruction of " + std::to_string(n1 * n2 * n3) +
                        " entries exceeds the cap");
  const auto [r1, r2] = a.ranks();
  // G1 (n1 x r1) * G2 (r1 x n2 r2) = (n1 n2) x r2 in row-major order.
  RMat g12 = right_unfolding(a.core(0)).reshaped<Eigen::RowMajor>(
                 static_cast<Eigen::Index>(n1), static_cast<Eigen::Index>(r1)) *
             right_unfolding(a.core(1));
  RMap g12v(g12.data(), static_cast<Eigen::Index>(n1 * n2), static_cast<Eigen::Index>(r2));
  DenseField3 out({n1, n2, n3}, a.centering());
  RMap full(out.values.data(), static_cast<Eigen::Index>(n1 * n2), static_cast<Eigen::Index>(n3));
  full.noalias() = g12v * right_unfolding(a.core(2));
  return out;
}

TTTensor3 add(const TTTensor3& a, const TTTensor3& b) {
  require_same_modes(a, b);
  if (a.centering() != b.centering()) throw InvalidInput("cannot add fields of different centering");
  const auto [n1, n2, n3] = a.mode_sizes();
  const auto [ra1, ra2] = a.ranks();
  const auto [rb1, rb2] = b.ranks();
  Core c1(1, n1, ra1 + rb1);
  Core c2(ra1 + rb1, n2, ra2 + rb2);
  Core c3(ra2 + rb2, n3, 1);
  for (std::size_t i = 0; i < n1; ++i) {
    for (std::size_t x = 0; x < ra1; ++x) c1(0, i, x) = a.core(0)(0, i, x);
    for (std::size_t x = 0; x < rb1; ++x) c1(0, i, ra1 + x) = b.core(0)(0, i, x);
  }
  for (std::size_t j = 0; j < n2; ++j) {
    for (std::size_t x = 0; x < ra1; ++x)
      for (std::size_t y = 0; y < ra2; ++y) c2(x, j, y) = a.core(1)(x, j, y);
    for (std::size_t x = 0; x < rb1; ++x)
      for (std::size_t y = 0; y < rb2; ++y) c2(ra1 + x, j, ra2 + y) = b.core(1)(x, j, y);
  }
  for (std::size_t k = 0; k < n3; ++k) {
    for (std::size_t x = 0; x < ra2; ++x) c3(x, k, 0) = a.core(2)(x, k, 0);
    for (std::size_t x = 0; x < rb2; ++x) c3(ra2 + x, k, 0) = b.core(2)(x, k, 0);
  }
  return TTTensor3({std::move(c1), std::move(c2), std::move(c3)}, a.centering());
}

TTTensor3 scale(const TTTensor3& a, double s) {
  if (!std::isfinite(s)) throw InvalidInput("scale factor must be finite");
  auto cores = a.cores();
  for (double& v : cores[0].array().values()) v *= s;
  return TTTensor3(std::move(cores), a.centering());
}

TTTensor3 axpby(double alpha, const TTTensor3& a, double beta, const TTTensor3& b) {
  return add(scale(a, alpha), scale(b, beta));
}

TTTensor3 hadamard_rank1(const TTTensor3& a, std::span<const double> vx,
                         std::span<const double> vy, std::span<const double> vz) {
  const auto m = a.mode_sizes();
  if (vx.size() != m[0] || vy.size() != m[1] || vz.size() != m[2])
    throw InvalidInput("hadamard factor lengths do not match the mode sizes");
  auto cores = a.cores();
  const std::array<std::span<const double>, 3> f{vx, vy, vz};
  for (std::size_t l = 0; l < 3; ++l) {
    Core& c = cores[l];
    for (std::size_t x = 0; x < c.left_rank(); ++x)
      for (std::size_t i = 0; i < c.mode(); ++i)
        for (std::size_t y = 0; y < c.right_rank(); ++y) c(x, i, y) *= f[l][i];
  }
  return TTTensor3(std::move(cores), a.centering());
}

double inner(const TTTensor3& a, const TTTensor3& b) {
  require_same_modes(a, b);
  Eigen::MatrixXd m = Eigen::MatrixXd::Ones(1, 1);
  for (std::size_t l = 0; l < 3; ++l) {
    const Core& ca = a.core(l);
    const Core& cb = b.core(l);
    Eigen::MatrixXd next = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(ca.right_rank()),
                                                 static_cast<Eigen::Index>(cb.right_rank()));
    for (std::size_t i = 0; i < ca.mode(); ++i)
      next.noalias() += slice(ca, i).transpose() * (m * slice(cb, i));
    m = std::move(next);
  }
  return m(0, 0);
}

double norm(const TTTensor3& a) { return std::sqrt(std::max(0.0, inner(a, a))); }

TTTensor3 round(const TTTensor3& a, double eps, std::optional<std::size_t> max_rank,
                RoundDiagnostics* diag) {
  if (eps < 0.0 || !std::isfinite(eps)) throw InvalidInput("eps must be a finite nonnegative value");
  const auto [n1, n2, n3] = a.mode_sizes();
  const auto ranks_in = a.ranks();
  // Upper bound for ||A||_F; a norm below round-off of this scale is treated as zero.
  double scale_bound = 1.0;
  for (const auto& c : a.cores()) scale_bound *= c.array().frobenius_norm();

  // Right-to-left orthogonalization: cores 3 and 2 get orthonormal rows.
  RMat g3 = right_unfolding(a.core(2));                  // r2 x n3
  RMat g2 = left_unfolding(a.core(1));                   // (r1 n2) x r2
  RMat g1 = right_unfolding(a.core(0)).reshaped<Eigen::RowMajor>(
      static_cast<Eigen::Index>(n1), static_cast<Eigen::Index>(ranks_in[0]));  // n1 x r1
  std::size_t r1 = ranks_in[0];
  std::size_t r2 = ranks_in[1];
  {
    Eigen::HouseholderQR<Eigen::MatrixXd> qr(g3.transpose());
    const auto k = std::min<Eigen::Index>(g3.cols(), g3.rows());
    Eigen::MatrixXd q = qr.householderQ() * Eigen::MatrixXd::Identity(g3.cols(), k);
    Eigen::MatrixXd r = qr.matrixQR().topRows(k).triangularView<Eigen::Upper>();
    g3 = q.transpose();
    g2 = g2 * r.transpose();
    r2 = static_cast<std::size_t>(k);
  }
  {
    RMat g2r = Eigen::Map<RMat>(g2.data(), static_cast<Eigen::Index>(r1),
                                static_cast<Eigen::Index>(n2 * r2));
    Eigen::HouseholderQR<Eigen::MatrixXd> qr(g2r.transpose());
    const auto k = std::min<Eigen::Index>(g2r.cols(), g2r.rows());
    Eigen::MatrixXd q = qr.householderQ() * Eigen::MatrixXd::Identity(g2r.cols(), k);
    Eigen::MatrixXd r = qr.matrixQR().topRows(k).triangularView<Eigen::Upper>();
    g2 = q.transpose();  // k x (n2 r2)
    g1 = g1 * r.transpose();
    r1 = static_cast<std::size_t>(k);
  }

  const double total = g1.norm();
  if (total <= 64.0 * std::numeric_limits<double>::epsilon() * scale_bound) {
    if (diag) *diag = RoundDiagnostics{false, ranks_in, {1, 1}};
    return TTTensor3::zeros(a.mode_sizes(), a.centering());
  }
  const double budget = eps * total / std::sqrt(2.0);
  bool cap_active = false;

  // Left-to-right truncation.
  Eigen::BDCSVD<RMat> svd1(g1, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const std::size_t t1 = apply_cap(truncation_rank(svd1.singularValues(), budget), max_rank, cap_active);
  const auto e1 = static_cast<Eigen::Index>(t1);
  RMat c1 = svd1.matrixU().leftCols(e1);
  RMat sv1 = svd1.singularValues().head(e1).asDiagonal() * svd1.matrixV().leftCols(e1).transpose();
  RMat g2new = sv1 * g2;  // t1 x (n2 r2)
  RMap g2left(g2new.data(), static_cast<Eigen::Index>(t1 * n2), static_cast<Eigen::Index>(r2));
  Eigen::BDCSVD<RMat> svd2(g2left, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const std::size_t t2 = apply_cap(truncation_rank(svd2.singularValues(), budget), max_rank, cap_active);
  const auto e2 = static_cast<Eigen::Index>(t2);
  RMat c2 = svd2.matrixU().leftCols(e2);
  RMat c3 = (svd2.singularValues().head(e2).asDiagonal() * svd2.matrixV().leftCols(e2).transpose()) * g3;

  if (diag) *diag = RoundDiagnostics{cap_active, ranks_in, {t1, t2}};
  return TTTensor3({core_from_matrix(c1, 1, n1, t1), core_from_matrix(c2, t1, n2, t2),
                    core_from_matrix(c3, t2, n3, 1)},
                   a.centering());
}

}  // namespace ttheat
