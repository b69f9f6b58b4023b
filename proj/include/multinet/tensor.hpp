#pragma once

#include <Eigen/Dense>

#include <array>
#include <string>
#include <type_traits>
#include <utility>

#include "multinet/errors.hpp"

namespace multinet {

template <typename Scalar>
using MatrixX = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
template <typename Scalar>
using VectorX = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

using Index = Eigen::Index;
using Dims3 = std::array<Index, 3>;

inline std::string dimsToString(const Dims3& d) {
  return "(" + std::to_string(d[0]) + ", " + std::to_string(d[1]) + ", " +
         std::to_string(d[2]) + ")";
}

inline void checkMode(int mode) {
  if (mode < 1 || mode > 3)
    throw ArgumentError("tensor mode must be 1, 2 or 3, got " + std::to_string(mode));
}

/// Dense order-3 tensor.
///
/// Entries are stored mode-1 fastest: (i, j, k) lives at linear offset
/// i + n1*(j + n2*k). Frontal slice k is therefore a contiguous column-major
/// n1 x n2 block and layer(k) exposes it as an Eigen map without copying.
template <typename Scalar_>
class Tensor3 {
 public:
  using Scalar = Scalar_;
  using ConstLayerMap = Eigen::Map<const MatrixX<Scalar>>;
  using LayerMap = Eigen::Map<MatrixX<Scalar>>;

  Tensor3() : dims_{0, 0, 0} {}

  /// Zero tensor of the given shape.
  Tensor3(Index n1, Index n2, Index n3) : dims_{n1, n2, n3} {
    checkDims(dims_);
    values_ = VectorX<Scalar>::Zero(n1 * n2 * n3);
  }

  explicit Tensor3(const Dims3& dims) : Tensor3(dims[0], dims[1], dims[2]) {}

  /// Adopts an existing linearized value vector (mode-1 fastest order).
  Tensor3(const Dims3& dims, VectorX<Scalar> values)
      : dims_(dims), values_(std::move(values)) {
    checkDims(dims_);
    if (values_.size() != dims_[0] * dims_[1] * dims_[2])
      throw ArgumentError("value count " + std::to_string(values_.size()) +
                          " does not match dimensions " + dimsToString(dims_));
  }

  const Dims3& dims() const { return dims_; }
  Index dim(int mode) const {
    checkMode(mode);
    return dims_[static_cast<std::size_t>(mode - 1)];
  }
  Index size() const { return values_.size(); }
  bool empty() const { return values_.size() == 0; }

  Scalar operator()(Index i, Index j, Index k) const { return values_[offset(i, j, k)]; }
  Scalar& operator()(Index i, Index j, Index k) { return values_[offset(i, j, k)]; }

  /// Frontal slice k as an n1 x n2 matrix view.
  ConstLayerMap layer(Index k) const {
    eigen_assert(k >= 0 && k < dims_[2]);
    return ConstLayerMap(values_.data() + k * dims_[0] * dims_[1], dims_[0], dims_[1]);
  }
  LayerMap layer(Index k) {
    eigen_assert(k >= 0 && k < dims_[2]);
    return LayerMap(values_.data() + k * dims_[0] * dims_[1], dims_[0], dims_[1]);
  }

  const VectorX<Scalar>& values() const { return values_; }
  VectorX<Scalar>& values() { return values_; }

  Scalar norm() const { return values_.norm(); }
  Scalar maxAbs() const {
    return values_.size() == 0 ? Scalar(0) : values_.cwiseAbs().maxCoeff();
  }

  friend bool operator==(const Tensor3& a, const Tensor3& b) {
    return a.dims_ == b.dims_ &&
           (a.values_.size() == 0 || (a.values_.array() == b.values_.array()).all());
  }
  friend bool operator!=(const Tensor3& a, const Tensor3& b) { return !(a == b); }

 private:
  static void checkDims(const Dims3& d) {
    if (d[0] < 1 || d[1] < 1 || d[2] < 1)
      throw ArgumentError("Tensor3 dimensions must be positive, got " + dimsToString(d));
  }

  Index offset(Index i, Index j, Index k) const {
    eigen_assert(i >= 0 && i < dims_[0] && j >= 0 && j < dims_[1] && k >= 0 && k < dims_[2]);
    return i + dims_[0] * (j + dims_[1] * k);
  }

  Dims3 dims_;
  VectorX<Scalar> values_;
};

using Tensor3d = Tensor3<double>;

/// Mode-k unfolding. Row index is the mode-k index; among the remaining two
/// modes the lower-numbered one varies fastest along the columns:
///   mode 1: n1 x (n2*n3), column j + n2*k
///   mode 2: n2 x (n1*n3), column i + n1*k
///   mode 3: n3 x (n1*n2), column i + n1*j
template <typename Scalar>
MatrixX<Scalar> unfold(const Tensor3<Scalar>& t, int mode) {
  checkMode(mode);
  const auto& [n1, n2, n3] = t.dims();
  switch (mode) {
    case 1:
      // The storage order is already (i; j + n2*k) column-major.
      return Eigen::Map<const MatrixX<Scalar>>(t.values().data(), n1, n2 * n3);
    case 2: {
      MatrixX<Scalar> out(n2, n1 * n3);
      for (Index k = 0; k < n3; ++k) out.middleCols(k * n1, n1) = t.layer(k).transpose();
      return out;
    }
    default: {
      MatrixX<Scalar> out(n3, n1 * n2);
      for (Index k = 0; k < n3; ++k)
        out.row(k) = Eigen::Map<const VectorX<Scalar>>(t.values().data() + k * n1 * n2,
                                                       n1 * n2)
                         .transpose();
      return out;
    }
  }
}

/// Inverse of unfold: rebuilds the tensor of shape dims from its mode-k
/// unfolding. The matrix shape must match exactly.
template <typename Derived>
Tensor3<typename Derived::Scalar> refold(const Eigen::MatrixBase<Derived>& mat, int mode,
                                         const Dims3& dims) {
  using Scalar = typename Derived::Scalar;
  checkMode(mode);
  const Index n1 = dims[0], n2 = dims[1], n3 = dims[2];
  if (n1 < 1 || n2 < 1 || n3 < 1)
    throw ArgumentError("refold: target dimensions must be positive, got " +
                        dimsToString(dims));
  const Index expected_rows = dims[static_cast<std::size_t>(mode - 1)];
  const Index expected_cols = n1 * n2 * n3 / expected_rows;
  if (mat.rows() != expected_rows || mat.cols() != expected_cols)
    throw ArgumentError("refold: matrix " + std::to_string(mat.rows()) + " x " +
                        std::to_string(mat.cols()) + " does not match mode-" +
                        std::to_string(mode) + " unfolding of " + dimsToString(dims));
  const MatrixX<Scalar> m = mat;  // evaluate expressions once
  Tensor3<Scalar> t(dims);
  switch (mode) {
    case 1:
      t.values() = Eigen::Map<const VectorX<Scalar>>(m.data(), m.size());
      break;
    case 2:
      for (Index k = 0; k < n3; ++k) t.layer(k) = m.middleCols(k * n1, n1).transpose();
      break;
    default:
      for (Index k = 0; k < n3; ++k)
        Eigen::Map<VectorX<Scalar>>(t.values().data() + k * n1 * n2, n1 * n2) =
            m.row(k).transpose();
      break;
  }
  return t;
}

/// Mode-k product t x_k m: contracts the mode-k fiber index with the columns
/// of m, i.e. unfold(result, k) = m * unfold(t, k). m must have t.dim(k)
/// columns; the result's mode-k dimension becomes m.rows().
template <typename Scalar, typename Derived>
Tensor3<Scalar> modeMultiply(const Tensor3<Scalar>& t, const Eigen::MatrixBase<Derived>& m,
                             int mode) {
  static_assert(std::is_same_v<typename Derived::Scalar, Scalar>,
                "tensor and matrix scalar types must match");
  checkMode(mode);
  if (m.cols() != t.dim(mode))
    throw ArgumentError("modeMultiply: matrix has " + std::to_string(m.cols()) +
                        " columns but mode " + std::to_string(mode) + " of " +
                        dimsToString(t.dims()) + " has size " +
                        std::to_string(t.dim(mode)));
  if (m.rows() < 1) throw ArgumentError("modeMultiply: matrix must have at least one row");
  Dims3 dims = t.dims();
  dims[static_cast<std::size_t>(mode - 1)] = m.rows();
  return refold((m * unfold(t, mode)).eval(), mode, dims);
}

/// core x1 U1 x2 U2 x3 U3.
template <typename Scalar, typename D1, typename D2, typename D3>
Tensor3<Scalar> tuckerProduct(const Tensor3<Scalar>& core, const Eigen::MatrixBase<D1>& u1,
                              const Eigen::MatrixBase<D2>& u2,
                              const Eigen::MatrixBase<D3>& u3) {
  return modeMultiply(modeMultiply(modeMultiply(core, u1, 1), u2, 2), u3, 3);
}

}  // namespace multinet
