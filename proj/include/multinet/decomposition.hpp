#pragma once

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

#include <algorithm>
#include <array>
#include <cmath>
#include <numeric>
#include <vector>

#include "multinet/tensor.hpp"

namespace multinet {

/// Flips column signs so the entry of largest magnitude in each column is
/// positive; ties go to the lowest row index. Pins the sign ambiguity of
/// singular vectors and eigenvectors so results are reproducible.
template <typename Scalar>
void fixColumnSigns(MatrixX<Scalar>& u) {
  if (u.rows() == 0) return;
  for (Index c = 0; c < u.cols(); ++c) {
    Index pivot = 0;
    Scalar best = std::abs(u(0, c));
    for (Index r = 1; r < u.rows(); ++r) {
      const Scalar mag = std::abs(u(r, c));
      if (mag > best) {
        best = mag;
        pivot = r;
      }
    }
    if (u(pivot, c) < Scalar(0)) u.col(c) = -u.col(c);
  }
}

/// Caps every row of m whose Euclidean norm exceeds bound, rescaling it onto
/// the bound. Rows at or below the bound are untouched (bit-identical).
template <typename Scalar>
void clampRowNorms(MatrixX<Scalar>& m, Scalar bound) {
  for (Index r = 0; r < m.rows(); ++r) {
    const Scalar norm = m.row(r).norm();
    if (norm > bound) m.row(r) *= bound / norm;
  }
}

/// Orthonormal basis of the top-r left singular subspace of m, with the
/// deterministic sign convention of fixColumnSigns.
template <typename Derived>
MatrixX<typename Derived::Scalar> topSingularVectors(const Eigen::MatrixBase<Derived>& m,
                                                     Index r) {
  using Scalar = typename Derived::Scalar;
  if (r < 1 || r > std::min(m.rows(), m.cols()))
    throw ArgumentError("topSingularVectors: r = " + std::to_string(r) +
                        " out of range for a " + std::to_string(m.rows()) + " x " +
                        std::to_string(m.cols()) + " matrix");
  Eigen::BDCSVD<MatrixX<Scalar>> svd(m, Eigen::ComputeThinU);
  MatrixX<Scalar> u = svd.matrixU().leftCols(r);
  fixColumnSigns(u);
  return u;
}

/// Top-r eigenvectors of a symmetric matrix ordered by |eigenvalue|
/// descending (stable: equal magnitudes keep the solver's ascending-value
/// order), signs fixed as in fixColumnSigns.
template <typename Scalar>
MatrixX<Scalar> topEigenvectorsByMagnitude(const MatrixX<Scalar>& s, Index r) {
  if (s.rows() != s.cols())
    throw ArgumentError("topEigenvectorsByMagnitude requires a square matrix, got " +
                        std::to_string(s.rows()) + " x " + std::to_string(s.cols()));
  if (r < 1 || r > s.rows())
    throw ArgumentError("topEigenvectorsByMagnitude: r = " + std::to_string(r) +
                        " out of range for size " + std::to_string(s.rows()));
  Eigen::SelfAdjointEigenSolver<MatrixX<Scalar>> solver(s);
  if (solver.info() != Eigen::Success)
    throw NumericalError("symmetric eigendecomposition failed to converge");
  const auto& evals = solver.eigenvalues();
  std::vector<Index> order(static_cast<std::size_t>(s.rows()));
  std::iota(order.begin(), order.end(), Index(0));
  std::stable_sort(order.begin(), order.end(), [&](Index a, Index b) {
    return std::abs(evals[a]) > std::abs(evals[b]);
  });
  MatrixX<Scalar> u(s.rows(), r);
  for (Index c = 0; c < r; ++c) u.col(c) = solver.eigenvectors().col(order[static_cast<std::size_t>(c)]);
  fixColumnSigns(u);
  return u;
}

template <typename Scalar>
struct Hosvd {
  Tensor3<Scalar> core;                     ///< t x1 U1' x2 U2' x3 U3'
  std::array<MatrixX<Scalar>, 3> factors;   ///< orthonormal columns per mode
};

/// Truncated higher-order SVD: per-mode top singular vectors of the
/// unfoldings, core by projection. Exact when multilinear ranks of t are
/// within the requested ranks.
template <typename Scalar>
Hosvd<Scalar> hosvd(const Tensor3<Scalar>& t, const Dims3& ranks) {
  for (int mode = 1; mode <= 3; ++mode) {
    const Index r = ranks[static_cast<std::size_t>(mode - 1)];
    if (r < 1 || r > t.dim(mode))
      throw ArgumentError("hosvd: rank " + std::to_string(r) + " out of range for mode " +
                          std::to_string(mode) + " of " + dimsToString(t.dims()));
  }
  Hosvd<Scalar> out;
  for (int mode = 1; mode <= 3; ++mode)
    out.factors[static_cast<std::size_t>(mode - 1)] =
        topSingularVectors(unfold(t, mode), ranks[static_cast<std::size_t>(mode - 1)]);
  out.core = tuckerProduct(t, out.factors[0].transpose(), out.factors[1].transpose(),
                           out.factors[2].transpose());
  return out;
}

}  // namespace multinet
