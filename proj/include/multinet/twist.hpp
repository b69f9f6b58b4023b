#pragma once

#include <array>
#include <cmath>
#include <vector>

#include "multinet/decomposition.hpp"

namespace multinet {

enum class IterationType { kTwist, kTucker };

struct TwistConfig {
  Dims3 ranks{2, 2, 2};
  IterationType type = IterationType::kTwist;
  double delta1 = 1000.0;  ///< mode-1 row-norm cap applied before each SVD
  double delta2 = 1000.0;  ///< mode-2 row-norm cap
  int max_iter = 25;
  double tol = 1e-5;  ///< on the largest projector Frobenius change per sweep
};

template <typename Scalar>
struct EmbeddingResult {
  Tensor3<Scalar> core;             ///< t x1 U1' x2 U2' x3 U3'
  MatrixX<Scalar> node_embedding;   ///< U1
  MatrixX<Scalar> mode2_factor;     ///< U2
  MatrixX<Scalar> layer_embedding;  ///< U3
  int iterations = 0;
  bool converged = false;
  std::vector<Scalar> core_norm_trace;  ///< ||core|| after each sweep
};

/// Core ranks for an m-type, K-community mixture model:
/// (m*K - (m-1), m*K - (m-1), m).
inline Dims3 defaultRanks(Index m, Index K) {
  if (m < 1 || K < 1) throw ArgumentError("defaultRanks requires m >= 1 and K >= 1");
  const Index r = m * K - (m - 1);
  return {r, r, m};
}

/// Warm start for powerIteration: truncated HOSVD factors of t.
template <typename Scalar>
std::array<MatrixX<Scalar>, 3> initializationMmsbm(const Tensor3<Scalar>& t,
                                                   const Dims3& ranks) {
  return hosvd(t, ranks).factors;
}

namespace detail {

/// sqrt(||UU' - VV'||_F^2) for orthonormal-column U, V, without forming the
/// projectors: ||UU' - VV'||_F^2 = rank(U) + rank(V) - 2 ||U'V||_F^2.
template <typename Scalar>
Scalar projectorDistance(const MatrixX<Scalar>& u, const MatrixX<Scalar>& v) {
  const Scalar cross = (u.transpose() * v).squaredNorm();
  const Scalar gap = static_cast<Scalar>(u.cols() + v.cols()) - 2 * cross;
  return std::sqrt(std::max(Scalar(0), gap));
}

}  // namespace detail

/// Alternating (HOOI) power iteration with optional row-norm regularization.
///
/// Each sweep updates modes 1, 2, 3 in order. For mode 1 (resp. 2) the tensor
/// is first compressed along the other two modes, unfolded, and, when type is
/// kTwist, rows of the unfolding with norm above delta1 (resp. delta2) are
/// scaled down onto the bound before taking top singular vectors. Mode 3 is
/// never regularized. With deltas so large that no row is touched, kTwist and
/// kTucker produce bit-identical results. Convergence is declared when the
/// largest projector change across the three factors is at most tol.
template <typename Scalar>
EmbeddingResult<Scalar> powerIteration(const Tensor3<Scalar>& t, const TwistConfig& cfg,
                                       const std::array<MatrixX<Scalar>, 3>& init) {
  for (int mode = 1; mode <= 3; ++mode) {
    const Index r = cfg.ranks[static_cast<std::size_t>(mode - 1)];
    if (r < 1 || r > t.dim(mode))
      throw ArgumentError("powerIteration: rank " + std::to_string(r) +
                          " out of range for mode " + std::to_string(mode) + " of " +
                          dimsToString(t.dims()));
    const auto& u0 = init[static_cast<std::size_t>(mode - 1)];
    if (u0.rows() != t.dim(mode) || u0.cols() != r)
      throw ArgumentError("powerIteration: initialization factor for mode " +
                          std::to_string(mode) + " is " + std::to_string(u0.rows()) +
                          " x " + std::to_string(u0.cols()) + ", expected " +
                          std::to_string(t.dim(mode)) + " x " + std::to_string(r));
  }
  if (!(cfg.delta1 > 0) || !(cfg.delta2 > 0))
    throw ArgumentError("powerIteration: delta1 and delta2 must be positive");
  if (cfg.max_iter < 1) throw ArgumentError("powerIteration: max_iter must be >= 1");
  if (!(cfg.tol > 0)) throw ArgumentError("powerIteration: tol must be positive");

  const bool regularize = cfg.type == IterationType::kTwist;
  auto u = init;
  EmbeddingResult<Scalar> out;
  for (int sweep = 1; sweep <= cfg.max_iter; ++sweep) {
    const auto previous = u;

    MatrixX<Scalar> g = unfold(modeMultiply(modeMultiply(t, u[1].transpose(), 2),
                                            u[2].transpose(), 3),
                               1);
    if (regularize) clampRowNorms(g, static_cast<Scalar>(cfg.delta1));
    u[0] = topSingularVectors(g, cfg.ranks[0]);

    g = unfold(modeMultiply(modeMultiply(t, u[0].transpose(), 1), u[2].transpose(), 3), 2);
    if (regularize) clampRowNorms(g, static_cast<Scalar>(cfg.delta2));
    u[1] = topSingularVectors(g, cfg.ranks[1]);

    g = unfold(modeMultiply(modeMultiply(t, u[0].transpose(), 1), u[1].transpose(), 2), 3);
    u[2] = topSingularVectors(g, cfg.ranks[2]);

    out.core_norm_trace.push_back((u[2].transpose() * g).norm());
    out.iterations = sweep;

    Scalar change = 0;
    for (std::size_t k = 0; k < 3; ++k)
      change = std::max(change, detail::projectorDistance(u[k], previous[k]));
    if (change <= static_cast<Scalar>(cfg.tol)) {
      out.converged = true;
      break;
    }
  }
  out.core = tuckerProduct(t, u[0].transpose(), u[1].transpose(), u[2].transpose());
  out.node_embedding = u[0];
  out.mode2_factor = u[1];
  out.layer_embedding = u[2];
  return out;
}

}  // namespace multinet
