#pragma once

#include <algorithm>

#include "multinet/decomposition.hpp"

namespace multinet {

enum class SpecEmbeddingType { kNode, kLayer };

/// Flat spectral embeddings of a multilayer adjacency tensor.
///
/// kNode: top eigenvectors (by |eigenvalue|) of the layer sum, the Sum-Adj
/// baseline. The sum is symmetrized as (S + S') / 2 to absorb asymmetric
/// input; slices must be square.
/// kLayer: top left singular vectors of the mode-3 unfolding, so each row
/// embeds one layer.
template <typename Scalar>
MatrixX<Scalar> specEmbedding(const Tensor3<Scalar>& t, Index rank,
                              SpecEmbeddingType type) {
  if (type == SpecEmbeddingType::kNode) {
    if (t.dim(1) != t.dim(2))
      throw ArgumentError("node spectral embedding requires square slices, got " +
                          dimsToString(t.dims()));
    const Index n = t.dim(1);
    if (rank < 1 || rank > n)
      throw ArgumentError("node spectral embedding: rank " + std::to_string(rank) +
                          " out of range for " + std::to_string(n) + " nodes");
    MatrixX<Scalar> sum = MatrixX<Scalar>::Zero(n, n);
    for (Index k = 0; k < t.dim(3); ++k) sum += t.layer(k);
    MatrixX<Scalar> sym = (sum + sum.transpose()) * Scalar(0.5);
    return topEigenvectorsByMagnitude(sym, rank);
  }
  const Index max_rank = std::min(t.dim(3), t.dim(1) * t.dim(2));
  if (rank < 1 || rank > max_rank)
    throw ArgumentError("layer spectral embedding: rank " + std::to_string(rank) +
                        " out of range for " + std::to_string(t.dim(3)) + " layers");
  return topSingularVectors(unfold(t, 3), rank);
}

}  // namespace multinet
