#pragma once

#include <cstdint>
#include <vector>

#include "multinet/tensor.hpp"

namespace multinet {

/// What the rows of an embedding represent; carried through so downstream
/// reporting can tell node from network clusterings.
enum class ItemKind { kNode, kNetwork };

struct ClusterAssignment {
  std::vector<int> labels;  ///< one label per row; -1 marks DBSCAN noise
  ItemKind kind = ItemKind::kNode;
  int clusters = 0;  ///< number of non-noise clusters
};

struct KmeansOptions {
  int restarts = 20;
  int max_iter = 300;
  bool normalize_rows = false;  ///< project nonzero rows onto the unit sphere first
};

/// Lloyd's algorithm with k-means++ seeding, best of `restarts` runs by
/// within-cluster sum of squares (ties keep the earliest restart). An empty
/// cluster is re-seeded at the point farthest from its assigned centroid.
ClusterAssignment communityClusterKm(const Eigen::MatrixXd& embedding, ItemKind kind,
                                     int cluster_number, std::uint64_t seed,
                                     const KmeansOptions& opts = {});

/// Euclidean DBSCAN. Neighborhoods are closed balls of radius eps and include
/// the point itself; points with at least min_pts neighbors are cores. Border
/// points join the cluster of their lowest-index core neighbor; noise is -1.
ClusterAssignment communityClusterDbscan(const Eigen::MatrixXd& embedding, ItemKind kind,
                                         double eps, int min_pts);

/// Fraction of items whose predicted label disagrees with the ground truth
/// under the best label matching (Hungarian assignment on the confusion
/// matrix). Predicted -1 (noise) always counts as an error.
double misclusteringRate(const std::vector<int>& predicted,
                         const std::vector<int>& truth);

}  // namespace multinet
