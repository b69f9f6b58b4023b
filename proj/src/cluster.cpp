#include "multinet/cluster.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <vector>

#include "multinet/rng.hpp"

namespace multinet {

namespace {

constexpr std::uint64_t kKmeansStream = 21;

struct LloydRun {
  std::vector<int> labels;
  double wcss = std::numeric_limits<double>::infinity();
};

// One seeded k-means++ / Lloyd run.
LloydRun lloydOnce(const Eigen::MatrixXd& x, int k, Rng rng, int max_iter) {
  const Index n = x.rows();
  Eigen::MatrixXd centroids(k, x.cols());

  // k-means++ seeding
  centroids.row(0) = x.row(static_cast<Index>(rng.below(static_cast<std::uint64_t>(n))));
  std::vector<double> dist2(static_cast<std::size_t>(n),
                            std::numeric_limits<double>::infinity());
  for (int c = 1; c < k; ++c) {
    double total = 0;
    for (Index i = 0; i < n; ++i) {
      const double d = (x.row(i) - centroids.row(c - 1)).squaredNorm();
      auto& best = dist2[static_cast<std::size_t>(i)];
      best = std::min(best, d);
      total += best;
    }
    Index pick = 0;
    if (total > 0) {
      const double u = rng.uniform() * total;
      double cum = 0;
      pick = n - 1;
      for (Index i = 0; i < n; ++i) {
        cum += dist2[static_cast<std::size_t>(i)];
        if (cum > u) {
          pick = i;
          break;
        }
      }
    } else {
      pick = static_cast<Index>(rng.below(static_cast<std::uint64_t>(n)));
    }
    centroids.row(c) = x.row(pick);
  }

  LloydRun run;
  run.labels.assign(static_cast<std::size_t>(n), 0);
  std::vector<int> previous;
  for (int iter = 0; iter < max_iter; ++iter) {
    // assignment (ties to the lowest centroid index)
    for (Index i = 0; i < n; ++i) {
      int best_c = 0;
      double best_d = (x.row(i) - centroids.row(0)).squaredNorm();
      for (int c = 1; c < k; ++c) {
        const double d = (x.row(i) - centroids.row(c)).squaredNorm();
        if (d < best_d) {
          best_d = d;
          best_c = c;
        }
      }
      run.labels[static_cast<std::size_t>(i)] = best_c;
    }

    // re-seed any empty cluster at the point farthest from its centroid
    std::vector<Index> counts(static_cast<std::size_t>(k), 0);
    for (int lab : run.labels) ++counts[static_cast<std::size_t>(lab)];
    for (int c = 0; c < k; ++c) {
      if (counts[static_cast<std::size_t>(c)] > 0) continue;
      Index farthest = 0;
      double far_d = -1;
      for (Index i = 0; i < n; ++i) {
        const int lab = run.labels[static_cast<std::size_t>(i)];
        if (counts[static_cast<std::size_t>(lab)] <= 1) continue;
        const double d = (x.row(i) - centroids.row(lab)).squaredNorm();
        if (d > far_d) {
          far_d = d;
          farthest = i;
        }
      }
      --counts[static_cast<std::size_t>(run.labels[static_cast<std::size_t>(farthest)])];
      run.labels[static_cast<std::size_t>(farthest)] = c;
      ++counts[static_cast<std::size_t>(c)];
      centroids.row(c) = x.row(farthest);
    }

    if (run.labels == previous) break;
    previous = run.labels;

    // update
    centroids.setZero();
    for (Index i = 0; i < n; ++i)
      centroids.row(run.labels[static_cast<std::size_t>(i)]) += x.row(i);
    for (int c = 0; c < k; ++c)
      centroids.row(c) /= static_cast<double>(counts[static_cast<std::size_t>(c)]);
  }

  // final centroids from the final assignment, then the objective
  Eigen::MatrixXd means = Eigen::MatrixXd::Zero(k, x.cols());
  std::vector<Index> counts(static_cast<std::size_t>(k), 0);
  for (Index i = 0; i < n; ++i) {
    means.row(run.labels[static_cast<std::size_t>(i)]) += x.row(i);
    ++counts[static_cast<std::size_t>(run.labels[static_cast<std::size_t>(i)])];
  }
  for (int c = 0; c < k; ++c)
    if (counts[static_cast<std::size_t>(c)] > 0)
      means.row(c) /= static_cast<double>(counts[static_cast<std::size_t>(c)]);
  run.wcss = 0;
  for (Index i = 0; i < n; ++i)
    run.wcss += (x.row(i) - means.row(run.labels[static_cast<std::size_t>(i)])).squaredNorm();
  return run;
}

}  // namespace

ClusterAssignment communityClusterKm(const Eigen::MatrixXd& embedding, ItemKind kind,
                                     int cluster_number, std::uint64_t seed,
                                     const KmeansOptions& opts) {
  const Index n = embedding.rows();
  if (n < 1) throw ArgumentError("k-means needs at least one row");
  if (cluster_number < 1 || cluster_number > n)
    throw ArgumentError("cluster number " + std::to_string(cluster_number) +
                        " out of range for " + std::to_string(n) + " rows");
  if (opts.restarts < 1 || opts.max_iter < 1)
    throw ArgumentError("k-means restarts and max_iter must be >= 1");

  Eigen::MatrixXd x = embedding;
  if (opts.normalize_rows) {
    for (Index i = 0; i < n; ++i) {
      const double norm = x.row(i).norm();
      if (norm > 0) x.row(i) /= norm;
    }
  }

  Rng root(seed);
  LloydRun best;
  for (int rep = 0; rep < opts.restarts; ++rep) {
    LloydRun run = lloydOnce(x, cluster_number, root.stream(kKmeansStream,
                                                            static_cast<std::uint64_t>(rep)),
                             opts.max_iter);
    if (run.wcss < best.wcss) best = std::move(run);
  }

  ClusterAssignment out;
  out.labels = std::move(best.labels);
  out.kind = kind;
  out.clusters = cluster_number;
  return out;
}

ClusterAssignment communityClusterDbscan(const Eigen::MatrixXd& embedding, ItemKind kind,
                                         double eps, int min_pts) {
  if (!(eps > 0)) throw ArgumentError("DBSCAN eps must be positive");
  if (min_pts < 1) throw ArgumentError("DBSCAN min_pts must be >= 1");
  const Index n = embedding.rows();
  if (n < 1) throw ArgumentError("DBSCAN needs at least one row");

  const double eps2 = eps * eps;
  std::vector<std::vector<Index>> neighbors(static_cast<std::size_t>(n));
  for (Index i = 0; i < n; ++i)
    for (Index j = 0; j < n; ++j)
      if ((embedding.row(i) - embedding.row(j)).squaredNorm() <= eps2)
        neighbors[static_cast<std::size_t>(i)].push_back(j);

  std::vector<bool> core(static_cast<std::size_t>(n));
  for (Index i = 0; i < n; ++i)
    core[static_cast<std::size_t>(i)] =
        neighbors[static_cast<std::size_t>(i)].size() >= static_cast<std::size_t>(min_pts);

  ClusterAssignment out;
  out.kind = kind;
  out.labels.assign(static_cast<std::size_t>(n), -1);
  int next_cluster = 0;

  // expand clusters from core points in index order
  std::vector<Index> frontier;
  for (Index i = 0; i < n; ++i) {
    if (!core[static_cast<std::size_t>(i)] || out.labels[static_cast<std::size_t>(i)] != -1)
      continue;
    const int cluster = next_cluster++;
    out.labels[static_cast<std::size_t>(i)] = cluster;
    frontier.assign(1, i);
    while (!frontier.empty()) {
      const Index p = frontier.back();
      frontier.pop_back();
      for (Index q : neighbors[static_cast<std::size_t>(p)]) {
        if (!core[static_cast<std::size_t>(q)]) continue;
        if (out.labels[static_cast<std::size_t>(q)] != -1) continue;
        out.labels[static_cast<std::size_t>(q)] = cluster;
        frontier.push_back(q);
      }
    }
  }

  // border points take the cluster of their lowest-index core neighbor
  for (Index i = 0; i < n; ++i) {
    if (core[static_cast<std::size_t>(i)]) continue;
    for (Index q : neighbors[static_cast<std::size_t>(i)]) {
      if (core[static_cast<std::size_t>(q)]) {
        out.labels[static_cast<std::size_t>(i)] = out.labels[static_cast<std::size_t>(q)];
        break;
      }
    }
  }

  out.clusters = next_cluster;
  return out;
}

namespace {

// Assignment minimizing total cost over a square matrix (Hungarian algorithm
// with potentials, O(n^3)); returns column assigned to each row.
std::vector<int> hungarianMinCost(const std::vector<std::vector<double>>& cost) {
  const int n = static_cast<int>(cost.size());
  const double inf = std::numeric_limits<double>::infinity();
  std::vector<double> u(static_cast<std::size_t>(n) + 1, 0), v(static_cast<std::size_t>(n) + 1, 0);
  std::vector<int> match(static_cast<std::size_t>(n) + 1, 0), way(static_cast<std::size_t>(n) + 1, 0);
  for (int i = 1; i <= n; ++i) {
    match[0] = i;
    int j0 = 0;
    std::vector<double> minv(static_cast<std::size_t>(n) + 1, inf);
    std::vector<bool> used(static_cast<std::size_t>(n) + 1, false);
    do {
      used[static_cast<std::size_t>(j0)] = true;
      const int i0 = match[static_cast<std::size_t>(j0)];
      int j1 = 0;
      double delta = inf;
      for (int j = 1; j <= n; ++j) {
        if (used[static_cast<std::size_t>(j)]) continue;
        const double cur = cost[static_cast<std::size_t>(i0 - 1)][static_cast<std::size_t>(j - 1)] -
                           u[static_cast<std::size_t>(i0)] - v[static_cast<std::size_t>(j)];
        if (cur < minv[static_cast<std::size_t>(j)]) {
          minv[static_cast<std::size_t>(j)] = cur;
          way[static_cast<std::size_t>(j)] = j0;
        }
        if (minv[static_cast<std::size_t>(j)] < delta) {
          delta = minv[static_cast<std::size_t>(j)];
          j1 = j;
        }
      }
      for (int j = 0; j <= n; ++j) {
        if (used[static_cast<std::size_t>(j)]) {
          u[static_cast<std::size_t>(match[static_cast<std::size_t>(j)])] += delta;
          v[static_cast<std::size_t>(j)] -= delta;
        } else {
          minv[static_cast<std::size_t>(j)] -= delta;
        }
      }
      j0 = j1;
    } while (match[static_cast<std::size_t>(j0)] != 0);
    do {
      const int j1 = way[static_cast<std::size_t>(j0)];
      match[static_cast<std::size_t>(j0)] = match[static_cast<std::size_t>(j1)];
      j0 = j1;
    } while (j0 != 0);
  }
  std::vector<int> assignment(static_cast<std::size_t>(n), -1);
  for (int j = 1; j <= n; ++j)
    if (match[static_cast<std::size_t>(j)] > 0)
      assignment[static_cast<std::size_t>(match[static_cast<std::size_t>(j)] - 1)] = j - 1;
  return assignment;
}

}  // namespace

double misclusteringRate(const std::vector<int>& predicted, const std::vector<int>& truth) {
  if (predicted.size() != truth.size())
    throw ArgumentError("misclusteringRate: predicted has " +
                        std::to_string(predicted.size()) + " labels, truth has " +
                        std::to_string(truth.size()));
  const std::size_t n = truth.size();
  if (n == 0) return 0.0;

  // index the label alphabets; predicted -1 stays out (always an error)
  std::map<int, int> pred_ids, truth_ids;
  for (int lab : predicted)
    if (lab != -1) pred_ids.emplace(lab, static_cast<int>(pred_ids.size()));
  for (int lab : truth) truth_ids.emplace(lab, static_cast<int>(truth_ids.size()));

  const int dim = std::max<int>({static_cast<int>(pred_ids.size()),
                                 static_cast<int>(truth_ids.size()), 1});
  std::vector<std::vector<double>> agree(static_cast<std::size_t>(dim),
                                         std::vector<double>(static_cast<std::size_t>(dim), 0));
  for (std::size_t i = 0; i < n; ++i) {
    if (predicted[i] == -1) continue;
    agree[static_cast<std::size_t>(pred_ids[predicted[i]])]
         [static_cast<std::size_t>(truth_ids[truth[i]])] += 1;
  }

  auto cost = agree;
  for (auto& row : cost)
    for (double& cell : row) cell = -cell;
  const std::vector<int> assignment = hungarianMinCost(cost);

  double matched = 0;
  for (int p = 0; p < dim; ++p)
    matched += agree[static_cast<std::size_t>(p)][static_cast<std::size_t>(assignment[static_cast<std::size_t>(p)])];
  return 1.0 - matched / static_cast<double>(n);
}

}  // namespace multinet
