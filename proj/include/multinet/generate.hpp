#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "multinet/lsm.hpp"
#include "multinet/tensor.hpp"

namespace multinet {

/// Mixture multilayer stochastic block model parameters. Layer l has type
/// l mod m; each type has its own community assignment of the n nodes into K
/// communities (round-robin sizes, order shuffled per type). Within- and
/// between-community edge probabilities are solved from the expected average
/// degree d and the out-in ratio r.
struct MmsbmParams {
  Index n = 0;
  Index m = 1;
  Index L = 1;
  Index K = 1;
  std::optional<double> d;  ///< expected average degree per layer; default n/4
  std::optional<double> r;  ///< p_out / p_in in (0, 1]; default 0.4
  std::uint64_t seed = 0;
};

enum class CoreEntryDist { kUniform, kNorm };

CoreEntryDist coreEntryDistFromString(const std::string& name);

/// Mixture multilayer latent space model parameters. Latent positions U have
/// N(u_mean, 1) entries with rows clipped to unit norm; W is the one-hot
/// layer-type matrix; core slices have Uniform(-cmax, cmax) or
/// Normal(0,1)-truncated-to-[-cmax, cmax] entries. theta is the symmetrized
/// multilinear product scaled by 1/scale_par; with d set, a constant offset
/// is added so the mean link probability equals d/(n-1).
struct MmlsmParams {
  Index n = 0;
  Index m = 1;
  Index L = 1;
  Index rank = 1;
  double u_mean = 0.5;
  double cmax = 1.0;
  std::optional<double> d;
  CoreEntryDist int_type = CoreEntryDist::kUniform;
  LinkType kernel_fun = LinkType::kLogit;
  double scale_par = 1.0;
  std::uint64_t seed = 0;
};

struct GroundTruth {
  std::vector<int> layer_types;               ///< length L, values in [0, m)
  std::vector<std::vector<int>> memberships;  ///< per type, length n, values in [0, K)
  Eigen::MatrixXd latent_u;                   ///< n x rank (latent space model)
  Eigen::MatrixXd latent_w;                   ///< L x m
  Tensor3d latent_core;                       ///< rank x rank x m
  bool has_latent = false;
};

struct GenList {
  Tensor3d tensor;  ///< adjacency, n x n x L, symmetric binary zero-diagonal slices
  Tensor3d theta;   ///< edge probabilities (block model) or link arguments (latent model)
  GroundTruth truth;
};

struct BlockProbabilities {
  double p_in = 0;
  double p_out = 0;
};

/// Solves p_in = d / ((n/K - 1) + r (n - n/K)) and p_out = r p_in. Throws
/// InfeasibleParameterError when the requested degree cannot be realized.
BlockProbabilities mmsbmBlockProbabilities(Index n, Index K, double d, double r);

GenList generateMmsbm(const MmsbmParams& params);
GenList generateMmlsm(const MmlsmParams& params);

}  // namespace multinet
