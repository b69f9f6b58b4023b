#include "multinet/generate.hpp"

#include <cmath>
#include <numeric>

#include "multinet/rng.hpp"

namespace multinet {

namespace {

// Sub-stream tags. Membership and edge streams take the type or layer index
// as the sub key, so each layer's edges depend only on (seed, layer).
constexpr std::uint64_t kMembershipStream = 1;
constexpr std::uint64_t kEdgeStream = 2;
constexpr std::uint64_t kLatentStream = 3;
constexpr std::uint64_t kCoreStream = 4;

template <typename ProbFn>
void sampleUndirectedLayer(Tensor3d& adj, Index l, ProbFn&& prob, Rng rng) {
  const Index n = adj.dim(1);
  for (Index i = 0; i < n; ++i) {
    for (Index j = i + 1; j < n; ++j) {
      const double value = rng.uniform() < prob(i, j) ? 1.0 : 0.0;
      adj(i, j, l) = value;
      adj(j, i, l) = value;
    }
  }
}

double truncatedNormal(Rng& rng, double bound) {
  double x = rng.normal();
  while (std::abs(x) > bound) x = rng.normal();
  return x;
}

// Mean link probability over off-diagonal entries after adding offset.
double meanLinkProbability(const Tensor3d& theta, LinkType kernel, double offset) {
  const Index n = theta.dim(1);
  const Index L = theta.dim(3);
  double sum = 0;
  for (Index l = 0; l < L; ++l)
    for (Index j = 0; j < n; ++j)
      for (Index i = 0; i < n; ++i)
        if (i != j) sum += linkValue(theta(i, j, l) + offset, kernel, 1.0);
  return sum / (static_cast<double>(n) * (n - 1) * L);
}

// The mean link probability is strictly increasing in the offset, so the
// target density is pinned by bisection; the fixed iteration count keeps the
// result deterministic.
double solveDensityOffset(const Tensor3d& theta, LinkType kernel, double target) {
  double lo = -1.0, hi = 1.0;
  for (int i = 0; i < 64 && meanLinkProbability(theta, kernel, lo) > target; ++i) lo *= 2;
  for (int i = 0; i < 64 && meanLinkProbability(theta, kernel, hi) < target; ++i) hi *= 2;
  for (int i = 0; i < 200; ++i) {
    const double mid = 0.5 * (lo + hi);
    if (meanLinkProbability(theta, kernel, mid) < target)
      lo = mid;
    else
      hi = mid;
  }
  return 0.5 * (lo + hi);
}

}  // namespace

CoreEntryDist coreEntryDistFromString(const std::string& name) {
  if (name == "Uniform" || name == "uniform") return CoreEntryDist::kUniform;
  if (name == "Norm" || name == "norm") return CoreEntryDist::kNorm;
  throw ArgumentError("unknown core entry distribution '" + name +
                      "' (expected 'Uniform' or 'Norm')");
}

BlockProbabilities mmsbmBlockProbabilities(Index n, Index K, double d, double r) {
  if (K < 1 || n < K)
    throw ArgumentError("block probabilities need 1 <= K <= n, got n = " +
                        std::to_string(n) + ", K = " + std::to_string(K));
  if (!(r > 0.0) || r > 1.0)
    throw ArgumentError("out-in ratio r must lie in (0, 1], got " + std::to_string(r));
  if (d < 0.0)
    throw ArgumentError("average degree d must be nonnegative, got " + std::to_string(d));
  const double group = static_cast<double>(n) / static_cast<double>(K);
  const double denom = (group - 1.0) + r * (static_cast<double>(n) - group);
  if (denom <= 0.0) {
    if (d == 0.0) return {0.0, 0.0};
    throw InfeasibleParameterError("no room for edges with n = " + std::to_string(n) +
                                   ", K = " + std::to_string(K) + " and d = " +
                                   std::to_string(d));
  }
  double p_in = d / denom;
  if (p_in > 1.0 + 1e-12)
    throw InfeasibleParameterError(
        "average degree d = " + std::to_string(d) + " with r = " + std::to_string(r) +
        " needs within-community probability " + std::to_string(p_in) +
        " > 1 (n = " + std::to_string(n) + ", K = " + std::to_string(K) + ")");
  p_in = std::min(p_in, 1.0);
  return {p_in, r * p_in};
}

GenList generateMmsbm(const MmsbmParams& params) {
  const Index n = params.n, m = params.m, L = params.L, K = params.K;
  if (n < 1) throw ArgumentError("generateMmsbm: n must be >= 1");
  if (m < 1 || L < m)
    throw ArgumentError("generateMmsbm: need 1 <= m <= L, got m = " + std::to_string(m) +
                        ", L = " + std::to_string(L));
  if (K < 1 || K > n)
    throw ArgumentError("generateMmsbm: need 1 <= K <= n, got K = " + std::to_string(K) +
                        ", n = " + std::to_string(n));
  const double d = params.d.value_or(static_cast<double>(n) / 4.0);
  const double r = params.r.value_or(0.4);
  const auto block = mmsbmBlockProbabilities(n, K, d, r);

  Rng root(params.seed);
  GenList out;
  out.truth.layer_types.resize(static_cast<std::size_t>(L));
  for (Index l = 0; l < L; ++l)
    out.truth.layer_types[static_cast<std::size_t>(l)] = static_cast<int>(l % m);

  // Round-robin community sizes (they differ by at most one), shuffled per
  // type from its own stream.
  out.truth.memberships.resize(static_cast<std::size_t>(m));
  for (Index type = 0; type < m; ++type) {
    auto& labels = out.truth.memberships[static_cast<std::size_t>(type)];
    labels.resize(static_cast<std::size_t>(n));
    for (Index i = 0; i < n; ++i) labels[static_cast<std::size_t>(i)] = static_cast<int>(i % K);
    Rng stream = root.stream(kMembershipStream, static_cast<std::uint64_t>(type));
    stream.shuffle(labels);
  }

  out.theta = Tensor3d(n, n, L);
  for (Index l = 0; l < L; ++l) {
    const auto& z = out.truth.memberships[static_cast<std::size_t>(l % m)];
    for (Index j = 0; j < n; ++j)
      for (Index i = 0; i < n; ++i)
        if (i != j)
          out.theta(i, j, l) = z[static_cast<std::size_t>(i)] == z[static_cast<std::size_t>(j)]
                                   ? block.p_in
                                   : block.p_out;
  }

  out.tensor = Tensor3d(n, n, L);
  for (Index l = 0; l < L; ++l) {
    const auto& theta = out.theta;
    sampleUndirectedLayer(
        out.tensor, l, [&](Index i, Index j) { return theta(i, j, l); },
        root.stream(kEdgeStream, static_cast<std::uint64_t>(l)));
  }
  return out;
}

GenList generateMmlsm(const MmlsmParams& params) {
  const Index n = params.n, m = params.m, L = params.L, rank = params.rank;
  if (n < 1) throw ArgumentError("generateMmlsm: n must be >= 1");
  if (m < 1 || L < m)
    throw ArgumentError("generateMmlsm: need 1 <= m <= L, got m = " + std::to_string(m) +
                        ", L = " + std::to_string(L));
  if (rank < 1) throw ArgumentError("generateMmlsm: rank must be >= 1");
  if (!(params.cmax > 0)) throw ArgumentError("generateMmlsm: cmax must be positive");
  if (!(params.scale_par > 0))
    throw ArgumentError("generateMmlsm: scale_par must be positive");
  if (params.kernel_fun == LinkType::kPoisson)
    throw ArgumentError("generateMmlsm: kernel_fun must be logit or probit");
  if (params.d) {
    const double max_d = static_cast<double>(n - 1);
    if (!(*params.d > 0) || !(*params.d < max_d))
      throw InfeasibleParameterError("generateMmlsm: d must lie in (0, n-1), got " +
                                     std::to_string(*params.d));
  }

  Rng root(params.seed);
  GenList out;
  out.truth.layer_types.resize(static_cast<std::size_t>(L));
  for (Index l = 0; l < L; ++l)
    out.truth.layer_types[static_cast<std::size_t>(l)] = static_cast<int>(l % m);

  Eigen::MatrixXd u(n, rank);
  {
    Rng stream = root.stream(kLatentStream);
    for (Index i = 0; i < n; ++i)
      for (Index q = 0; q < rank; ++q) u(i, q) = params.u_mean + stream.normal();
  }
  for (Index i = 0; i < n; ++i) {
    const double norm = u.row(i).norm();
    if (norm > 1.0) u.row(i) /= norm;
  }

  Eigen::MatrixXd w = Eigen::MatrixXd::Zero(L, m);
  for (Index l = 0; l < L; ++l) w(l, l % m) = 1.0;

  Tensor3d c(rank, rank, m);
  for (Index slice = 0; slice < m; ++slice) {
    Rng stream = root.stream(kCoreStream, static_cast<std::uint64_t>(slice));
    for (Index b = 0; b < rank; ++b)
      for (Index a = 0; a < rank; ++a)
        c(a, b, slice) = params.int_type == CoreEntryDist::kUniform
                             ? stream.uniform(-params.cmax, params.cmax)
                             : truncatedNormal(stream, params.cmax);
  }

  Tensor3d theta = tuckerProduct(c, u, u, w);
  theta.values() /= params.scale_par;
  for (Index l = 0; l < L; ++l) {
    const Eigen::MatrixXd sym = 0.5 * (theta.layer(l) + theta.layer(l).transpose());
    theta.layer(l) = sym;
  }
  if (params.d) {
    const double target = *params.d / static_cast<double>(n - 1);
    const double offset = solveDensityOffset(theta, params.kernel_fun, target);
    theta.values().array() += offset;
  }

  out.tensor = Tensor3d(n, n, L);
  for (Index l = 0; l < L; ++l)
    sampleUndirectedLayer(
        out.tensor, l,
        [&](Index i, Index j) { return linkValue(theta(i, j, l), params.kernel_fun, 1.0); },
        root.stream(kEdgeStream, static_cast<std::uint64_t>(l)));

  out.theta = std::move(theta);
  out.truth.latent_u = std::move(u);
  out.truth.latent_w = std::move(w);
  out.truth.latent_core = std::move(c);
  out.truth.has_latent = true;
  return out;
}

}  // namespace multinet
