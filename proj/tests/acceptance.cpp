// End-to-end acceptance checks. Each criterion prints exactly one line:
//   [PASS] criterion  N: <name> (<details>)
//   [FAIL] criterion  N: <name> (<details>)
// The process exits nonzero if any criterion fails. Tolerances and runtime
// budgets are pinned next to each criterion.

#include <sys/wait.h>
#include <unistd.h>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <numeric>
#include <sstream>
#include <string>
#include <vector>

#include "multinet/multinet.hpp"
#include "oracles.hpp"

using namespace multinet;
namespace fs = std::filesystem;

namespace {

double secondsSince(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

std::string fmt(double v) {
  std::ostringstream s;
  s.precision(3);
  s << v;
  return s.str();
}

// ---- criterion 1: tensor algebra identities ---------------------------------
// 200 random tensors with dimensions up to 8: unfold/refold inversion is
// bit-exact, unfolding preserves the Frobenius norm to 1e-12, the mode product
// satisfies unfold(t x_k M, k) = M unfold(t, k) to 1e-12, and products along
// distinct modes commute to 1e-12. Budget: 5 s.
bool tensorAlgebra(std::string& note) {
  constexpr double kTol = 1e-12;
  Rng rng(1001);
  double worst = 0.0;
  for (int trial = 0; trial < 200; ++trial) {
    const Dims3 dims = {1 + static_cast<Index>(rng.below(8)),
                        1 + static_cast<Index>(rng.below(8)),
                        1 + static_cast<Index>(rng.below(8))};
    const Tensor3d t = oracles::randomTensor(dims, rng);
    for (int mode = 1; mode <= 3; ++mode) {
      const Eigen::MatrixXd m = unfold(t, mode);
      if (refold(m, mode, dims) != t) {
        note = "refold(unfold) not bit-exact at mode " + std::to_string(mode);
        return false;
      }
      worst = std::max(worst, std::abs(m.norm() - t.norm()) / (1.0 + t.norm()));
      const Index rows = 1 + static_cast<Index>(rng.below(8));
      const Eigen::MatrixXd mul = oracles::randomGaussian(rows, t.dim(mode), rng);
      const Tensor3d prod = modeMultiply(t, mul, mode);
      worst = std::max(worst, (unfold(prod, mode) - mul * m).norm() /
                                  (1.0 + (mul * m).norm()));
    }
    const Eigen::MatrixXd a = oracles::randomGaussian(2, t.dim(1), rng);
    const Eigen::MatrixXd b = oracles::randomGaussian(3, t.dim(3), rng);
    const Tensor3d ab = modeMultiply(modeMultiply(t, a, 1), b, 3);
    const Tensor3d ba = modeMultiply(modeMultiply(t, b, 3), a, 1);
    worst = std::max(worst, (ab.values() - ba.values()).norm() / (1.0 + ab.norm()));
  }
  note = "200 tensors, worst relative deviation " + fmt(worst);
  return worst <= kTol;
}

// ---- criterion 2: orthogonal decomposition exactness ------------------------
// 50 planted low-multilinear-rank tensors: the rank-truncated orthogonal
// decomposition reconstructs them to relative error 1e-10 with orthonormal
// factors. Budget: 10 s.
bool decompositionExactness(std::string& note) {
  constexpr double kRelTol = 1e-10;
  Rng rng(1002);
  double worst = 0.0;
  for (int trial = 0; trial < 50; ++trial) {
    const Dims3 dims = {5 + static_cast<Index>(rng.below(4)),
                        5 + static_cast<Index>(rng.below(4)),
                        4 + static_cast<Index>(rng.below(4))};
    const Dims3 ranks = {1 + static_cast<Index>(rng.below(static_cast<std::uint64_t>(dims[0] - 1))),
                         1 + static_cast<Index>(rng.below(static_cast<std::uint64_t>(dims[1] - 1))),
                         1 + static_cast<Index>(rng.below(static_cast<std::uint64_t>(dims[2] - 1)))};
    const oracles::LowRank planted = oracles::randomLowRank(dims, ranks, rng);
    const auto h = hosvd(planted.tensor, ranks);
    const Tensor3d rebuilt = tuckerProduct(h.core, h.factors[0], h.factors[1], h.factors[2]);
    worst = std::max(worst, (rebuilt.values() - planted.tensor.values()).norm() /
                                (1.0 + planted.tensor.norm()));
    for (const auto& f : h.factors)
      worst = std::max(worst, (f.transpose() * f -
                               Eigen::MatrixXd::Identity(f.cols(), f.cols()))
                                  .norm());
  }
  note = "50 planted tensors, worst deviation " + fmt(worst);
  return worst <= kRelTol;
}

// ---- criterion 3: default rank rule -----------------------------------------
// defaultRanks(m, K) = (mK - (m-1), mK - (m-1), m) for every m, K in [1, 6].
bool defaultRankRule(std::string& note) {
  for (Index m = 1; m <= 6; ++m)
    for (Index K = 1; K <= 6; ++K) {
      const Index expected = m * K - (m - 1);
      const Dims3 got = defaultRanks(m, K);
      if (got != Dims3{expected, expected, m}) {
        note = "m=" + std::to_string(m) + " K=" + std::to_string(K) + " gave (" +
               std::to_string(got[0]) + "," + std::to_string(got[1]) + "," +
               std::to_string(got[2]) + ")";
        return false;
      }
    }
  note = "all m, K in [1, 6]";
  return true;
}

// ---- criterion 4: mixture recovery by regularized power iteration -----------
// 20 planted two-type mixtures (n=100, L=12, K=2, d=25, r=0.3): layer types
// recovered exactly on at least 19 seeds; refining nodes inside each recovered
// layer group keeps the mean node misclustering at or below 0.05.
// Budget: 60 s.
bool mixtureRecovery(std::string& note) {
  constexpr int kSeeds = 20;
  constexpr int kLayerPerfectMin = 19;
  constexpr double kNodeMeanMax = 0.05;
  int layer_perfect = 0;
  std::vector<double> node_rates;
  for (int seed = 0; seed < kSeeds; ++seed) {
    MmsbmParams params;
    params.n = 100;
    params.m = 2;
    params.L = 12;
    params.K = 2;
    params.d = 25.0;
    params.r = 0.3;
    params.seed = static_cast<std::uint64_t>(seed);
    const GenList gen = generateMmsbm(params);
    TwistConfig cfg;
    cfg.ranks = defaultRanks(params.m, params.K);
    const auto result =
        powerIteration(gen.tensor, cfg, initializationMmsbm(gen.tensor, cfg.ranks));
    const ClusterAssignment layers =
        communityClusterKm(result.layer_embedding, ItemKind::kNetwork, 2, 0);
    if (misclusteringRate(layers.labels, gen.truth.layer_types) == 0.0) ++layer_perfect;

    for (int group = 0; group < 2; ++group) {
      std::vector<Index> members;
      for (Index l = 0; l < params.L; ++l)
        if (layers.labels[static_cast<std::size_t>(l)] == group) members.push_back(l);
      if (members.empty()) {
        node_rates.push_back(1.0);
        continue;
      }
      std::vector<int> votes(static_cast<std::size_t>(params.m), 0);
      for (Index l : members)
        ++votes[static_cast<std::size_t>(gen.truth.layer_types[static_cast<std::size_t>(l)])];
      const int type = static_cast<int>(
          std::max_element(votes.begin(), votes.end()) - votes.begin());
      Tensor3d sub(params.n, params.n, static_cast<Index>(members.size()));
      for (std::size_t i = 0; i < members.size(); ++i)
        sub.layer(static_cast<Index>(i)) = gen.tensor.layer(members[i]);
      const Eigen::MatrixXd emb = specEmbedding(sub, params.K, SpecEmbeddingType::kNode);
      const ClusterAssignment nodes = communityClusterKm(emb, ItemKind::kNode, 2, 0);
      node_rates.push_back(
          misclusteringRate(nodes.labels, gen.truth.memberships[static_cast<std::size_t>(type)]));
    }
  }
  const double node_mean =
      std::accumulate(node_rates.begin(), node_rates.end(), 0.0) /
      static_cast<double>(node_rates.size());
  note = std::to_string(layer_perfect) + "/20 seeds with exact layer types, mean node rate " +
         fmt(node_mean);
  return layer_perfect >= kLayerPerfectMin && node_mean <= kNodeMeanMax;
}

// ---- criterion 5: regularization disabled matches plain iteration -----------
// With the row-norm caps at 1e18 the regularized iteration is bit-identical
// to the plain one on 10 inputs (8 random, 2 planted). Budget: 30 s.
bool disabledRegularizationMatches(std::string& note) {
  Rng rng(1005);
  for (int trial = 0; trial < 10; ++trial) {
    Tensor3d t(1, 1, 1);
    if (trial < 8) {
      t = oracles::randomTensor({6 + static_cast<Index>(rng.below(4)),
                                 6 + static_cast<Index>(rng.below(4)),
                                 4 + static_cast<Index>(rng.below(4))},
                                rng);
    } else {
      MmsbmParams params;
      params.n = 40;
      params.m = 2;
      params.L = 6;
      params.K = 2;
      params.seed = static_cast<std::uint64_t>(trial);
      t = generateMmsbm(params).tensor;
    }
    TwistConfig twist_cfg;
    twist_cfg.ranks = {3, 3, 2};
    twist_cfg.type = IterationType::kTwist;
    twist_cfg.delta1 = 1e18;
    twist_cfg.delta2 = 1e18;
    TwistConfig tucker_cfg = twist_cfg;
    tucker_cfg.type = IterationType::kTucker;
    const auto init = initializationMmsbm(t, twist_cfg.ranks);
    const auto a = powerIteration(t, twist_cfg, init);
    const auto b = powerIteration(t, tucker_cfg, init);
    const bool same = a.iterations == b.iterations &&
                      (a.node_embedding.array() == b.node_embedding.array()).all() &&
                      (a.mode2_factor.array() == b.mode2_factor.array()).all() &&
                      (a.layer_embedding.array() == b.layer_embedding.array()).all() &&
                      a.core == b.core;
    if (!same) {
      note = "bit mismatch on input " + std::to_string(trial);
      return false;
    }
  }
  note = "10 inputs bit-identical";
  return true;
}

// ---- criterion 6: monotone core norm growth ---------------------------------
// The plain alternating iteration never decreases the compressed core norm:
// every consecutive pair in the trace satisfies next >= prev - 1e-9, checked
// across 10 planted and 5 random inputs run to 25 sweeps. Budget: 30 s.
bool monotoneCoreTrace(std::string& note) {
  constexpr double kSlack = 1e-9;
  Rng rng(1006);
  double worst_drop = 0.0;
  std::size_t traces = 0;
  auto check = [&](const Tensor3d& t, const Dims3& ranks) {
    TwistConfig cfg;
    cfg.ranks = ranks;
    cfg.type = IterationType::kTucker;
    cfg.tol = 1e-14;  // keep sweeping to expose any oscillation
    const auto r = powerIteration(t, cfg, initializationMmsbm(t, ranks));
    for (std::size_t i = 1; i < r.core_norm_trace.size(); ++i)
      worst_drop = std::max(worst_drop,
                            r.core_norm_trace[i - 1] - r.core_norm_trace[i]);
    ++traces;
  };
  for (int seed = 0; seed < 10; ++seed) {
    MmsbmParams params;
    params.n = 60;
    params.m = 2;
    params.L = 8;
    params.K = 2;
    params.d = 15.0;
    params.r = 0.3;
    params.seed = static_cast<std::uint64_t>(seed);
    check(generateMmsbm(params).tensor, {3, 3, 2});
  }
  for (int trial = 0; trial < 5; ++trial)
    check(oracles::randomTensor({10, 10, 6}, rng), {3, 3, 2});
  note = std::to_string(traces) + " traces, worst drop " + fmt(worst_drop);
  return worst_drop <= kSlack;
}

// ---- criterion 7: likelihood gradient correctness ----------------------------
// The analytic gradient of the negative log-likelihood matches central finite
// differences (h = 1e-5) to relative error 1e-5 on 20 random instances
// covering all three link functions. Budget: 10 s.
bool gradientCorrectness(std::string& note) {
  constexpr double kH = 1e-5;
  constexpr double kRelTol = 1e-5;
  Rng rng(1007);
  double worst = 0.0;
  const LinkType links[3] = {LinkType::kLogit, LinkType::kProbit, LinkType::kPoisson};
  for (int trial = 0; trial < 20; ++trial) {
    const LinkType type = links[trial % 3];
    Tensor3d adj(4, 4, 3);
    for (Index k = 0; k < 3; ++k)
      for (Index j = 0; j < 4; ++j)
        for (Index i = 0; i < 4; ++i) {
          if (i == j) continue;
          adj(i, j, k) = type == LinkType::kPoisson
                             ? std::floor(4.0 * rng.uniform())
                             : (rng.uniform() < 0.4 ? 1.0 : 0.0);
        }
    const Eigen::MatrixXd u = 0.5 * oracles::randomGaussian(4, 2, rng);
    const Eigen::MatrixXd w = 0.5 * oracles::randomGaussian(3, 2, rng);
    const Tensor3d c = oracles::randomTensor({2, 2, 2}, rng, -0.8, 0.8);
    const double sgma = 0.75 + rng.uniform();
    const LsmGradient g = lsmGradient(adj, u, w, c, type, sgma);
    const oracles::FdGradient fd =
        oracles::finiteDifferenceGradient(adj, u, w, c, type, sgma, kH);
    worst = std::max(worst, (g.u - fd.u).norm() / (1.0 + fd.u.norm()));
    worst = std::max(worst, (g.w - fd.w).norm() / (1.0 + fd.w.norm()));
    worst = std::max(worst,
                     (g.c.values() - fd.c.values()).norm() / (1.0 + fd.c.values().norm()));
  }
  note = "20 instances, worst relative error " + fmt(worst);
  return worst <= kRelTol;
}

// ---- criterion 8: stochastic gradient unbiasedness ---------------------------
// On a 10 x 10 x 4 instance, the mean of 200 sampled gradients projected onto
// a fixed direction lies within 4 standard errors of the exact gradient's
// projection. Budget: 15 s.
bool stochasticUnbiasedness(std::string& note) {
  constexpr int kDraws = 200;
  constexpr double kBand = 4.0;
  Rng rng(1008);
  Tensor3d adj(10, 10, 4);
  for (Index k = 0; k < 4; ++k)
    for (Index j = 0; j < 10; ++j)
      for (Index i = 0; i < 10; ++i)
        if (i != j) adj(i, j, k) = rng.uniform() < 0.35 ? 1.0 : 0.0;
  const Eigen::MatrixXd u = 0.5 * oracles::randomGaussian(10, 2, rng);
  const Eigen::MatrixXd w = 0.5 * oracles::randomGaussian(4, 2, rng);
  const Tensor3d c = oracles::randomTensor({2, 2, 2}, rng, -0.8, 0.8);

  const Eigen::MatrixXd du = oracles::randomGaussian(10, 2, rng);
  const Eigen::MatrixXd dw = oracles::randomGaussian(4, 2, rng);
  const Tensor3d dc = oracles::randomTensor({2, 2, 2}, rng);
  auto project = [&](const Eigen::MatrixXd& gu, const Eigen::MatrixXd& gw,
                     const Tensor3d& gc) {
    return (gu.array() * du.array()).sum() + (gw.array() * dw.array()).sum() +
           gc.values().dot(dc.values());
  };

  const LsmGradient exact = lsmGradient(adj, u, w, c, LinkType::kLogit, 1.0);
  const double target = project(exact.u, exact.w, exact.c);

  Rng sampler(1009);
  double sum = 0.0, sumsq = 0.0;
  for (int draw = 0; draw < kDraws; ++draw) {
    const LsmGradient g =
        lsmGradientSampled(adj, u, w, c, LinkType::kLogit, 1.0, 80, sampler);
    const double s = project(g.u, g.w, g.c);
    sum += s;
    sumsq += s * s;
  }
  const double mean = sum / kDraws;
  const double variance = std::max(sumsq / kDraws - mean * mean, 0.0);
  const double se = std::sqrt(variance / kDraws);
  const double dev = std::abs(mean - target);
  note = "deviation " + fmt(dev) + " vs 4 SE = " + fmt(kBand * se);
  return dev <= kBand * se + 1e-12;
}

// ---- criterion 9: latent space fit recovery ----------------------------------
// 10 planted two-type latent space models (n=50, L=10, rank=2), warm starts
// with noise 0.1: the projected descent decreases the loss on every seed and
// k-means on the fitted layer loadings recovers the types exactly on at least
// 9 seeds. Budget: 120 s.
bool latentSpaceRecovery(std::string& note) {
  constexpr int kSeeds = 10;
  constexpr int kRecoveredMin = 9;
  int decreased = 0;
  int recovered = 0;
  for (int seed = 0; seed < kSeeds; ++seed) {
    MmlsmParams params;
    params.n = 50;
    params.m = 2;
    params.L = 10;
    params.rank = 2;
    params.seed = static_cast<std::uint64_t>(seed);
    const GenList gen = generateMmlsm(params);
    const LsmInit init = initializationLsm(gen, 2, 2, LsmStart::kWarm, 0.1,
                                           1000 + static_cast<std::uint64_t>(seed));
    GdConfig cfg;
    cfg.cmax = 3.0;
    cfg.show = false;
    const LsmResult fit = projectedGd(init, cfg);
    if (fit.loss_trace.back() < fit.loss_trace.front()) ++decreased;
    const ClusterAssignment layers = communityClusterKm(fit.w, ItemKind::kNetwork, 2, 0);
    if (misclusteringRate(layers.labels, gen.truth.layer_types) == 0.0) ++recovered;
  }
  note = std::to_string(decreased) + "/10 losses decreased, " + std::to_string(recovered) +
         "/10 exact type recovery";
  return decreased == kSeeds && recovered >= kRecoveredMin;
}

// ---- criterion 10: aggregate spectral recovery --------------------------------
// 20 planted single-type networks (n=100, L=8, K=2, d=25, r=0.3): spectral
// clustering of the layer sum recovers the communities exactly on at least 19
// seeds. Budget: 30 s.
bool aggregateSpectralRecovery(std::string& note) {
  constexpr int kSeeds = 20;
  constexpr int kPerfectMin = 19;
  int perfect = 0;
  for (int seed = 0; seed < kSeeds; ++seed) {
    MmsbmParams params;
    params.n = 100;
    params.m = 1;
    params.L = 8;
    params.K = 2;
    params.d = 25.0;
    params.r = 0.3;
    params.seed = static_cast<std::uint64_t>(seed);
    const GenList gen = generateMmsbm(params);
    const Eigen::MatrixXd emb = specEmbedding(gen.tensor, 2, SpecEmbeddingType::kNode);
    const ClusterAssignment nodes = communityClusterKm(emb, ItemKind::kNode, 2, 0);
    if (misclusteringRate(nodes.labels, gen.truth.memberships[0]) == 0.0) ++perfect;
  }
  note = std::to_string(perfect) + "/20 seeds exact";
  return perfect >= kPerfectMin;
}

// ---- criterion 11: density clustering -----------------------------------------
// On 100 random 40-point configurations the implementation reproduces the
// from-the-definition reference labels exactly. Budget: 30 s.
bool densityClustering(std::string& note) {
  Rng rng(1011);
  for (int trial = 0; trial < 100; ++trial) {
    Eigen::MatrixXd x(40, 2);
    for (Index i = 0; i < 40; ++i) {
      if (i < 30) {
        const double cx = 2.0 * static_cast<double>(i % 3);
        x(i, 0) = cx + 0.3 * rng.normal();
        x(i, 1) = 0.3 * rng.normal();
      } else {
        x(i, 0) = 9.0 * rng.uniform() - 2.5;
        x(i, 1) = 9.0 * rng.uniform() - 4.5;
      }
    }
    const ClusterAssignment got = communityClusterDbscan(x, ItemKind::kNode, 0.5, 4);
    if (got.labels != oracles::dbscanBruteForce(x, 0.5, 4)) {
      note = "label mismatch on configuration " + std::to_string(trial);
      return false;
    }
  }
  note = "100 configurations identical";
  return true;
}

// ---- criterion 12: misclustering matching optimality ---------------------------
// The assignment-based misclustering rate equals exhaustive search over label
// matchings on 100 random pairs with up to 5 labels plus noise. Budget: 10 s.
bool misclusteringOptimality(std::string& note) {
  Rng rng(1012);
  double worst = 0.0;
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t n = 5 + static_cast<std::size_t>(rng.below(26));
    const int kp = 1 + static_cast<int>(rng.below(5));
    const int kt = 1 + static_cast<int>(rng.below(5));
    std::vector<int> pred(n), truth(n);
    for (std::size_t i = 0; i < n; ++i) {
      pred[i] = static_cast<int>(rng.below(static_cast<std::uint64_t>(kp)));
      if (rng.uniform() < 0.1) pred[i] = -1;
      truth[i] = static_cast<int>(rng.below(static_cast<std::uint64_t>(kt)));
    }
    worst = std::max(worst, std::abs(misclusteringRate(pred, truth) -
                                     oracles::misclusteringBruteForce(pred, truth)));
  }
  note = "100 pairs, worst deviation " + fmt(worst);
  return worst <= 1e-12;
}

// ---- criterion 13: tensor file round trip --------------------------------------
// 100 random tensors survive write -> read bit-exactly and rewriting produces
// byte-identical files. Budget: 10 s.
bool fileRoundTrip(std::string& note) {
  Rng rng(1013);
  const fs::path dir = fs::temp_directory_path() /
                       ("multinet-acceptance-io-" + std::to_string(static_cast<long>(::getpid())));
  fs::create_directories(dir);
  bool ok = true;
  for (int trial = 0; trial < 100 && ok; ++trial) {
    const Dims3 dims = {1 + static_cast<Index>(rng.below(6)),
                        1 + static_cast<Index>(rng.below(6)),
                        1 + static_cast<Index>(rng.below(6))};
    Tensor3d t(dims);
    for (Index v = 0; v < t.size(); ++v) {
      const double u = rng.uniform();
      if (u < 0.35)
        t.values()[v] = 0.0;
      else if (u < 0.6)
        t.values()[v] = 1.0;
      else
        t.values()[v] = rng.normal() * std::pow(10.0, rng.uniform(-10, 10));
    }
    const fs::path path = dir / ("t" + std::to_string(trial) + ".tns");
    writeTns(t, path);
    const ReadTnsResult back = readTns(path);
    if (back.tensor != t || back.duplicate_count != 0) {
      note = "round trip mismatch on tensor " + std::to_string(trial);
      ok = false;
      break;
    }
    std::ifstream first(path, std::ios::binary);
    const std::string bytes_first(std::istreambuf_iterator<char>(first), {});
    writeTns(back.tensor, path);
    std::ifstream second(path, std::ios::binary);
    const std::string bytes_second(std::istreambuf_iterator<char>(second), {});
    if (bytes_first != bytes_second) {
      note = "rewrite not byte-identical on tensor " + std::to_string(trial);
      ok = false;
    }
  }
  fs::remove_all(dir);
  if (ok) note = "100 tensors bit-exact and byte-stable";
  return ok;
}

// ---- criterion 14: dataset shape validation ------------------------------------
// The bundled descriptors carry the published shapes; loading a correctly
// shaped file succeeds and a mismatched one raises a validation error naming
// the expected shape. Budget: 5 s.
bool datasetValidation(std::string& note) {
  const auto& all = datasetDescriptors();
  auto has = [&](const std::string& name, Index n1, Index n2, Index n3) {
    for (const auto& d : all)
      if (d.name == name) return d.n1 == n1 && d.n2 == n2 && d.n3 == n3;
    return false;
  };
  if (!has("malaria", 212, 212, 9) || !has("food-trade", 99, 99, 30) ||
      !has("un-commodity", 48, 48, 97)) {
    note = "descriptor shapes are wrong";
    return false;
  }
  const fs::path dir = fs::temp_directory_path() /
                       ("multinet-acceptance-ds-" + std::to_string(static_cast<long>(::getpid())));
  fs::create_directories(dir);
  bool ok = true;
  Tensor3d right(212, 212, 9);
  right(0, 1, 0) = 1.0;
  right(1, 0, 8) = 1.0;
  writeTns(right, dir / "right.tns");
  try {
    if (loadDataset(dir / "right.tns", "malaria") != right) {
      note = "well-shaped file did not load intact";
      ok = false;
    }
  } catch (const std::exception& e) {
    note = std::string("unexpected error: ") + e.what();
    ok = false;
  }
  if (ok) {
    const Tensor3d wrong(4, 4, 2);
    writeTns(wrong, dir / "wrong.tns");
    try {
      loadDataset(dir / "wrong.tns", "malaria");
      note = "shape mismatch was not rejected";
      ok = false;
    } catch (const ValidationError& e) {
      if (std::string(e.what()).find("212") == std::string::npos) {
        note = "rejection does not name the expected shape";
        ok = false;
      }
    }
  }
  fs::remove_all(dir);
  if (ok) note = "3 descriptors, load and rejection behave";
  return ok;
}

// ---- criterion 15: manifest rerun reproducibility -------------------------------
// A generate -> embed -> cluster pipeline run through the CLI can be replayed
// from its manifests alone: after deleting the data files, rerunning each
// manifest restores byte-identical outputs. Budget: 60 s.
bool manifestRerun(std::string& note) {
  const char* binary = std::getenv("MULTINET_CLI");
  if (binary == nullptr) {
    note = "MULTINET_CLI is not set";
    return false;
  }
  const fs::path dir = fs::temp_directory_path() /
                       ("multinet-acceptance-cli-" + std::to_string(static_cast<long>(::getpid())));
  fs::remove_all(dir);
  fs::create_directories(dir);

  auto shell = [&](const std::string& args) {
    const std::string command = "\"" + std::string(binary) + "\" " + args +
                                " > /dev/null 2> /dev/null";
    const int raw = std::system(command.c_str());
    return WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
  };
  auto slurp = [](const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    return std::string(std::istreambuf_iterator<char>(in), {});
  };

  const fs::path gen = dir / "gen.tns";
  const fs::path emb = dir / "emb";
  const fs::path labels = dir / "labels.csv";
  bool ok = true;
  ok = ok && shell("generate mmsbm --n 60 --m 2 --L 8 --K 2 --d 15 --r 0.3 --seed 3 -o \"" +
                   gen.string() + "\"") == 0;
  ok = ok && shell("embed twist -i \"" + gen.string() + "\" --ranks 3,3,2 -o \"" +
                   emb.string() + "\"") == 0;
  ok = ok && shell("cluster kmeans -i \"" + emb.string() + ".layers.csv\" --k 2 --type N -o \"" +
                   labels.string() + "\"") == 0;
  if (!ok) {
    note = "pipeline command failed";
    fs::remove_all(dir);
    return false;
  }

  const std::vector<fs::path> data_files = {
      gen,
      dir / "gen.layers.txt",
      dir / "gen.type0.nodes.txt",
      dir / "gen.type1.nodes.txt",
      fs::path(emb.string() + ".nodes.csv"),
      fs::path(emb.string() + ".layers.csv"),
      fs::path(emb.string() + ".core.tns"),
      labels,
  };
  std::vector<std::string> snapshot;
  for (const auto& f : data_files) {
    if (!fs::exists(f)) {
      note = "missing pipeline output " + f.filename().string();
      fs::remove_all(dir);
      return false;
    }
    snapshot.push_back(slurp(f));
  }
  for (const auto& f : data_files) fs::remove(f);

  ok = ok && shell("rerun \"" + gen.string() + ".manifest.json\"") == 0;
  ok = ok && shell("rerun \"" + emb.string() + ".manifest.json\"") == 0;
  ok = ok && shell("rerun \"" + labels.string() + ".manifest.json\"") == 0;
  if (!ok) {
    note = "a rerun failed";
    fs::remove_all(dir);
    return false;
  }
  for (std::size_t i = 0; i < data_files.size(); ++i) {
    if (slurp(data_files[i]) != snapshot[i]) {
      note = "rerun changed " + data_files[i].filename().string();
      fs::remove_all(dir);
      return false;
    }
  }
  fs::remove_all(dir);
  note = "3 manifests replayed, 8 files byte-identical";
  return true;
}

struct Criterion {
  const char* name;
  double budget_seconds;
  std::function<bool(std::string&)> check;
};

}  // namespace

int main() {
  const std::vector<Criterion> criteria = {
      {"tensor algebra identities", 5.0, tensorAlgebra},
      {"orthogonal decomposition exactness", 10.0, decompositionExactness},
      {"default rank rule", 5.0, defaultRankRule},
      {"mixture recovery by regularized power iteration", 60.0, mixtureRecovery},
      {"regularization disabled matches plain iteration", 30.0, disabledRegularizationMatches},
      {"monotone core norm growth", 30.0, monotoneCoreTrace},
      {"likelihood gradient correctness", 10.0, gradientCorrectness},
      {"stochastic gradient unbiasedness", 15.0, stochasticUnbiasedness},
      {"latent space fit recovery", 120.0, latentSpaceRecovery},
      {"aggregate spectral recovery", 30.0, aggregateSpectralRecovery},
      {"density clustering", 30.0, densityClustering},
      {"misclustering matching optimality", 10.0, misclusteringOptimality},
      {"tensor file round trip", 10.0, fileRoundTrip},
      {"dataset shape validation", 5.0, datasetValidation},
      {"manifest rerun reproducibility", 60.0, manifestRerun},
  };

  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const auto start = std::chrono::steady_clock::now();
    std::string note;
    bool ok = false;
    try {
      ok = criteria[i].check(note);
    } catch (const std::exception& e) {
      note = std::string("exception: ") + e.what();
      ok = false;
    }
    const double elapsed = secondsSince(start);
    if (elapsed > criteria[i].budget_seconds) {
      ok = false;
      note += " [over budget: " + fmt(elapsed) + "s > " + fmt(criteria[i].budget_seconds) + "s]";
    }
    std::printf("[%s] criterion %2zu: %s (%s, %.1fs)\n", ok ? "PASS" : "FAIL", i + 1,
                criteria[i].name, note.c_str(), elapsed);
    std::fflush(stdout);
    failures += ok ? 0 : 1;
  }
  if (failures > 0) std::printf("%d criterion(s) failed\n", failures);
  return failures == 0 ? 0 : 1;
}
