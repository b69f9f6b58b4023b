#include "multinet/lsm.hpp"

#include <algorithm>
#include <cmath>
#include <iostream>

#include "multinet/baselines.hpp"
#include "multinet/generate.hpp"
#include "multinet/rng.hpp"

namespace multinet {

namespace {

constexpr double kExpCap = 700.0;       // exp stays finite below this
constexpr double kProbFloor = 1e-12;    // probability clip for logs
constexpr double kInvSqrt2 = 0.70710678118654752440;
constexpr double kInvSqrt2Pi = 0.39894228040143267794;

constexpr std::uint64_t kInitUStream = 11;
constexpr std::uint64_t kInitWStream = 12;
constexpr std::uint64_t kSampleStream = 13;

double clampExpArg(double x) { return std::clamp(x, -kExpCap, kExpCap); }

double clampProb(double p) { return std::clamp(p, kProbFloor, 1.0 - kProbFloor); }

void checkSgma(double sgma) {
  if (!(sgma > 0)) throw ArgumentError("sgma must be positive");
}

// d nll / d theta for a single entry.
double nllThetaDerivative(double a, double theta, LinkType type, double sgma) {
  const double z = theta / sgma;
  switch (type) {
    case LinkType::kLogit: {
      const double p = 1.0 / (1.0 + std::exp(clampExpArg(-z)));
      return (p - a) / sgma;
    }
    case LinkType::kProbit: {
      const double p = clampProb(0.5 * std::erfc(-z * kInvSqrt2));
      const double pdf = kInvSqrt2Pi * std::exp(-0.5 * std::min(z * z, 2 * kExpCap));
      return pdf / sgma * (p - a) / (p * (1.0 - p));
    }
    case LinkType::kPoisson: {
      const double lambda = std::exp(clampExpArg(z));
      return (lambda - a) / sgma;
    }
  }
  throw ArgumentError("unknown link type");
}

void checkLsmShapes(const Tensor3d& adj, const Eigen::MatrixXd& u,
                    const Eigen::MatrixXd& w, const Tensor3d& c) {
  const Index n = adj.dim(1);
  if (adj.dim(2) != n)
    throw ArgumentError("latent space model requires square slices, got " +
                        dimsToString(adj.dims()));
  const Index L = adj.dim(3);
  if (u.rows() != n || w.rows() != L || c.dim(1) != u.cols() || c.dim(2) != u.cols() ||
      c.dim(3) != w.cols())
    throw ArgumentError("latent space factors do not conform: adjacency " +
                        dimsToString(adj.dims()) + ", U " + std::to_string(u.rows()) +
                        " x " + std::to_string(u.cols()) + ", W " +
                        std::to_string(w.rows()) + " x " + std::to_string(w.cols()) +
                        ", C " + dimsToString(c.dims()));
}

// Shared tail of the exact and sampled gradients: contract the entrywise
// derivative tensor r with the current factors.
LsmGradient contractGradient(const Tensor3d& r, const Eigen::MatrixXd& u,
                             const Eigen::MatrixXd& w, const Tensor3d& c) {
  LsmGradient grad;
  const Tensor3d r1 = modeMultiply(r, u.transpose(), 1);      // along mode 1
  const Tensor3d r13 = modeMultiply(r1, w.transpose(), 3);
  const Tensor3d r12 = modeMultiply(r1, u.transpose(), 2);
  const Tensor3d r23 = modeMultiply(modeMultiply(r, u.transpose(), 2), w.transpose(), 3);
  grad.u = unfold(r23, 1) * unfold(c, 1).transpose() +
           unfold(r13, 2) * unfold(c, 2).transpose();
  grad.w = unfold(r12, 3) * unfold(c, 3).transpose();
  grad.c = modeMultiply(r12, w.transpose(), 3);
  return grad;
}

}  // namespace

LinkType linkTypeFromString(const std::string& name) {
  if (name == "logit") return LinkType::kLogit;
  if (name == "probit") return LinkType::kProbit;
  if (name == "poisson") return LinkType::kPoisson;
  throw ArgumentError("unknown link type '" + name +
                      "' (expected logit, probit or poisson)");
}

std::string toString(LinkType type) {
  switch (type) {
    case LinkType::kLogit: return "logit";
    case LinkType::kProbit: return "probit";
    case LinkType::kPoisson: return "poisson";
  }
  return "?";
}

double linkValue(double theta, LinkType type, double sgma) {
  checkSgma(sgma);
  const double z = theta / sgma;
  switch (type) {
    case LinkType::kLogit:
      return 1.0 / (1.0 + std::exp(clampExpArg(-z)));
    case LinkType::kProbit:
      return 0.5 * std::erfc(-z * kInvSqrt2);
    case LinkType::kPoisson:
      return std::exp(clampExpArg(z));
  }
  throw ArgumentError("unknown link type");
}

double negLogLikelihood(const Tensor3d& adj, const Tensor3d& theta, LinkType type,
                        double sgma) {
  checkSgma(sgma);
  if (adj.dims() != theta.dims())
    throw ArgumentError("negLogLikelihood: adjacency " + dimsToString(adj.dims()) +
                        " and theta " + dimsToString(theta.dims()) + " differ");
  const Index n = adj.dim(1);
  if (adj.dim(2) != n)
    throw ArgumentError("negLogLikelihood requires square slices, got " +
                        dimsToString(adj.dims()));
  double loss = 0;
  for (Index l = 0; l < adj.dim(3); ++l) {
    for (Index j = 0; j < n; ++j) {
      for (Index i = 0; i < n; ++i) {
        if (i == j) continue;
        const double a = adj(i, j, l);
        const double z = theta(i, j, l) / sgma;
        if (type == LinkType::kPoisson) {
          if (a < 0)
            throw ArgumentError("poisson likelihood requires nonnegative counts, got " +
                                std::to_string(a));
          const double zc = clampExpArg(z);
          loss += std::exp(zc) - a * zc;
        } else {
          const double p = clampProb(linkValue(theta(i, j, l), type, sgma));
          loss -= a * std::log(p) + (1.0 - a) * std::log1p(-p);
        }
      }
    }
  }
  return loss;
}

LsmGradient lsmGradient(const Tensor3d& adj, const Eigen::MatrixXd& u,
                        const Eigen::MatrixXd& w, const Tensor3d& c, LinkType type,
                        double sgma) {
  checkSgma(sgma);
  checkLsmShapes(adj, u, w, c);
  const Tensor3d theta = tuckerProduct(c, u, u, w);
  const Index n = adj.dim(1);
  Tensor3d r(adj.dims());
  for (Index l = 0; l < adj.dim(3); ++l)
    for (Index j = 0; j < n; ++j)
      for (Index i = 0; i < n; ++i)
        if (i != j)
          r(i, j, l) = nllThetaDerivative(adj(i, j, l), theta(i, j, l), type, sgma);
  return contractGradient(r, u, w, c);
}

LsmGradient lsmGradientSampled(const Tensor3d& adj, const Eigen::MatrixXd& u,
                               const Eigen::MatrixXd& w, const Tensor3d& c, LinkType type,
                               double sgma, Index sample_size, Rng& sampler) {
  checkSgma(sgma);
  checkLsmShapes(adj, u, w, c);
  if (sample_size < 1) throw ArgumentError("sample_size must be >= 1");
  const Index n = adj.dim(1);
  const Index L = adj.dim(3);
  if (n < 2) throw ArgumentError("sampled gradient needs at least two nodes");
  const Tensor3d theta = tuckerProduct(c, u, u, w);
  const double total = static_cast<double>(n) * (n - 1) * L;
  const double scale = total / static_cast<double>(sample_size);
  Tensor3d r(adj.dims());
  for (Index s = 0; s < sample_size; ++s) {
    const Index i = static_cast<Index>(sampler.below(static_cast<std::uint64_t>(n)));
    Index j = static_cast<Index>(sampler.below(static_cast<std::uint64_t>(n - 1)));
    if (j >= i) ++j;
    const Index l = static_cast<Index>(sampler.below(static_cast<std::uint64_t>(L)));
    r(i, j, l) += scale * nllThetaDerivative(adj(i, j, l), theta(i, j, l), type, sgma);
  }
  return contractGradient(r, u, w, c);
}

void projectLsm(Eigen::MatrixXd& u, Eigen::MatrixXd& w, Tensor3d& c, double cmax,
                double delta1, double delta2) {
  if (!(cmax > 0) || !(delta1 > 0) || !(delta2 > 0))
    throw ArgumentError("projection bounds must be positive");
  c.values() = c.values().cwiseMax(-cmax).cwiseMin(cmax);
  clampRowNorms(u, delta1);
  clampRowNorms(w, delta2);
}

LsmStart lsmStartFromString(const std::string& name) {
  if (name == "spec") return LsmStart::kSpectral;
  if (name == "rand") return LsmStart::kRandom;
  if (name == "warm") return LsmStart::kWarm;
  throw ArgumentError("unknown initialization '" + name +
                      "' (expected spec, rand or warm)");
}

GradientMode gradientModeFromString(const std::string& name) {
  if (name == "Non" || name == "non" || name == "full") return GradientMode::kFull;
  if (name == "rand" || name == "sampled") return GradientMode::kSampled;
  throw ArgumentError("unknown gradient mode '" + name + "' (expected Non or rand)");
}

namespace {

// Least-squares core for fixed factors: a x1 pinv(u) x2 pinv(u) x3 pinv(w).
Tensor3d leastSquaresCore(const Tensor3d& a, const Eigen::MatrixXd& u,
                          const Eigen::MatrixXd& w) {
  const Eigen::MatrixXd u_pinv = u.completeOrthogonalDecomposition().pseudoInverse();
  const Eigen::MatrixXd w_pinv = w.completeOrthogonalDecomposition().pseudoInverse();
  return tuckerProduct(a, u_pinv, u_pinv, w_pinv);
}

double maxRowNorm(const Eigen::MatrixXd& m) {
  double best = 0;
  for (Index r = 0; r < m.rows(); ++r) best = std::max(best, m.row(r).norm());
  return best;
}

}  // namespace

LsmInit initializationLsm(const GenList& gen, Index rank, Index num_types, LsmStart start,
                          double perturb, std::uint64_t seed) {
  const Index n = gen.tensor.dim(1);
  const Index L = gen.tensor.dim(3);
  if (gen.tensor.dim(2) != n)
    throw ArgumentError("initializationLsm requires square slices, got " +
                        dimsToString(gen.tensor.dims()));
  if (rank < 1 || rank > n)
    throw ArgumentError("initializationLsm: rank must lie in [1, n]");
  if (num_types < 1 || num_types > L)
    throw ArgumentError("initializationLsm: number of types must lie in [1, L]");
  if (perturb < 0) throw ArgumentError("initializationLsm: perturb must be >= 0");

  LsmInit init;
  init.tensor = gen.tensor;
  init.rank = rank;
  init.num_types = num_types;
  Rng root(seed);

  switch (start) {
    case LsmStart::kSpectral: {
      init.u0 = std::sqrt(static_cast<double>(n)) *
                specEmbedding(gen.tensor, rank, SpecEmbeddingType::kNode);
      init.w0 = std::sqrt(static_cast<double>(L)) *
                specEmbedding(gen.tensor, num_types, SpecEmbeddingType::kLayer);
      init.c0 = leastSquaresCore(gen.tensor, init.u0, init.w0);
      break;
    }
    case LsmStart::kRandom: {
      init.u0.resize(n, rank);
      init.w0.resize(L, num_types);
      Rng su = root.stream(kInitUStream);
      for (Index i = 0; i < n; ++i)
        for (Index q = 0; q < rank; ++q) init.u0(i, q) = su.uniform(0.0, perturb);
      Rng sw = root.stream(kInitWStream);
      for (Index l = 0; l < L; ++l)
        for (Index q = 0; q < num_types; ++q) init.w0(l, q) = sw.uniform(0.0, perturb);
      init.c0 = leastSquaresCore(gen.tensor, init.u0, init.w0);
      break;
    }
    case LsmStart::kWarm: {
      if (!gen.truth.has_latent)
        throw ArgumentError(
            "warm initialization requires latent ground truth from the generator");
      if (gen.truth.latent_u.cols() != rank || gen.truth.latent_w.cols() != num_types)
        throw ArgumentError("warm initialization: requested rank " + std::to_string(rank) +
                            " and types " + std::to_string(num_types) +
                            " do not match the latent truth (" +
                            std::to_string(gen.truth.latent_u.cols()) + ", " +
                            std::to_string(gen.truth.latent_w.cols()) + ")");
      init.u0 = gen.truth.latent_u;
      init.w0 = gen.truth.latent_w;
      Rng su = root.stream(kInitUStream);
      for (Index i = 0; i < n; ++i)
        for (Index q = 0; q < rank; ++q) init.u0(i, q) += su.uniform(0.0, perturb);
      Rng sw = root.stream(kInitWStream);
      for (Index l = 0; l < L; ++l)
        for (Index q = 0; q < num_types; ++q) init.w0(l, q) += sw.uniform(0.0, perturb);
      init.c0 = gen.truth.latent_core;
      break;
    }
  }
  init.delta1 = 2.0 * maxRowNorm(init.u0);
  init.delta2 = 2.0 * maxRowNorm(init.w0);
  init.delta3 = 2.0 * init.c0.maxAbs();
  return init;
}

LsmResult projectedGd(const LsmInit& init, const GdConfig& cfg) {
  checkSgma(cfg.sgma);
  if (!(cfg.cmax > 0)) throw ArgumentError("projectedGd: cmax must be positive");
  if (cfg.eta_outer < 0) throw ArgumentError("projectedGd: eta_outer must be >= 0");
  if (cfg.tmax_outer < 1) throw ArgumentError("projectedGd: tmax_outer must be >= 1");
  if (!(init.delta1 > 0) || !(init.delta2 > 0))
    throw ArgumentError("projectedGd: init row-norm bounds must be positive");
  checkLsmShapes(init.tensor, init.u0, init.w0, init.c0);

  LsmResult res;
  res.u = init.u0;
  res.w = init.w0;
  res.c = init.c0;
  projectLsm(res.u, res.w, res.c, cfg.cmax, init.delta1, init.delta2);

  Rng sampler = Rng(cfg.sample_seed).stream(kSampleStream);
  auto loss_at = [&](const Eigen::MatrixXd& u, const Eigen::MatrixXd& w, const Tensor3d& c) {
    return negLogLikelihood(init.tensor, tuckerProduct(c, u, u, w), cfg.p_type, cfg.sgma);
  };

  double loss = loss_at(res.u, res.w, res.c);
  if (!std::isfinite(loss))
    throw NumericalError("projectedGd: loss is not finite at the starting point");
  res.loss_trace.push_back(loss);
  if (cfg.show) std::clog << "iter=0 loss=" << loss << "\n";

  for (int t = 1; t <= cfg.tmax_outer; ++t) {
    const LsmGradient grad =
        cfg.rd == GradientMode::kSampled
            ? lsmGradientSampled(init.tensor, res.u, res.w, res.c, cfg.p_type, cfg.sgma,
                                 cfg.sample_size, sampler)
            : lsmGradient(init.tensor, res.u, res.w, res.c, cfg.p_type, cfg.sgma);
    res.u -= cfg.eta_outer * grad.u;
    res.w -= cfg.eta_outer * grad.w;
    res.c.values() -= cfg.eta_outer * grad.c.values();
    projectLsm(res.u, res.w, res.c, cfg.cmax, init.delta1, init.delta2);
    loss = loss_at(res.u, res.w, res.c);
    if (!std::isfinite(loss))
      throw NumericalError("projectedGd: loss became non-finite at step " +
                           std::to_string(t));
    res.loss_trace.push_back(loss);
    if (cfg.show) std::clog << "iter=" << t << " loss=" << loss << "\n";
  }
  return res;
}

}  // namespace multinet
