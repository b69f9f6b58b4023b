#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "multinet/tensor.hpp"

namespace multinet {

class Rng;
struct GenList;

enum class LinkType { kLogit, kProbit, kPoisson };

LinkType linkTypeFromString(const std::string& name);
std::string toString(LinkType type);

/// Mean of one entry under the link: logit and probit map theta to an edge
/// probability, poisson to a rate. Arguments of exp are saturated at +-700 so
/// extreme theta never overflows.
double linkValue(double theta, LinkType type, double sgma);

/// Negative log-likelihood of the adjacency tensor given theta, summed over
/// off-diagonal entries of every slice. Probabilities are clipped to
/// [1e-12, 1 - 1e-12] before taking logs.
double negLogLikelihood(const Tensor3d& adj, const Tensor3d& theta, LinkType type,
                        double sgma);

struct LsmGradient {
  Eigen::MatrixXd u;  ///< d nll / d U
  Eigen::MatrixXd w;  ///< d nll / d W
  Tensor3d c;         ///< d nll / d C
};

/// Exact gradient of negLogLikelihood at (u, w, c) with theta = c x1 u x2 u x3 w.
LsmGradient lsmGradient(const Tensor3d& adj, const Eigen::MatrixXd& u,
                        const Eigen::MatrixXd& w, const Tensor3d& c, LinkType type,
                        double sgma);

/// Unbiased stochastic gradient: sample_size off-diagonal entries are drawn
/// uniformly with replacement and their contributions scaled by
/// (total off-diagonal count) / sample_size.
LsmGradient lsmGradientSampled(const Tensor3d& adj, const Eigen::MatrixXd& u,
                               const Eigen::MatrixXd& w, const Tensor3d& c, LinkType type,
                               double sgma, Index sample_size, Rng& sampler);

/// Projection onto the feasible set: entries of c are clipped to
/// [-cmax, cmax], then rows of u (resp. w) with norm above delta1 (resp.
/// delta2) are rescaled onto the bound. Idempotent.
void projectLsm(Eigen::MatrixXd& u, Eigen::MatrixXd& w, Tensor3d& c, double cmax,
                double delta1, double delta2);

enum class LsmStart { kSpectral, kRandom, kWarm };

LsmStart lsmStartFromString(const std::string& name);

struct LsmInit {
  Tensor3d tensor;      ///< adjacency passed through to the fit
  Eigen::MatrixXd u0;   ///< n x rank
  Eigen::MatrixXd w0;   ///< L x M
  Tensor3d c0;          ///< rank x rank x M
  double delta1 = 0;    ///< 2 x max row norm of u0
  double delta2 = 0;    ///< 2 x max row norm of w0
  double delta3 = 0;    ///< 2 x max |c0|
  Index rank = 0;
  Index num_types = 0;
};

/// Builds a starting point for projectedGd from a generated (or loaded)
/// multilayer network.
///   kSpectral: sqrt(n) (resp. sqrt(L)) times the node (resp. layer) spectral
///              embedding, core by least squares.
///   kRandom:   entries Uniform(0, perturb), core by least squares.
///   kWarm:     the generator's latent truth plus Uniform(0, perturb) noise,
///              core equal to the true core. Requires latent ground truth.
LsmInit initializationLsm(const GenList& gen, Index rank, Index num_types, LsmStart start,
                          double perturb, std::uint64_t seed);

enum class GradientMode { kFull, kSampled };

GradientMode gradientModeFromString(const std::string& name);

struct GdConfig {
  double cmax = 1.0;       ///< entrywise core bound, > 0
  double eta_outer = 1e-4; ///< step size, >= 0
  int tmax_outer = 35;     ///< gradient steps
  LinkType p_type = LinkType::kLogit;
  GradientMode rd = GradientMode::kFull;
  bool show = true;        ///< print "iter=<t> loss=<value>" per step to clog
  double sgma = 1.0;
  Index sample_size = 5000;       ///< entries per step when rd is kSampled
  std::uint64_t sample_seed = 0;  ///< stream for kSampled draws
};

struct LsmResult {
  Eigen::MatrixXd u;  ///< n x rank latent positions
  Eigen::MatrixXd w;  ///< L x M layer loadings
  Tensor3d c;         ///< rank x rank x M core
  std::vector<double> loss_trace;  ///< tmax_outer + 1 values, loss_trace[0] at init
};

/// Projected gradient descent on the negative log-likelihood. Every iterate
/// (including the start) is projected onto the feasible set; the loss is
/// recorded before the first step and after each step. Throws NumericalError
/// if the loss turns non-finite.
LsmResult projectedGd(const LsmInit& init, const GdConfig& cfg);

}  // namespace multinet
