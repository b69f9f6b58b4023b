#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <numeric>

#include "multinet/baselines.hpp"
#include "multinet/cluster.hpp"
#include "multinet/generate.hpp"
#include "multinet/rng.hpp"
#include "oracles.hpp"

using namespace multinet;

namespace {

// Two disjoint 4-cliques, repeated across layers.
Tensor3d twoCliques(Index layers) {
  Tensor3d t(8, 8, layers);
  for (Index k = 0; k < layers; ++k)
    for (Index j = 0; j < 8; ++j)
      for (Index i = 0; i < 8; ++i)
        if (i != j && (i < 4) == (j < 4)) t(i, j, k) = 1.0;
  return t;
}

}  // namespace

TEST_CASE("aggregated spectral embedding separates two cliques") {
  const Tensor3d t = twoCliques(3);
  const Eigen::MatrixXd emb = specEmbedding(t, 2, SpecEmbeddingType::kNode);
  REQUIRE(emb.rows() == 8);
  REQUIRE(emb.cols() == 2);
  const ClusterAssignment got = communityClusterKm(emb, ItemKind::kNode, 2, 0);
  const std::vector<int> truth = {0, 0, 0, 0, 1, 1, 1, 1};
  CHECK(misclusteringRate(got.labels, truth) == 0.0);
}

TEST_CASE("embedding columns are orthonormal") {
  Rng rng(50);
  const Tensor3d t = oracles::randomTensor({12, 12, 5}, rng);
  for (auto type : {SpecEmbeddingType::kNode, SpecEmbeddingType::kLayer}) {
    const Eigen::MatrixXd emb = specEmbedding(t, 3, type);
    CHECK((emb.transpose() * emb - Eigen::MatrixXd::Identity(3, 3)).norm() <= 1e-12);
  }
}

TEST_CASE("identical layers embed to identical rows") {
  Rng rng(51);
  Tensor3d t(6, 6, 5);
  const Tensor3d one_layer = oracles::randomTensor({6, 6, 1}, rng);
  for (Index k = 0; k < 5; ++k) t.layer(k) = one_layer.layer(0);
  const Eigen::MatrixXd emb = specEmbedding(t, 1, SpecEmbeddingType::kLayer);
  REQUIRE(emb.rows() == 5);
  for (Index k = 1; k < 5; ++k)
    CHECK(std::abs(emb(k, 0) - emb(0, 0)) <= 1e-12);
  // the sign convention orients the dominant direction positively
  CHECK(emb(0, 0) > 0.0);
  CHECK(emb(0, 0) == doctest::Approx(1.0 / std::sqrt(5.0)).epsilon(1e-10));
}

TEST_CASE("node embedding is invariant to layer order") {
  Rng rng(52);
  Tensor3d t(10, 10, 6);
  for (Index k = 0; k < 6; ++k) {
    const Eigen::MatrixXd g = oracles::randomGaussian(10, 10, rng);
    t.layer(k) = g + g.transpose();
  }
  Tensor3d reversed(10, 10, 6);
  for (Index k = 0; k < 6; ++k) reversed.layer(k) = t.layer(5 - k);
  const Eigen::MatrixXd a = specEmbedding(t, 3, SpecEmbeddingType::kNode);
  const Eigen::MatrixXd b = specEmbedding(reversed, 3, SpecEmbeddingType::kNode);
  CHECK(oracles::projectorGap(a, b) <= 1e-9);
}

TEST_CASE("signed eigenvalues are ranked by magnitude, not value") {
  // layer sum with eigenvalues 4, -3, 1: rank 2 must keep the -3 direction
  Tensor3d t(3, 3, 1);
  t(0, 0, 0) = 4.0;
  t(1, 1, 0) = -3.0;
  t(2, 2, 0) = 1.0;
  const Eigen::MatrixXd emb = specEmbedding(t, 2, SpecEmbeddingType::kNode);
  CHECK(std::abs(emb(0, 0)) == doctest::Approx(1.0));
  CHECK(std::abs(emb(1, 1)) == doctest::Approx(1.0));
}

TEST_CASE("planted single-type partition is recovered from the layer sum") {
  MmsbmParams params;
  params.n = 100;
  params.m = 1;
  params.L = 8;
  params.K = 2;
  params.d = 25.0;
  params.r = 0.3;
  params.seed = 7;
  const GenList gen = generateMmsbm(params);
  const Eigen::MatrixXd emb = specEmbedding(gen.tensor, 2, SpecEmbeddingType::kNode);
  const ClusterAssignment got = communityClusterKm(emb, ItemKind::kNode, 2, 0);
  CHECK(misclusteringRate(got.labels, gen.truth.memberships[0]) == 0.0);
}

TEST_CASE("layer embedding separates layer types of a mixture") {
  MmsbmParams params;
  params.n = 80;
  params.m = 2;
  params.L = 10;
  params.K = 2;
  params.d = 20.0;
  params.r = 0.3;
  params.seed = 8;
  const GenList gen = generateMmsbm(params);
  const Eigen::MatrixXd emb = specEmbedding(gen.tensor, 2, SpecEmbeddingType::kLayer);
  const ClusterAssignment got = communityClusterKm(emb, ItemKind::kNetwork, 2, 0);
  CHECK(misclusteringRate(got.labels, gen.truth.layer_types) == 0.0);
}

TEST_CASE("embedding validation") {
  Rng rng(53);
  const Tensor3d square = oracles::randomTensor({6, 6, 4}, rng);
  const Tensor3d rect = oracles::randomTensor({6, 5, 4}, rng);
  CHECK_THROWS_AS(specEmbedding(rect, 2, SpecEmbeddingType::kNode), ArgumentError);
  CHECK_THROWS_AS(specEmbedding(square, 0, SpecEmbeddingType::kNode), ArgumentError);
  CHECK_THROWS_AS(specEmbedding(square, 7, SpecEmbeddingType::kNode), ArgumentError);
  CHECK_THROWS_AS(specEmbedding(square, 5, SpecEmbeddingType::kLayer), ArgumentError);
  CHECK_NOTHROW(specEmbedding(rect, 2, SpecEmbeddingType::kLayer));
}
