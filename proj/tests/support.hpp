// Shared fixture builders for the unit tests; construction only, no numerics.
#pragma once

#include <string>
#include <vector>

#include "rng.hpp"
#include "types.hpp"

namespace support {

using ogclust::Index;
using ogclust::MatrixXd;
using ogclust::OmicsDataset;
using ogclust::Rng;
using ogclust::ThetaState;
using ogclust::VectorXd;
using ogclust::VectorXi;

inline std::vector<std::string> ids(const char* prefix, Index n) {
  std::vector<std::string> out;
  for (Index i = 0; i < n; ++i) out.push_back(prefix + std::to_string(i + 1));
  return out;
}

inline OmicsDataset continuous(VectorXd y, MatrixXd X, MatrixXd G) {
  OmicsDataset d;
  d.y = std::move(y);
  d.X = std::move(X);
  d.G = std::move(G);
  d.sample_ids = ids("S", d.G.rows());
  d.feature_ids = ids("g", d.G.cols());
  return d;
}

inline OmicsDataset survival(VectorXd time, VectorXi event, MatrixXd X,
                             MatrixXd G) {
  OmicsDataset d;
  d.time = std::move(time);
  d.event = std::move(event);
  d.X = std::move(X);
  d.G = std::move(G);
  d.sample_ids = ids("S", d.G.rows());
  d.feature_ids = ids("g", d.G.cols());
  return d;
}

// A seeded two- or three-cluster continuous instance with separation `delta`
// between consecutive intercepts and features whose first column carries the
// cluster signal. Small enough for oracle comparisons, structured enough for
// EM to behave.
struct Instance {
  OmicsDataset data;
  std::vector<int> z;
};

inline Instance clustered_instance(Index n, Index p, Index q, int K,
                                   double delta, std::uint64_t seed,
                                   double gamma_strength = 2.0) {
  Rng rng(seed);
  std::normal_distribution<double> norm(0.0, 1.0);
  std::uniform_real_distribution<double> unit(0.0, 1.0);

  Instance inst;
  MatrixXd G(n, q);
  for (Index i = 0; i < n; ++i)
    for (Index j = 0; j < q; ++j) G(i, j) = norm(rng);

  inst.z.resize(size_t(n));
  for (Index i = 0; i < n; ++i) {
    const int zi = int(unit(rng) * K);
    inst.z[size_t(i)] = zi >= K ? K - 1 : zi;
  }
  // First min(q, K-1) feature columns separate the clusters.
  for (Index i = 0; i < n; ++i)
    for (int k = 0; k + 1 < K && k < int(q); ++k)
      if (inst.z[size_t(i)] == k) G(i, k) += gamma_strength;

  MatrixXd X(n, p);
  for (Index i = 0; i < n; ++i)
    for (Index l = 0; l < p; ++l) X(i, l) = 1.0 + norm(rng);

  VectorXd beta = VectorXd::LinSpaced(std::max<Index>(p, 1), 1.0, 1.0);
  VectorXd y(n);
  for (Index i = 0; i < n; ++i) {
    double mu = 1.0 + delta * inst.z[size_t(i)];
    for (Index l = 0; l < p; ++l) mu += X(i, l) * beta[l];
    y[i] = mu + norm(rng);
  }
  inst.data = continuous(std::move(y), std::move(X), std::move(G));
  return inst;
}

inline ThetaState theta_of(VectorXd beta0, VectorXd beta, MatrixXd gamma,
                           double sigma) {
  ThetaState t;
  t.beta0 = std::move(beta0);
  t.beta = std::move(beta);
  t.gamma = std::move(gamma);
  t.sigma = sigma;
  return t;
}

}  // namespace support
