#include "kmeans.hpp"

#include <cmath>
#include <limits>

namespace ogclust {

namespace {

MatrixXd seed_centers(const MatrixXd& X, int K, Rng& rng) {
  const Index n = X.rows();
  MatrixXd centers(K, X.cols());
  std::uniform_int_distribution<Index> pick(0, n - 1);
  centers.row(0) = X.row(pick(rng));
  VectorXd d2 = (X.rowwise() - centers.row(0)).rowwise().squaredNorm();
  for (int c = 1; c < K; ++c) {
    const double total = d2.sum();
    Index chosen;
    if (total <= 0.0) {
      chosen = pick(rng);
    } else {
      std::uniform_real_distribution<double> u(0.0, total);
      double r = u(rng);
      chosen = n - 1;
      for (Index i = 0; i < n; ++i) {
        r -= d2[i];
        if (r <= 0.0) {
          chosen = i;
          break;
        }
      }
    }
    centers.row(c) = X.row(chosen);
    d2 = d2.cwiseMin(
        (X.rowwise() - centers.row(c)).rowwise().squaredNorm());
  }
  return centers;
}

}  // namespace

KMeansResult kmeans(const MatrixXd& X, int K, Rng& rng, int n_restarts,
                    int max_iters, double tol) {
  const Index n = X.rows();
  if (K < 1) throw Error(StatusCode::invalid_argument, "K must be >= 1");
  if (n < K)
    throw Error(StatusCode::invalid_argument,
                "k-means needs at least K samples");
  if (n_restarts < 1)
    throw Error(StatusCode::invalid_argument, "n_restarts must be >= 1");

  KMeansResult best;
  best.inertia = std::numeric_limits<double>::infinity();
  bool have_best = false;

  for (int r = 0; r < n_restarts; ++r) {
    MatrixXd centers = seed_centers(X, K, rng);
    VectorXi labels = VectorXi::Constant(n, -1);
    bool degenerate = false;
    bool converged = false;
    int it = 0;
    for (; it < max_iters; ++it) {
      // Assign to the nearest center; ties go to the lowest index.
      for (Index i = 0; i < n; ++i) {
        int arg = 0;
        double bd = (X.row(i) - centers.row(0)).squaredNorm();
        for (int k = 1; k < K; ++k) {
          const double d = (X.row(i) - centers.row(k)).squaredNorm();
          if (d < bd) {
            bd = d;
            arg = k;
          }
        }
        labels[i] = arg;
      }
      MatrixXd next = MatrixXd::Zero(K, X.cols());
      VectorXd count = VectorXd::Zero(K);
      for (Index i = 0; i < n; ++i) {
        next.row(labels[i]) += X.row(i);
        count[labels[i]] += 1.0;
      }
      if ((count.array() == 0.0).any()) {
        degenerate = true;
        break;
      }
      next.array().colwise() /= count.array();
      const double shift = (next - centers).rowwise().norm().maxCoeff();
      centers = std::move(next);
      if (shift < tol) {
        converged = true;
        break;
      }
    }
    if (degenerate) continue;

    double inertia = 0.0;
    for (Index i = 0; i < n; ++i)
      inertia += (X.row(i) - centers.row(labels[i])).squaredNorm();
    if (!have_best || inertia < best.inertia) {
      best.centers = std::move(centers);
      best.labels = std::move(labels);
      best.inertia = inertia;
      best.iterations = it;
      best.converged = converged;
      have_best = true;
    }
  }
  if (!have_best)
    throw Error(StatusCode::numeric,
                "every k-means restart produced an empty cluster");
  return best;
}

}  // namespace ogclust
