#pragma once

#include "rng.hpp"
#include "types.hpp"

namespace ogclust {

struct KMeansResult {
  MatrixXd centers;  // K x d
  VectorXi labels;   // n, in 0..K-1
  double inertia = 0.0;
  int iterations = 0;
  bool converged = false;
};

// Lloyd's algorithm with distance-weighted seeding; the best of n_restarts
// runs by inertia (ties keep the earlier restart). A restart that produces an
// empty cluster is abandoned; if every restart degenerates, throws
// Error(numeric). Deterministic given the generator state.
KMeansResult kmeans(const MatrixXd& X, int K, Rng& rng, int n_restarts = 10,
                    int max_iters = 300, double tol = 1e-8);

}  // namespace ogclust
