#pragma once

#include "types.hpp"

namespace ogclust {

// Quadratic approximation of the responsibility-weighted multinomial partial
// likelihood around the current gamma: per (i,k) working response
//   h_ik = g_i' gamma_k + (w_ik - pi_ik) / W_ik,   W_ik = pi_ik (1 - pi_ik)
// with W_ik clamped to [w_min, 0.25] so h stays finite at fitted probabilities
// near 0/1. The gating update then minimizes
//   (1/2) sum_ik W_ik (h_ik - g_i' gamma_k)^2 + lambda R(gamma)
// over the K-1 free columns (column K is the softmax anchor, fixed at zero).
struct QuadApprox {
  MatrixXd H;   // n x K
  MatrixXd Wq;  // n x K, clamped
};

inline constexpr double kQuadWeightMin = 1e-5;
inline constexpr double kQuadWeightMax = 0.25;

QuadApprox build_quad_approx(const PosteriorWeights& W, const MatrixXd& Pi,
                             const MatrixXd& gamma, const MatrixXd& G);

// S(z, lambda) = sign(z) (|z| - lambda)_+
inline double soft_threshold(double z, double lambda) {
  if (z > lambda) return z - lambda;
  if (z < -lambda) return z + lambda;
  return 0.0;
}

struct GatingResult {
  MatrixXd gamma;       // q x K, column K identically zero
  int sweeps = 0;
  bool converged = true;  // false iff the sweep cap was exhausted; gamma then
                          // carries the last iterate
};

// Cyclic coordinate descent (k outer, j inner) with soft thresholding:
//   gamma_jk <- S(sum_i g_ij W_ik (h_ik - g_i^(j)' gamma_k^(j)), lambda)
//              / sum_i W_ik g_ij^2
// Residuals are maintained incrementally; an active-set loop with a full
// KKT-gradient screen keeps sweeps cheap at q in the thousands. Stops when the
// largest coordinate change in a sweep falls below tol and no screened
// coordinate violates the KKT conditions.
// unpenalized_row (optional) names one feature row — the gating intercept
// column of G — that is exempt from the penalty and always kept active.
GatingResult cd_lasso_update(const QuadApprox& qa, const MatrixXd& gamma_init,
                             const MatrixXd& G, double lambda,
                             int max_sweeps = 1000, double tol = 1e-7,
                             Index unpenalized_row = -1);

// Block coordinate descent over feature rows for the blended penalty
//   lambda * ( sum_j ||gamma_j,free||_2 + alpha * sum gamma_j,free^2 ).
// The ridge part is absorbed into the row's quadratic term; the row is zeroed
// iff the norm of its unpenalized block gradient is <= lambda, otherwise the
// scaled root of a one-dimensional secular equation gives the row exactly.
GatingResult group_lasso_ridge_update(const QuadApprox& qa,
                                      const MatrixXd& gamma_init,
                                      const MatrixXd& G, double lambda,
                                      double alpha, int max_sweeps = 1000,
                                      double tol = 1e-7,
                                      Index unpenalized_row = -1);

// G * gamma evaluated as a sum of rank-one terms over the nonzero rows of
// gamma; exact same arithmetic everywhere logits are needed, and much cheaper
// than a dense product while the support is sparse.
MatrixXd gating_logits(const MatrixXd& G, const MatrixXd& gamma);

}  // namespace ogclust
