#pragma once

#include "types.hpp"

namespace ogclust {

// Log-likelihood contribution of one observation under the log-logistic AFT
// model with location mu (on the log-time scale) and scale sigma:
//   w = (log t - mu) / sigma
//   event:    w - 2 log(1 + e^w) - log sigma      (density of log t)
//   censored: -log(1 + e^w)                       (survival function)
// Computed via log1p/softplus so large |w| cannot overflow.
double aft_loglik_one(double log_t, int event, double mu, double sigma);

// n x K matrix of aft_loglik_one over every sample/cluster pair.
MatrixXd aft_log_density_matrix(const ThetaState& theta, const OmicsDataset& data);

// Responsibility-weighted AFT log-likelihood and its analytic gradient in the
// packed parameter vector (beta0[0..K-1], beta[0..p-1], log sigma). Exposed so
// the gradient can be cross-checked against numerical differentiation.
struct AftObjective {
  double value = 0.0;
  VectorXd grad;
};
AftObjective aft_objective(const VectorXd& packed, const PosteriorWeights& W,
                           const OmicsDataset& data);

struct AftMStep {
  VectorXd beta0;
  VectorXd beta;
  double sigma = 1.0;
  bool converged = false;
  int iterations = 0;
};

// Maximizes sum_ik w_ik * loglik_ik over (beta0, beta, log sigma) by BFGS with
// Armijo backtracking and analytic gradients, warm-started at theta_prev.
// Stops when the gradient max-norm < grad_tol or after max_iters iterations.
// Throws Error(numeric) if some cluster has (responsibility-weighted) zero
// observed events: the scale is then unidentified in that cluster.
AftMStep aft_m_step(const PosteriorWeights& W, const OmicsDataset& data,
                    const ThetaState& theta_prev, double grad_tol = 1e-6,
                    int max_iters = 200);

}  // namespace ogclust
