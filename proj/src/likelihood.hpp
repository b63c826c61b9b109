#pragma once

#include "types.hpp"

namespace ogclust {

// log(sum(exp(v))) with max-subtraction; -inf-safe for all-(-inf) rows.
double logsumexp(const Eigen::Ref<const Eigen::RowVectorXd>& v);

// Row-wise softmax of the gating logits G * gamma, computed with per-row
// max-subtraction so +-large logits cannot overflow. Returns n x K.
MatrixXd mixing_probs(const MatrixXd& G, const MatrixXd& gamma);

// log of the above (logits minus per-row logsumexp); preferred downstream to
// avoid log(softmax) cancellation.
MatrixXd log_mixing_probs(const MatrixXd& G, const MatrixXd& gamma);

// e_ik = y_i - beta0_k - x_i' beta (log(t_i) in place of y_i for survival
// data). n x K.
MatrixXd residual_matrix(const ThetaState& theta, const OmicsDataset& data);

// log f_k(outcome_i | x_i; theta) for every sample/cluster pair:
//   gaussian:   N(beta0_k + x'beta, sigma^2) log-density
//   robust:     -l_tau(e_ik)/sigma^2 - log(sigma sqrt(2 pi))   (pseudo)
//   aft:        log-logistic AFT log-likelihood with censoring
// The median-truncated loss caps at the per-cluster median cutoff computed
// from these same residuals: l(e) = min(e^2, tau_k^2)/2.
MatrixXd log_density_matrix(const ThetaState& theta, const LossSpec& loss,
                            const OmicsDataset& data);

// Observed-data log-likelihood sum_i log sum_k pi_ik f_ik. Works directly on
// theta's gamma and data's G (no internal standardization).
double observed_loglik(const ThetaState& theta, const LossSpec& loss,
                       const OmicsDataset& data);

// R(gamma): lasso sums |gamma_jk| over the K-1 free columns; group blends
// sum_j ||gamma_j,1..K-1||_2 with alpha * sum of squares over the same block.
double penalty_value(const MatrixXd& gamma, const PenaltySpec& penalty);

// observed_loglik - lambda * R(gamma); the quantity EM must not decrease.
double penalized_objective(const ThetaState& theta, const LossSpec& loss,
                           const PenaltySpec& penalty, const OmicsDataset& data);

}  // namespace ogclust
