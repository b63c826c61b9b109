#pragma once

#include "types.hpp"

namespace ogclust {

inline constexpr double kSigmaFloor = 1e-4;
inline constexpr double kMinClusterWeight = 1e-10;

// Responsibilities w_ik = pi_ik f_ik / sum_l pi_il f_il, computed in log space
// with the density family chosen by `loss`. Throws Error(numeric) naming the
// sample if a row underflows to zero mass.
PosteriorWeights e_step(const ThetaState& theta, const LossSpec& loss,
                        const OmicsDataset& data);

struct GaussianMStep {
  VectorXd beta0;
  VectorXd beta;
  double sigma = 1.0;
  bool sigma_floored = false;
};

// One M-step of the Gaussian outcome model:
//   beta0_k: responsibility-weighted mean of y - x'beta_prev
//   beta:    a single cyclic pass of weighted coordinate updates, each
//            coordinate solved exactly given the others' current values
//   sigma^2: responsibility-weighted mean squared residual at the new
//            (beta0, beta), floored at kSigmaFloor
// Throws Error(numeric) if a cluster's total responsibility < 1e-10.
GaussianMStep m_step_gaussian(const PosteriorWeights& W,
                              const OmicsDataset& data,
                              const ThetaState& theta_prev);

// Penalized EM fit: best of n_restarts runs (quantile-initialized intercepts,
// jittered after the first restart), each alternating the E-step, the outcome
// M-step for the configured loss, and the penalized gating update with a
// monotonicity guard. Cluster labels in the result are sorted by ascending
// beta0; gamma is reported on the original feature scale (see FitResult).
FitResult fit(const OmicsDataset& data, int K, const PenaltySpec& penalty,
              const LossSpec& loss, const FitControls& controls);

// Single EM run warm-started from a previous fit's parameters (converted back
// to this dataset's standardized scale). Used for lambda paths and CV.
FitResult fit_warm(const OmicsDataset& data, int K, const PenaltySpec& penalty,
                   const LossSpec& loss, const FitControls& controls,
                   const FitResult& warm_from);

// Gating probabilities, hard labels (argmax, ties -> lowest index) and the
// posterior-mixture outcome prediction for new samples. X_new may be 0 x 0
// when the model has no covariates. hard=true predicts with the argmax
// cluster's regression line instead of mixing.
Prediction predict(const FitResult& fit, const MatrixXd& G_new,
                   const MatrixXd& X_new, bool hard = false);

// Responsibilities for new samples whose outcome IS observed: combines the
// gating probabilities with the outcome density, exactly as the E-step does.
// This is the outcome-informed label rule benchmark ARIs use.
PosteriorWeights responsibilities(const FitResult& fit,
                                  const OmicsDataset& data_new);

// Gradient of the gating quadratic approximation at gamma = 0 under the
// restart-0 initialization, on the standardized feature scale:
//   B0(j, k) = sum_i g_ij (w_ik - 1/K),  j = 1..q.
// The largest entry (lasso) or row norm (group penalty) over the free columns
// is the smallest lambda that keeps every penalized coefficient at zero.
MatrixXd gating_gradient_at_zero(const OmicsDataset& data, int K,
                                 const LossSpec& loss,
                                 const FitControls& controls);

}  // namespace ogclust
