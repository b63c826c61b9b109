#pragma once

#include <cmath>

#include "types.hpp"

namespace ogclust {

// Huber loss: quadratic inside |e| <= tau, linear beyond; C1 at the joint.
inline double huber_loss(double e, double tau) {
  const double a = std::abs(e);
  return a <= tau ? 0.5 * e * e : tau * a - 0.5 * tau * tau;
}

// Truncated squared loss used by the median-truncated pseudo-density:
// min(e^2, tau^2)/2, flat beyond the cutoff.
inline double truncated_loss(double e, double tau) {
  const double e2 = e * e;
  const double t2 = tau * tau;
  return 0.5 * (e2 <= t2 ? e2 : t2);
}

// Lower median of |column| for each cluster: the cutoffs tau_k of the
// median-truncated variant. Even n uses the lower of the two middle order
// statistics; comparisons downstream are inclusive (<=).
VectorXd median_cutoffs(const MatrixXd& E);

struct RobustMStep {
  VectorXd beta0;
  VectorXd beta;
  double sigma = 1.0;
  double tau = 1.345;        // cutoff in force after the update (Huber variants)
  bool tau_fallback = false; // adaptive: tuning equation had no root
  bool alternation_converged = true;  // adaptive only
  int alternations = 0;               // adaptive only
};

// Median-truncated M-step: the Gaussian update equations with every sum
// restricted to residuals within the per-cluster median cutoff (computed from
// theta_prev's residuals, inclusive <=).
RobustMStep m_step_median_truncated(const PosteriorWeights& W,
                                    const OmicsDataset& data,
                                    const ThetaState& theta_prev);

// Huber M-step with a fixed cutoff: quadratic-branch terms plus
// tau * sign(e) linear-branch corrections, branch membership and signs frozen
// at theta_prev's residuals.
RobustMStep m_step_huber_fixed(const PosteriorWeights& W,
                               const OmicsDataset& data,
                               const ThetaState& theta_prev,
                               double tau = 1.345);

// Root of the cutoff tuning equation
//   g2(tau) = (n-p)^-1 sum_ik w_ik min(e_ik^2, tau^2)/tau^2 - (p+z)/n = 0
// by bisection on (1e-8 * max|e|, max|e|]; closed form when the root lies on
// the outer branch tau >= max|e|. Throws Error(numeric) when g2 has no root
// (e.g. all residuals zero); callers fall back to tau = 1.345.
double solve_adaptive_tau(const MatrixXd& E, const PosteriorWeights& W,
                          Index p, double z);

// Adaptive-Huber M-step: alternate the fixed-cutoff update and the tuning
// equation until both theta and tau move < tol (default 1e-6) or the
// alternation cap; z = ln(n) when loss.adaptive_z == 0.
RobustMStep m_step_huber_adaptive(const PosteriorWeights& W,
                                  const OmicsDataset& data,
                                  const ThetaState& theta_prev,
                                  double z,
                                  int max_alternations = 50,
                                  double tol = 1e-6);

}  // namespace ogclust
