#include "likelihood.hpp"

#include <cmath>

#include "gating.hpp"
#include "robust.hpp"
#include "survival.hpp"

namespace ogclust {

namespace {
constexpr double kLogSqrt2Pi = 0.9189385332046727;  // log(sqrt(2*pi))
}

double logsumexp(const Eigen::Ref<const Eigen::RowVectorXd>& v) {
  const double m = v.maxCoeff();
  if (!std::isfinite(m)) return m;  // all -inf (or a stray +inf/NaN)
  double s = 0.0;
  for (Index k = 0; k < v.size(); ++k) s += std::exp(v[k] - m);
  return m + std::log(s);
}

MatrixXd log_mixing_probs(const MatrixXd& G, const MatrixXd& gamma) {
  MatrixXd logits = gating_logits(G, gamma);  // n x K
  for (Index i = 0; i < logits.rows(); ++i) {
    logits.row(i).array() -= logsumexp(logits.row(i));
  }
  return logits;
}

MatrixXd mixing_probs(const MatrixXd& G, const MatrixXd& gamma) {
  MatrixXd out = log_mixing_probs(G, gamma);
  out = out.array().exp();
  return out;
}

MatrixXd residual_matrix(const ThetaState& theta, const OmicsDataset& data) {
  const Index n = data.n();
  const int K = theta.K();
  VectorXd base(n);
  if (data.is_survival())
    base = data.time.array().log();
  else
    base = data.y;
  if (theta.beta.size() > 0) base -= data.X * theta.beta;
  MatrixXd E(n, K);
  for (int k = 0; k < K; ++k) E.col(k) = base.array() - theta.beta0[k];
  return E;
}

MatrixXd log_density_matrix(const ThetaState& theta, const LossSpec& loss,
                            const OmicsDataset& data) {
  if (loss.is_survival()) return aft_log_density_matrix(theta, data);

  const MatrixXd E = residual_matrix(theta, data);
  const double sigma = theta.sigma;
  const double inv_s2 = 1.0 / (sigma * sigma);
  const double log_norm = std::log(sigma) + kLogSqrt2Pi;
  MatrixXd out(E.rows(), E.cols());

  switch (loss.kind) {
    case LossKind::gaussian:
      out = (-0.5 * inv_s2) * E.array().square() - log_norm;
      break;
    case LossKind::huber_fixed:
    case LossKind::huber_adaptive: {
      const double tau = theta.tau;
      for (Index k = 0; k < E.cols(); ++k)
        for (Index i = 0; i < E.rows(); ++i)
          out(i, k) = -huber_loss(E(i, k), tau) * inv_s2 - log_norm;
      break;
    }
    case LossKind::median_truncated: {
      const VectorXd tau_k = median_cutoffs(E);
      for (Index k = 0; k < E.cols(); ++k)
        for (Index i = 0; i < E.rows(); ++i)
          out(i, k) = -truncated_loss(E(i, k), tau_k[k]) * inv_s2 - log_norm;
      break;
    }
    case LossKind::aft_loglogistic:
      break;  // handled above
  }
  return out;
}

double observed_loglik(const ThetaState& theta, const LossSpec& loss,
                       const OmicsDataset& data) {
  const MatrixXd log_pi = log_mixing_probs(data.G, theta.gamma);
  const MatrixXd log_f = log_density_matrix(theta, loss, data);
  const MatrixXd lw = log_pi + log_f;
  double total = 0.0;
  for (Index i = 0; i < lw.rows(); ++i) total += logsumexp(lw.row(i));
  return total;
}

double penalty_value(const MatrixXd& gamma, const PenaltySpec& penalty) {
  const Index K = gamma.cols();
  if (K <= 1) return 0.0;
  const auto free = gamma.leftCols(K - 1);  // column K is the softmax anchor
  switch (penalty.kind) {
    case PenaltyKind::lasso:
      return free.array().abs().sum();
    case PenaltyKind::group_lasso_ridge: {
      double r = 0.0;
      for (Index j = 0; j < gamma.rows(); ++j) r += free.row(j).norm();
      r += penalty.alpha * free.array().square().sum();
      return r;
    }
  }
  return 0.0;
}

double penalized_objective(const ThetaState& theta, const LossSpec& loss,
                           const PenaltySpec& penalty, const OmicsDataset& data) {
  return observed_loglik(theta, loss, data) -
         penalty.lambda * penalty_value(theta.gamma, penalty);
}

}  // namespace ogclust
