#include "robust.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <vector>

#include "em.hpp"
#include "likelihood.hpp"

namespace ogclust {

namespace {

void require_continuous(const OmicsDataset& data) {
  if (data.is_survival())
    throw Error(StatusCode::invalid_argument,
                "robust M-steps require a continuous outcome");
}

void check_cluster_mass(double mass, Index k, const char* what) {
  if (mass < 1e-10) {
    std::ostringstream os;
    os << what << " left cluster " << k + 1 << " with (near) zero weight";
    throw Error(StatusCode::numeric, os.str());
  }
}

}  // namespace

VectorXd median_cutoffs(const MatrixXd& E) {
  const Index n = E.rows();
  VectorXd tau(E.cols());
  std::vector<double> mag(static_cast<size_t>(n), 0.0);
  for (Index k = 0; k < E.cols(); ++k) {
    for (Index i = 0; i < n; ++i) mag[size_t(i)] = std::abs(E(i, k));
    auto mid = mag.begin() + (n - 1) / 2;
    std::nth_element(mag.begin(), mid, mag.end());
    tau[k] = *mid;
  }
  return tau;
}

RobustMStep m_step_median_truncated(const PosteriorWeights& W,
                                    const OmicsDataset& data,
                                    const ThetaState& theta_prev) {
  require_continuous(data);
  const Index n = data.n();
  const Index p = data.p();
  const Index K = W.cols();

  const MatrixXd E = residual_matrix(theta_prev, data);
  const VectorXd tau = median_cutoffs(E);
  // Effective weights: responsibilities masked to residuals within the
  // per-cluster cutoff (inclusive), both frozen at theta_prev.
  MatrixXd M(n, K);
  for (Index k = 0; k < K; ++k)
    M.col(k) = (E.col(k).array().abs() <= tau[k])
                   .select(W.col(k), VectorXd::Zero(n));

  RobustMStep out;
  out.tau = theta_prev.tau;

  VectorXd v = data.y;
  if (p > 0) v -= data.X * theta_prev.beta;
  out.beta0.resize(K);
  for (Index k = 0; k < K; ++k) {
    const double mk = M.col(k).sum();
    check_cluster_mass(mk, k, "median truncation");
    out.beta0[k] = M.col(k).dot(v) / mk;
  }

  out.beta = theta_prev.beta;
  const VectorXd a = M.rowwise().sum();
  const VectorXd b = M * out.beta0;
  VectorXd u = data.y;
  if (p > 0) u -= data.X * out.beta;
  for (Index l = 0; l < p; ++l) {
    const auto xl = data.X.col(l);
    const double den = (a.array() * xl.array().square()).sum();
    if (den < 1e-10) continue;
    const double num =
        (xl.array() * (a.array() * u.array() - b.array())).sum() +
        out.beta[l] * den;
    const double next = num / den;
    u += xl * (out.beta[l] - next);
    out.beta[l] = next;
  }

  VectorXd base = data.y;
  if (p > 0) base -= data.X * out.beta;
  double num = 0.0, den = 0.0;
  for (Index k = 0; k < K; ++k) {
    num += (M.col(k).array() * (base.array() - out.beta0[k]).square()).sum();
    den += M.col(k).sum();
  }
  out.sigma = std::max(std::sqrt(num / den), kSigmaFloor);
  return out;
}

RobustMStep m_step_huber_fixed(const PosteriorWeights& W,
                               const OmicsDataset& data,
                               const ThetaState& theta_prev, double tau) {
  require_continuous(data);
  if (tau <= 0)
    throw Error(StatusCode::invalid_argument, "huber cutoff must be positive");
  const Index n = data.n();
  const Index p = data.p();
  const Index K = W.cols();

  const MatrixXd E = residual_matrix(theta_prev, data);
  // Branch membership and signs are frozen at theta_prev's residuals:
  // Mq carries quadratic-branch weight, S carries w * sign(e) beyond the cut.
  MatrixXd Mq(n, K), S(n, K);
  for (Index k = 0; k < K; ++k) {
    const auto inlier = E.col(k).array().abs() <= tau;
    Mq.col(k) = inlier.select(W.col(k), VectorXd::Zero(n));
    S.col(k) = inlier.select(VectorXd::Zero(n),
                             W.col(k).array() * E.col(k).array().sign());
  }

  RobustMStep out;
  out.tau = tau;

  VectorXd v = data.y;
  if (p > 0) v -= data.X * theta_prev.beta;
  out.beta0.resize(K);
  for (Index k = 0; k < K; ++k) {
    const double qk = Mq.col(k).sum();
    check_cluster_mass(qk, k, "huber quadratic branch");
    out.beta0[k] = (Mq.col(k).dot(v) + tau * S.col(k).sum()) / qk;
  }

  out.beta = theta_prev.beta;
  const VectorXd a = Mq.rowwise().sum();
  const VectorXd b = Mq * out.beta0;
  const VectorXd s = S.rowwise().sum();
  VectorXd u = data.y;
  if (p > 0) u -= data.X * out.beta;
  for (Index l = 0; l < p; ++l) {
    const auto xl = data.X.col(l);
    const double den = (a.array() * xl.array().square()).sum();
    if (den < 1e-10) {
      if (xl.squaredNorm() < 1e-20) continue;  // inert covariate column
      throw Error(StatusCode::numeric,
                  "huber update degenerate: no quadratic-branch weight for a "
                  "covariate");
    }
    const double num =
        (xl.array() * (a.array() * u.array() - b.array())).sum() +
        out.beta[l] * den + tau * xl.dot(s);
    const double next = num / den;
    u += xl * (out.beta[l] - next);
    out.beta[l] = next;
  }

  VectorXd base = data.y;
  if (p > 0) base -= data.X * out.beta;
  double num = 0.0, den = 0.0;
  for (Index k = 0; k < K; ++k) {
    const Eigen::ArrayXd e_new = base.array() - out.beta0[k];
    num += (Mq.col(k).array() * e_new.square()).sum();
    num += (S.col(k).array().abs() * (2.0 * tau * e_new.abs() - tau * tau))
               .sum();
    den += Mq.col(k).sum();
  }
  out.sigma = std::max(std::sqrt(num / den), kSigmaFloor);
  return out;
}

double solve_adaptive_tau(const MatrixXd& E, const PosteriorWeights& W,
                          Index p, double z) {
  const Index n = E.rows();
  if (n <= p)
    throw Error(StatusCode::invalid_argument,
                "adaptive cutoff requires more samples than covariates");
  const double emax = E.cwiseAbs().maxCoeff();
  if (emax <= 0.0)
    throw Error(StatusCode::numeric,
                "cutoff tuning equation has no root: all residuals are zero");
  const double target = (double(p) + z) / double(n);
  const double scale = 1.0 / double(n - p);
  auto g2 = [&](double t) {
    const double t2 = t * t;
    return scale * (W.array() * E.array().square().min(t2)).sum() / t2 -
           target;
  };

  // For tau >= max|e| the min() saturates and the root has a closed form.
  const double sw = (W.array() * E.array().square()).sum();
  const double outer = std::sqrt(sw * scale / target);
  if (outer >= emax) return outer;

  double lo = 1e-8 * emax;
  double hi = emax;
  if (!(g2(lo) > 0.0))
    throw Error(StatusCode::numeric,
                "cutoff tuning equation has no root in the residual range");
  // g2 is continuous and non-increasing with g2(hi) < 0 here, so bisect.
  for (int it = 0; it < 200 && (hi - lo) > 1e-14 * hi; ++it) {
    const double mid = 0.5 * (lo + hi);
    (g2(mid) >= 0.0 ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

RobustMStep m_step_huber_adaptive(const PosteriorWeights& W,
                                  const OmicsDataset& data,
                                  const ThetaState& theta_prev, double z,
                                  int max_alternations, double tol) {
  require_continuous(data);
  const Index p = data.p();
  double tau = theta_prev.tau > 0 ? theta_prev.tau : 1.345;
  ThetaState cur = theta_prev;

  RobustMStep step;
  bool fallback = false;
  bool converged = false;
  int done = 0;
  for (int it = 1; it <= max_alternations; ++it) {
    done = it;
    step = m_step_huber_fixed(W, data, cur, tau);
    ThetaState next = cur;
    next.beta0 = step.beta0;
    next.beta = step.beta;
    next.sigma = step.sigma;

    double new_tau;
    try {
      new_tau = solve_adaptive_tau(residual_matrix(next, data), W, p, z);
    } catch (const Error&) {
      new_tau = 1.345;
      fallback = true;
    }

    double delta = std::abs(new_tau - tau);
    delta = std::max(delta, std::abs(next.sigma - cur.sigma));
    delta = std::max(delta, (next.beta0 - cur.beta0).cwiseAbs().maxCoeff());
    if (p > 0)
      delta = std::max(delta, (next.beta - cur.beta).cwiseAbs().maxCoeff());
    cur = std::move(next);
    tau = new_tau;
    if (delta < tol) {
      converged = true;
      break;
    }
  }
  step.tau = tau;
  step.tau_fallback = fallback;
  step.alternation_converged = converged;
  step.alternations = done;
  return step;
}

}  // namespace ogclust
