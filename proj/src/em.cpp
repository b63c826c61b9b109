#include "em.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <memory>
#include <numeric>
#include <sstream>

#include "gating.hpp"
#include "likelihood.hpp"
#include "parallel.hpp"
#include "rng.hpp"
#include "robust.hpp"
#include "survival.hpp"

namespace ogclust {

namespace {

struct StdInfo {
  VectorXd center, scale;
  bool on = false;
};

// Internal fitting view: G standardized column-wise (population sd; constant
// columns keep scale 1) and, when configured, an appended all-ones column
// acting as the unpenalized gating intercept.
struct WorkData {
  OmicsDataset data;
  StdInfo std_info;
  Index q_feat = 0;
  bool intercept = false;
  Index gamma_rows() const { return q_feat + (intercept ? 1 : 0); }
};

WorkData make_work(const OmicsDataset& data, const FitControls& c) {
  WorkData w;
  w.data = data;
  w.q_feat = data.q();
  w.intercept = c.gating_intercept;
  w.std_info.on = c.standardize_features;
  w.std_info.center = VectorXd::Zero(w.q_feat);
  w.std_info.scale = VectorXd::Ones(w.q_feat);
  const Index n = data.n();
  if (c.standardize_features && n > 0) {
    for (Index j = 0; j < w.q_feat; ++j) {
      const double mean = w.data.G.col(j).mean();
      w.std_info.center[j] = mean;
      w.data.G.col(j).array() -= mean;
      const double sd = std::sqrt(w.data.G.col(j).squaredNorm() / double(n));
      if (sd > 1e-12) {
        w.std_info.scale[j] = sd;
        w.data.G.col(j) /= sd;
      }
    }
  }
  if (w.intercept) {
    w.data.G.conservativeResize(Eigen::NoChange, w.q_feat + 1);
    w.data.G.col(w.q_feat).setOnes();
  }
  return w;
}

VectorXd outcome_vector(const OmicsDataset& data) {
  if (data.is_survival()) return data.time.array().log();
  return data.y;
}

// Quantile-spread initializer: OLS of the outcome on [1, X], cluster
// intercepts at the (k+1/2)/K quantiles of the covariate-adjusted outcome,
// gamma = 0, sigma from the OLS residual scale. Restarts after the first
// jitter the intercepts by N(0, (0.5 sigma)^2).
ThetaState make_init(const WorkData& w, int K, const LossSpec& loss, Rng& rng,
                     bool jitter) {
  const OmicsDataset& d = w.data;
  const Index n = d.n();
  const Index p = d.p();
  const VectorXd u = outcome_vector(d);

  ThetaState theta;
  theta.beta = VectorXd::Zero(p);
  double sig;
  VectorXd v;  // outcome with covariate effects removed (intercept retained)
  if (p > 0) {
    MatrixXd A(n, p + 1);
    A.col(0).setOnes();
    A.rightCols(p) = d.X;
    const VectorXd coef = A.colPivHouseholderQr().solve(u);
    theta.beta = coef.tail(p);
    v = u - d.X * theta.beta;
    sig = std::sqrt((v.array() - coef[0]).square().sum() / double(n));
  } else {
    v = u;
    sig = std::sqrt((u.array() - u.mean()).square().sum() / double(n));
  }

  std::vector<double> sorted(v.data(), v.data() + n);
  std::sort(sorted.begin(), sorted.end());
  theta.beta0.resize(K);
  for (int k = 0; k < K; ++k) {
    Index idx = static_cast<Index>(std::floor((k + 0.5) / K * double(n)));
    idx = std::clamp<Index>(idx, 0, n - 1);
    theta.beta0[k] = sorted[idx];
  }
  if (jitter) {
    std::normal_distribution<double> dist(0.0, 0.5 * std::max(sig, 1e-3));
    for (int k = 0; k < K; ++k) theta.beta0[k] += dist(rng);
  }
  theta.gamma = MatrixXd::Zero(w.gamma_rows(), K);
  theta.sigma = std::max(sig, kSigmaFloor);
  theta.tau = loss.huber_tau;
  return theta;
}

MatrixXd log_normalize_rows(const MatrixXd& logits) {
  MatrixXd out = logits;
  for (Index i = 0; i < out.rows(); ++i)
    out.row(i).array() -= logsumexp(out.row(i));
  return out;
}

PosteriorWeights resp_from_logits(const MatrixXd& logits,
                                  const ThetaState& theta, const LossSpec& loss,
                                  const OmicsDataset& data) {
  const MatrixXd lw =
      log_normalize_rows(logits) + log_density_matrix(theta, loss, data);
  PosteriorWeights W(lw.rows(), lw.cols());
  for (Index i = 0; i < lw.rows(); ++i) {
    const double total = logsumexp(lw.row(i));
    if (!std::isfinite(total)) {
      std::ostringstream os;
      os << "responsibility underflow at sample " << i
         << " (all component densities vanished)";
      throw Error(StatusCode::numeric, os.str());
    }
    W.row(i) = (lw.row(i).array() - total).exp();
  }
  return W;
}

double obs_ll_from_logits(const MatrixXd& logits, const ThetaState& theta,
                          const LossSpec& loss, const OmicsDataset& data) {
  const MatrixXd lw =
      log_normalize_rows(logits) + log_density_matrix(theta, loss, data);
  double total = 0.0;
  for (Index i = 0; i < lw.rows(); ++i) total += logsumexp(lw.row(i));
  return total;
}

struct EmRun {
  ThetaState theta;
  PosteriorWeights W;
  std::vector<double> trace;
  bool converged = false;
  int iters = 0;
  bool sigma_floored = false;
  double final_obj = -std::numeric_limits<double>::infinity();
};

void check_cluster_mass(const PosteriorWeights& W) {
  for (Index k = 0; k < W.cols(); ++k) {
    if (W.col(k).sum() < kMinClusterWeight) {
      std::ostringstream os;
      os << "cluster " << k + 1 << " received (near) zero total responsibility";
      throw Error(StatusCode::numeric, os.str());
    }
  }
}

EmRun run_single(const WorkData& w, int K, const PenaltySpec& pen,
                 const LossSpec& loss, const FitControls& c, ThetaState theta) {
  const OmicsDataset& d = w.data;
  const Index n = d.n();
  const Index unpen = w.intercept ? w.q_feat : Index(-1);
  const double z_adaptive =
      loss.adaptive_z != 0.0 ? loss.adaptive_z : std::log(double(n));

  // Re-anchor: softmax is invariant to subtracting one column from all, so
  // force the reference column to exact zero for the solvers.
  if ((theta.gamma.col(K - 1).array() != 0.0).any()) {
    const VectorXd ref = theta.gamma.col(K - 1);
    for (int k = 0; k < K; ++k) theta.gamma.col(k) -= ref;
  }

  auto pen_term = [&](const MatrixXd& gamma) {
    return pen.lambda * penalty_value(gamma.topRows(w.q_feat), pen);
  };

  MatrixXd logits = gating_logits(d.G, theta.gamma);
  EmRun run;
  run.trace.push_back(obs_ll_from_logits(logits, theta, loss, d) -
                      pen_term(theta.gamma));

  for (int m = 1; m <= c.max_em_iters; ++m) {
    const PosteriorWeights W = resp_from_logits(logits, theta, loss, d);
    check_cluster_mass(W);
    const ThetaState prev = theta;

    switch (loss.kind) {
      case LossKind::gaussian: {
        const GaussianMStep g = m_step_gaussian(W, d, theta);
        theta.beta0 = g.beta0;
        theta.beta = g.beta;
        theta.sigma = g.sigma;
        run.sigma_floored |= g.sigma_floored;
        break;
      }
      case LossKind::median_truncated: {
        const RobustMStep r = m_step_median_truncated(W, d, theta);
        theta.beta0 = r.beta0;
        theta.beta = r.beta;
        theta.sigma = r.sigma;
        break;
      }
      case LossKind::huber_fixed: {
        const RobustMStep r = m_step_huber_fixed(W, d, theta, loss.huber_tau);
        theta.beta0 = r.beta0;
        theta.beta = r.beta;
        theta.sigma = r.sigma;
        theta.tau = r.tau;
        break;
      }
      case LossKind::huber_adaptive: {
        const RobustMStep r =
            m_step_huber_adaptive(W, d, theta, z_adaptive,
                                  c.adaptive_max_alternations, c.adaptive_tol);
        theta.beta0 = r.beta0;
        theta.beta = r.beta;
        theta.sigma = r.sigma;
        theta.tau = r.tau;
        break;
      }
      case LossKind::aft_loglogistic: {
        const AftMStep a = aft_m_step(W, d, theta);
        theta.beta0 = a.beta0;
        theta.beta = a.beta;
        theta.sigma = a.sigma;
        break;
      }
    }
    run.sigma_floored |= theta.sigma <= kSigmaFloor;

    const double obj_outcome =
        obs_ll_from_logits(logits, theta, loss, d) - pen_term(theta.gamma);
    double obj_end = obj_outcome;

    if (K >= 2 && w.gamma_rows() > 0) {
      const MatrixXd Pi = log_normalize_rows(logits).array().exp();
      QuadApprox qa;
      qa.Wq = (Pi.array() * (1.0 - Pi.array()))
                  .max(kQuadWeightMin)
                  .min(kQuadWeightMax);
      qa.H = logits.array() + (W.array() - Pi.array()) / qa.Wq.array();

      const GatingResult gr =
          pen.kind == PenaltyKind::lasso
              ? cd_lasso_update(qa, theta.gamma, d.G, pen.lambda,
                                c.cd_max_sweeps, c.cd_tol, unpen)
              : group_lasso_ridge_update(qa, theta.gamma, d.G, pen.lambda,
                                         pen.alpha, c.cd_max_sweeps, c.cd_tol,
                                         unpen);

      MatrixXd cand = gr.gamma;
      MatrixXd cand_logits = gating_logits(d.G, cand);
      ThetaState probe = theta;
      probe.gamma = cand;
      obj_end = obs_ll_from_logits(cand_logits, probe, loss, d) - pen_term(cand);

      // The quadratic approximation can overshoot; back off toward the
      // previous gamma until the penalized objective stops dropping.
      if (obj_end < obj_outcome - c.monotonicity_tol) {
        bool rescued = false;
        for (int h = 0; h < 10; ++h) {
          cand = 0.5 * (cand + theta.gamma);
          cand_logits = gating_logits(d.G, cand);
          probe.gamma = cand;
          obj_end =
              obs_ll_from_logits(cand_logits, probe, loss, d) - pen_term(cand);
          if (obj_end >= obj_outcome - c.monotonicity_tol) {
            rescued = true;
            break;
          }
        }
        if (!rescued) {
          cand = theta.gamma;
          cand_logits = logits;
          obj_end = obj_outcome;
        }
      }
      theta.gamma = cand;
      logits = cand_logits;
    }

    run.trace.push_back(obj_end);
    run.iters = m;

    double delta = std::abs(theta.sigma - prev.sigma);
    delta = std::max(delta, (theta.beta0 - prev.beta0).cwiseAbs().maxCoeff());
    if (theta.beta.size() > 0)
      delta = std::max(delta, (theta.beta - prev.beta).cwiseAbs().maxCoeff());
    if (theta.gamma.size() > 0)
      delta =
          std::max(delta, (theta.gamma - prev.gamma).cwiseAbs().maxCoeff());
    if (delta < c.em_tol) {
      run.converged = true;
      break;
    }
  }

  run.theta = theta;
  run.W = resp_from_logits(logits, theta, loss, d);
  run.final_obj = run.trace.back();
  return run;
}

void validate_fit_args(const OmicsDataset& data, int K,
                       const PenaltySpec& penalty, const LossSpec& loss,
                       const FitControls& c) {
  if (K < 1) throw Error(StatusCode::invalid_argument, "K must be >= 1");
  if (penalty.lambda < 0)
    throw Error(StatusCode::invalid_argument, "lambda must be >= 0");
  if (penalty.kind == PenaltyKind::group_lasso_ridge &&
      (penalty.alpha < 0 || penalty.alpha > 1))
    throw Error(StatusCode::invalid_argument, "alpha must lie in [0, 1]");
  if (c.em_tol <= 0 || c.monotonicity_tol <= 0 || c.cd_tol <= 0)
    throw Error(StatusCode::invalid_argument, "tolerances must be positive");
  if (c.n_restarts < 1)
    throw Error(StatusCode::invalid_argument, "n_restarts must be >= 1");
  if (loss.is_survival() != data.is_survival())
    throw Error(StatusCode::invalid_argument,
                data.is_survival()
                    ? "survival data requires the aft loss"
                    : "the aft loss requires survival data (time/event)");
  if (loss.kind == LossKind::huber_fixed && loss.huber_tau <= 0)
    throw Error(StatusCode::invalid_argument, "huber cutoff must be positive");
  require_valid(data);
}

FitResult finalize(const WorkData& w, EmRun run, int restart_index, int K,
                   const PenaltySpec& penalty, const LossSpec& loss,
                   const FitControls& c, const OmicsDataset& original) {
  const Index q = w.q_feat;
  FitResult out;

  // Support, df and log-likelihood are computed in the fitted (anchored)
  // parametrization before any relabeling; all three are invariant to the
  // column permutation applied below.
  for (Index j = 0; j < q; ++j)
    if ((run.theta.gamma.row(j).array() != 0.0).any())
      out.selected_features.push_back(j);
  int df = 1;  // sigma
  df += int((run.theta.beta0.array() != 0.0).count());
  if (run.theta.beta.size() > 0)
    df += int((run.theta.beta.array() != 0.0).count());
  df += int((run.theta.gamma.array() != 0.0).count());
  out.df = df;
  out.loglik = obs_ll_from_logits(gating_logits(w.data.G, run.theta.gamma),
                                  run.theta, loss, w.data);

  // Original-scale gamma: logits = sum_j (g_j - center_j) * gamma_orig_jk.
  MatrixXd gamma_orig(q, K);
  for (Index j = 0; j < q; ++j)
    gamma_orig.row(j) = run.theta.gamma.row(j) / w.std_info.scale[j];
  VectorXd intercept = w.intercept
                           ? VectorXd(run.theta.gamma.row(q).transpose())
                           : VectorXd(VectorXd::Zero(K));

  // Report clusters sorted by ascending beta0 (stable).
  std::vector<int> perm(K);
  std::iota(perm.begin(), perm.end(), 0);
  std::stable_sort(perm.begin(), perm.end(), [&](int a, int b) {
    return run.theta.beta0[a] < run.theta.beta0[b];
  });
  ThetaState theta;
  theta.beta0.resize(K);
  theta.gamma.resize(q, K);
  VectorXd intercept_p(K);
  PosteriorWeights Wp(run.W.rows(), K);
  for (int k = 0; k < K; ++k) {
    theta.beta0[k] = run.theta.beta0[perm[k]];
    theta.gamma.col(k) = gamma_orig.col(perm[k]);
    intercept_p[k] = intercept[perm[k]];
    Wp.col(k) = run.W.col(perm[k]);
  }
  theta.beta = run.theta.beta;
  theta.sigma = run.theta.sigma;
  theta.tau = run.theta.tau;

  out.theta = std::move(theta);
  out.feature_center = w.std_info.center;
  out.feature_scale = w.std_info.scale;
  out.standardized = w.std_info.on;
  out.gating_intercept = intercept_p;
  out.has_gating_intercept = w.intercept;
  out.weights = std::move(Wp);
  out.objective_trace = std::move(run.trace);
  out.converged = run.converged;
  out.iterations = run.iters;
  out.restart_index = restart_index;
  out.sigma_floor_hit = run.sigma_floored;
  out.loss = loss;
  out.penalty = penalty;
  out.rng_seed = c.rng_seed;
  out.n_samples = int(original.n());
  out.n_covariates = int(original.p());
  out.n_features = int(q);
  out.feature_ids = original.feature_ids;
  return out;
}

}  // namespace

PosteriorWeights e_step(const ThetaState& theta, const LossSpec& loss,
                        const OmicsDataset& data) {
  return resp_from_logits(gating_logits(data.G, theta.gamma), theta, loss,
                          data);
}

GaussianMStep m_step_gaussian(const PosteriorWeights& W,
                              const OmicsDataset& data,
                              const ThetaState& theta_prev) {
  const Index n = data.n();
  const Index p = data.p();
  const int K = int(W.cols());
  const VectorXd u = outcome_vector(data);

  GaussianMStep out;
  // Intercepts: weighted means of the partial residuals at the previous beta.
  VectorXd v = u;
  if (p > 0) v -= data.X * theta_prev.beta;
  out.beta0.resize(K);
  for (int k = 0; k < K; ++k) {
    const double wk = W.col(k).sum();
    if (wk < kMinClusterWeight) {
      std::ostringstream os;
      os << "cluster " << k + 1 << " received (near) zero total responsibility";
      throw Error(StatusCode::numeric, os.str());
    }
    out.beta0[k] = W.col(k).dot(v) / wk;
  }

  // One cyclic pass of exact weighted coordinate updates for beta. With rows
  // of W summing to 1, each denominator collapses to sum_i x_il^2.
  out.beta = theta_prev.beta;
  const VectorXd cbar = W * out.beta0;  // sum_k w_ik beta0_k
  VectorXd r = u - cbar;
  if (p > 0) r -= data.X * out.beta;
  for (Index l = 0; l < p; ++l) {
    const auto xl = data.X.col(l);
    const double den = xl.squaredNorm();
    if (den <= 0) continue;
    const double next = (xl.dot(r) + out.beta[l] * den) / den;
    r += xl * (out.beta[l] - next);
    out.beta[l] = next;
  }

  // Scale: responsibility-weighted mean squared residual at the new params.
  VectorXd base = u;
  if (p > 0) base -= data.X * out.beta;
  double ss = 0.0;
  for (int k = 0; k < K; ++k)
    ss += (W.col(k).array() * (base.array() - out.beta0[k]).square()).sum();
  const double sigma = std::sqrt(ss / double(n));
  out.sigma_floored = sigma < kSigmaFloor;
  out.sigma = std::max(sigma, kSigmaFloor);
  return out;
}

FitResult fit(const OmicsDataset& data, int K, const PenaltySpec& penalty,
              const LossSpec& loss, const FitControls& controls) {
  validate_fit_args(data, K, penalty, loss, controls);
  const WorkData w = make_work(data, controls);

  // Restarts are independent; run them over the worker pool and merge by
  // (objective, restart index) so the winner is thread-count independent.
  std::vector<std::unique_ptr<EmRun>> runs(size_t(controls.n_restarts));
  std::vector<std::string> failures(size_t(controls.n_restarts));
  parallel_for(controls.n_restarts, [&](Index r) {
    Rng rng(derive_seed(controls.rng_seed, 0x5EED, std::uint64_t(r)));
    const ThetaState init = make_init(w, K, loss, rng, r > 0);
    try {
      runs[size_t(r)] = std::make_unique<EmRun>(
          run_single(w, K, penalty, loss, controls, init));
    } catch (const Error& e) {
      failures[size_t(r)] = e.what();
    }
  });

  int best_idx = -1;
  for (int r = 0; r < controls.n_restarts; ++r)
    if (runs[size_t(r)] &&
        (best_idx < 0 ||
         runs[size_t(r)]->final_obj > runs[size_t(best_idx)]->final_obj))
      best_idx = r;
  if (best_idx < 0) {
    std::ostringstream os;
    os << "all " << controls.n_restarts << " restarts failed:";
    for (int r = 0; r < controls.n_restarts; ++r)
      os << "\n  - restart " << r << ": " << failures[size_t(r)];
    throw Error(StatusCode::numeric, os.str());
  }
  return finalize(w, std::move(*runs[size_t(best_idx)]), best_idx, K, penalty,
                  loss, controls, data);
}

FitResult fit_warm(const OmicsDataset& data, int K, const PenaltySpec& penalty,
                   const LossSpec& loss, const FitControls& controls,
                   const FitResult& warm_from) {
  validate_fit_args(data, K, penalty, loss, controls);
  if (warm_from.theta.K() != K)
    throw Error(StatusCode::invalid_argument,
                "warm start has a different number of clusters");
  if (warm_from.n_features != int(data.q()) ||
      warm_from.n_covariates != int(data.p()))
    throw Error(StatusCode::invalid_argument,
                "warm start dimensions do not match the dataset");
  const WorkData w = make_work(data, controls);

  ThetaState init;
  init.beta0 = warm_from.theta.beta0;
  init.beta = warm_from.theta.beta;
  init.sigma = warm_from.theta.sigma;
  init.tau = warm_from.theta.tau;
  init.gamma = MatrixXd::Zero(w.gamma_rows(), K);
  for (Index j = 0; j < w.q_feat; ++j)
    init.gamma.row(j) = warm_from.theta.gamma.row(j) * w.std_info.scale[j];
  if (w.intercept && warm_from.gating_intercept.size() == K)
    init.gamma.row(w.q_feat) = warm_from.gating_intercept.transpose();

  EmRun run = run_single(w, K, penalty, loss, controls, std::move(init));
  return finalize(w, std::move(run), -1, K, penalty, loss, controls, data);
}

namespace {

MatrixXd prediction_logits(const FitResult& fit, const MatrixXd& G_new) {
  if (fit.theta.K() < 1 || int(G_new.cols()) != fit.n_features)
    throw Error(StatusCode::invalid_argument,
                "feature matrix does not match the fitted model");
  const int K = fit.theta.K();
  MatrixXd logits = MatrixXd::Zero(G_new.rows(), K);
  if (fit.has_gating_intercept)
    logits.rowwise() += fit.gating_intercept.transpose();
  for (Index j : fit.selected_features) {
    logits.noalias() +=
        (G_new.col(j).array() - fit.feature_center[j]).matrix() *
        fit.theta.gamma.row(j);
  }
  return logits;
}

void check_covariates(const FitResult& fit, const MatrixXd& X_new, Index n_new) {
  if (fit.n_covariates == 0) return;
  if (X_new.rows() != n_new || int(X_new.cols()) != fit.n_covariates)
    throw Error(StatusCode::invalid_argument,
                "covariate matrix does not match the fitted model");
}

}  // namespace

Prediction predict(const FitResult& fit, const MatrixXd& G_new,
                   const MatrixXd& X_new, bool hard) {
  const Index n_new = G_new.rows();
  check_covariates(fit, X_new, n_new);
  const int K = fit.theta.K();

  Prediction out;
  out.pi = log_normalize_rows(prediction_logits(fit, G_new)).array().exp();
  out.cluster.resize(n_new);
  for (Index i = 0; i < n_new; ++i) {
    int arg = 0;
    for (int k = 1; k < K; ++k)
      if (out.pi(i, k) > out.pi(i, arg)) arg = k;  // ties -> lowest index
    out.cluster[i] = arg;
  }
  VectorXd xb = VectorXd::Zero(n_new);
  if (fit.n_covariates > 0) xb = X_new * fit.theta.beta;
  out.yhat.resize(n_new);
  if (hard) {
    for (Index i = 0; i < n_new; ++i)
      out.yhat[i] = fit.theta.beta0[out.cluster[i]] + xb[i];
  } else {
    out.yhat = out.pi * fit.theta.beta0 + xb;
  }
  return out;
}

MatrixXd gating_gradient_at_zero(const OmicsDataset& data, int K,
                                 const LossSpec& loss,
                                 const FitControls& controls) {
  validate_fit_args(data, K, PenaltySpec::lasso(0.0), loss, controls);
  const WorkData w = make_work(data, controls);
  Rng rng(derive_seed(controls.rng_seed, 0x5EED, 0));
  const ThetaState init = make_init(w, K, loss, rng, false);
  const MatrixXd logits = MatrixXd::Zero(data.n(), K);
  const PosteriorWeights W = resp_from_logits(logits, init, loss, w.data);
  const MatrixXd centered = W.array() - 1.0 / double(K);
  return w.data.G.leftCols(w.q_feat).transpose() * centered;
}

PosteriorWeights responsibilities(const FitResult& fit,
                                  const OmicsDataset& data_new) {
  if (fit.loss.is_survival() != data_new.is_survival())
    throw Error(StatusCode::invalid_argument,
                "outcome type does not match the fitted model");
  check_covariates(fit, data_new.X, data_new.n());
  const MatrixXd logits = prediction_logits(fit, data_new.G);
  ThetaState plain;
  plain.beta0 = fit.theta.beta0;
  plain.beta = fit.theta.beta;
  plain.sigma = fit.theta.sigma;
  plain.tau = fit.theta.tau;
  const MatrixXd lw =
      log_normalize_rows(logits) + log_density_matrix(plain, fit.loss, data_new);
  PosteriorWeights W(lw.rows(), lw.cols());
  for (Index i = 0; i < lw.rows(); ++i) {
    const double total = logsumexp(lw.row(i));
    if (!std::isfinite(total)) {
      std::ostringstream os;
      os << "responsibility underflow at sample " << i;
      throw Error(StatusCode::numeric, os.str());
    }
    W.row(i) = (lw.row(i).array() - total).exp();
  }
  return W;
}

}  // namespace ogclust
