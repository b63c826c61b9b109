#include "select.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <sstream>

#include "em.hpp"
#include "parallel.hpp"
#include "rng.hpp"

namespace ogclust {

double bic(double loglik, int df, Index n) {
  return std::log(double(n)) * double(df) - 2.0 * loglik;
}

double bic(const FitResult& fit, Index n) { return bic(fit.loglik, fit.df, n); }

double lambda_max(const OmicsDataset& data, int K, const PenaltySpec& penalty,
                  const LossSpec& loss, const FitControls& controls) {
  const int Kf = K - 1;
  if (Kf == 0) return 0.0;
  const MatrixXd B0 = gating_gradient_at_zero(data, K, loss, controls);
  if (penalty.kind == PenaltyKind::lasso)
    return B0.leftCols(Kf).cwiseAbs().maxCoeff();
  double m = 0.0;
  for (Index j = 0; j < B0.rows(); ++j)
    m = std::max(m, B0.row(j).head(Kf).norm());
  return m;
}

std::vector<double> log_spaced_grid(double lmax, int n_points, double ratio) {
  if (n_points < 1)
    throw Error(StatusCode::invalid_argument, "grid needs at least one point");
  if (!(ratio > 0.0 && ratio < 1.0))
    throw Error(StatusCode::invalid_argument, "grid ratio must lie in (0, 1)");
  if (!(lmax > 0.0)) lmax = 1.0;
  const double top = std::log(lmax * (1.0 + 1e-3));
  const double bottom = std::log(lmax * ratio);
  std::vector<double> grid(size_t(n_points), 0.0);
  if (n_points == 1) {
    grid[0] = std::exp(top);
    return grid;
  }
  for (int i = 0; i < n_points; ++i)
    grid[size_t(i)] =
        std::exp(top + (bottom - top) * double(i) / double(n_points - 1));
  return grid;
}

std::vector<double> default_lambda_grid(const OmicsDataset& data, int K,
                                        const PenaltySpec& penalty,
                                        const LossSpec& loss,
                                        const FitControls& controls,
                                        int n_points, double ratio) {
  return log_spaced_grid(lambda_max(data, K, penalty, loss, controls),
                         n_points, ratio);
}

PathResult fit_path(const OmicsDataset& data, const std::vector<int>& K_grid,
                    const std::vector<double>& lambda_grid,
                    const PenaltySpec& penalty, const LossSpec& loss,
                    const FitControls& controls) {
  if (K_grid.empty() || lambda_grid.empty())
    throw Error(StatusCode::invalid_argument, "grids must be non-empty");
  std::vector<int> Ks = K_grid;
  std::sort(Ks.begin(), Ks.end());
  Ks.erase(std::unique(Ks.begin(), Ks.end()), Ks.end());
  std::vector<double> lams = lambda_grid;
  std::sort(lams.begin(), lams.end(), std::greater<double>());
  lams.erase(std::unique(lams.begin(), lams.end()), lams.end());

  PathResult out;
  out.entries.reserve(Ks.size() * lams.size());
  double best_bic = std::numeric_limits<double>::infinity();
  int n_failed = 0;
  std::string first_failure;

  for (int K : Ks) {
    int warm_idx = -1;  // most recent successful entry in this K slice
    for (double lam : lams) {
      PathEntry e;
      e.K = K;
      e.lambda = lam;
      PenaltySpec pen = penalty;
      pen.lambda = lam;

      bool have_cold = false, have_warm = false;
      FitResult cold, warm;
      std::string reason;
      try {
        cold = fit(data, K, pen, loss, controls);
        have_cold = true;
      } catch (const Error& err) {
        reason = err.what();
      }
      if (warm_idx >= 0) {
        try {
          warm = fit_warm(data, K, pen, loss, controls,
                          out.entries[size_t(warm_idx)].fit);
          have_warm = true;
        } catch (const Error& err) {
          if (reason.empty()) reason = err.what();
        }
      }

      if (!have_cold && !have_warm) {
        e.failed = true;
        e.fail_reason = reason;
        ++n_failed;
        if (first_failure.empty()) first_failure = reason;
        out.entries.push_back(std::move(e));
        continue;
      }
      const bool use_warm =
          have_warm &&
          (!have_cold ||
           warm.objective_trace.back() >= cold.objective_trace.back());
      e.fit = use_warm ? std::move(warm) : std::move(cold);
      e.loglik = e.fit.loglik;
      e.df = e.fit.df;
      e.bic = bic(e.fit, data.n());
      e.n_selected = int(e.fit.selected_features.size());
      e.converged = e.fit.converged;
      out.entries.push_back(std::move(e));

      warm_idx = int(out.entries.size()) - 1;
      if (out.entries.back().bic < best_bic) {
        best_bic = out.entries.back().bic;
        out.best = warm_idx;
      }
    }
  }

  if (out.best < 0) {
    std::ostringstream os;
    os << "every grid cell failed (" << n_failed << " fits); first failure: "
       << first_failure;
    throw Error(StatusCode::numeric, os.str());
  }
  return out;
}

namespace {

// Outcome values the CV metrics are computed on, plus which samples count
// (events only for survival data).
void scoring_targets(const OmicsDataset& data, VectorXd& truth,
                     std::vector<bool>& eligible) {
  const Index n = data.n();
  eligible.assign(size_t(n), true);
  if (data.is_survival()) {
    truth = data.time.array().log();
    for (Index i = 0; i < n; ++i) eligible[size_t(i)] = data.event[i] == 1;
  } else {
    truth = data.y;
  }
}

struct PooledScore {
  double rmse = std::numeric_limits<double>::quiet_NaN();
  double r2 = std::numeric_limits<double>::quiet_NaN();
};

PooledScore score(const VectorXd& truth, const VectorXd& yhat,
                  const std::vector<Index>& rows) {
  PooledScore s;
  if (rows.empty()) return s;
  double ss_res = 0.0, mean = 0.0;
  for (Index i : rows) mean += truth[i];
  mean /= double(rows.size());
  double ss_tot = 0.0;
  for (Index i : rows) {
    const double d = truth[i] - yhat[i];
    ss_res += d * d;
    const double c = truth[i] - mean;
    ss_tot += c * c;
  }
  s.rmse = std::sqrt(ss_res / double(rows.size()));
  s.r2 = ss_tot < 1e-12 ? 0.0 : 1.0 - ss_res / ss_tot;
  return s;
}

}  // namespace

CvReport kfold_cv(const OmicsDataset& data, int K, const PenaltySpec& penalty,
                  const LossSpec& loss, const FitControls& controls, int folds,
                  const FitResult* warm_from) {
  const Index n = data.n();
  if (folds < 2)
    throw Error(StatusCode::invalid_argument, "folds must be >= 2");
  if (n < folds)
    throw Error(StatusCode::invalid_argument,
                "need at least one sample per fold");

  CvReport rep;
  rep.folds = folds;
  rep.fold_of.resize(size_t(n));
  std::vector<Index> order(size_t(n), Index(0));
  std::iota(order.begin(), order.end(), Index(0));
  Rng rng(derive_seed(controls.rng_seed, 0xC5F01D));
  std::shuffle(order.begin(), order.end(), rng);
  for (Index i = 0; i < n; ++i)
    rep.fold_of[size_t(order[size_t(i)])] = int(i % folds);

  rep.yhat = VectorXd::Constant(n, std::numeric_limits<double>::quiet_NaN());
  rep.cluster_prior = VectorXi::Constant(n, -1);
  rep.cluster_posterior = VectorXi::Constant(n, -1);

  VectorXd truth;
  std::vector<bool> eligible;
  scoring_targets(data, truth, eligible);

  // Folds touch disjoint rows of the per-sample outputs, so they can run over
  // the worker pool; per-fold scalars land in pre-sized slots and the pooled
  // rows are gathered afterwards in fold order.
  rep.fold_rmse.assign(size_t(folds), std::numeric_limits<double>::quiet_NaN());
  rep.fold_r2.assign(size_t(folds), std::numeric_limits<double>::quiet_NaN());
  rep.fold_selected.assign(size_t(folds), {});
  std::vector<char> fold_failed(size_t(folds), 0);
  parallel_for(folds, [&](Index f) {
    std::vector<Index> train_rows, test_rows;
    for (Index i = 0; i < n; ++i)
      (rep.fold_of[size_t(i)] == f ? test_rows : train_rows).push_back(i);
    try {
      const OmicsDataset train = subset_rows(data, train_rows);
      const OmicsDataset test = subset_rows(data, test_rows);
      const FitResult ft =
          warm_from ? fit_warm(train, K, penalty, loss, controls, *warm_from)
                    : fit(train, K, penalty, loss, controls);
      const Prediction pr = predict(ft, test.G, test.X, false);
      const PosteriorWeights resp = responsibilities(ft, test);

      std::vector<Index> fold_rows;
      for (size_t t = 0; t < test_rows.size(); ++t) {
        const Index i = test_rows[t];
        rep.yhat[i] = pr.yhat[Index(t)];
        rep.cluster_prior[i] = pr.cluster[Index(t)];
        Index arg = 0;
        resp.row(Index(t)).maxCoeff(&arg);
        rep.cluster_posterior[i] = int(arg);
        if (eligible[size_t(i)]) fold_rows.push_back(i);
      }
      const PooledScore s = score(truth, rep.yhat, fold_rows);
      rep.fold_rmse[size_t(f)] = s.rmse;
      rep.fold_r2[size_t(f)] = s.r2;
      rep.fold_selected[size_t(f)] = ft.selected_features;
    } catch (const Error&) {
      fold_failed[size_t(f)] = 1;
    }
  });

  std::vector<Index> pooled_rows;
  for (int f = 0; f < folds; ++f)
    if (fold_failed[size_t(f)]) rep.failed_folds.push_back(f);
  for (Index i = 0; i < n; ++i)
    if (eligible[size_t(i)] && !fold_failed[size_t(rep.fold_of[size_t(i)])])
      pooled_rows.push_back(i);
  if (int(rep.failed_folds.size()) == folds)
    throw Error(StatusCode::numeric, "every cross-validation fold failed");
  const PooledScore pooled = score(truth, rep.yhat, pooled_rows);
  rep.rmse = pooled.rmse;
  rep.r2 = pooled.r2;
  return rep;
}

std::vector<ElbowRow> elbow_diagnostics(const OmicsDataset& data,
                                        const std::vector<int>& K_grid,
                                        const PenaltySpec& penalty,
                                        const LossSpec& loss,
                                        const FitControls& controls,
                                        int folds) {
  std::vector<int> Ks = K_grid;
  std::sort(Ks.begin(), Ks.end());
  Ks.erase(std::unique(Ks.begin(), Ks.end()), Ks.end());

  std::vector<ElbowRow> rows;
  rows.reserve(Ks.size());
  for (int K : Ks) {
    ElbowRow row;
    row.K = K;
    try {
      const std::vector<double> grid =
          K == 1 ? std::vector<double>{0.0}
                 : default_lambda_grid(data, K, penalty, loss, controls);
      const PathResult path =
          fit_path(data, {K}, grid, penalty, loss, controls);
      const PathEntry& won = path.entries[size_t(path.best)];
      row.lambda = won.lambda;
      PenaltySpec pen = penalty;
      pen.lambda = won.lambda;
      const CvReport cv =
          kfold_cv(data, K, pen, loss, controls, folds, &won.fit);
      row.rmse = cv.rmse;
      row.r2 = cv.r2;
    } catch (const Error& err) {
      row.failed = true;
      row.fail_reason = err.what();
      row.rmse = std::numeric_limits<double>::quiet_NaN();
      row.r2 = std::numeric_limits<double>::quiet_NaN();
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace ogclust
