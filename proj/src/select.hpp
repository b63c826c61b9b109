#pragma once

#include <vector>

#include "types.hpp"

namespace ogclust {

// ln(n) * df - 2 * loglik with the unpenalized observed log-likelihood.
double bic(double loglik, int df, Index n);
double bic(const FitResult& fit, Index n);

// Smallest lambda that keeps every penalized gating coefficient at zero,
// derived from the quadratic approximation at gamma = 0 (restart-0
// initialization): max |B0_jk| for the lasso, max_j ||B0_j||_2 over the free
// columns for the group penalty. Returns 0 when K == 1 (nothing to penalize).
double lambda_max(const OmicsDataset& data, int K, const PenaltySpec& penalty,
                  const LossSpec& loss, const FitControls& controls);

// n_points log-spaced values from lmax * (1 + 1e-3) down to ratio * lmax,
// strictly decreasing. lmax <= 0 falls back to a unit scale.
std::vector<double> log_spaced_grid(double lmax, int n_points, double ratio);

// log_spaced_grid anchored at this dataset's lambda_max.
std::vector<double> default_lambda_grid(const OmicsDataset& data, int K,
                                        const PenaltySpec& penalty,
                                        const LossSpec& loss,
                                        const FitControls& controls,
                                        int n_points = 30, double ratio = 0.01);

// Fits every (K, lambda) grid cell: K values ascending, lambdas descending
// within each K so later fits warm-start from the previous one. Each cell
// keeps the better (by final penalized objective) of the warm-started run and
// a cold multi-restart fit, so warm starts can never do worse than cold ones.
// `best` picks the minimum BIC; exact ties resolve to the larger lambda, then
// the smaller K. Throws only if every cell fails.
PathResult fit_path(const OmicsDataset& data, const std::vector<int>& K_grid,
                    const std::vector<double>& lambda_grid,
                    const PenaltySpec& penalty, const LossSpec& loss,
                    const FitControls& controls);

// k-fold cross-validation at a fixed (K, penalty): seeded random partition,
// per-fold fit on the training split (optionally warm-started), posterior-
// mixture predictions on the held-out split, RMSE / R^2 pooled over completed
// folds. Survival outcomes are scored on log time over event samples only.
// A fold whose fit fails is recorded in failed_folds and skipped; throws only
// when every fold fails.
CvReport kfold_cv(const OmicsDataset& data, int K, const PenaltySpec& penalty,
                  const LossSpec& loss, const FitControls& controls,
                  int folds = 10, const FitResult* warm_from = nullptr);

// Per-K table for choosing K by eye: BIC-selected lambda on the full data,
// then cross-validated RMSE / R^2 at that lambda. Errors are recorded per row
// and do not stop the remaining rows.
std::vector<ElbowRow> elbow_diagnostics(const OmicsDataset& data,
                                        const std::vector<int>& K_grid,
                                        const PenaltySpec& penalty,
                                        const LossSpec& loss,
                                        const FitControls& controls,
                                        int folds = 10);

}  // namespace ogclust
