#pragma once

// Report serialization: fitted models as JSON, per-sample assignments and
// study metrics as CSV.  All floating-point values are written with 17
// significant digits so that emit -> parse -> emit is byte-stable and a
// reloaded model predicts bit-for-bit like the original.  Nothing here
// touches the filesystem; callers receive strings.

#include <string>
#include <vector>

#include "simbench.hpp"
#include "types.hpp"

namespace ogclust {

// Shortest 17-significant-digit form ("%.17g"); "nan"/"inf"/"-inf" for
// non-finite values.
std::string format_double(double x);

// Full model card: dimensions, loss/penalty settings, sorted cluster
// intercepts, covariate effects, nonzero gating entries as
// (feature, cluster, value) triples with their column/center/scale, fit
// diagnostics and the objective trace.  No timestamps, so re-runs with the
// same seed produce identical bytes.
std::string theta_to_json(const FitResult& fit);

// Inverse of theta_to_json, sufficient to call predict()/responsibilities():
// parameters, selected features with centers, dimensions and metadata are
// restored; per-sample responsibilities from the original run are not.
// Throws Error(io) on malformed input.
FitResult theta_from_json(const std::string& text);

// Per-sample table for the training data: id, one posterior-probability
// column per cluster, the maximum-probability cluster, and the fitted
// outcome expectation under those probabilities.
std::string fit_assignments_csv(const FitResult& fit, const OmicsDataset& data);

// Same table for new samples scored through the gating model (no outcome
// needed).  `sample_ids` may be empty; rows are then numbered.
std::string prediction_assignments_csv(const Prediction& pr,
                                       const std::vector<std::string>& sample_ids);

// One row per grid cell: K, lambda, loglik, df, bic, n_selected, converged,
// failed, fail_reason.
std::string path_csv(const PathResult& path);

// One row per fold (rmse, r2, n_selected) plus a final pooled row.
std::string cv_metrics_csv(const CvReport& rep);

// One row per (method, model, replicate) with the comparison-table columns:
// method, model, estK, ARI, FP, FN, RMSE, R2.
std::string bench_metrics_csv(const BenchReport& rep);

// One row per (method, gene target, replicate): method, genes, ARI, RMSE,
// R2, FN.
std::string curve_metrics_csv(const std::vector<CurveResult>& curves);

// One row per candidate cluster count: K, lambda, rmse, r2, failed.
std::string elbow_csv(const std::vector<ElbowRow>& rows);

}  // namespace ogclust
