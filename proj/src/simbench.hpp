#pragma once

#include <cmath>
#include <string>
#include <utility>
#include <vector>

#include "types.hpp"

namespace ogclust {

enum class NoiseSetting { normal, outliers, lognormal };
enum class OutcomeKind { continuous, survival };

// Generator configuration for the synthetic three-cluster benchmark:
// q features of which 1..15 (active set) drive outcome-linked clusters and
// 16..30 (irrelevant set) drive an independent clustering, both as blocks of
// five genes shifted to mean 1 for one of three auxiliary groups. Cluster
// labels are drawn from the softmax of the active genes times the generating
// gating matrix; the outcome is a per-cluster intercept plus covariate effects
// plus noise (or a censored log-logistic survival time).
struct SimConfig {
  std::string name = "custom";
  Index n = 600;
  Index q = 1000;
  double gamma_strength = 1.0;  // cluster separation in the feature space
  double delta = 3.0;           // outcome separation between clusters
  double sigma = 1.0;           // Gaussian noise scale (continuous outcome)
  NoiseSetting noise = NoiseSetting::normal;
  OutcomeKind outcome = OutcomeKind::continuous;
  double survival_sigma = 0.5;  // logistic scale on log time
  double followup = 100.0;      // administrative censoring time
  double a2_multiplier = 1.0;   // mean shift of the irrelevant blocks
  std::uint64_t seed = 0;
};

// The four Table-style presets (continuous outcome, Gaussian noise):
// 1: gamma=1 delta=2, 2: gamma=1 delta=3, 3: gamma=1 delta=5,
// 4: gamma=3 delta=3.
SimConfig model_preset(int model);
// Robustness settings on the model-2 base: 'A' Gaussian noise, 'B' 10%
// outlier rows with uniform errors spanning the clean outcome range +-10,
// 'C' lognormal(0, 1) errors.
SimConfig robust_setting(char setting);
// Survival settings: 'A' gamma=1 delta=1, 'B' gamma=3 delta=1,
// 'C' gamma=1 delta=2, 'D' gamma=3 delta=2.
SimConfig survival_setting(char setting);

struct SimTruth {
  std::vector<int> z;              // true cluster labels, 0-based
  std::vector<Index> active;       // outcome-linked DE features (0-based)
  std::vector<Index> irrelevant;   // clinically irrelevant DE features
  VectorXd beta0;                  // generating intercepts (ascending)
  VectorXd beta;                   // generating covariate effects
  MatrixXd gamma;                  // q x 3 generating gating matrix
  double sigma = 1.0;
  std::vector<int> aux_active;     // block labels behind the active genes
  std::vector<int> aux_irrelevant; // block labels behind the irrelevant genes
  std::vector<Index> outlier_rows; // rows given wide uniform errors (outlier noise only)
};

struct SimData {
  OmicsDataset data;
  SimTruth truth;
};

// Bit-reproducible from cfg.seed: the draw order is frozen (aux labels, base
// feature normals row-major, cluster draws, covariates, outcome noise).
SimData generate_dataset(const SimConfig& cfg);

// Hubert-Arabie adjusted Rand index between two label vectors.
double ari(const std::vector<int>& a, const std::vector<int>& b);

// (false positives, false negatives) of a selected feature set against the
// generator's active set.
std::pair<int, int> score_selection(const std::vector<Index>& selected,
                                    const SimTruth& truth);

// ---- Supervised-clustering baseline: screen features by absolute marginal
// correlation with the outcome, k-means on the top M, then a per-cluster
// least-squares outcome model. Survival data are screened and scored on log
// time over event samples only.

struct ScModel {
  int K = 0;
  int M = 0;
  std::vector<Index> screened;  // top-M feature indices, best first
  MatrixXd centers;             // K x M in screened-column order
  VectorXi labels;              // training cluster labels
  MatrixXd coef;                // K x (p+1): intercept then covariate slopes
};

ScModel sc_fit(const OmicsDataset& train, int M, int K, std::uint64_t seed);

struct ScPrediction {
  VectorXi cluster;  // nearest center on the screened columns
  VectorXd yhat;     // that cluster's regression line
};
ScPrediction sc_predict(const ScModel& model, const MatrixXd& G_new,
                        const MatrixXd& X_new);

// Cross-validated choice of the screening size M by held-out RMSE
// (ties -> smaller M).
int sc_select_m(const OmicsDataset& data, const std::vector<int>& m_grid,
                int K, int folds, std::uint64_t seed);

// ---- Replicate studies ----------------------------------------------------

struct BenchControls {
  std::uint64_t seed = 0;
  std::vector<int> K_grid = {2, 3, 4};  // BIC selection range
  int curve_K = 3;                      // fixed K for gene-count curves
  int lambda_points = 15;
  double lambda_ratio = 0.01;
  PenaltyKind penalty = PenaltyKind::group_lasso_ridge;
  double alpha = 0.5;
  LossSpec loss = LossSpec::gaussian();  // loss for the "ogclust" method
  FitControls fit;                       // rng_seed is re-derived per replicate
  int folds = 10;
  bool run_cv = true;  // k-fold CV at the path winner (skippable: it is the
                       // expensive part and some studies only need test ARI)
  int sc_K = 2;                          // SC cluster count in benchmark rows
  std::vector<int> sc_m_grid = {5, 10, 15, 20, 30, 50};
};

// Mean ignoring NaN entries; NaN when nothing is finite.
double nan_mean(const std::vector<double>& v);

struct BenchRow {
  std::string model, method;
  int k2 = 0, k3 = 0, k_other = 0;  // estimated-K histogram
  // Per-replicate results, NaN / -1 where the replicate failed.  rmse/r2 are
  // pooled k-fold CV numbers on the training set (NaN when CV is switched
  // off); test_rmse/test_r2 score predictions on the paired test set.
  std::vector<double> ari, rmse, r2, test_rmse, test_r2, fp, fn;
  std::vector<int> est_k;
  std::vector<std::string> failures;  // empty string when the replicate ran
  int n_failed = 0;

  double mean_ari() const { return nan_mean(ari); }
  double mean_rmse() const { return nan_mean(rmse); }
  double mean_r2() const { return nan_mean(r2); }
  double mean_test_rmse() const { return nan_mean(test_rmse); }
  double mean_test_r2() const { return nan_mean(test_r2); }
  double mean_fp() const { return nan_mean(fp); }
  double mean_fn() const { return nan_mean(fn); }
};

struct BenchReport {
  std::vector<BenchRow> rows;  // one per (model, method)
};

// For each model and replicate: an independent train/test pair (shared by
// every method, so per-replicate comparisons are paired). Method "ogclust":
// BIC-selected (K, lambda) path on the training set, feature FP/FN from the
// winner, ARI of outcome-informed posterior labels on the test set, pooled
// k-fold RMSE / R^2 on the training set at the winning settings. Method "sc":
// the supervised-clustering baseline with CV-chosen M.
BenchReport run_benchmark(const std::vector<SimConfig>& models,
                          const std::vector<std::string>& methods,
                          int replicates, const BenchControls& bc);

struct CurvePoint {
  int target = 0;  // requested number of selected features
  std::vector<double> ari, rmse, r2, fn;  // per replicate, NaN on failure
  double mean_ari() const { return nan_mean(ari); }
  double mean_rmse() const { return nan_mean(rmse); }
  double mean_r2() const { return nan_mean(r2); }
  double mean_fn() const { return nan_mean(fn); }
};

struct CurveResult {
  std::string method;
  std::vector<CurvePoint> points;  // one per gene target
};

// Test-set performance as a function of the number of selected features, at
// fixed K = bc.curve_K. Loss-variant methods ("gaussian", "huber", "adhuber",
// "median", "aft") sweep the lambda path and report the entry whose support
// size is closest to each target; method "sc" screens exactly `target`
// features. Every method sees the same train/test pair per replicate.
std::vector<CurveResult> gene_count_curve(const SimConfig& cfg,
                                          const std::vector<std::string>& methods,
                                          const std::vector<int>& gene_targets,
                                          int replicates,
                                          const BenchControls& bc);

// Loss spec for a method name ("gaussian", "huber", "adhuber", "median",
// "aft"); throws Error(invalid_argument) for anything else.
LossSpec loss_by_name(const std::string& name);

}  // namespace ogclust
