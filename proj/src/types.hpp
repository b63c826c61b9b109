#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace ogclust {

using Eigen::MatrixXd;
using Eigen::VectorXd;
using Eigen::VectorXi;
using Index = Eigen::Index;

// ---------------------------------------------------------------------------
// Errors
// ---------------------------------------------------------------------------

enum class StatusCode : int {
  ok = 0,
  invalid_argument = 1,  // bad call: null handle, dimension mismatch, bad enum
  validation = 2,        // data failed validation (non-finite, domains, ids)
  numeric = 3,           // degenerate model state (empty cluster, overflow)
  convergence = 4,       // iteration caps exhausted without meeting tolerance
  io = 5,                // file/parse problems (CLI + serialization)
  internal = 6,
};

class Error : public std::runtime_error {
 public:
  Error(StatusCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}
  StatusCode code() const { return code_; }

 private:
  StatusCode code_;
};

// ---------------------------------------------------------------------------
// Model configuration
// ---------------------------------------------------------------------------

enum class LossKind : int {
  gaussian = 0,
  huber_fixed = 1,      // Huber with a fixed cutoff (default 1.345)
  huber_adaptive = 2,   // Huber with cutoff re-estimated each M-step
  median_truncated = 3, // residuals beyond the per-cluster median are dropped
  aft_loglogistic = 4,  // log-logistic accelerated failure time (survival)
};

struct LossSpec {
  LossKind kind = LossKind::gaussian;
  // huber_fixed / huber_adaptive: cutoff (adaptive uses it as the fallback and
  // the starting point of the alternation).
  double huber_tau = 1.345;
  // huber_adaptive: the "z" constant of the tuning equation; 0 means ln(n),
  // substituted at fit time.
  double adaptive_z = 0.0;

  static LossSpec gaussian() { return {}; }
  static LossSpec huber(double tau = 1.345) {
    return {LossKind::huber_fixed, tau, 0.0};
  }
  static LossSpec adaptive_huber() { return {LossKind::huber_adaptive, 1.345, 0.0}; }
  static LossSpec median_truncated() {
    return {LossKind::median_truncated, 1.345, 0.0};
  }
  static LossSpec aft() { return {LossKind::aft_loglogistic, 1.345, 0.0}; }

  bool is_survival() const { return kind == LossKind::aft_loglogistic; }
  bool is_robust() const {
    return kind == LossKind::huber_fixed || kind == LossKind::huber_adaptive ||
           kind == LossKind::median_truncated;
  }
};

enum class PenaltyKind : int {
  lasso = 0,
  group_lasso_ridge = 1,  // per-feature row groups blended with a ridge term
};

struct PenaltySpec {
  PenaltyKind kind = PenaltyKind::lasso;
  double lambda = 0.0;
  double alpha = 0.5;  // ridge blend weight, group_lasso_ridge only

  static PenaltySpec lasso(double lambda) {
    return {PenaltyKind::lasso, lambda, 0.0};
  }
  static PenaltySpec group(double lambda, double alpha = 0.5) {
    return {PenaltyKind::group_lasso_ridge, lambda, alpha};
  }
};

// ---------------------------------------------------------------------------
// Data
// ---------------------------------------------------------------------------

// A sample-aligned bundle of outcome, low-dimensional covariates and
// high-dimensional features. For survival outcomes `time`/`event` are set and
// `y` is empty; for continuous outcomes the reverse.
struct OmicsDataset {
  VectorXd y;        // n (continuous outcome), size 0 for survival data
  VectorXd time;     // n (follow-up time), size 0 for continuous data
  VectorXi event;    // n (1 = observed, 0 = right-censored)
  MatrixXd X;        // n x p clinical covariates entering the outcome model
  MatrixXd G;        // n x q features driving cluster membership
  std::vector<std::string> sample_ids;   // optional, size n when present
  std::vector<std::string> feature_ids;  // optional, size q when present

  bool is_survival() const { return time.size() > 0; }
  Index n() const { return G.rows(); }
  Index p() const { return X.cols(); }
  Index q() const { return G.cols(); }
};

struct Violation {
  std::string message;
};

// Collects every problem found (empty result = valid): dimension mismatches,
// non-finite entries, non-positive survival times, events outside {0,1},
// duplicate sample ids. Messages name the offending row/column.
std::vector<Violation> validate_dataset(const OmicsDataset& data);

// Throws Error(validation) with the first few violation messages if invalid.
void require_valid(const OmicsDataset& data);

// Row subset (copy) keeping ids aligned; used by CV and the benchmark harness.
OmicsDataset subset_rows(const OmicsDataset& data, const std::vector<Index>& rows);

// ---------------------------------------------------------------------------
// Parameters
// ---------------------------------------------------------------------------

// Full parameter state of the mixture: per-cluster outcome intercepts beta0,
// shared covariate effects beta, gating coefficients gamma (q x K, column K
// is the softmax reference and is identically zero), and the scale sigma.
struct ThetaState {
  VectorXd beta0;  // K
  VectorXd beta;   // p
  MatrixXd gamma;  // q x K, last column all zeros
  double sigma = 1.0;
  double tau = 1.345;  // robust cutoff actually in force (adaptive updates it)

  int K() const { return static_cast<int>(beta0.size()); }
};

// Responsibilities: n x K, nonnegative rows summing to 1.
using PosteriorWeights = MatrixXd;

struct FitControls {
  int max_em_iters = 500;
  double em_tol = 1e-7;          // max-abs parameter change stopping rule
  int n_restarts = 5;
  std::uint64_t rng_seed = 0;
  double monotonicity_tol = 1e-6;  // tolerated drop of the penalized objective
  bool standardize_features = true;
  bool gating_intercept = false;  // unpenalized per-cluster intercept logits
  int cd_max_sweeps = 1000;
  double cd_tol = 1e-7;
  // Adaptive Huber alternation (outcome params <-> tau) caps.
  int adaptive_max_alternations = 50;
  double adaptive_tol = 1e-6;
};

struct FitResult {
  // Parameters with gamma on the ORIGINAL feature scale (gamma_std / sd),
  // clusters relabelled by ascending beta0. Use together with
  // feature_center/feature_scale: gating logits are
  //   logit_ik = sum_j (g_ij - center_j) * gamma(j, k).
  ThetaState theta;
  VectorXd feature_center;  // q (zeros when standardization off)
  VectorXd feature_scale;   // q (ones when standardization off; sd used to
                            //    fold scaling into gamma, kept for reporting)
  bool standardized = false;
  VectorXd gating_intercept;  // K unpenalized intercept logits (zeros when off)
  bool has_gating_intercept = false;

  PosteriorWeights weights;           // n x K responsibilities at convergence
  std::vector<double> objective_trace;  // penalized objective per iteration
  bool converged = false;
  int iterations = 0;
  int restart_index = -1;  // which restart won
  bool sigma_floor_hit = false;

  std::vector<Index> selected_features;  // rows of gamma with any nonzero
  double loglik = 0.0;  // unpenalized observed-data log-likelihood at theta
  int df = 0;           // nonzero beta0/beta/free-gamma entries + 1 for sigma

  LossSpec loss;
  PenaltySpec penalty;
  std::uint64_t rng_seed = 0;
  int n_samples = 0;
  int n_covariates = 0;
  int n_features = 0;
  std::vector<std::string> feature_ids;  // copied from the dataset when present
};

struct Prediction {
  MatrixXd pi;       // n x K mixing probabilities from the gating model
  VectorXi cluster;  // argmax_k pi (ties -> lowest index), 0-based
  VectorXd yhat;     // sum_k pi_k (beta0_k + x' beta); log-time scale for AFT
};

// ---------------------------------------------------------------------------
// Selection / evaluation results
// ---------------------------------------------------------------------------

struct PathEntry {
  int K = 0;
  double lambda = 0.0;
  double loglik = 0.0;
  int df = 0;
  double bic = 0.0;
  int n_selected = 0;
  bool converged = false;
  bool failed = false;       // fit threw (kept as a hole in the path)
  std::string fail_reason;
  FitResult fit;             // valid when !failed
};

struct PathResult {
  std::vector<PathEntry> entries;  // grouped by K, lambda descending within K
  int best = -1;                   // index into entries (min BIC;
                                   // ties -> larger lambda, then smaller K)
};

struct CvReport {
  int folds = 0;
  std::vector<int> fold_of;            // n, fold index per sample
  std::vector<double> fold_rmse;       // per fold (NaN for failed folds)
  std::vector<double> fold_r2;
  std::vector<std::vector<Index>> fold_selected;  // per-fold support
  std::vector<int> failed_folds;
  double rmse = 0.0;  // pooled over completed folds
  double r2 = 0.0;
  // Pooled held-out predictions (NaN / -1 for samples in failed folds).
  VectorXd yhat;
  VectorXi cluster_prior;      // argmax pi(g) only
  VectorXi cluster_posterior;  // argmax of responsibilities using the held-out
                               // outcome as well (used for benchmark ARI)
};

struct ElbowRow {
  int K = 0;
  double lambda = 0.0;  // BIC winner at this K
  double rmse = 0.0;
  double r2 = 0.0;
  bool failed = false;
  std::string fail_reason;
};

}  // namespace ogclust
