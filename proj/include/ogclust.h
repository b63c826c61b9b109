#ifndef OGCLUST_H
#define OGCLUST_H

/*
 * C interface to the outcome-guided clustering library.
 *
 * Conventions:
 *   - Every function returns an og_status; OG_OK means success.  On failure
 *     the thread-local message from og_last_error() describes the problem.
 *   - Objects are opaque handles created by og_*_create / og_fit /
 *     og_model_from_json and released with the matching og_*_free.
 *   - Matrices cross the boundary as dense row-major double arrays.
 *   - Strings returned through char** are heap-allocated; release them with
 *     og_string_free.
 *   - All computations are deterministic given the inputs and seeds; the
 *     OGCLUST_THREADS environment variable caps the worker pool without
 *     changing any result.
 */

#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef enum og_status {
  OG_OK = 0,
  OG_ERR_INVALID = 1,     /* bad argument: null handle, bad enum, bad dims */
  OG_ERR_VALIDATION = 2,  /* data failed validation (non-finite, domains) */
  OG_ERR_NUMERIC = 3,     /* degenerate model state (empty cluster, ...) */
  OG_ERR_CONVERGENCE = 4, /* iteration caps exhausted */
  OG_ERR_IO = 5,          /* parse/serialization problems */
  OG_ERR_INTERNAL = 6
} og_status;

/* Message for the most recent failure on this thread ("" if none). */
const char* og_last_error(void);
const char* og_version(void);
void og_string_free(char* s);

/* ------------------------------------------------------------------ data */

typedef struct og_dataset og_dataset;

/* Continuous outcome y[n]; X is n*p (may be NULL when p==0); G is n*q. */
og_status og_dataset_create_continuous(const double* y, const double* X,
                                       const double* G, int64_t n, int64_t p,
                                       int64_t q, og_dataset** out);

/* Survival outcome: follow-up time[n] > 0 and event[n] in {0,1}. */
og_status og_dataset_create_survival(const double* time, const int32_t* event,
                                     const double* X, const double* G,
                                     int64_t n, int64_t p, int64_t q,
                                     og_dataset** out);

/* Optional ids (arrays of n / q C strings; either may be NULL to skip). */
og_status og_dataset_set_ids(og_dataset* d, const char* const* sample_ids,
                             const char* const* feature_ids);

og_status og_dataset_dims(const og_dataset* d, int64_t* n, int64_t* p,
                          int64_t* q, int* is_survival);

/* Copy data out (for round-tripping simulated sets).  Buffers sized by the
 * caller from og_dataset_dims; any pointer may be NULL to skip that field.
 * `event` is only filled for survival data. */
og_status og_dataset_get(const og_dataset* d, double* outcome, int32_t* event,
                         double* X, double* G);

void og_dataset_free(og_dataset* d);

/* ------------------------------------------------------------------ fitting */

typedef enum og_loss {
  OG_LOSS_GAUSSIAN = 0,
  OG_LOSS_HUBER = 1,
  OG_LOSS_ADAPTIVE_HUBER = 2,
  OG_LOSS_MEDIAN_TRUNCATED = 3,
  OG_LOSS_AFT_LOGLOGISTIC = 4
} og_loss;

typedef enum og_penalty { OG_PENALTY_LASSO = 0, OG_PENALTY_GROUP = 1 } og_penalty;

typedef struct og_fit_options {
  int loss;         /* og_loss */
  double huber_tau; /* fixed-cutoff loss only */
  double adaptive_z;
  int penalty; /* og_penalty */
  double lambda;
  double alpha; /* ridge blend for the group penalty */
  int n_restarts;
  uint64_t seed;
  int max_em_iters;
  double em_tol;
  int standardize_features; /* 0/1 */
  int gating_intercept;     /* 0/1 */
} og_fit_options;

/* Fills every field with the library defaults. */
void og_fit_options_init(og_fit_options* opt);

typedef struct og_model og_model;

og_status og_fit(const og_dataset* d, int k, const og_fit_options* opt,
                 og_model** out);

void og_model_free(og_model* m);

/* ------------------------------------------------------------- inspection */

og_status og_model_dims(const og_model* m, int* k, int64_t* p, int64_t* q);

og_status og_model_info(const og_model* m, double* loglik, int* df,
                        int* converged, int* iterations);

/* beta0 has k entries (ascending), beta has p; any pointer may be NULL. */
og_status og_model_params(const og_model* m, double* beta0, double* beta,
                          double* sigma, double* tau);

/* Gating coefficients on the original feature scale, q*k row-major. */
og_status og_model_gamma(const og_model* m, double* gamma);

/* Indices of features with any nonzero gating coefficient.  Writes up to
 * `cap` indices and always reports the total in *count. */
og_status og_model_selected(const og_model* m, int64_t* idx, int64_t cap,
                            int64_t* count);

/* ------------------------------------------------------------- prediction */

/* Scores n new samples: mixing probabilities pi (n*k row-major), hard
 * cluster labels (0-based) and expected outcome (log-time scale for
 * survival models).  Output pointers may be NULL to skip. */
og_status og_predict(const og_model* m, const double* G, const double* X,
                     int64_t n, double* yhat, int32_t* cluster, double* pi);

/* Outcome-informed posterior probabilities for labelled data (n*k). */
og_status og_responsibilities(const og_model* m, const og_dataset* d,
                              double* resp);

/* ---------------------------------------------------------- serialization */

og_status og_model_to_json(const og_model* m, char** json);
og_status og_model_from_json(const char* json, og_model** out);

/* Per-sample table (id, per-cluster probability, cluster, yhat) for the
 * training data (posterior weights; requires the fitting dataset). */
og_status og_model_assignments_csv(const og_model* m, const og_dataset* d,
                                   char** csv);

/* Same table for new samples via the gating model; ids optional. */
og_status og_predict_csv(const og_model* m, const double* G, const double* X,
                         const char* const* sample_ids, int64_t n, char** csv);

/* ------------------------------------------------- selection and CV */

/* Fits a (K, lambda) grid, keeps the information-criterion winner and the
 * full table.  lambda_grid NULL -> data-driven grid with `lambda_points`
 * values down to `lambda_ratio` of the largest useful penalty. */
typedef struct og_path_options {
  const int* k_grid;
  int64_t k_count;
  const double* lambda_grid;
  int64_t lambda_count;
  int lambda_points;
  double lambda_ratio;
} og_path_options;

void og_path_options_init(og_path_options* opt);

og_status og_fit_path(const og_dataset* d, const og_fit_options* opt,
                      const og_path_options* path, og_model** best,
                      char** path_csv);

/* K-fold cross-validation at fixed (K, lambda); per-fold table plus pooled
 * held-out RMSE / R^2 (survival data scores observed events on log time). */
og_status og_cross_validate(const og_dataset* d, int k,
                            const og_fit_options* opt, int folds,
                            char** metrics_csv, double* rmse, double* r2);

/* Cluster-count diagnostics: for each K, path winner and its CV metrics. */
og_status og_elbow(const og_dataset* d, const og_fit_options* opt,
                   const int* k_grid, int64_t k_count, int folds,
                   char** elbow_csv);

/* ------------------------------------------------- simulation and studies */

/* preset: "model1".."model4" (continuous difficulty ladder), "settingA"..
 * "settingC" (clean / gross outliers / skewed noise), "survivalA"..
 * "survivalD" (censored log-logistic outcomes). */
typedef struct og_sim_options {
  const char* preset;
  int64_t n; /* <=0 -> preset default */
  int64_t q;
  uint64_t seed;
} og_sim_options;

/* Generates a dataset; optionally copies the true cluster labels (n). */
og_status og_simulate(const og_sim_options* opt, og_dataset** data,
                      int32_t* z_true);

typedef struct og_bench_options {
  og_fit_options fit;
  const int* k_grid; /* NULL -> {2,3,4} */
  int64_t k_count;
  int curve_k;       /* cluster count for gene-count curves */
  int lambda_points;
  double lambda_ratio;
  int folds;
  int sc_k;          /* cluster count for the screen-and-cluster baseline */
} og_bench_options;

void og_bench_options_init(og_bench_options* opt);

/* Paired replicate study over simulation presets.
 * models / methods are comma-separated lists (e.g. "model1,model2" and
 * "ogclust,sc"); emits one CSV row per (method, model, replicate). */
og_status og_benchmark(const char* models, const char* methods,
                       int replicates, const og_bench_options* opt,
                       char** metrics_csv);

/* Accuracy as a function of the retained gene count, at fixed cluster count.
 * methods: comma-separated losses and/or "sc"; gene_targets: tested counts. */
og_status og_gene_curve(const char* preset, const char* methods,
                        const int* gene_targets, int64_t target_count,
                        int replicates, const og_bench_options* opt,
                        char** curve_csv);

#ifdef __cplusplus
} /* extern "C" */
#endif

#endif /* OGCLUST_H */
