#include "ogclust.h"

#include <cstdlib>
#include <cstring>
#include <exception>
#include <memory>
#include <new>
#include <sstream>
#include <string>
#include <vector>

#include "em.hpp"
#include "select.hpp"
#include "serialize.hpp"
#include "simbench.hpp"
#include "types.hpp"

using namespace ogclust;

struct og_dataset {
  OmicsDataset data;
};

struct og_model {
  FitResult fit;
};

namespace {

thread_local std::string g_last_error;

og_status map_status(StatusCode code) {
  switch (code) {
    case StatusCode::ok: return OG_OK;
    case StatusCode::invalid_argument: return OG_ERR_INVALID;
    case StatusCode::validation: return OG_ERR_VALIDATION;
    case StatusCode::numeric: return OG_ERR_NUMERIC;
    case StatusCode::convergence: return OG_ERR_CONVERGENCE;
    case StatusCode::io: return OG_ERR_IO;
    case StatusCode::internal: return OG_ERR_INTERNAL;
  }
  return OG_ERR_INTERNAL;
}

og_status fail(og_status code, const std::string& message) {
  g_last_error = message;
  return code;
}

// Runs `body`, translating exceptions into status codes + og_last_error().
template <typename Body>
og_status guarded(Body&& body) {
  try {
    body();
    g_last_error.clear();
    return OG_OK;
  } catch (const Error& e) {
    return fail(map_status(e.code()), e.what());
  } catch (const std::bad_alloc&) {
    return fail(OG_ERR_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return fail(OG_ERR_INTERNAL, e.what());
  }
}

char* copy_string(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (!out) throw std::bad_alloc();
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

void require(bool ok, const char* what) {
  if (!ok) throw Error(StatusCode::invalid_argument, what);
}

MatrixXd dense_from_rowmajor(const double* a, Index rows, Index cols) {
  MatrixXd m(rows, cols);
  for (Index i = 0; i < rows; ++i)
    for (Index j = 0; j < cols; ++j) m(i, j) = a[i * cols + j];
  return m;
}

LossSpec loss_from(const og_fit_options& opt) {
  LossSpec loss;
  switch (opt.loss) {
    case OG_LOSS_GAUSSIAN: loss = LossSpec::gaussian(); break;
    case OG_LOSS_HUBER: loss = LossSpec::huber(); break;
    case OG_LOSS_ADAPTIVE_HUBER: loss = LossSpec::adaptive_huber(); break;
    case OG_LOSS_MEDIAN_TRUNCATED: loss = LossSpec::median_truncated(); break;
    case OG_LOSS_AFT_LOGLOGISTIC: loss = LossSpec::aft(); break;
    default:
      throw Error(StatusCode::invalid_argument, "unknown loss code");
  }
  loss.huber_tau = opt.huber_tau;
  loss.adaptive_z = opt.adaptive_z;
  return loss;
}

PenaltySpec penalty_from(const og_fit_options& opt) {
  switch (opt.penalty) {
    case OG_PENALTY_LASSO: return PenaltySpec::lasso(opt.lambda);
    case OG_PENALTY_GROUP: return PenaltySpec::group(opt.lambda, opt.alpha);
    default:
      throw Error(StatusCode::invalid_argument, "unknown penalty code");
  }
}

FitControls controls_from(const og_fit_options& opt) {
  FitControls c;
  c.max_em_iters = opt.max_em_iters;
  c.em_tol = opt.em_tol;
  c.n_restarts = opt.n_restarts;
  c.rng_seed = opt.seed;
  c.standardize_features = opt.standardize_features != 0;
  c.gating_intercept = opt.gating_intercept != 0;
  return c;
}

SimConfig preset_from(const std::string& name) {
  if (name.rfind("model", 0) == 0 && name.size() == 6 && name[5] >= '1' &&
      name[5] <= '4')
    return model_preset(name[5] - '0');
  if (name.rfind("setting", 0) == 0 && name.size() == 8)
    return robust_setting(name[7]);
  if (name.rfind("survival", 0) == 0 && name.size() == 9)
    return survival_setting(name[8]);
  throw Error(StatusCode::invalid_argument,
              "unknown simulation preset: " + name);
}

std::vector<std::string> split_list(const char* csv, const char* what) {
  require(csv != nullptr, what);
  std::vector<std::string> out;
  std::stringstream ss(csv);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (!item.empty()) out.push_back(item);
  }
  if (out.empty())
    throw Error(StatusCode::invalid_argument,
                std::string(what) + ": empty list");
  return out;
}

BenchControls bench_from(const og_bench_options& opt) {
  BenchControls bc;
  bc.fit = controls_from(opt.fit);
  bc.seed = opt.fit.seed;
  const PenaltySpec pen = penalty_from(opt.fit);
  bc.penalty = pen.kind;
  bc.alpha = pen.alpha;
  bc.loss = loss_from(opt.fit);
  if (opt.k_grid && opt.k_count > 0)
    bc.K_grid.assign(opt.k_grid, opt.k_grid + opt.k_count);
  bc.curve_K = opt.curve_k;
  bc.lambda_points = opt.lambda_points;
  bc.lambda_ratio = opt.lambda_ratio;
  bc.folds = opt.folds;
  bc.sc_K = opt.sc_k;
  return bc;
}

}  // namespace

const char* og_last_error(void) { return g_last_error.c_str(); }

const char* og_version(void) { return "0.1.0"; }

void og_string_free(char* s) { std::free(s); }

og_status og_dataset_create_continuous(const double* y, const double* X,
                                       const double* G, int64_t n, int64_t p,
                                       int64_t q, og_dataset** out) {
  return guarded([&] {
    require(out && y && G, "null pointer argument");
    require(n > 0 && p >= 0 && q > 0, "need n > 0, p >= 0, q > 0");
    require(p == 0 || X, "covariate pointer is null but p > 0");
    auto d = std::make_unique<og_dataset>();
    d->data.y = Eigen::Map<const VectorXd>(y, n);
    d->data.X = p > 0 ? dense_from_rowmajor(X, n, p) : MatrixXd(n, 0);
    d->data.G = dense_from_rowmajor(G, n, q);
    require_valid(d->data);
    *out = d.release();
  });
}

og_status og_dataset_create_survival(const double* time, const int32_t* event,
                                     const double* X, const double* G,
                                     int64_t n, int64_t p, int64_t q,
                                     og_dataset** out) {
  return guarded([&] {
    require(out && time && event && G, "null pointer argument");
    require(n > 0 && p >= 0 && q > 0, "need n > 0, p >= 0, q > 0");
    require(p == 0 || X, "covariate pointer is null but p > 0");
    auto d = std::make_unique<og_dataset>();
    d->data.time = Eigen::Map<const VectorXd>(time, n);
    d->data.event.resize(n);
    for (int64_t i = 0; i < n; ++i) d->data.event[i] = event[i];
    d->data.X = p > 0 ? dense_from_rowmajor(X, n, p) : MatrixXd(n, 0);
    d->data.G = dense_from_rowmajor(G, n, q);
    require_valid(d->data);
    *out = d.release();
  });
}

og_status og_dataset_set_ids(og_dataset* d, const char* const* sample_ids,
                             const char* const* feature_ids) {
  return guarded([&] {
    require(d, "null dataset");
    if (sample_ids) {
      std::vector<std::string> ids;
      for (Index i = 0; i < d->data.n(); ++i) {
        require(sample_ids[i], "null sample id");
        ids.emplace_back(sample_ids[i]);
      }
      d->data.sample_ids = std::move(ids);
    }
    if (feature_ids) {
      std::vector<std::string> ids;
      for (Index j = 0; j < d->data.q(); ++j) {
        require(feature_ids[j], "null feature id");
        ids.emplace_back(feature_ids[j]);
      }
      d->data.feature_ids = std::move(ids);
    }
    require_valid(d->data);
  });
}

og_status og_dataset_dims(const og_dataset* d, int64_t* n, int64_t* p,
                          int64_t* q, int* is_survival) {
  return guarded([&] {
    require(d, "null dataset");
    if (n) *n = d->data.n();
    if (p) *p = d->data.p();
    if (q) *q = d->data.q();
    if (is_survival) *is_survival = d->data.is_survival() ? 1 : 0;
  });
}

og_status og_dataset_get(const og_dataset* d, double* outcome, int32_t* event,
                         double* X, double* G) {
  return guarded([&] {
    require(d, "null dataset");
    const OmicsDataset& s = d->data;
    const Index n = s.n(), p = s.p(), q = s.q();
    if (outcome) {
      const VectorXd& v = s.is_survival() ? s.time : s.y;
      for (Index i = 0; i < n; ++i) outcome[i] = v[i];
    }
    if (event && s.is_survival())
      for (Index i = 0; i < n; ++i) event[i] = s.event[i];
    if (X)
      for (Index i = 0; i < n; ++i)
        for (Index j = 0; j < p; ++j) X[i * p + j] = s.X(i, j);
    if (G)
      for (Index i = 0; i < n; ++i)
        for (Index j = 0; j < q; ++j) G[i * q + j] = s.G(i, j);
  });
}

void og_dataset_free(og_dataset* d) { delete d; }

void og_fit_options_init(og_fit_options* opt) {
  if (!opt) return;
  const FitControls c;
  const LossSpec l;
  const PenaltySpec pg = PenaltySpec::group(0.0);
  opt->loss = OG_LOSS_GAUSSIAN;
  opt->huber_tau = l.huber_tau;
  opt->adaptive_z = l.adaptive_z;
  opt->penalty = OG_PENALTY_GROUP;
  opt->lambda = 0.0;
  opt->alpha = pg.alpha;
  opt->n_restarts = c.n_restarts;
  opt->seed = c.rng_seed;
  opt->max_em_iters = c.max_em_iters;
  opt->em_tol = c.em_tol;
  opt->standardize_features = c.standardize_features ? 1 : 0;
  opt->gating_intercept = c.gating_intercept ? 1 : 0;
}

og_status og_fit(const og_dataset* d, int k, const og_fit_options* opt,
                 og_model** out) {
  return guarded([&] {
    require(d && opt && out, "null pointer argument");
    auto m = std::make_unique<og_model>();
    m->fit = fit(d->data, k, penalty_from(*opt), loss_from(*opt),
                 controls_from(*opt));
    *out = m.release();
  });
}

void og_model_free(og_model* m) { delete m; }

og_status og_model_dims(const og_model* m, int* k, int64_t* p, int64_t* q) {
  return guarded([&] {
    require(m, "null model");
    if (k) *k = m->fit.theta.K();
    if (p) *p = m->fit.n_covariates;
    if (q) *q = m->fit.n_features;
  });
}

og_status og_model_info(const og_model* m, double* loglik, int* df,
                        int* converged, int* iterations) {
  return guarded([&] {
    require(m, "null model");
    if (loglik) *loglik = m->fit.loglik;
    if (df) *df = m->fit.df;
    if (converged) *converged = m->fit.converged ? 1 : 0;
    if (iterations) *iterations = m->fit.iterations;
  });
}

og_status og_model_params(const og_model* m, double* beta0, double* beta,
                          double* sigma, double* tau) {
  return guarded([&] {
    require(m, "null model");
    if (beta0)
      for (Index k = 0; k < m->fit.theta.beta0.size(); ++k)
        beta0[k] = m->fit.theta.beta0[k];
    if (beta)
      for (Index l = 0; l < m->fit.theta.beta.size(); ++l)
        beta[l] = m->fit.theta.beta[l];
    if (sigma) *sigma = m->fit.theta.sigma;
    if (tau) *tau = m->fit.theta.tau;
  });
}

og_status og_model_gamma(const og_model* m, double* gamma) {
  return guarded([&] {
    require(m && gamma, "null pointer argument");
    const MatrixXd& g = m->fit.theta.gamma;
    for (Index j = 0; j < g.rows(); ++j)
      for (Index k = 0; k < g.cols(); ++k) gamma[j * g.cols() + k] = g(j, k);
  });
}

og_status og_model_selected(const og_model* m, int64_t* idx, int64_t cap,
                            int64_t* count) {
  return guarded([&] {
    require(m && count, "null pointer argument");
    const auto& sel = m->fit.selected_features;
    *count = int64_t(sel.size());
    if (idx)
      for (int64_t i = 0; i < cap && i < int64_t(sel.size()); ++i)
        idx[i] = sel[size_t(i)];
  });
}

og_status og_predict(const og_model* m, const double* G, const double* X,
                     int64_t n, double* yhat, int32_t* cluster, double* pi) {
  return guarded([&] {
    require(m && G, "null pointer argument");
    require(n > 0, "need n > 0");
    const Index p = m->fit.n_covariates;
    require(p == 0 || X, "covariate pointer is null but the model uses them");
    const MatrixXd Gm = dense_from_rowmajor(G, n, m->fit.n_features);
    const MatrixXd Xm = p > 0 ? dense_from_rowmajor(X, n, p) : MatrixXd(n, 0);
    const Prediction pr = predict(m->fit, Gm, Xm, false);
    if (yhat)
      for (Index i = 0; i < n; ++i) yhat[i] = pr.yhat[i];
    if (cluster)
      for (Index i = 0; i < n; ++i) cluster[i] = pr.cluster[i];
    if (pi)
      for (Index i = 0; i < n; ++i)
        for (Index k = 0; k < pr.pi.cols(); ++k)
          pi[i * pr.pi.cols() + k] = pr.pi(i, k);
  });
}

og_status og_responsibilities(const og_model* m, const og_dataset* d,
                              double* resp) {
  return guarded([&] {
    require(m && d && resp, "null pointer argument");
    const PosteriorWeights w = responsibilities(m->fit, d->data);
    for (Index i = 0; i < w.rows(); ++i)
      for (Index k = 0; k < w.cols(); ++k) resp[i * w.cols() + k] = w(i, k);
  });
}

og_status og_model_to_json(const og_model* m, char** json) {
  return guarded([&] {
    require(m && json, "null pointer argument");
    *json = copy_string(theta_to_json(m->fit));
  });
}

og_status og_model_from_json(const char* json, og_model** out) {
  return guarded([&] {
    require(json && out, "null pointer argument");
    auto m = std::make_unique<og_model>();
    m->fit = theta_from_json(json);
    *out = m.release();
  });
}

og_status og_model_assignments_csv(const og_model* m, const og_dataset* d,
                                   char** csv) {
  return guarded([&] {
    require(m && d && csv, "null pointer argument");
    *csv = copy_string(fit_assignments_csv(m->fit, d->data));
  });
}

og_status og_predict_csv(const og_model* m, const double* G, const double* X,
                         const char* const* sample_ids, int64_t n,
                         char** csv) {
  return guarded([&] {
    require(m && G && csv, "null pointer argument");
    require(n > 0, "need n > 0");
    const Index p = m->fit.n_covariates;
    require(p == 0 || X, "covariate pointer is null but the model uses them");
    const MatrixXd Gm = dense_from_rowmajor(G, n, m->fit.n_features);
    const MatrixXd Xm = p > 0 ? dense_from_rowmajor(X, n, p) : MatrixXd(n, 0);
    const Prediction pr = predict(m->fit, Gm, Xm, false);
    std::vector<std::string> ids;
    if (sample_ids)
      for (int64_t i = 0; i < n; ++i) {
        require(sample_ids[i], "null sample id");
        ids.emplace_back(sample_ids[i]);
      }
    *csv = copy_string(prediction_assignments_csv(pr, ids));
  });
}

void og_path_options_init(og_path_options* opt) {
  if (!opt) return;
  opt->k_grid = nullptr;
  opt->k_count = 0;
  opt->lambda_grid = nullptr;
  opt->lambda_count = 0;
  opt->lambda_points = 30;
  opt->lambda_ratio = 0.01;
}

og_status og_fit_path(const og_dataset* d, const og_fit_options* opt,
                      const og_path_options* path, og_model** best,
                      char** csv) {
  return guarded([&] {
    require(d && opt && path, "null pointer argument");
    const LossSpec loss = loss_from(*opt);
    const PenaltySpec pen = penalty_from(*opt);
    const FitControls fc = controls_from(*opt);

    std::vector<int> K_grid = path->k_grid && path->k_count > 0
                                  ? std::vector<int>(path->k_grid,
                                                     path->k_grid + path->k_count)
                                  : std::vector<int>{2, 3, 4};
    std::vector<double> lambdas;
    if (path->lambda_grid && path->lambda_count > 0) {
      lambdas.assign(path->lambda_grid,
                     path->lambda_grid + path->lambda_count);
    } else {
      double lmax = 0.0;
      for (int K : K_grid)
        lmax = std::max(lmax, lambda_max(d->data, K, pen, loss, fc));
      lambdas = log_spaced_grid(lmax, path->lambda_points, path->lambda_ratio);
    }

    const PathResult result = fit_path(d->data, K_grid, lambdas, pen, loss, fc);
    if (csv) *csv = copy_string(path_csv(result));
    if (best) {
      auto m = std::make_unique<og_model>();
      m->fit = result.entries[size_t(result.best)].fit;
      *best = m.release();
    }
  });
}

og_status og_cross_validate(const og_dataset* d, int k,
                            const og_fit_options* opt, int folds,
                            char** metrics_csv, double* rmse, double* r2) {
  return guarded([&] {
    require(d && opt, "null pointer argument");
    const CvReport rep = kfold_cv(d->data, k, penalty_from(*opt),
                                  loss_from(*opt), controls_from(*opt), folds);
    if (metrics_csv) *metrics_csv = copy_string(cv_metrics_csv(rep));
    if (rmse) *rmse = rep.rmse;
    if (r2) *r2 = rep.r2;
  });
}

og_status og_elbow(const og_dataset* d, const og_fit_options* opt,
                   const int* k_grid, int64_t k_count, int folds,
                   char** csv) {
  return guarded([&] {
    require(d && opt && csv, "null pointer argument");
    require(k_grid && k_count > 0, "need a cluster-count grid");
    const std::vector<int> grid(k_grid, k_grid + k_count);
    const std::vector<ElbowRow> rows = elbow_diagnostics(
        d->data, grid, penalty_from(*opt), loss_from(*opt),
        controls_from(*opt), folds);
    *csv = copy_string(elbow_csv(rows));
  });
}

og_status og_simulate(const og_sim_options* opt, og_dataset** data,
                      int32_t* z_true) {
  return guarded([&] {
    require(opt && data, "null pointer argument");
    require(opt->preset, "null preset name");
    SimConfig cfg = preset_from(opt->preset);
    if (opt->n > 0) cfg.n = opt->n;
    if (opt->q > 0) cfg.q = opt->q;
    cfg.seed = opt->seed;
    SimData sim = generate_dataset(cfg);
    if (z_true)
      for (size_t i = 0; i < sim.truth.z.size(); ++i)
        z_true[i] = sim.truth.z[i];
    auto d = std::make_unique<og_dataset>();
    d->data = std::move(sim.data);
    *data = d.release();
  });
}

void og_bench_options_init(og_bench_options* opt) {
  if (!opt) return;
  og_fit_options_init(&opt->fit);
  const BenchControls bc;
  opt->k_grid = nullptr;
  opt->k_count = 0;
  opt->curve_k = bc.curve_K;
  opt->lambda_points = bc.lambda_points;
  opt->lambda_ratio = bc.lambda_ratio;
  opt->folds = bc.folds;
  opt->sc_k = bc.sc_K;
}

og_status og_benchmark(const char* models, const char* methods,
                       int replicates, const og_bench_options* opt,
                       char** metrics_csv) {
  return guarded([&] {
    require(opt && metrics_csv, "null pointer argument");
    std::vector<SimConfig> cfgs;
    for (const std::string& name : split_list(models, "models"))
      cfgs.push_back(preset_from(name));
    const std::vector<std::string> meths = split_list(methods, "methods");
    const BenchReport rep =
        run_benchmark(cfgs, meths, replicates, bench_from(*opt));
    *metrics_csv = copy_string(bench_metrics_csv(rep));
  });
}

og_status og_gene_curve(const char* preset, const char* methods,
                        const int* gene_targets, int64_t target_count,
                        int replicates, const og_bench_options* opt,
                        char** curve_csv) {
  return guarded([&] {
    require(preset && opt && curve_csv, "null pointer argument");
    require(gene_targets && target_count > 0, "need gene-count targets");
    const SimConfig cfg = preset_from(preset);
    const std::vector<std::string> meths = split_list(methods, "methods");
    const std::vector<int> targets(gene_targets, gene_targets + target_count);
    const std::vector<CurveResult> curves =
        gene_count_curve(cfg, meths, targets, replicates, bench_from(*opt));
    *curve_csv = copy_string(curve_metrics_csv(curves));
  });
}
