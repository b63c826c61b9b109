#include "simbench.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <numeric>
#include <set>
#include <sstream>

#include "em.hpp"
#include "kmeans.hpp"
#include "parallel.hpp"
#include "rng.hpp"
#include "select.hpp"

namespace ogclust {

namespace {
constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();
}

SimConfig model_preset(int model) {
  SimConfig cfg;
  switch (model) {
    case 1: cfg.gamma_strength = 1.0; cfg.delta = 2.0; break;
    case 2: cfg.gamma_strength = 1.0; cfg.delta = 3.0; break;
    case 3: cfg.gamma_strength = 1.0; cfg.delta = 5.0; break;
    case 4: cfg.gamma_strength = 3.0; cfg.delta = 3.0; break;
    default:
      throw Error(StatusCode::invalid_argument, "model preset must be 1..4");
  }
  cfg.name = "model" + std::to_string(model);
  return cfg;
}

SimConfig robust_setting(char setting) {
  SimConfig cfg = model_preset(2);
  switch (setting) {
    case 'A': cfg.noise = NoiseSetting::normal; break;
    case 'B': cfg.noise = NoiseSetting::outliers; break;
    case 'C': cfg.noise = NoiseSetting::lognormal; break;
    default:
      throw Error(StatusCode::invalid_argument,
                  "robustness setting must be A, B or C");
  }
  cfg.name = std::string("setting") + setting;
  return cfg;
}

SimConfig survival_setting(char setting) {
  SimConfig cfg;
  cfg.outcome = OutcomeKind::survival;
  switch (setting) {
    case 'A': cfg.gamma_strength = 1.0; cfg.delta = 1.0; break;
    case 'B': cfg.gamma_strength = 3.0; cfg.delta = 1.0; break;
    case 'C': cfg.gamma_strength = 1.0; cfg.delta = 2.0; break;
    case 'D': cfg.gamma_strength = 3.0; cfg.delta = 2.0; break;
    default:
      throw Error(StatusCode::invalid_argument,
                  "survival setting must be A..D");
  }
  cfg.name = std::string("survival") + setting;
  return cfg;
}

SimData generate_dataset(const SimConfig& cfg) {
  const Index n = cfg.n;
  const Index q = cfg.q;
  if (n < 1 || q < 30)
    throw Error(StatusCode::invalid_argument,
                "generator needs n >= 1 and q >= 30");
  if (!(cfg.gamma_strength > 0.0) || !(cfg.delta > 0.0))
    throw Error(StatusCode::invalid_argument,
                "gamma and delta strengths must be positive");

  SimData out;
  SimTruth& truth = out.truth;
  const double g = cfg.gamma_strength;

  truth.gamma = MatrixXd::Zero(q, 3);
  for (Index j = 0; j < 5; ++j) {
    truth.gamma(j, 0) = g;           // block 1 marks cluster 1
    truth.gamma(5 + j, 1) = g;       // block 2 marks cluster 2
    truth.gamma(10 + j, 0) = -g;     // block 3 pushes away from 1 and 2,
    truth.gamma(10 + j, 1) = -g;     // marking cluster 3
  }
  truth.beta0.resize(3);
  truth.beta0 << 1.0, 1.0 + cfg.delta, 1.0 + 2.0 * cfg.delta;
  truth.beta.resize(2);
  truth.beta << 1.0, 1.0;
  truth.sigma = cfg.sigma;
  for (Index j = 0; j < 15; ++j) truth.active.push_back(j);
  for (Index j = 15; j < 30; ++j) truth.irrelevant.push_back(j);

  Rng rng(derive_seed(cfg.seed, 0xD474));
  std::normal_distribution<double> norm(0.0, 1.0);
  std::uniform_int_distribution<int> pick3(0, 2);
  std::uniform_real_distribution<double> unit(0.0, 1.0);

  // Frozen draw order: aux labels, aux labels', base normals (row-major),
  // cluster draws, X columns, outcome noise.
  truth.aux_active.resize(size_t(n));
  truth.aux_irrelevant.resize(size_t(n));
  for (Index i = 0; i < n; ++i) truth.aux_active[size_t(i)] = pick3(rng);
  for (Index i = 0; i < n; ++i) truth.aux_irrelevant[size_t(i)] = pick3(rng);

  OmicsDataset& d = out.data;
  d.G.resize(n, q);
  for (Index i = 0; i < n; ++i)
    for (Index j = 0; j < q; ++j) d.G(i, j) = norm(rng);
  for (Index i = 0; i < n; ++i) {
    const Index b1 = 5 * truth.aux_active[size_t(i)];
    const Index b2 = 15 + 5 * truth.aux_irrelevant[size_t(i)];
    for (Index j = 0; j < 5; ++j) {
      d.G(i, b1 + j) += 1.0;
      d.G(i, b2 + j) += cfg.a2_multiplier;
    }
  }

  truth.z.resize(size_t(n));
  const MatrixXd logits =
      d.G.leftCols(15) * truth.gamma.topRows(15);  // n x 3
  for (Index i = 0; i < n; ++i) {
    const double m = logits.row(i).maxCoeff();
    Eigen::Vector3d p = (logits.row(i).array() - m).exp();
    p /= p.sum();
    const double u = unit(rng);
    int z = 2;
    double acc = 0.0;
    for (int k = 0; k < 3; ++k) {
      acc += p[k];
      if (u <= acc) {
        z = k;
        break;
      }
    }
    truth.z[size_t(i)] = z;
  }

  d.X.resize(n, 2);
  for (Index i = 0; i < n; ++i) d.X(i, 0) = 1.0 + norm(rng);
  for (Index i = 0; i < n; ++i) d.X(i, 1) = 2.0 + norm(rng);

  VectorXd mu(n);
  for (Index i = 0; i < n; ++i)
    mu[i] = truth.beta0[truth.z[size_t(i)]] + d.X.row(i).dot(truth.beta);

  if (cfg.outcome == OutcomeKind::survival) {
    d.time.resize(n);
    d.event.resize(n);
    for (Index i = 0; i < n; ++i) {
      const double u = unit(rng);
      const double w = std::log(u / (1.0 - u));  // standard logistic
      const double t = std::exp(mu[i] + cfg.survival_sigma * w);
      if (t > cfg.followup) {
        d.time[i] = cfg.followup;
        d.event[i] = 0;
      } else {
        d.time[i] = t;
        d.event[i] = 1;
      }
    }
  } else {
    d.y.resize(n);
    switch (cfg.noise) {
      case NoiseSetting::normal:
        for (Index i = 0; i < n; ++i) d.y[i] = mu[i] + cfg.sigma * norm(rng);
        break;
      case NoiseSetting::lognormal:
        for (Index i = 0; i < n; ++i) d.y[i] = mu[i] + std::exp(norm(rng));
        break;
      case NoiseSetting::outliers: {
        for (Index i = 0; i < n; ++i) d.y[i] = mu[i] + cfg.sigma * norm(rng);
        const double lo = d.y.minCoeff() - 10.0;
        const double hi = d.y.maxCoeff() + 10.0;
        const Index m = n / 10;
        std::vector<Index> idx(size_t(n), 0);
        std::iota(idx.begin(), idx.end(), Index(0));
        for (Index t = 0; t < m; ++t) {
          std::uniform_int_distribution<Index> pick(t, n - 1);
          std::swap(idx[size_t(t)], idx[size_t(pick(rng))]);
        }
        std::uniform_real_distribution<double> wide(lo, hi);
        for (Index t = 0; t < m; ++t) d.y[idx[size_t(t)]] = mu[idx[size_t(t)]] + wide(rng);
        truth.outlier_rows.assign(idx.begin(), idx.begin() + m);
        std::sort(truth.outlier_rows.begin(), truth.outlier_rows.end());
        break;
      }
    }
  }

  d.sample_ids.reserve(size_t(n));
  for (Index i = 0; i < n; ++i)
    d.sample_ids.push_back("S" + std::to_string(i + 1));
  d.feature_ids.reserve(size_t(q));
  for (Index j = 0; j < q; ++j)
    d.feature_ids.push_back("g" + std::to_string(j + 1));
  return out;
}

double ari(const std::vector<int>& a, const std::vector<int>& b) {
  if (a.size() != b.size())
    throw Error(StatusCode::invalid_argument,
                "label vectors differ in length");
  const size_t n = a.size();
  if (n == 0) return 1.0;
  std::map<std::pair<int, int>, double> cell;
  std::map<int, double> row, col;
  for (size_t i = 0; i < n; ++i) {
    cell[{a[i], b[i]}] += 1.0;
    row[a[i]] += 1.0;
    col[b[i]] += 1.0;
  }
  auto comb2 = [](double x) { return 0.5 * x * (x - 1.0); };
  double sum_cells = 0.0, sum_rows = 0.0, sum_cols = 0.0;
  for (const auto& [k, v] : cell) sum_cells += comb2(v);
  for (const auto& [k, v] : row) sum_rows += comb2(v);
  for (const auto& [k, v] : col) sum_cols += comb2(v);
  const double total = comb2(double(n));
  const double expected = sum_rows * sum_cols / total;
  const double maximum = 0.5 * (sum_rows + sum_cols);
  const double denom = maximum - expected;
  if (std::abs(denom) < 1e-12)
    return std::abs(sum_cells - expected) < 1e-12 ? 1.0 : 0.0;
  return (sum_cells - expected) / denom;
}

std::pair<int, int> score_selection(const std::vector<Index>& selected,
                                    const SimTruth& truth) {
  const std::set<Index> sel(selected.begin(), selected.end());
  const std::set<Index> act(truth.active.begin(), truth.active.end());
  int fp = 0, fn = 0;
  for (Index j : sel)
    if (!act.count(j)) ++fp;
  for (Index j : act)
    if (!sel.count(j)) ++fn;
  return {fp, fn};
}

// ---- SC baseline -----------------------------------------------------------

namespace {

// Outcome values used for screening and regression, and which samples carry
// them (all for continuous data, events only for survival).
void sc_targets(const OmicsDataset& d, VectorXd& u, std::vector<char>& mask) {
  const Index n = d.n();
  mask.assign(size_t(n), 1);
  if (d.is_survival()) {
    u = d.time.array().log();
    for (Index i = 0; i < n; ++i) mask[size_t(i)] = d.event[i] == 1 ? 1 : 0;
  } else {
    u = d.y;
  }
}

VectorXd ols_coef(const MatrixXd& X, const VectorXd& u,
                  const std::vector<Index>& rows) {
  const Index p = X.cols();
  MatrixXd A(Index(rows.size()), p + 1);
  VectorXd b(Index(rows.size()));
  for (size_t t = 0; t < rows.size(); ++t) {
    A(Index(t), 0) = 1.0;
    if (p > 0) A.row(Index(t)).tail(p) = X.row(rows[t]);
    b[Index(t)] = u[rows[t]];
  }
  return A.colPivHouseholderQr().solve(b);
}

struct TestScore {
  double rmse = kNaN;
  double r2 = kNaN;
};

TestScore masked_score(const OmicsDataset& d, const VectorXd& yhat) {
  VectorXd u;
  std::vector<char> mask;
  sc_targets(d, u, mask);
  double ss_res = 0.0, mean = 0.0;
  Index m = 0;
  for (Index i = 0; i < d.n(); ++i)
    if (mask[size_t(i)]) {
      mean += u[i];
      ++m;
    }
  TestScore s;
  if (m == 0) return s;
  mean /= double(m);
  double ss_tot = 0.0;
  for (Index i = 0; i < d.n(); ++i)
    if (mask[size_t(i)]) {
      ss_res += (u[i] - yhat[i]) * (u[i] - yhat[i]);
      ss_tot += (u[i] - mean) * (u[i] - mean);
    }
  s.rmse = std::sqrt(ss_res / double(m));
  s.r2 = ss_tot < 1e-12 ? 0.0 : 1.0 - ss_res / ss_tot;
  return s;
}

}  // namespace

ScModel sc_fit(const OmicsDataset& train, int M, int K, std::uint64_t seed) {
  const Index n = train.n();
  const Index q = train.q();
  const Index p = train.p();
  if (M < 1 || M > q)
    throw Error(StatusCode::invalid_argument,
                "screen size must lie in 1..q");
  VectorXd u;
  std::vector<char> mask;
  sc_targets(train, u, mask);
  std::vector<Index> scored;
  for (Index i = 0; i < n; ++i)
    if (mask[size_t(i)]) scored.push_back(i);
  if (scored.size() < 3)
    throw Error(StatusCode::numeric,
                "too few outcome-bearing samples to screen features");

  // Absolute marginal correlation with the outcome, computed on the
  // outcome-bearing rows.
  double um = 0.0;
  for (Index i : scored) um += u[i];
  um /= double(scored.size());
  double uv = 0.0;
  for (Index i : scored) uv += (u[i] - um) * (u[i] - um);
  std::vector<std::pair<double, Index>> rank;
  rank.reserve(size_t(q));
  for (Index j = 0; j < q; ++j) {
    double gm = 0.0;
    for (Index i : scored) gm += train.G(i, j);
    gm /= double(scored.size());
    double gv = 0.0, cov = 0.0;
    for (Index i : scored) {
      const double c = train.G(i, j) - gm;
      gv += c * c;
      cov += c * (u[i] - um);
    }
    const double denom = std::sqrt(gv * uv);
    rank.emplace_back(denom > 1e-12 ? std::abs(cov) / denom : 0.0, j);
  }
  std::sort(rank.begin(), rank.end(), [](const auto& a, const auto& b) {
    if (a.first != b.first) return a.first > b.first;
    return a.second < b.second;
  });

  ScModel model;
  model.K = K;
  model.M = M;
  for (int t = 0; t < M; ++t) model.screened.push_back(rank[size_t(t)].second);

  MatrixXd Xs(n, M);
  for (int t = 0; t < M; ++t) Xs.col(t) = train.G.col(model.screened[size_t(t)]);
  Rng rng(derive_seed(seed, 0x5CF1));
  KMeansResult km = kmeans(Xs, K, rng, 10);
  model.centers = std::move(km.centers);
  model.labels = std::move(km.labels);

  const VectorXd pooled = ols_coef(train.X, u, scored);
  model.coef.resize(K, p + 1);
  for (int k = 0; k < K; ++k) {
    std::vector<Index> rows;
    for (Index i : scored)
      if (model.labels[i] == k) rows.push_back(i);
    const VectorXd coef =
        Index(rows.size()) >= p + 2 ? ols_coef(train.X, u, rows) : pooled;
    model.coef.row(k) = coef.transpose();
  }
  return model;
}

ScPrediction sc_predict(const ScModel& model, const MatrixXd& G_new,
                        const MatrixXd& X_new) {
  const Index n = G_new.rows();
  const Index p = model.coef.cols() - 1;
  if (p > 0 && (X_new.rows() != n || X_new.cols() != p))
    throw Error(StatusCode::invalid_argument,
                "covariate matrix does not match the fitted baseline");
  ScPrediction out;
  out.cluster.resize(n);
  out.yhat.resize(n);
  VectorXd xs(model.M);
  for (Index i = 0; i < n; ++i) {
    for (int t = 0; t < model.M; ++t) xs[t] = G_new(i, model.screened[size_t(t)]);
    int arg = 0;
    double bd = (xs.transpose() - model.centers.row(0)).squaredNorm();
    for (int k = 1; k < model.K; ++k) {
      const double dd = (xs.transpose() - model.centers.row(k)).squaredNorm();
      if (dd < bd) {
        bd = dd;
        arg = k;
      }
    }
    out.cluster[i] = arg;
    double y = model.coef(arg, 0);
    for (Index l = 0; l < p; ++l) y += model.coef(arg, l + 1) * X_new(i, l);
    out.yhat[i] = y;
  }
  return out;
}

int sc_select_m(const OmicsDataset& data, const std::vector<int>& m_grid,
                int K, int folds, std::uint64_t seed) {
  if (m_grid.empty())
    throw Error(StatusCode::invalid_argument, "screen-size grid is empty");
  const Index n = data.n();
  if (folds < 2 || n < folds)
    throw Error(StatusCode::invalid_argument,
                "need folds >= 2 and at least one sample per fold");
  std::vector<int> grid = m_grid;
  std::sort(grid.begin(), grid.end());
  grid.erase(std::unique(grid.begin(), grid.end()), grid.end());

  std::vector<int> fold_of(size_t(n), 0);
  {
    std::vector<Index> order(size_t(n), Index(0));
    std::iota(order.begin(), order.end(), Index(0));
    Rng rng(derive_seed(seed, 0x5CF0));
    std::shuffle(order.begin(), order.end(), rng);
    for (Index i = 0; i < n; ++i)
      fold_of[size_t(order[size_t(i)])] = int(i % folds);
  }
  VectorXd u;
  std::vector<char> mask;
  sc_targets(data, u, mask);

  int best_m = grid.front();
  double best_rmse = std::numeric_limits<double>::infinity();
  for (int M : grid) {
    if (M < 1 || M > data.q()) continue;
    double sse = 0.0;
    Index cnt = 0;
    bool failed = false;
    for (int f = 0; f < folds && !failed; ++f) {
      std::vector<Index> tr, te;
      for (Index i = 0; i < n; ++i)
        (fold_of[size_t(i)] == f ? te : tr).push_back(i);
      try {
        const OmicsDataset dtr = subset_rows(data, tr);
        const OmicsDataset dte = subset_rows(data, te);
        const ScModel m =
            sc_fit(dtr, M, K, derive_seed(seed, 0x5CF2, std::uint64_t(f)));
        const ScPrediction pr = sc_predict(m, dte.G, dte.X);
        for (size_t t = 0; t < te.size(); ++t) {
          const Index i = te[t];
          if (!mask[size_t(i)]) continue;
          const double dlt = u[i] - pr.yhat[Index(t)];
          sse += dlt * dlt;
          ++cnt;
        }
      } catch (const Error&) {
        failed = true;
      }
    }
    if (failed || cnt == 0) continue;
    const double rmse = std::sqrt(sse / double(cnt));
    if (rmse < best_rmse) {
      best_rmse = rmse;
      best_m = M;
    }
  }
  if (!std::isfinite(best_rmse))
    throw Error(StatusCode::numeric,
                "screen-size selection failed at every grid value");
  return best_m;
}

// ---- Replicate studies -----------------------------------------------------

double nan_mean(const std::vector<double>& v) {
  double s = 0.0;
  int m = 0;
  for (double x : v)
    if (std::isfinite(x)) {
      s += x;
      ++m;
    }
  return m > 0 ? s / double(m) : kNaN;
}

LossSpec loss_by_name(const std::string& name) {
  if (name == "gaussian") return LossSpec::gaussian();
  if (name == "huber") return LossSpec::huber();
  if (name == "adhuber") return LossSpec::adaptive_huber();
  if (name == "median") return LossSpec::median_truncated();
  if (name == "aft") return LossSpec::aft();
  throw Error(StatusCode::invalid_argument, "unknown loss name: " + name);
}

namespace {

PenaltySpec bench_penalty(const BenchControls& bc, double lambda) {
  return bc.penalty == PenaltyKind::lasso
             ? PenaltySpec::lasso(lambda)
             : PenaltySpec::group(lambda, bc.alpha);
}

std::vector<int> posterior_labels(const FitResult& fit,
                                  const OmicsDataset& data) {
  const PosteriorWeights R = responsibilities(fit, data);
  std::vector<int> lab(size_t(R.rows()), 0);
  for (Index i = 0; i < R.rows(); ++i) {
    Index arg = 0;
    R.row(i).maxCoeff(&arg);
    lab[size_t(i)] = int(arg);
  }
  return lab;
}

// One replicate's worth of numbers for one method; slots let replicates run
// concurrently and merge in replicate order afterwards.
struct RepResult {
  bool failed = false;
  std::string why;
  double ari = kNaN, rmse = kNaN, r2 = kNaN, fp = kNaN, fn = kNaN;
  double test_rmse = kNaN, test_r2 = kNaN;
  int est_k = -1;
};

void append_rep(BenchRow& row, const RepResult& r) {
  row.ari.push_back(r.ari);
  row.rmse.push_back(r.rmse);
  row.r2.push_back(r.r2);
  row.test_rmse.push_back(r.test_rmse);
  row.test_r2.push_back(r.test_r2);
  row.fp.push_back(r.fp);
  row.fn.push_back(r.fn);
  row.est_k.push_back(r.est_k);
  row.failures.push_back(r.why);
  if (r.failed) {
    ++row.n_failed;
  } else if (r.est_k == 2) {
    ++row.k2;
  } else if (r.est_k == 3) {
    ++row.k3;
  } else {
    ++row.k_other;
  }
}

RepResult eval_ogclust_rep(const SimData& train, const SimData& test,
                           const BenchControls& bc, std::uint64_t fit_seed) {
  RepResult out;
  try {
    FitControls fc = bc.fit;
    fc.rng_seed = fit_seed;
    const PenaltySpec pen = bench_penalty(bc, 0.0);
    double lmax = 0.0;
    for (int K : bc.K_grid)
      lmax = std::max(lmax, lambda_max(train.data, K, pen, bc.loss, fc));
    const std::vector<double> grid =
        log_spaced_grid(lmax, bc.lambda_points, bc.lambda_ratio);
    const PathResult path =
        fit_path(train.data, bc.K_grid, grid, pen, bc.loss, fc);
    const PathEntry& won = path.entries[size_t(path.best)];

    out.est_k = won.K;
    const auto [fp, fn] = score_selection(won.fit.selected_features, train.truth);
    out.fp = double(fp);
    out.fn = double(fn);
    out.ari = ari(posterior_labels(won.fit, test.data), test.truth.z);

    const Prediction pr = predict(won.fit, test.data.G, test.data.X, false);
    const TestScore ts = masked_score(test.data, pr.yhat);
    out.test_rmse = ts.rmse;
    out.test_r2 = ts.r2;

    if (bc.run_cv) {
      const CvReport cv = kfold_cv(train.data, won.K,
                                   bench_penalty(bc, won.lambda), bc.loss, fc,
                                   bc.folds, &won.fit);
      out.rmse = cv.rmse;
      out.r2 = cv.r2;
    }
  } catch (const Error& e) {
    out = RepResult{};
    out.failed = true;
    out.why = e.what();
  }
  return out;
}

RepResult eval_sc_rep(const SimData& train, const SimData& test,
                      const BenchControls& bc, std::uint64_t seed) {
  RepResult out;
  try {
    const int m =
        sc_select_m(train.data, bc.sc_m_grid, bc.sc_K, 5, derive_seed(seed, 1));
    const ScModel sm = sc_fit(train.data, m, bc.sc_K, derive_seed(seed, 2));
    const ScPrediction pr = sc_predict(sm, test.data.G, test.data.X);

    out.est_k = bc.sc_K;
    const auto [fp, fn] = score_selection(sm.screened, train.truth);
    out.fp = double(fp);
    out.fn = double(fn);
    std::vector<int> lab(size_t(pr.cluster.size()), 0);
    for (Index i = 0; i < pr.cluster.size(); ++i) lab[size_t(i)] = pr.cluster[i];
    out.ari = ari(lab, test.truth.z);
    const TestScore ts = masked_score(test.data, pr.yhat);
    out.rmse = ts.rmse;
    out.r2 = ts.r2;
    out.test_rmse = ts.rmse;
    out.test_r2 = ts.r2;
  } catch (const Error& e) {
    out = RepResult{};
    out.failed = true;
    out.why = e.what();
  }
  return out;
}

}  // namespace

BenchReport run_benchmark(const std::vector<SimConfig>& models,
                          const std::vector<std::string>& methods,
                          int replicates, const BenchControls& bc) {
  if (models.empty() || methods.empty() || replicates < 1)
    throw Error(StatusCode::invalid_argument,
                "benchmark needs models, methods and replicates >= 1");
  for (const std::string& m : methods)
    if (m != "ogclust" && m != "sc")
      throw Error(StatusCode::invalid_argument,
                  "unknown benchmark method: " + m);

  BenchReport rep;
  for (const SimConfig& cfg : models)
    for (const std::string& m : methods) {
      BenchRow row;
      row.model = cfg.name;
      row.method = m;
      rep.rows.push_back(std::move(row));
    }

  for (size_t mi = 0; mi < models.size(); ++mi) {
    // Replicates are independent given their derived seeds; each one fills a
    // private slot and the slots are appended in replicate order.
    std::vector<std::vector<RepResult>> slots(
        methods.size(), std::vector<RepResult>(size_t(replicates)));
    parallel_for(replicates, [&](Index r) {
      SimConfig tr = models[mi];
      tr.seed = derive_seed(bc.seed, 0xB000 + mi, std::uint64_t(2 * r));
      SimConfig te = models[mi];
      te.seed = derive_seed(bc.seed, 0xB000 + mi, std::uint64_t(2 * r + 1));
      const SimData train = generate_dataset(tr);
      const SimData test = generate_dataset(te);
      for (size_t me = 0; me < methods.size(); ++me) {
        const std::uint64_t seed =
            derive_seed(bc.seed, 0xF17 + me, mi * 100000 + std::uint64_t(r));
        slots[me][size_t(r)] =
            methods[me] == "ogclust" ? eval_ogclust_rep(train, test, bc, seed)
                                     : eval_sc_rep(train, test, bc, seed);
      }
    });
    for (size_t me = 0; me < methods.size(); ++me)
      for (int r = 0; r < replicates; ++r)
        append_rep(rep.rows[mi * methods.size() + me], slots[me][size_t(r)]);
  }
  return rep;
}

std::vector<CurveResult> gene_count_curve(
    const SimConfig& cfg, const std::vector<std::string>& methods,
    const std::vector<int>& gene_targets, int replicates,
    const BenchControls& bc) {
  if (methods.empty() || gene_targets.empty() || replicates < 1)
    throw Error(StatusCode::invalid_argument,
                "curve needs methods, gene targets and replicates >= 1");
  for (const std::string& m : methods)
    if (m != "sc") (void)loss_by_name(m);  // surface typos before any work runs

  std::vector<CurveResult> results;
  for (const std::string& m : methods) {
    CurveResult cr;
    cr.method = m;
    for (int t : gene_targets) {
      CurvePoint pt;
      pt.target = t;
      cr.points.push_back(std::move(pt));
    }
    results.push_back(std::move(cr));
  }
  // One slot per (method, target, replicate); NaNs mark failures.  Replicates
  // run over the worker pool and merge in replicate order.
  struct PointSample {
    double ari = kNaN, rmse = kNaN, r2 = kNaN, fn = kNaN;
  };
  const size_t n_targets = gene_targets.size();
  std::vector<std::vector<std::vector<PointSample>>> slots(
      methods.size(), std::vector<std::vector<PointSample>>(
                          n_targets, std::vector<PointSample>(size_t(replicates))));

  parallel_for(replicates, [&](Index r) {
    SimConfig tr = cfg;
    tr.seed = derive_seed(bc.seed, 0xCBE, std::uint64_t(2 * r));
    SimConfig te = cfg;
    te.seed = derive_seed(bc.seed, 0xCBE, std::uint64_t(2 * r + 1));
    const SimData train = generate_dataset(tr);
    const SimData test = generate_dataset(te);

    for (size_t me = 0; me < methods.size(); ++me) {
      if (methods[me] == "sc") {
        for (size_t ti = 0; ti < n_targets; ++ti) {
          PointSample& pt = slots[me][ti][size_t(r)];
          try {
            const int M = std::min<int>(gene_targets[ti], int(train.data.q()));
            const ScModel sm =
                sc_fit(train.data, M, bc.curve_K,
                       derive_seed(bc.seed, 0x5C3, std::uint64_t(r) * 1000 + ti));
            const ScPrediction pr = sc_predict(sm, test.data.G, test.data.X);
            std::vector<int> lab(size_t(pr.cluster.size()), 0);
            for (Index i = 0; i < pr.cluster.size(); ++i)
              lab[size_t(i)] = pr.cluster[i];
            pt.ari = ari(lab, test.truth.z);
            const TestScore ts = masked_score(test.data, pr.yhat);
            pt.rmse = ts.rmse;
            pt.r2 = ts.r2;
            pt.fn = double(score_selection(sm.screened, train.truth).second);
          } catch (const Error&) {
          }
        }
        continue;
      }

      try {
        const LossSpec loss = loss_by_name(methods[me]);
        FitControls fc = bc.fit;
        fc.rng_seed = derive_seed(bc.seed, 0xF18, std::uint64_t(r) * 16 + me);
        const PenaltySpec pen = bench_penalty(bc, 0.0);
        const std::vector<double> grid = default_lambda_grid(
            train.data, bc.curve_K, pen, loss, fc, bc.lambda_points,
            bc.lambda_ratio);
        const PathResult path =
            fit_path(train.data, {bc.curve_K}, grid, pen, loss, fc);

        for (size_t ti = 0; ti < n_targets; ++ti) {
          PointSample& pt = slots[me][ti][size_t(r)];
          int best = -1, best_gap = 0;
          for (size_t e = 0; e < path.entries.size(); ++e) {
            if (path.entries[e].failed) continue;
            const int gap =
                std::abs(path.entries[e].n_selected - gene_targets[ti]);
            if (best < 0 || gap < best_gap) {
              best = int(e);
              best_gap = gap;
            }
          }
          if (best < 0) continue;
          const FitResult& ft = path.entries[size_t(best)].fit;
          pt.ari = ari(posterior_labels(ft, test.data), test.truth.z);
          const Prediction pr = predict(ft, test.data.G, test.data.X, false);
          const TestScore ts = masked_score(test.data, pr.yhat);
          pt.rmse = ts.rmse;
          pt.r2 = ts.r2;
          pt.fn =
              double(score_selection(ft.selected_features, train.truth).second);
        }
      } catch (const Error&) {
      }
    }
  });

  for (size_t me = 0; me < methods.size(); ++me)
    for (size_t ti = 0; ti < n_targets; ++ti) {
      CurvePoint& pt = results[me].points[ti];
      for (int r = 0; r < replicates; ++r) {
        const PointSample& s = slots[me][ti][size_t(r)];
        pt.ari.push_back(s.ari);
        pt.rmse.push_back(s.rmse);
        pt.r2.push_back(s.r2);
        pt.fn.push_back(s.fn);
      }
    }
  return results;
}

}  // namespace ogclust
