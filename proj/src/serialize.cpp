#include "serialize.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>

#include <json.hpp>

namespace ogclust {

using ordered_json = nlohmann::ordered_json;

std::string format_double(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return buf;
}

namespace {

std::string loss_name(LossKind kind) {
  switch (kind) {
    case LossKind::gaussian: return "gaussian";
    case LossKind::huber_fixed: return "huber";
    case LossKind::huber_adaptive: return "adhuber";
    case LossKind::median_truncated: return "median";
    case LossKind::aft_loglogistic: return "aft";
  }
  return "gaussian";
}

LossKind loss_kind_from(const std::string& name) {
  if (name == "gaussian") return LossKind::gaussian;
  if (name == "huber") return LossKind::huber_fixed;
  if (name == "adhuber") return LossKind::huber_adaptive;
  if (name == "median") return LossKind::median_truncated;
  if (name == "aft") return LossKind::aft_loglogistic;
  throw Error(StatusCode::io, "unknown loss kind in model file: " + name);
}

std::string feature_label(const FitResult& fit, Index j) {
  if (fit.feature_ids.size() == size_t(fit.n_features))
    return fit.feature_ids[size_t(j)];
  return "f" + std::to_string(j + 1);
}

std::string csv_escape(const std::string& s) {
  std::string flat;
  flat.reserve(s.size());
  for (char c : s) {
    if (c == '\n') {
      flat += "; ";
    } else if (c != '\r') {
      flat += c;
    }
  }
  if (flat.find_first_of(",\"") == std::string::npos) return flat;
  std::string quoted = "\"";
  for (char c : flat) {
    if (c == '"') quoted += '"';
    quoted += c;
  }
  quoted += '"';
  return quoted;
}

ordered_json to_array(const VectorXd& v) {
  ordered_json a = ordered_json::array();
  for (Index i = 0; i < v.size(); ++i) a.push_back(v[i]);
  return a;
}

VectorXd from_array(const ordered_json& a, const char* what) {
  if (!a.is_array())
    throw Error(StatusCode::io, std::string("model file: ") + what +
                                    " is not an array");
  VectorXd v(Index(a.size()));
  for (size_t i = 0; i < a.size(); ++i) v[Index(i)] = a[i].get<double>();
  return v;
}

}  // namespace

std::string theta_to_json(const FitResult& fit) {
  const int K = fit.theta.K();
  ordered_json j;
  j["format"] = "ogclust-theta/1";

  ordered_json model;
  model["clusters"] = K;
  model["covariates"] = fit.n_covariates;
  model["features"] = fit.n_features;
  model["samples"] = fit.n_samples;
  model["loss"] = {{"kind", loss_name(fit.loss.kind)},
                   {"huber_tau", fit.loss.huber_tau},
                   {"adaptive_z", fit.loss.adaptive_z}};
  model["penalty"] = {
      {"kind", fit.penalty.kind == PenaltyKind::lasso ? "lasso" : "group"},
      {"lambda", fit.penalty.lambda},
      {"alpha", fit.penalty.alpha}};
  model["standardized"] = fit.standardized;
  model["gating_intercept"] = fit.has_gating_intercept;
  j["model"] = std::move(model);

  ordered_json params;
  params["beta0"] = to_array(fit.theta.beta0);
  params["beta"] = to_array(fit.theta.beta);
  params["sigma"] = fit.theta.sigma;
  params["tau"] = fit.theta.tau;
  params["gating_intercept_logits"] =
      fit.gating_intercept.size() == K ? to_array(fit.gating_intercept)
                                       : to_array(VectorXd::Zero(K));
  ordered_json gamma = ordered_json::array();
  for (Index jf : fit.selected_features)
    for (int k = 0; k < K; ++k)
      if (fit.theta.gamma(jf, k) != 0.0)
        gamma.push_back({{"feature", feature_label(fit, jf)},
                         {"column", jf},
                         {"cluster", k},
                         {"value", fit.theta.gamma(jf, k)}});
  params["gamma"] = std::move(gamma);
  j["parameters"] = std::move(params);

  ordered_json feats = ordered_json::array();
  for (Index jf : fit.selected_features)
    feats.push_back({{"id", feature_label(fit, jf)},
                     {"column", jf},
                     {"center", fit.feature_center[jf]},
                     {"scale", fit.feature_scale[jf]}});
  j["features"] = std::move(feats);

  ordered_json diag;
  diag["seed"] = fit.rng_seed;
  diag["converged"] = fit.converged;
  diag["iterations"] = fit.iterations;
  diag["restart_index"] = fit.restart_index;
  diag["sigma_floor_hit"] = fit.sigma_floor_hit;
  diag["loglik"] = fit.loglik;
  diag["df"] = fit.df;
  diag["selected"] = Index(fit.selected_features.size());
  ordered_json trace = ordered_json::array();
  for (double v : fit.objective_trace) trace.push_back(v);
  diag["objective_trace"] = std::move(trace);
  j["fit"] = std::move(diag);

  return j.dump(2) + "\n";
}

FitResult theta_from_json(const std::string& text) {
  ordered_json j = ordered_json::parse(text, nullptr, false);
  if (j.is_discarded())
    throw Error(StatusCode::io, "model file is not valid JSON");
  try {
    if (j.at("format").get<std::string>() != "ogclust-theta/1")
      throw Error(StatusCode::io, "unrecognized model file format tag");

    FitResult fit;
    const ordered_json& model = j.at("model");
    const int K = model.at("clusters").get<int>();
    fit.n_covariates = model.at("covariates").get<int>();
    fit.n_features = model.at("features").get<int>();
    fit.n_samples = model.at("samples").get<int>();
    if (K < 1 || fit.n_features < 0 || fit.n_covariates < 0)
      throw Error(StatusCode::io, "model file: bad dimensions");
    const Index q = fit.n_features;

    fit.loss.kind = loss_kind_from(model.at("loss").at("kind").get<std::string>());
    fit.loss.huber_tau = model.at("loss").at("huber_tau").get<double>();
    fit.loss.adaptive_z = model.at("loss").at("adaptive_z").get<double>();
    const std::string pk = model.at("penalty").at("kind").get<std::string>();
    if (pk != "lasso" && pk != "group")
      throw Error(StatusCode::io, "model file: unknown penalty kind " + pk);
    fit.penalty.kind =
        pk == "lasso" ? PenaltyKind::lasso : PenaltyKind::group_lasso_ridge;
    fit.penalty.lambda = model.at("penalty").at("lambda").get<double>();
    fit.penalty.alpha = model.at("penalty").at("alpha").get<double>();
    fit.standardized = model.at("standardized").get<bool>();
    fit.has_gating_intercept = model.at("gating_intercept").get<bool>();

    const ordered_json& params = j.at("parameters");
    fit.theta.beta0 = from_array(params.at("beta0"), "beta0");
    if (fit.theta.beta0.size() != K)
      throw Error(StatusCode::io, "model file: beta0 length != clusters");
    fit.theta.beta = from_array(params.at("beta"), "beta");
    if (fit.theta.beta.size() != fit.n_covariates)
      throw Error(StatusCode::io, "model file: beta length != covariates");
    fit.theta.sigma = params.at("sigma").get<double>();
    fit.theta.tau = params.at("tau").get<double>();
    fit.gating_intercept =
        from_array(params.at("gating_intercept_logits"), "intercept logits");
    if (fit.gating_intercept.size() != K)
      throw Error(StatusCode::io, "model file: intercept logits length != clusters");

    fit.theta.gamma = MatrixXd::Zero(q, K);
    fit.feature_center = VectorXd::Zero(q);
    fit.feature_scale = VectorXd::Ones(q);
    fit.feature_ids.reserve(size_t(q));
    for (Index jf = 0; jf < q; ++jf)
      fit.feature_ids.push_back("f" + std::to_string(jf + 1));

    for (const ordered_json& e : params.at("gamma")) {
      const Index col = e.at("column").get<Index>();
      const int k = e.at("cluster").get<int>();
      if (col < 0 || col >= q || k < 0 || k >= K)
        throw Error(StatusCode::io, "model file: gamma entry out of range");
      fit.theta.gamma(col, k) = e.at("value").get<double>();
    }
    for (const ordered_json& e : j.at("features")) {
      const Index col = e.at("column").get<Index>();
      if (col < 0 || col >= q)
        throw Error(StatusCode::io, "model file: feature column out of range");
      fit.selected_features.push_back(col);
      fit.feature_center[col] = e.at("center").get<double>();
      fit.feature_scale[col] = e.at("scale").get<double>();
      fit.feature_ids[size_t(col)] = e.at("id").get<std::string>();
    }

    const ordered_json& diag = j.at("fit");
    fit.rng_seed = diag.at("seed").get<std::uint64_t>();
    fit.converged = diag.at("converged").get<bool>();
    fit.iterations = diag.at("iterations").get<int>();
    fit.restart_index = diag.at("restart_index").get<int>();
    fit.sigma_floor_hit = diag.at("sigma_floor_hit").get<bool>();
    fit.loglik = diag.at("loglik").get<double>();
    fit.df = diag.at("df").get<int>();
    for (const ordered_json& v : diag.at("objective_trace"))
      fit.objective_trace.push_back(v.get<double>());
    return fit;
  } catch (const ordered_json::exception& e) {
    throw Error(StatusCode::io,
                std::string("model file: missing or mistyped field (") +
                    e.what() + ")");
  }
}

namespace {

std::string assignments_table(const MatrixXd& pi, const VectorXi& cluster,
                              const VectorXd& yhat,
                              const std::vector<std::string>& ids) {
  const Index n = pi.rows();
  const Index K = pi.cols();
  std::ostringstream os;
  os << "id";
  for (Index k = 0; k < K; ++k) os << ",pi" << (k + 1);
  os << ",cluster,yhat\n";
  for (Index i = 0; i < n; ++i) {
    os << (ids.size() == size_t(n) ? csv_escape(ids[size_t(i)])
                                   : std::to_string(i + 1));
    for (Index k = 0; k < K; ++k) os << ',' << format_double(pi(i, k));
    os << ',' << (cluster[i] + 1) << ',' << format_double(yhat[i]) << '\n';
  }
  return os.str();
}

}  // namespace

std::string fit_assignments_csv(const FitResult& fit,
                                const OmicsDataset& data) {
  const Index n = data.n();
  if (fit.weights.rows() != n)
    throw Error(StatusCode::invalid_argument,
                "assignments need the dataset the model was fitted on");
  VectorXi cluster(n);
  VectorXd yhat(n);
  for (Index i = 0; i < n; ++i) {
    Index arg = 0;
    fit.weights.row(i).maxCoeff(&arg);
    cluster[i] = int(arg);
    double y = fit.weights.row(i).dot(fit.theta.beta0);
    if (data.p() > 0) y += data.X.row(i).dot(fit.theta.beta);
    yhat[i] = y;
  }
  return assignments_table(fit.weights, cluster, yhat, data.sample_ids);
}

std::string prediction_assignments_csv(
    const Prediction& pr, const std::vector<std::string>& sample_ids) {
  return assignments_table(pr.pi, pr.cluster, pr.yhat, sample_ids);
}

std::string path_csv(const PathResult& path) {
  std::ostringstream os;
  os << "K,lambda,loglik,df,bic,n_selected,converged,failed,fail_reason\n";
  for (const PathEntry& e : path.entries) {
    os << e.K << ',' << format_double(e.lambda) << ','
       << format_double(e.loglik) << ',' << e.df << ','
       << format_double(e.bic) << ',' << e.n_selected << ','
       << (e.converged ? 1 : 0) << ',' << (e.failed ? 1 : 0) << ','
       << csv_escape(e.fail_reason) << '\n';
  }
  return os.str();
}

std::string cv_metrics_csv(const CvReport& rep) {
  std::ostringstream os;
  os << "fold,rmse,r2,n_selected\n";
  for (int f = 0; f < rep.folds; ++f)
    os << (f + 1) << ',' << format_double(rep.fold_rmse[size_t(f)]) << ','
       << format_double(rep.fold_r2[size_t(f)]) << ','
       << rep.fold_selected[size_t(f)].size() << '\n';
  os << "pooled," << format_double(rep.rmse) << ',' << format_double(rep.r2)
     << ",\n";
  return os.str();
}

std::string bench_metrics_csv(const BenchReport& rep) {
  std::ostringstream os;
  os << "method,model,estK,ARI,FP,FN,RMSE,R2\n";
  for (const BenchRow& row : rep.rows)
    for (size_t t = 0; t < row.ari.size(); ++t)
      os << csv_escape(row.method) << ',' << csv_escape(row.model) << ','
         << row.est_k[t] << ',' << format_double(row.ari[t]) << ','
         << format_double(row.fp[t]) << ',' << format_double(row.fn[t]) << ','
         << format_double(row.rmse[t]) << ',' << format_double(row.r2[t])
         << '\n';
  return os.str();
}

std::string curve_metrics_csv(const std::vector<CurveResult>& curves) {
  std::ostringstream os;
  os << "method,genes,ARI,RMSE,R2,FN\n";
  for (const CurveResult& cr : curves)
    for (const CurvePoint& pt : cr.points)
      for (size_t t = 0; t < pt.ari.size(); ++t)
        os << csv_escape(cr.method) << ',' << pt.target << ','
           << format_double(pt.ari[t]) << ',' << format_double(pt.rmse[t])
           << ',' << format_double(pt.r2[t]) << ','
           << format_double(pt.fn[t]) << '\n';
  return os.str();
}

std::string elbow_csv(const std::vector<ElbowRow>& rows) {
  std::ostringstream os;
  os << "K,lambda,rmse,r2,failed,fail_reason\n";
  for (const ElbowRow& r : rows)
    os << r.K << ',' << format_double(r.lambda) << ','
       << format_double(r.rmse) << ',' << format_double(r.r2) << ','
       << (r.failed ? 1 : 0) << ',' << csv_escape(r.fail_reason) << '\n';
  return os.str();
}

}  // namespace ogclust
