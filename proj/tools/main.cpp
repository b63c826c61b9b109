// Command-line front end: CSV ingestion, model fitting and selection,
// prediction, simulation and replicate studies.  Talks to the library
// exclusively through the C interface in ogclust.h.
//
// Exit codes: 0 success, 2 validation problems (bad flags, bad data, id
// mismatches), 3 numeric/convergence failures, 4 I/O and parse failures.

#include <cctype>
#include <chrono>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <unordered_map>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "ogclust.h"

namespace {

constexpr int kExitValidation = 2;
constexpr int kExitNumeric = 3;
constexpr int kExitIo = 4;

int exit_code_for(og_status s) {
  switch (s) {
    case OG_OK: return 0;
    case OG_ERR_INVALID:
    case OG_ERR_VALIDATION: return kExitValidation;
    case OG_ERR_NUMERIC:
    case OG_ERR_CONVERGENCE: return kExitNumeric;
    case OG_ERR_IO: return kExitIo;
    case OG_ERR_INTERNAL: break;
  }
  return 1;
}

[[noreturn]] void die(int code, const std::string& message) {
  std::cerr << "ogclust: " << message << "\n";
  std::exit(code);
}

void check(og_status s) {
  if (s != OG_OK) die(exit_code_for(s), og_last_error());
}

// Owns a C string from the library.
struct OgString {
  char* ptr = nullptr;
  ~OgString() { og_string_free(ptr); }
  std::string str() const { return ptr ? std::string(ptr) : std::string(); }
};

// ---------------------------------------------------------------- CSV layer

struct Table {
  std::string path;
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;  // all the same width as header
};

// Minimal CSV: comma separated, double quotes with "" escaping, no embedded
// newlines inside quoted fields.
std::vector<std::string> split_csv_line(const std::string& line,
                                        const std::string& path, size_t lineno) {
  std::vector<std::string> out;
  std::string field;
  bool quoted = false;
  for (size_t i = 0; i < line.size(); ++i) {
    const char c = line[i];
    if (quoted) {
      if (c == '"') {
        if (i + 1 < line.size() && line[i + 1] == '"') {
          field += '"';
          ++i;
        } else {
          quoted = false;
        }
      } else {
        field += c;
      }
    } else if (c == '"') {
      if (!field.empty())
        die(kExitIo, path + ":" + std::to_string(lineno) +
                         ": stray quote inside unquoted field");
      quoted = true;
    } else if (c == ',') {
      out.push_back(field);
      field.clear();
    } else {
      field += c;
    }
  }
  if (quoted)
    die(kExitIo, path + ":" + std::to_string(lineno) + ": unterminated quote");
  out.push_back(field);
  return out;
}

Table read_table(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) die(kExitIo, "cannot open " + path);
  Table t;
  t.path = path;
  std::string line;
  size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    std::vector<std::string> cells = split_csv_line(line, path, lineno);
    if (t.header.empty()) {
      t.header = std::move(cells);
    } else {
      if (cells.size() != t.header.size())
        die(kExitIo, path + ":" + std::to_string(lineno) + ": expected " +
                         std::to_string(t.header.size()) + " columns, found " +
                         std::to_string(cells.size()));
      t.rows.push_back(std::move(cells));
    }
  }
  if (t.header.size() < 2)
    die(kExitIo, path + ": needs a header row with an id column and at least "
                 "one value column");
  return t;
}

double parse_number(const Table& t, size_t row, size_t col) {
  const std::string& s = t.rows[row][col];
  char* end = nullptr;
  const double v = std::strtod(s.c_str(), &end);
  if (s.empty() || end != s.c_str() + s.size())
    die(kExitIo, t.path + ": non-numeric value '" + s + "' at row " +
                     std::to_string(row + 2) + " (sample '" + t.rows[row][0] +
                     "'), column '" + t.header[col] + "'");
  return v;
}

// Maps sample id -> row, rejecting duplicates.
std::unordered_map<std::string, size_t> index_by_id(const Table& t) {
  std::unordered_map<std::string, size_t> map;
  map.reserve(t.rows.size());
  for (size_t r = 0; r < t.rows.size(); ++r)
    if (!map.emplace(t.rows[r][0], r).second)
      die(kExitValidation,
          t.path + ": duplicate sample id '" + t.rows[r][0] + "'");
  return map;
}

// ---------------------------------------------------------------- ingestion

struct Ingested {
  og_dataset* handle = nullptr;
  int64_t n = 0, p = 0, q = 0;
  int survival = 0;
  std::vector<std::string> sample_ids;
  std::vector<std::string> feature_ids;
  ~Ingested() { og_dataset_free(handle); }
};

// The outcome file fixes the sample order; covariate/feature rows are
// matched by id, so file row order does not matter.
void ingest(const std::string& outcome_path, const std::string& covariates_path,
            const std::string& features_path, Ingested& out) {
  const Table outcome = read_table(outcome_path);
  if (outcome.header.size() > 3)
    die(kExitIo, outcome_path +
                     ": outcome file must have columns (id,outcome) or "
                     "(id,time,event)");
  out.survival = outcome.header.size() == 3 ? 1 : 0;
  const Table features = read_table(features_path);
  const auto feature_rows = index_by_id(features);

  const bool have_cov = !covariates_path.empty();
  Table covariates;
  std::unordered_map<std::string, size_t> cov_rows;
  if (have_cov) {
    covariates = read_table(covariates_path);
    cov_rows = index_by_id(covariates);
  }

  out.n = int64_t(outcome.rows.size());
  if (out.n == 0) die(kExitValidation, outcome_path + ": no data rows");
  out.p = have_cov ? int64_t(covariates.header.size() - 1) : 0;
  out.q = int64_t(features.header.size() - 1);
  index_by_id(outcome);  // duplicate check

  std::vector<double> yvals(size_t(out.n), 0.0);
  std::vector<int32_t> events(size_t(out.n), 0);
  std::vector<double> X(size_t(out.n * std::max<int64_t>(out.p, 1)), 0.0);
  std::vector<double> G(size_t(out.n * out.q), 0.0);

  for (size_t r = 0; r < outcome.rows.size(); ++r) {
    const std::string& id = outcome.rows[r][0];
    out.sample_ids.push_back(id);
    yvals[r] = parse_number(outcome, r, 1);
    if (out.survival) {
      const double e = parse_number(outcome, r, 2);
      if (e != 0.0 && e != 1.0)
        die(kExitValidation, outcome_path + ": event for sample '" + id +
                                 "' must be 0 or 1");
      events[r] = int32_t(e);
    }
    const auto ft = feature_rows.find(id);
    if (ft == feature_rows.end())
      die(kExitValidation,
          features_path + ": missing sample id '" + id + "'");
    for (int64_t j = 0; j < out.q; ++j)
      G[r * size_t(out.q) + size_t(j)] =
          parse_number(features, ft->second, size_t(j + 1));
    if (have_cov) {
      const auto ct = cov_rows.find(id);
      if (ct == cov_rows.end())
        die(kExitValidation,
            covariates_path + ": missing sample id '" + id + "'");
      for (int64_t j = 0; j < out.p; ++j)
        X[r * size_t(out.p) + size_t(j)] =
            parse_number(covariates, ct->second, size_t(j + 1));
    }
  }
  for (size_t j = 1; j < features.header.size(); ++j)
    out.feature_ids.push_back(features.header[j]);

  const double* xptr = out.p > 0 ? X.data() : nullptr;
  if (out.survival) {
    check(og_dataset_create_survival(yvals.data(), events.data(), xptr,
                                     G.data(), out.n, out.p, out.q,
                                     &out.handle));
  } else {
    check(og_dataset_create_continuous(yvals.data(), xptr, G.data(), out.n,
                                       out.p, out.q, &out.handle));
  }
  std::vector<const char*> sid, fid;
  for (const std::string& s : out.sample_ids) sid.push_back(s.c_str());
  for (const std::string& s : out.feature_ids) fid.push_back(s.c_str());
  check(og_dataset_set_ids(out.handle, sid.data(), fid.data()));
}

// ------------------------------------------------------------------ output

std::string format17(double x) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return buf;
}

void write_file(const std::filesystem::path& path, const std::string& body) {
  std::ofstream out(path, std::ios::binary);
  if (!out) die(kExitIo, "cannot write " + path.string());
  out << body;
  if (!out) die(kExitIo, "write failed for " + path.string());
}

std::filesystem::path prepare_out_dir(const std::string& dir) {
  std::filesystem::path p = dir.empty() ? "." : dir;
  std::error_code ec;
  std::filesystem::create_directories(p, ec);
  if (ec) die(kExitIo, "cannot create output directory " + p.string());
  return p;
}

// The only artifact carrying a timestamp, so every other report is
// byte-identical across reruns.
void write_run_info(const std::filesystem::path& dir, const std::string& cmd,
                    std::uint64_t seed) {
  nlohmann::ordered_json j;
  j["tool"] = "ogclust";
  j["version"] = og_version();
  j["command"] = cmd;
  j["seed"] = seed;
  const std::time_t now =
      std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  char stamp[32];
  std::tm tm_utc{};
  gmtime_r(&now, &tm_utc);
  std::strftime(stamp, sizeof(stamp), "%Y-%m-%dT%H:%M:%SZ", &tm_utc);
  j["timestamp"] = stamp;
  write_file(dir / "run_info.json", j.dump(2) + "\n");
}

// ------------------------------------------------------------- shared flags

struct CommonOpts {
  std::string outcome, covariates, features, out = ".";
  std::string loss = "gaussian", penalty = "group";
  int k = 3;
  std::vector<int> k_grid;
  double lambda = 0.0;
  std::vector<double> lambda_grid;
  int lambda_points = 30;
  double lambda_ratio = 0.01;
  double alpha = 0.5;
  double huber_tau = 1.345;
  int restarts = 5;
  std::uint64_t seed = 0;
  int folds = 10;
  bool no_standardize = false;
  bool gating_intercept = false;
};

int parse_loss(const std::string& name) {
  if (name == "gaussian") return OG_LOSS_GAUSSIAN;
  if (name == "huber") return OG_LOSS_HUBER;
  if (name == "adhuber") return OG_LOSS_ADAPTIVE_HUBER;
  if (name == "median") return OG_LOSS_MEDIAN_TRUNCATED;
  if (name == "aft") return OG_LOSS_AFT_LOGLOGISTIC;
  die(kExitValidation, "unknown loss '" + name + "'");
}

og_fit_options fit_options_from(const CommonOpts& c) {
  og_fit_options opt;
  og_fit_options_init(&opt);
  opt.loss = parse_loss(c.loss);
  opt.huber_tau = c.huber_tau;
  opt.penalty = c.penalty == "lasso" ? OG_PENALTY_LASSO : OG_PENALTY_GROUP;
  opt.lambda = c.lambda;
  opt.alpha = c.alpha;
  opt.n_restarts = c.restarts;
  opt.seed = c.seed;
  opt.standardize_features = c.no_standardize ? 0 : 1;
  opt.gating_intercept = c.gating_intercept ? 1 : 0;
  return opt;
}

void add_data_flags(CLI::App* cmd, CommonOpts& c, bool need_outcome) {
  auto* o = cmd->add_option("--outcome", c.outcome,
                            "Outcome CSV: id,outcome or id,time,event");
  cmd->add_option("--covariates", c.covariates,
                  "Optional covariate CSV: id,x1,...,xp");
  auto* f = cmd->add_option("--features", c.features,
                            "Feature CSV: id,g1,...,gq");
  if (need_outcome) {
    o->required();
    f->required();
  }
}

void add_model_flags(CLI::App* cmd, CommonOpts& c) {
  cmd->add_option("--loss", c.loss,
                  "Outcome model: gaussian, huber, adhuber, median, aft");
  cmd->add_option("--penalty", c.penalty, "Gating penalty: lasso or group")
      ->check(CLI::IsMember({"lasso", "group"}));
  cmd->add_option("--lambda", c.lambda, "Penalty strength");
  cmd->add_option("--alpha", c.alpha, "Ridge blend for the group penalty");
  cmd->add_option("--huber-tau", c.huber_tau, "Fixed robust cutoff");
  cmd->add_option("--restarts", c.restarts, "Random restarts per fit");
  cmd->add_option("--seed", c.seed, "Master random seed");
  cmd->add_flag("--no-standardize", c.no_standardize,
                "Skip feature standardization in the gating model");
  cmd->add_flag("--gating-intercept", c.gating_intercept,
                "Add unpenalized per-cluster intercepts to the gating model");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Outcome-guided clustering of high-dimensional omics data"};
  app.require_subcommand(1);
  app.set_config("--config", "",
                 "Flat key=value config file; command-line flags win");
  app.get_config_formatter_base()->comment('#');

  CommonOpts c;

  CLI::App* cmd_fit = app.add_subcommand(
      "fit", "Fit a model at fixed cluster count and penalty");
  add_data_flags(cmd_fit, c, true);
  add_model_flags(cmd_fit, c);
  cmd_fit->add_option("--k", c.k, "Number of clusters");
  cmd_fit->add_option("--out", c.out, "Output directory");

  CLI::App* cmd_path = app.add_subcommand(
      "path", "Fit a (K, lambda) grid and keep the BIC winner");
  add_data_flags(cmd_path, c, true);
  add_model_flags(cmd_path, c);
  cmd_path->add_option("--k-grid", c.k_grid, "Cluster counts to try")
      ->delimiter(',');
  cmd_path->add_option("--lambda-grid", c.lambda_grid,
                       "Penalty grid (default: data-driven)")
      ->delimiter(',');
  cmd_path->add_option("--lambda-points", c.lambda_points,
                       "Size of the automatic penalty grid");
  cmd_path->add_option("--lambda-ratio", c.lambda_ratio,
                       "Smallest/largest penalty in the automatic grid");
  cmd_path->add_option("--out", c.out, "Output directory");

  CLI::App* cmd_cv = app.add_subcommand(
      "cv", "K-fold cross-validation at fixed cluster count and penalty");
  add_data_flags(cmd_cv, c, true);
  add_model_flags(cmd_cv, c);
  cmd_cv->add_option("--k", c.k, "Number of clusters");
  cmd_cv->add_option("--folds", c.folds, "Number of folds");
  cmd_cv->add_option("--out", c.out, "Output directory");

  CLI::App* cmd_predict =
      app.add_subcommand("predict", "Score new samples with a saved model");
  std::string model_path;
  cmd_predict->add_option("--model", model_path, "theta.json from a fit")
      ->required();
  add_data_flags(cmd_predict, c, false);
  cmd_predict->get_option("--features")->required();
  cmd_predict->add_option("--out", c.out, "Output directory");

  CLI::App* cmd_sim =
      app.add_subcommand("simulate", "Generate a synthetic dataset");
  std::string preset = "model2";
  std::int64_t sim_n = 0, sim_q = 0;
  cmd_sim->add_option("--preset", preset,
                      "model1..model4, settingA..settingC, survivalA..survivalD");
  cmd_sim->add_option("--n", sim_n, "Samples (0 = preset default)");
  cmd_sim->add_option("--q", sim_q, "Features (0 = preset default)");
  cmd_sim->add_option("--seed", c.seed, "Master random seed");
  cmd_sim->add_option("--out", c.out, "Output directory");

  CLI::App* cmd_bench = app.add_subcommand(
      "bench", "Replicate study against the screen-and-cluster baseline");
  std::string models = "model2", methods;
  int replicates = 20;
  std::vector<int> gene_counts;
  cmd_bench->add_option("--models", models,
                        "Comma-separated simulation presets");
  cmd_bench->add_option("--methods", methods,
                        "Comma-separated methods (default ogclust,sc; for "
                        "--gene-counts: losses and/or sc)");
  cmd_bench->add_option("--replicates", replicates, "Replicates per cell");
  cmd_bench->add_option("--gene-counts", gene_counts,
                        "Evaluate accuracy at these retained-gene counts")
      ->delimiter(',');
  add_model_flags(cmd_bench, c);
  cmd_bench->add_option("--k-grid", c.k_grid, "Cluster counts for selection")
      ->delimiter(',');
  cmd_bench->add_option("--k", c.k, "Cluster count for gene-count curves");
  cmd_bench->add_option("--folds", c.folds, "CV folds inside the study");
  cmd_bench->add_option("--lambda-points", c.lambda_points,
                        "Size of the automatic penalty grid");
  cmd_bench->add_option("--lambda-ratio", c.lambda_ratio,
                        "Smallest/largest penalty in the automatic grid");
  cmd_bench->add_option("--out", c.out, "Output directory");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitValidation;
  }

  if (cmd_fit->parsed()) {
    Ingested in;
    ingest(c.outcome, c.covariates, c.features, in);
    const og_fit_options opt = fit_options_from(c);
    og_model* model = nullptr;
    check(og_fit(in.handle, c.k, &opt, &model));
    const auto dir = prepare_out_dir(c.out);
    OgString theta, assignments;
    check(og_model_to_json(model, &theta.ptr));
    check(og_model_assignments_csv(model, in.handle, &assignments.ptr));
    write_file(dir / "theta.json", theta.str());
    write_file(dir / "assignments.csv", assignments.str());
    write_run_info(dir, "fit", c.seed);
    double loglik = 0.0;
    int df = 0, converged = 0, iterations = 0;
    check(og_model_info(model, &loglik, &df, &converged, &iterations));
    int64_t selected = 0;
    check(og_model_selected(model, nullptr, 0, &selected));
    std::cout << "fit: n=" << in.n << " K=" << c.k << " loglik=" << loglik
              << " df=" << df << " selected=" << selected
              << (converged ? "" : " (iteration cap reached)") << "\n"
              << "wrote " << (dir / "theta.json").string() << ", "
              << (dir / "assignments.csv").string() << "\n";
    og_model_free(model);
    return 0;
  }

  if (cmd_path->parsed()) {
    Ingested in;
    ingest(c.outcome, c.covariates, c.features, in);
    const og_fit_options opt = fit_options_from(c);
    og_path_options popt;
    og_path_options_init(&popt);
    if (!c.k_grid.empty()) {
      popt.k_grid = c.k_grid.data();
      popt.k_count = int64_t(c.k_grid.size());
    }
    if (!c.lambda_grid.empty()) {
      popt.lambda_grid = c.lambda_grid.data();
      popt.lambda_count = int64_t(c.lambda_grid.size());
    }
    popt.lambda_points = c.lambda_points;
    popt.lambda_ratio = c.lambda_ratio;
    og_model* best = nullptr;
    OgString table;
    check(og_fit_path(in.handle, &opt, &popt, &best, &table.ptr));
    const auto dir = prepare_out_dir(c.out);
    OgString theta, assignments;
    check(og_model_to_json(best, &theta.ptr));
    check(og_model_assignments_csv(best, in.handle, &assignments.ptr));
    write_file(dir / "path.csv", table.str());
    write_file(dir / "theta.json", theta.str());
    write_file(dir / "assignments.csv", assignments.str());
    write_run_info(dir, "path", c.seed);
    int K = 0;
    check(og_model_dims(best, &K, nullptr, nullptr));
    int64_t selected = 0;
    check(og_model_selected(best, nullptr, 0, &selected));
    std::cout << "path: winner K=" << K << " selected=" << selected
              << "; wrote " << (dir / "path.csv").string() << ", "
              << (dir / "theta.json").string() << "\n";
    og_model_free(best);
    return 0;
  }

  if (cmd_cv->parsed()) {
    Ingested in;
    ingest(c.outcome, c.covariates, c.features, in);
    const og_fit_options opt = fit_options_from(c);
    OgString table;
    double rmse = 0.0, r2 = 0.0;
    check(og_cross_validate(in.handle, c.k, &opt, c.folds, &table.ptr, &rmse,
                            &r2));
    const auto dir = prepare_out_dir(c.out);
    write_file(dir / "metrics.csv", table.str());
    write_run_info(dir, "cv", c.seed);
    std::cout << "cv: folds=" << c.folds << " rmse=" << rmse << " r2=" << r2
              << "; wrote " << (dir / "metrics.csv").string() << "\n";
    return 0;
  }

  if (cmd_predict->parsed()) {
    std::ifstream mf(model_path, std::ios::binary);
    if (!mf) die(kExitIo, "cannot open " + model_path);
    std::stringstream buf;
    buf << mf.rdbuf();
    og_model* model = nullptr;
    check(og_model_from_json(buf.str().c_str(), &model));
    int K = 0;
    int64_t p = 0, q = 0;
    check(og_model_dims(model, &K, &p, &q));

    const Table features = read_table(c.features);
    if (int64_t(features.header.size()) - 1 != q)
      die(kExitValidation,
          c.features + ": model expects " + std::to_string(q) +
              " feature columns, found " +
              std::to_string(features.header.size() - 1));
    const int64_t n = int64_t(features.rows.size());
    if (n == 0) die(kExitValidation, c.features + ": no data rows");
    index_by_id(features);  // duplicate check
    std::vector<double> G(size_t(n * q), 0.0);
    std::vector<std::string> ids;
    for (size_t r = 0; r < features.rows.size(); ++r) {
      ids.push_back(features.rows[r][0]);
      for (int64_t j = 0; j < q; ++j)
        G[r * size_t(q) + size_t(j)] = parse_number(features, r, size_t(j + 1));
    }
    std::vector<double> X;
    if (p > 0) {
      if (c.covariates.empty())
        die(kExitValidation,
            "model uses covariates; pass --covariates");
      const Table cov = read_table(c.covariates);
      if (int64_t(cov.header.size()) - 1 != p)
        die(kExitValidation,
            c.covariates + ": model expects " + std::to_string(p) +
                " covariate columns");
      const auto cov_rows = index_by_id(cov);
      X.assign(size_t(n * p), 0.0);
      for (size_t r = 0; r < ids.size(); ++r) {
        const auto it = cov_rows.find(ids[r]);
        if (it == cov_rows.end())
          die(kExitValidation,
              c.covariates + ": missing sample id '" + ids[r] + "'");
        for (int64_t j = 0; j < p; ++j)
          X[r * size_t(p) + size_t(j)] =
              parse_number(cov, it->second, size_t(j + 1));
      }
    }
    std::vector<const char*> idp;
    for (const std::string& s : ids) idp.push_back(s.c_str());
    OgString table;
    check(og_predict_csv(model, G.data(), p > 0 ? X.data() : nullptr,
                         idp.data(), n, &table.ptr));
    const auto dir = prepare_out_dir(c.out);
    write_file(dir / "assignments.csv", table.str());
    write_run_info(dir, "predict", 0);
    std::cout << "predict: scored " << n << " samples; wrote "
              << (dir / "assignments.csv").string() << "\n";
    og_model_free(model);
    return 0;
  }

  if (cmd_sim->parsed()) {
    og_sim_options sopt{};
    sopt.preset = preset.c_str();
    sopt.n = sim_n;
    sopt.q = sim_q;
    sopt.seed = c.seed;
    og_dataset* data = nullptr;
    check(og_simulate(&sopt, &data, nullptr));
    int64_t n = 0, p = 0, q = 0;
    int survival = 0;
    check(og_dataset_dims(data, &n, &p, &q, &survival));
    og_dataset_free(data);
    data = nullptr;
    std::vector<int32_t> z(size_t(n), 0);
    check(og_simulate(&sopt, &data, z.data()));

    std::vector<double> outcome(size_t(n), 0.0);
    std::vector<int32_t> event(size_t(n), 0);
    std::vector<double> X(size_t(n * p), 0.0);
    std::vector<double> G(size_t(n * q), 0.0);
    check(og_dataset_get(data, outcome.data(), event.data(), X.data(),
                         G.data()));
    og_dataset_free(data);

    const auto dir = prepare_out_dir(c.out);
    std::ostringstream oy;
    oy << (survival ? "id,time,event\n" : "id,y\n");
    for (int64_t i = 0; i < n; ++i) {
      oy << 'S' << (i + 1) << ',' << format17(outcome[size_t(i)]);
      if (survival) oy << ',' << event[size_t(i)];
      oy << '\n';
    }
    write_file(dir / "outcome.csv", oy.str());

    std::ostringstream ox;
    ox << "id";
    for (int64_t j = 0; j < p; ++j) ox << ",x" << (j + 1);
    ox << '\n';
    for (int64_t i = 0; i < n; ++i) {
      ox << 'S' << (i + 1);
      for (int64_t j = 0; j < p; ++j)
        ox << ',' << format17(X[size_t(i * p + j)]);
      ox << '\n';
    }
    write_file(dir / "covariates.csv", ox.str());

    std::ostringstream og;
    og << "id";
    for (int64_t j = 0; j < q; ++j) og << ",g" << (j + 1);
    og << '\n';
    for (int64_t i = 0; i < n; ++i) {
      og << 'S' << (i + 1);
      for (int64_t j = 0; j < q; ++j)
        og << ',' << format17(G[size_t(i * q + j)]);
      og << '\n';
    }
    write_file(dir / "features.csv", og.str());

    std::ostringstream oz;
    oz << "id,cluster\n";
    for (int64_t i = 0; i < n; ++i)
      oz << 'S' << (i + 1) << ',' << (z[size_t(i)] + 1) << '\n';
    write_file(dir / "truth.csv", oz.str());
    write_run_info(dir, "simulate", c.seed);
    std::cout << "simulate: " << preset << " n=" << n << " q=" << q
              << "; wrote outcome/covariates/features/truth CSVs in "
              << dir.string() << "\n";
    return 0;
  }

  if (cmd_bench->parsed()) {
    og_bench_options bopt;
    og_bench_options_init(&bopt);
    bopt.fit = fit_options_from(c);
    if (!c.k_grid.empty()) {
      bopt.k_grid = c.k_grid.data();
      bopt.k_count = int64_t(c.k_grid.size());
    }
    bopt.curve_k = c.k;
    bopt.lambda_points = c.lambda_points;
    bopt.lambda_ratio = c.lambda_ratio;
    bopt.folds = c.folds;
    const auto dir = prepare_out_dir(c.out);
    OgString table;
    if (!gene_counts.empty()) {
      const std::string meth = methods.empty() ? "gaussian,sc" : methods;
      check(og_gene_curve(models.c_str(), meth.c_str(), gene_counts.data(),
                          int64_t(gene_counts.size()), replicates, &bopt,
                          &table.ptr));
      write_file(dir / "curve.csv", table.str());
      std::cout << "bench: gene-count curve for " << models << " ("
                << replicates << " replicates); wrote "
                << (dir / "curve.csv").string() << "\n";
    } else {
      const std::string meth = methods.empty() ? "ogclust,sc" : methods;
      check(og_benchmark(models.c_str(), meth.c_str(), replicates, &bopt,
                         &table.ptr));
      write_file(dir / "metrics.csv", table.str());
      std::cout << "bench: " << models << " x {" << meth << "} ("
                << replicates << " replicates); wrote "
                << (dir / "metrics.csv").string() << "\n";
    }
    write_run_info(dir, "bench", c.seed);
    return 0;
  }

  return 0;
}
