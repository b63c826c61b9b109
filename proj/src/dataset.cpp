#include <cmath>
#include <set>
#include <sstream>

#include "types.hpp"

namespace ogclust {

namespace {

void check_finite_vector(const VectorXd& v, const char* name,
                         std::vector<Violation>& out) {
  for (Index i = 0; i < v.size(); ++i) {
    if (!std::isfinite(v[i])) {
      std::ostringstream os;
      os << name << " has non-finite value at row " << i + 1;
      out.push_back({os.str()});
    }
  }
}

void check_finite_matrix(const MatrixXd& m, const char* name,
                         std::vector<Violation>& out) {
  for (Index j = 0; j < m.cols(); ++j) {
    for (Index i = 0; i < m.rows(); ++i) {
      if (!std::isfinite(m(i, j))) {
        std::ostringstream os;
        os << name << " has non-finite value at row " << i + 1 << ", column "
           << j + 1;
        out.push_back({os.str()});
      }
    }
  }
}

}  // namespace

std::vector<Violation> validate_dataset(const OmicsDataset& data) {
  std::vector<Violation> out;
  const Index n = data.n();

  if (n < 1) {
    out.push_back({"dataset has no samples"});
    return out;
  }

  const bool has_y = data.y.size() > 0;
  const bool has_time = data.time.size() > 0;
  if (has_y == has_time) {
    out.push_back({has_y
                       ? std::string("dataset has both a continuous outcome and "
                                     "survival columns; exactly one is allowed")
                       : std::string("dataset has no outcome (neither y nor "
                                     "time/event present)")});
  }
  if (has_y && data.y.size() != n) {
    std::ostringstream os;
    os << "outcome length " << data.y.size() << " does not match " << n
       << " samples";
    out.push_back({os.str()});
  }
  if (has_time) {
    if (data.time.size() != n) {
      std::ostringstream os;
      os << "time length " << data.time.size() << " does not match " << n
         << " samples";
      out.push_back({os.str()});
    }
    if (data.event.size() != data.time.size()) {
      std::ostringstream os;
      os << "event length " << data.event.size() << " does not match time length "
         << data.time.size();
      out.push_back({os.str()});
    }
  }
  if (data.X.size() > 0 && data.X.rows() != n) {
    std::ostringstream os;
    os << "covariate matrix has " << data.X.rows() << " rows, expected " << n;
    out.push_back({os.str()});
  }

  if (has_y && data.y.size() == n) check_finite_vector(data.y, "outcome", out);
  if (data.X.rows() == n) check_finite_matrix(data.X, "covariates", out);
  check_finite_matrix(data.G, "features", out);

  if (has_time && data.time.size() == n) {
    for (Index i = 0; i < n; ++i) {
      if (!std::isfinite(data.time[i]) || data.time[i] <= 0.0) {
        std::ostringstream os;
        os << "survival time must be positive and finite; got " << data.time[i]
           << " at row " << i + 1;
        out.push_back({os.str()});
      }
    }
    if (data.event.size() == n) {
      for (Index i = 0; i < n; ++i) {
        if (data.event[i] != 0 && data.event[i] != 1) {
          std::ostringstream os;
          os << "event indicator must be 0 or 1; got " << data.event[i]
             << " at row " << i + 1;
          out.push_back({os.str()});
        }
      }
    }
  }

  if (!data.sample_ids.empty()) {
    if (static_cast<Index>(data.sample_ids.size()) != n) {
      std::ostringstream os;
      os << "sample id list has " << data.sample_ids.size()
         << " entries, expected " << n;
      out.push_back({os.str()});
    } else {
      std::set<std::string> seen;
      for (Index i = 0; i < n; ++i) {
        if (!seen.insert(data.sample_ids[i]).second) {
          std::ostringstream os;
          os << "duplicate sample id '" << data.sample_ids[i] << "' at row "
             << i + 1;
          out.push_back({os.str()});
        }
      }
    }
  }
  if (!data.feature_ids.empty() &&
      static_cast<Index>(data.feature_ids.size()) != data.q()) {
    std::ostringstream os;
    os << "feature id list has " << data.feature_ids.size()
       << " entries, expected " << data.q();
    out.push_back({os.str()});
  }

  return out;
}

void require_valid(const OmicsDataset& data) {
  auto violations = validate_dataset(data);
  if (violations.empty()) return;
  std::ostringstream os;
  os << "dataset failed validation (" << violations.size() << " problem"
     << (violations.size() == 1 ? "" : "s") << "):";
  const std::size_t show = std::min<std::size_t>(violations.size(), 5);
  for (std::size_t i = 0; i < show; ++i) os << "\n  - " << violations[i].message;
  if (violations.size() > show)
    os << "\n  - ... and " << (violations.size() - show) << " more";
  throw Error(StatusCode::validation, os.str());
}

OmicsDataset subset_rows(const OmicsDataset& data, const std::vector<Index>& rows) {
  OmicsDataset out;
  const Index m = static_cast<Index>(rows.size());
  for (Index r : rows) {
    if (r < 0 || r >= data.n())
      throw Error(StatusCode::invalid_argument,
                  "subset_rows: row index out of range");
  }
  if (data.y.size() > 0) {
    out.y.resize(m);
    for (Index i = 0; i < m; ++i) out.y[i] = data.y[rows[i]];
  }
  if (data.time.size() > 0) {
    out.time.resize(m);
    out.event.resize(m);
    for (Index i = 0; i < m; ++i) {
      out.time[i] = data.time[rows[i]];
      out.event[i] = data.event[rows[i]];
    }
  }
  if (data.X.size() > 0) {
    out.X.resize(m, data.X.cols());
    for (Index i = 0; i < m; ++i) out.X.row(i) = data.X.row(rows[i]);
  }
  out.G.resize(m, data.G.cols());
  for (Index i = 0; i < m; ++i) out.G.row(i) = data.G.row(rows[i]);
  if (!data.sample_ids.empty()) {
    out.sample_ids.reserve(rows.size());
    for (Index r : rows) out.sample_ids.push_back(data.sample_ids[r]);
  }
  out.feature_ids = data.feature_ids;
  return out;
}

}  // namespace ogclust
