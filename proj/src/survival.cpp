#include "survival.hpp"

#include <cmath>
#include <sstream>

namespace ogclust {

namespace {

inline double softplus(double w) {
  return w > 0 ? w + std::log1p(std::exp(-w)) : std::log1p(std::exp(w));
}

inline double sigmoid(double w) {
  if (w > 0) return 1.0 / (1.0 + std::exp(-w));
  const double e = std::exp(w);
  return e / (1.0 + e);
}

}  // namespace

double aft_loglik_one(double log_t, int event, double mu, double sigma) {
  const double w = (log_t - mu) / sigma;
  if (event) return w - 2.0 * softplus(w) - std::log(sigma);
  return -softplus(w);
}

MatrixXd aft_log_density_matrix(const ThetaState& theta,
                                const OmicsDataset& data) {
  const Index n = data.n();
  const int K = theta.K();
  VectorXd base = data.time.array().log();
  if (data.p() > 0) base -= data.X * theta.beta;
  MatrixXd out(n, K);
  for (int k = 0; k < K; ++k)
    for (Index i = 0; i < n; ++i)
      out(i, k) =
          aft_loglik_one(base[i], data.event[i], theta.beta0[k], theta.sigma);
  return out;
}

AftObjective aft_objective(const VectorXd& packed, const PosteriorWeights& W,
                           const OmicsDataset& data) {
  const Index n = data.n();
  const Index p = data.p();
  const int K = int(W.cols());
  if (packed.size() != K + p + 1)
    throw Error(StatusCode::invalid_argument,
                "packed AFT parameter vector has the wrong length");
  const double u = packed[K + p];
  const double sigma = std::exp(u);

  VectorXd base = data.time.array().log();
  if (p > 0) base -= data.X * packed.segment(K, p);

  AftObjective out;
  out.grad = VectorXd::Zero(K + p + 1);
  VectorXd row_score = VectorXd::Zero(n);  // sum_k w_ik * dloglik/dw
  for (int k = 0; k < K; ++k) {
    const double beta0k = packed[k];
    for (Index i = 0; i < n; ++i) {
      const double wt = W(i, k);
      const double w = (base[i] - beta0k) / sigma;
      const double s = sigmoid(w);
      const int delta = data.event[i];
      const double ll =
          delta ? (w - 2.0 * softplus(w) - u) : (-softplus(w));
      const double D = delta ? (1.0 - 2.0 * s) : (-s);
      out.value += wt * ll;
      out.grad[k] -= wt * D / sigma;
      row_score[i] += wt * D;
      out.grad[K + p] -= wt * (D * w + double(delta));
    }
  }
  for (Index l = 0; l < p; ++l)
    out.grad[K + l] = -data.X.col(l).dot(row_score) / sigma;
  return out;
}

AftMStep aft_m_step(const PosteriorWeights& W, const OmicsDataset& data,
                    const ThetaState& theta_prev, double grad_tol,
                    int max_iters) {
  if (!data.is_survival())
    throw Error(StatusCode::invalid_argument,
                "the AFT M-step requires survival data");
  const Index p = data.p();
  const int K = int(W.cols());
  for (int k = 0; k < K; ++k) {
    double events = 0.0;
    for (Index i = 0; i < data.n(); ++i)
      events += W(i, k) * double(data.event[i]);
    if (events < 1e-8) {
      std::ostringstream os;
      os << "cluster " << k + 1
         << " carries (effectively) no observed events; the scale is "
            "unidentified";
      throw Error(StatusCode::numeric, os.str());
    }
  }

  const Index dim = K + p + 1;
  VectorXd x(dim);
  x.head(K) = theta_prev.beta0;
  if (p > 0) x.segment(K, p) = theta_prev.beta;
  x[dim - 1] = std::log(std::max(theta_prev.sigma, 1e-8));

  // Minimize the negated objective with BFGS on the inverse Hessian.
  auto eval = [&](const VectorXd& v) {
    AftObjective o = aft_objective(v, W, data);
    o.value = -o.value;
    o.grad = -o.grad;
    return o;
  };
  AftObjective cur = eval(x);
  MatrixXd H = MatrixXd::Identity(dim, dim);

  AftMStep out;
  int it = 0;
  for (; it < max_iters; ++it) {
    if (cur.grad.cwiseAbs().maxCoeff() < grad_tol) {
      out.converged = true;
      break;
    }
    VectorXd d = -(H * cur.grad);
    if (d.dot(cur.grad) >= 0) {  // not a descent direction: reset curvature
      H.setIdentity();
      d = -cur.grad;
    }
    double step = 1.0;
    VectorXd x_new;
    AftObjective next;
    bool accepted = false;
    const double slope = cur.grad.dot(d);
    for (int h = 0; h < 40; ++h) {
      x_new = x + step * d;
      next = eval(x_new);
      if (std::isfinite(next.value) &&
          next.value <= cur.value + 1e-4 * step * slope) {
        accepted = true;
        break;
      }
      step *= 0.5;
    }
    if (!accepted) break;  // no progress possible at machine precision

    const VectorXd s = x_new - x;
    const VectorXd yv = next.grad - cur.grad;
    const double sy = s.dot(yv);
    if (sy > 1e-12) {
      const VectorXd Hy = H * yv;
      const double yHy = yv.dot(Hy);
      H += ((sy + yHy) / (sy * sy)) * (s * s.transpose()) -
           (Hy * s.transpose() + s * Hy.transpose()) / sy;
    }
    x = x_new;
    cur = next;
  }
  out.iterations = it;

  out.beta0 = x.head(K);
  out.beta = p > 0 ? VectorXd(x.segment(K, p)) : VectorXd();
  out.sigma = std::exp(x[dim - 1]);
  return out;
}

}  // namespace ogclust
