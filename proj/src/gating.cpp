#include "gating.hpp"

#include <cmath>
#include <vector>

#include "likelihood.hpp"

namespace ogclust {

MatrixXd gating_logits(const MatrixXd& G, const MatrixXd& gamma) {
  MatrixXd logits = MatrixXd::Zero(G.rows(), gamma.cols());
  for (Index j = 0; j < gamma.rows(); ++j) {
    if ((gamma.row(j).array() != 0.0).any())
      logits.noalias() += G.col(j) * gamma.row(j);
  }
  return logits;
}

namespace {

constexpr double kKktSlack = 1e-9;  // relative+absolute slack in screens

struct Workspace {
  Index n, q, Kf;            // Kf = K-1 free columns
  MatrixXd gamma_free;       // q x Kf working copy
  MatrixXd R;                // n x Kf residuals h - G*gamma
  MatrixXd A;                // q x Kf curvature sum_i W_ik g_ij^2
  const MatrixXd* G;
  const MatrixXd* Wq;

  Workspace(const QuadApprox& qa, const MatrixXd& gamma_init, const MatrixXd& Gm)
      : n(Gm.rows()), q(Gm.cols()),
        Kf(qa.H.cols() - 1),
        gamma_free(gamma_init.leftCols(qa.H.cols() - 1)),
        G(&Gm), Wq(&qa.Wq) {
    R = qa.H.leftCols(Kf) - gating_logits(Gm, gamma_free);
    A.noalias() = Gm.array().square().matrix().transpose() * qa.Wq.leftCols(Kf);
  }

  // Residual-weighted gradient for column k at feature j.
  double grad(Index j, Index k) const {
    return (G->col(j).array() * Wq->col(k).array() * R.col(k).array()).sum();
  }

  // Full gradient matrix G' (Wq .* R), used by the KKT screens.
  MatrixXd full_grad() const {
    return G->transpose() * (Wq->leftCols(Kf).array() * R.array()).matrix();
  }

  void shift(Index j, Index k, double delta) {
    if (delta != 0.0) R.col(k).noalias() -= G->col(j) * delta;
  }

  MatrixXd result(Index K) const {
    MatrixXd out = MatrixXd::Zero(q, K);
    out.leftCols(Kf) = gamma_free;
    return out;
  }
};

}  // namespace

QuadApprox build_quad_approx(const PosteriorWeights& W, const MatrixXd& Pi,
                             const MatrixXd& gamma, const MatrixXd& G) {
  QuadApprox qa;
  const MatrixXd logits = gating_logits(G, gamma);
  qa.Wq = (Pi.array() * (1.0 - Pi.array()))
              .max(kQuadWeightMin)
              .min(kQuadWeightMax);
  qa.H = logits.array() + (W.array() - Pi.array()) / qa.Wq.array();
  return qa;
}

GatingResult cd_lasso_update(const QuadApprox& qa, const MatrixXd& gamma_init,
                             const MatrixXd& G, double lambda, int max_sweeps,
                             double tol, Index unpenalized_row) {
  Workspace ws(qa, gamma_init, G);
  const Index K = qa.H.cols();
  // Active flags per (j, k); start from the warm support.
  std::vector<char> active(static_cast<std::size_t>(ws.q * ws.Kf), 0);
  auto at = [&](Index j, Index k) -> char& {
    return active[static_cast<std::size_t>(k * ws.q + j)];
  };
  for (Index k = 0; k < ws.Kf; ++k)
    for (Index j = 0; j < ws.q; ++j)
      if (ws.gamma_free(j, k) != 0.0 || j == unpenalized_row) at(j, k) = 1;

  GatingResult res;
  res.converged = true;
  bool stable = true;
  while (true) {
    // Sweep the active set to stability.
    double delta = 0.0;
    do {
      delta = 0.0;
      for (Index k = 0; k < ws.Kf; ++k) {
        for (Index j = 0; j < ws.q; ++j) {
          if (!at(j, k)) continue;
          const double a = ws.A(j, k);
          const double old = ws.gamma_free(j, k);
          const double lam_j = j == unpenalized_row ? 0.0 : lambda;
          double next = 0.0;
          if (a > 1e-12) next = soft_threshold(ws.grad(j, k) + a * old, lam_j) / a;
          if (next != old) {
            ws.gamma_free(j, k) = next;
            ws.shift(j, k, next - old);
            delta = std::max(delta, std::abs(next - old));
          }
        }
      }
      ++res.sweeps;
    } while (delta >= tol && res.sweeps < max_sweeps);
    stable = delta < tol;
    if (!stable) break;  // sweep cap exhausted

    // KKT screen over inactive coordinates; converged iff none violate.
    const MatrixXd B = ws.full_grad();
    const double thresh = lambda * (1.0 + kKktSlack) + kKktSlack;
    bool added = false;
    for (Index k = 0; k < ws.Kf; ++k)
      for (Index j = 0; j < ws.q; ++j)
        if (!at(j, k) && std::abs(B(j, k)) > thresh) {
          at(j, k) = 1;
          added = true;
        }
    if (!added) break;
  }
  res.converged = stable;
  res.gamma = ws.result(K);
  return res;
}

namespace {

// Nonzero row update of the blended penalty: minimize over v
//   (1/2) sum_k D_k v_k^2 - B'v + lambda ||v||,  D_k = A_jk + 2 lambda alpha.
// v = 0 iff ||B|| <= lambda; otherwise v_k = B_k / (D_k + lambda/t) with
// t = ||v|| solving ||v(t)|| = t, bracketed on (0, ||B||/min D] and bisected.
Eigen::RowVectorXd solve_row_block(const Eigen::RowVectorXd& B,
                                   const Eigen::RowVectorXd& D, double lambda) {
  const Index Kf = B.size();
  Eigen::RowVectorXd v = Eigen::RowVectorXd::Zero(Kf);
  const double bnorm = B.norm();
  if (bnorm <= lambda || bnorm == 0.0) return v;
  if (lambda == 0.0) {
    for (Index k = 0; k < Kf; ++k) v[k] = D[k] > 1e-12 ? B[k] / D[k] : 0.0;
    return v;
  }
  const double dmin = D.minCoeff();
  if (dmin <= 0.0) return v;  // defensive; D >= 2*lambda*alpha + A >= 0
  double lo = 0.0, hi = bnorm / dmin;
  auto norm_at = [&](double t) {
    double s = 0.0;
    for (Index k = 0; k < Kf; ++k) {
      const double vk = B[k] / (D[k] + lambda / t);
      s += vk * vk;
    }
    return std::sqrt(s);
  };
  for (int it = 0; it < 200 && hi - lo > 1e-15 * hi; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= 0.0) break;
    if (norm_at(mid) > mid)
      lo = mid;
    else
      hi = mid;
  }
  const double t = 0.5 * (lo + hi);
  for (Index k = 0; k < Kf; ++k) v[k] = B[k] / (D[k] + lambda / t);
  return v;
}

}  // namespace

GatingResult group_lasso_ridge_update(const QuadApprox& qa,
                                      const MatrixXd& gamma_init,
                                      const MatrixXd& G, double lambda,
                                      double alpha, int max_sweeps, double tol,
                                      Index unpenalized_row) {
  Workspace ws(qa, gamma_init, G);
  const Index K = qa.H.cols();
  std::vector<char> active(static_cast<std::size_t>(ws.q), 0);
  for (Index j = 0; j < ws.q; ++j)
    if ((ws.gamma_free.row(j).array() != 0.0).any() || j == unpenalized_row)
      active[j] = 1;

  GatingResult res;
  bool stable = true;
  Eigen::RowVectorXd B(ws.Kf), D(ws.Kf);
  while (true) {
    double delta = 0.0;
    do {
      delta = 0.0;
      for (Index j = 0; j < ws.q; ++j) {
        if (!active[j]) continue;
        const double lam_j = j == unpenalized_row ? 0.0 : lambda;
        for (Index k = 0; k < ws.Kf; ++k) {
          B[k] = ws.grad(j, k) + ws.A(j, k) * ws.gamma_free(j, k);
          D[k] = ws.A(j, k) + 2.0 * lam_j * alpha;
        }
        const Eigen::RowVectorXd v = solve_row_block(B, D, lam_j);
        for (Index k = 0; k < ws.Kf; ++k) {
          const double old = ws.gamma_free(j, k);
          if (v[k] != old) {
            ws.gamma_free(j, k) = v[k];
            ws.shift(j, k, v[k] - old);
            delta = std::max(delta, std::abs(v[k] - old));
          }
        }
      }
      ++res.sweeps;
    } while (delta >= tol && res.sweeps < max_sweeps);
    stable = delta < tol;
    if (!stable) break;

    const MatrixXd Bfull = ws.full_grad();
    const double thresh = lambda * (1.0 + kKktSlack) + kKktSlack;
    bool added = false;
    for (Index j = 0; j < ws.q; ++j)
      if (!active[j] && Bfull.row(j).norm() > thresh) {
        active[j] = 1;
        added = true;
      }
    if (!added) break;
  }
  res.converged = stable;
  res.gamma = ws.result(K);
  return res;
}

}  // namespace ogclust
