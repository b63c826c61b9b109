#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "gating.hpp"
#include "likelihood.hpp"
#include "oracle.hpp"
#include "rng.hpp"
#include "support.hpp"

using namespace ogclust;

namespace {

// A random responsibility-weighted quadratic gating subproblem: mixing
// probabilities from a random gating matrix, responsibilities as normalized
// uniforms, working responses/weights from the library's own expansion.
struct Subproblem {
  MatrixXd G;
  MatrixXd gamma0;
  QuadApprox qa;
};

Subproblem random_subproblem(Index n, Index q, Index K, std::uint64_t seed,
                             bool sparse_point = true) {
  Rng rng(seed);
  std::normal_distribution<double> norm(0.0, 1.0);
  std::uniform_real_distribution<double> unit(0.01, 1.0);

  Subproblem sp;
  sp.G.resize(n, q);
  for (Index i = 0; i < sp.G.size(); ++i) sp.G.data()[i] = norm(rng);

  sp.gamma0 = MatrixXd::Zero(q, K);
  for (Index j = 0; j < q; ++j)
    for (Index k = 0; k + 1 < K; ++k)
      if (!sparse_point || unit(rng) > 0.5) sp.gamma0(j, k) = 0.5 * norm(rng);

  MatrixXd W(n, K);
  for (Index i = 0; i < n; ++i) {
    double s = 0.0;
    for (Index k = 0; k < K; ++k) {
      W(i, k) = unit(rng);
      s += W(i, k);
    }
    W.row(i) /= s;
  }
  const MatrixXd Pi = mixing_probs(sp.G, sp.gamma0);
  sp.qa = build_quad_approx(W, Pi, sp.gamma0, sp.G);
  return sp;
}

double grad_at_zero_max(const Subproblem& sp) {
  const MatrixXd g0 = oracle::quad_gradient(
      sp.G, sp.qa.H, sp.qa.Wq, MatrixXd::Zero(sp.G.cols(), sp.qa.H.cols()));
  return g0.leftCols(g0.cols() - 1).cwiseAbs().maxCoeff();
}

}  // namespace

TEST_CASE("working response and weight at simple probability/responsibility pairs") {
  // One sample, one feature g = 0, two clusters, gamma = 0.
  MatrixXd G = MatrixXd::Zero(1, 1);
  MatrixXd gamma = MatrixXd::Zero(1, 2);

  SUBCASE("responsibility equals probability: response 0, weight 1/4") {
    MatrixXd W(1, 2), Pi(1, 2);
    W << 0.5, 0.5;
    Pi << 0.5, 0.5;
    const auto qa = build_quad_approx(W, Pi, gamma, G);
    CHECK(qa.H(0, 0) == doctest::Approx(0.0).epsilon(1e-15));
    CHECK(qa.Wq(0, 0) == doctest::Approx(0.25).epsilon(1e-15));
  }

  SUBCASE("full responsibility at probability 1/2: response 2") {
    MatrixXd W(1, 2), Pi(1, 2);
    W << 1.0, 0.0;
    Pi << 0.5, 0.5;
    const auto qa = build_quad_approx(W, Pi, gamma, G);
    CHECK(qa.H(0, 0) == doctest::Approx(2.0).epsilon(1e-14));
    CHECK(qa.Wq(0, 0) == doctest::Approx(0.25).epsilon(1e-15));
  }

  SUBCASE("saturated probability hits the weight clamp, response stays finite") {
    MatrixXd W(1, 2), Pi(1, 2);
    W << 0.9, 0.1;
    Pi << 1.0, 0.0;
    const auto qa = build_quad_approx(W, Pi, gamma, G);
    CHECK(qa.Wq(0, 0) == doctest::Approx(kQuadWeightMin).epsilon(1e-15));
    CHECK(std::isfinite(qa.H(0, 0)));
  }

  SUBCASE("weights never exceed 1/4") {
    const auto sp = random_subproblem(40, 6, 3, 99);
    CHECK(sp.qa.Wq.maxCoeff() <= kQuadWeightMax + 1e-15);
    CHECK(sp.qa.Wq.minCoeff() >= kQuadWeightMin - 1e-15);
  }
}

TEST_CASE("lasso update shrinks everything to zero above the gradient bound") {
  const auto sp = random_subproblem(30, 5, 3, 1);
  const double lam = grad_at_zero_max(sp) * 1.01;
  const auto res = cd_lasso_update(sp.qa, MatrixXd::Zero(5, 3), sp.G, lam);
  CHECK(res.gamma.cwiseAbs().maxCoeff() == 0.0);
  CHECK(res.converged);
}

TEST_CASE("unpenalized lasso with one feature solves weighted least squares") {
  const auto sp = random_subproblem(25, 1, 2, 2);
  const auto res = cd_lasso_update(sp.qa, MatrixXd::Zero(1, 2), sp.G, 0.0);
  double num = 0.0, den = 0.0;
  for (Index i = 0; i < 25; ++i) {
    num += sp.G(i, 0) * sp.qa.Wq(i, 0) * sp.qa.H(i, 0);
    den += sp.qa.Wq(i, 0) * sp.G(i, 0) * sp.G(i, 0);
  }
  CHECK(res.gamma(0, 0) == doctest::Approx(num / den).epsilon(1e-10));
  CHECK(res.gamma(0, 1) == 0.0);  // anchor column untouched
}

TEST_CASE("crafted lasso instance satisfies the stationarity conditions") {
  const auto sp = random_subproblem(5, 5, 3, 3);
  const double lam = 0.5;
  const auto res = cd_lasso_update(sp.qa, MatrixXd::Zero(5, 3), sp.G, lam,
                                   2000, 1e-12);
  CHECK(oracle::lasso_kkt_residual(sp.G, sp.qa.H, sp.qa.Wq, res.gamma, lam) <
        1e-6);
}

TEST_CASE("lasso stationarity holds across random subproblems and lambdas") {
  for (std::uint64_t s = 0; s < 12; ++s) {
    const auto sp = random_subproblem(20 + Index(s) * 3, 4 + Index(s % 5), 2 + Index(s % 3),
                                      100 + s);
    const double lam = grad_at_zero_max(sp) * (0.05 + 0.08 * double(s % 9));
    const auto res = cd_lasso_update(
        sp.qa, MatrixXd::Zero(sp.G.cols(), sp.qa.H.cols()), sp.G, lam, 5000,
        1e-12);
    CAPTURE(s);
    CHECK(oracle::lasso_kkt_residual(sp.G, sp.qa.H, sp.qa.Wq, res.gamma, lam) <
          1e-6);
    CHECK(res.gamma.col(res.gamma.cols() - 1).cwiseAbs().maxCoeff() == 0.0);
  }
}

TEST_CASE("a row exempted from the lasso penalty ends at exact stationarity") {
  const auto sp = random_subproblem(30, 6, 3, 17);
  const double lam = grad_at_zero_max(sp) * 0.4;
  const auto res = cd_lasso_update(sp.qa, MatrixXd::Zero(6, 3), sp.G, lam,
                                   5000, 1e-12, /*unpenalized_row=*/2);
  const MatrixXd grad =
      oracle::quad_gradient(sp.G, sp.qa.H, sp.qa.Wq, res.gamma);
  // Exempt row: plain zero gradient; all other rows: lasso conditions.
  for (Index k = 0; k + 1 < 3; ++k)
    CHECK(std::abs(grad(2, k)) < 1e-6);
  for (Index j = 0; j < 6; ++j) {
    if (j == 2) continue;
    for (Index k = 0; k + 1 < 3; ++k) {
      const double g = grad(j, k);
      const double v = res.gamma(j, k);
      const double r = v != 0.0 ? std::abs(g + lam * (v > 0 ? 1 : -1))
                                : std::max(0.0, std::abs(g) - lam);
      CHECK(r < 1e-6);
    }
  }
}

TEST_CASE("group update zeroes every row at large lambda") {
  const auto sp = random_subproblem(30, 5, 3, 4);
  const MatrixXd g0 = oracle::quad_gradient(sp.G, sp.qa.H, sp.qa.Wq,
                                            MatrixXd::Zero(5, 3));
  double worst = 0.0;
  for (Index j = 0; j < 5; ++j)
    worst = std::max(worst, g0.row(j).head(2).norm());
  const auto res = group_lasso_ridge_update(sp.qa, MatrixXd::Zero(5, 3), sp.G,
                                            worst * 1.01, 0.5);
  CHECK(res.gamma.cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("group update at lambda 0 reaches the lasso's unpenalized fixpoint") {
  const auto sp = random_subproblem(25, 4, 3, 5);
  const auto a = cd_lasso_update(sp.qa, MatrixXd::Zero(4, 3), sp.G, 0.0, 5000,
                                 1e-12);
  const auto b = group_lasso_ridge_update(sp.qa, MatrixXd::Zero(4, 3), sp.G,
                                          0.0, 0.0, 5000, 1e-12);
  CHECK((a.gamma - b.gamma).cwiseAbs().maxCoeff() < 1e-6);
}

TEST_CASE("crafted group instance satisfies the block stationarity conditions") {
  const auto sp = random_subproblem(6, 6, 2, 6);
  const double lam = grad_at_zero_max(sp) * 0.3;
  const auto res = group_lasso_ridge_update(sp.qa, MatrixXd::Zero(6, 2), sp.G,
                                            lam, 0.5, 5000, 1e-12);
  CHECK(oracle::group_kkt_residual(sp.G, sp.qa.H, sp.qa.Wq, res.gamma, lam,
                                   0.5) < 1e-6);
}

TEST_CASE("group stationarity holds across random subproblems") {
  for (std::uint64_t s = 0; s < 12; ++s) {
    const auto sp = random_subproblem(18 + Index(s) * 4, 3 + Index(s % 6),
                                      2 + Index(s % 3), 200 + s);
    MatrixXd g0 = oracle::quad_gradient(
        sp.G, sp.qa.H, sp.qa.Wq, MatrixXd::Zero(sp.G.cols(), sp.qa.H.cols()));
    double worst = 0.0;
    for (Index j = 0; j < sp.G.cols(); ++j)
      worst = std::max(worst, g0.row(j).head(sp.qa.H.cols() - 1).norm());
    const double lam = worst * (0.05 + 0.08 * double(s % 9));
    const double alpha = (s % 2 == 0) ? 0.5 : 0.2;
    const auto res = group_lasso_ridge_update(
        sp.qa, MatrixXd::Zero(sp.G.cols(), sp.qa.H.cols()), sp.G, lam, alpha,
        5000, 1e-12);
    CAPTURE(s);
    CHECK(oracle::group_kkt_residual(sp.G, sp.qa.H, sp.qa.Wq, res.gamma, lam,
                                     alpha) < 1e-6);
  }
}

TEST_CASE("warm starts land on the same solution as cold starts") {
  const auto sp = random_subproblem(40, 8, 3, 7);
  const double lam = grad_at_zero_max(sp) * 0.2;
  const auto cold = cd_lasso_update(sp.qa, MatrixXd::Zero(8, 3), sp.G, lam,
                                    5000, 1e-12);
  MatrixXd init = sp.gamma0;  // a nonzero, wrong starting point
  const auto warm = cd_lasso_update(sp.qa, init, sp.G, lam, 5000, 1e-12);
  CHECK((cold.gamma - warm.gamma).cwiseAbs().maxCoeff() < 1e-7);
}

TEST_CASE("sparse logits agree with the dense product") {
  Rng rng(8);
  std::normal_distribution<double> norm(0.0, 1.0);
  MatrixXd G(10, 6);
  for (Index i = 0; i < G.size(); ++i) G.data()[i] = norm(rng);
  MatrixXd gamma = MatrixXd::Zero(6, 3);
  gamma(1, 0) = 0.7;
  gamma(4, 1) = -1.2;
  const MatrixXd a = gating_logits(G, gamma);
  const MatrixXd b = G * gamma;
  CHECK((a - b).cwiseAbs().maxCoeff() < 1e-12);
}
