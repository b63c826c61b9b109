#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "em.hpp"
#include "likelihood.hpp"
#include "oracle.hpp"
#include "rng.hpp"
#include "support.hpp"
#include "survival.hpp"

using namespace ogclust;

namespace {

// A censored log-logistic two-cluster instance: log t = beta0_z + sigma * W
// with W standard logistic, administrative censoring at `followup`.
support::Instance survival_instance(Index n, int K, double delta,
                                    double sigma, double followup,
                                    std::uint64_t seed) {
  Rng rng(seed);
  std::normal_distribution<double> norm(0.0, 1.0);
  std::uniform_real_distribution<double> unit(1e-12, 1.0 - 1e-12);

  support::Instance inst;
  MatrixXd G(n, 4);
  for (Index i = 0; i < G.size(); ++i) G.data()[i] = norm(rng);
  inst.z.resize(size_t(n));
  VectorXd t(n);
  VectorXi ev(n);
  for (Index i = 0; i < n; ++i) {
    const int zi = std::min<int>(K - 1, int(unit(rng) * K));
    inst.z[size_t(i)] = zi;
    if (zi < 3) G(i, zi) += 2.0;
    const double u = unit(rng);
    const double w = std::log(u / (1.0 - u));
    const double lt = 1.0 + delta * zi + sigma * w;
    const double ti = std::exp(lt);
    ev[i] = ti <= followup ? 1 : 0;
    t[i] = ev[i] ? ti : followup;
  }
  inst.data = support::survival(t, ev, MatrixXd(n, 0), G);
  return inst;
}

}  // namespace

TEST_CASE("log-logistic contributions at reference points") {
  // Censored at the location: survivor = 1/2.
  CHECK(aft_loglik_one(0.0, 0, 0.0, 1.0) ==
        doctest::Approx(std::log(0.5)).epsilon(1e-14));
  // Event at the location with unit scale: density of log t = 1/4.
  CHECK(aft_loglik_one(0.0, 1, 0.0, 1.0) ==
        doctest::Approx(std::log(0.25)).epsilon(1e-14));
  // Event two scaled units above the location, scale 1/2.
  CHECK(aft_loglik_one(1.0, 1, 0.0, 0.5) ==
        doctest::Approx(oracle::aft_loglik_one(1.0, 1, 0.0, 0.5))
            .epsilon(1e-14));
  CHECK(oracle::aft_loglik_one(1.0, 1, 0.0, 0.5) ==
        doctest::Approx(2.0 - 2.0 * std::log1p(std::exp(2.0)) -
                        std::log(0.5))
            .epsilon(1e-14));
  // Extreme standardized residuals stay finite through the softplus form.
  CHECK(std::isfinite(aft_loglik_one(500.0, 1, 0.0, 1.0)));
  CHECK(std::isfinite(aft_loglik_one(-500.0, 0, 0.0, 1.0)));
}

TEST_CASE("the density matrix agrees with per-entry evaluation") {
  const auto inst = survival_instance(12, 2, 1.0, 0.5, 40.0, 3);
  VectorXd beta0(2);
  beta0 << 0.5, 1.5;
  auto theta = support::theta_of(beta0, VectorXd(0), MatrixXd::Zero(4, 2), 1.0);
  theta.sigma = 0.7;
  const MatrixXd D = aft_log_density_matrix(theta, inst.data);
  for (Index i = 0; i < 12; ++i)
    for (Index k = 0; k < 2; ++k)
      CHECK(D(i, k) ==
            doctest::Approx(oracle::aft_loglik_one(
                                std::log(inst.data.time[i]),
                                inst.data.event[i], beta0[k], 0.7))
                .epsilon(1e-13));
}

TEST_CASE("analytic gradients match central differences at random points") {
  Rng rng(7);
  std::normal_distribution<double> norm(0.0, 1.0);
  std::uniform_real_distribution<double> unit(0.05, 0.95);
  const auto base = survival_instance(25, 2, 1.0, 0.5, 30.0, 11);
  auto data = base.data;
  MatrixXd X(25, 2);
  for (Index i = 0; i < X.size(); ++i) X.data()[i] = norm(rng);
  data.X = X;

  MatrixXd W(25, 2);
  for (Index i = 0; i < 25; ++i) {
    W(i, 0) = unit(rng);
    W(i, 1) = 1.0 - W(i, 0);
  }

  for (int t = 0; t < 25; ++t) {
    VectorXd packed(2 + 2 + 1);
    for (Index d = 0; d < 4; ++d) packed[d] = norm(rng);
    packed[4] = 0.4 * norm(rng);  // log sigma
    const auto obj = aft_objective(packed, W, data);
    CHECK(obj.value ==
          doctest::Approx(oracle::aft_objective_value(packed, W, data))
              .epsilon(1e-11));
    const VectorXd fd = oracle::central_fd_gradient(packed, W, data);
    CAPTURE(t);
    for (Index d = 0; d < 5; ++d) {
      const double scale = std::max(1.0, std::abs(fd[d]));
      CHECK(std::abs(obj.grad[d] - fd[d]) / scale < 1e-5);
    }
  }
}

TEST_CASE("the weighted score vanishes at the fitted optimum") {
  auto inst = survival_instance(60, 1, 0.0, 0.6, 1e9, 5);  // no censoring
  REQUIRE(inst.data.event.sum() == 60);
  const auto prev = support::theta_of(VectorXd::Zero(1), VectorXd(0),
                                      MatrixXd::Zero(4, 1), 1.0);
  const auto fit = aft_m_step(MatrixXd::Ones(60, 1), inst.data, prev);
  CHECK(fit.converged);
  VectorXd packed(2);
  packed << fit.beta0[0], std::log(fit.sigma);
  const auto obj = aft_objective(packed, MatrixXd::Ones(60, 1), inst.data);
  CHECK(obj.grad.cwiseAbs().maxCoeff() < 1e-6);
}

TEST_CASE("doubling every time shifts the locations by ln 2") {
  auto inst = survival_instance(80, 2, 1.2, 0.5, 50.0, 9);
  MatrixXd W(80, 2);
  Rng rng(10);
  std::uniform_real_distribution<double> unit(0.2, 0.8);
  for (Index i = 0; i < 80; ++i) {
    W(i, 0) = unit(rng);
    W(i, 1) = 1.0 - W(i, 0);
  }
  VectorXd beta0(2);
  beta0 << 0.5, 2.0;
  const auto prev =
      support::theta_of(beta0, VectorXd(0), MatrixXd::Zero(4, 2), 0.6);

  const auto a = aft_m_step(W, inst.data, prev);
  auto doubled = inst.data;
  doubled.time *= 2.0;
  auto prev2 = prev;
  prev2.beta0.array() += std::log(2.0);
  const auto b = aft_m_step(W, doubled, prev2);

  CHECK((b.beta0 - a.beta0).cwiseAbs().maxCoeff() ==
        doctest::Approx(std::log(2.0)).epsilon(1e-6));
  CHECK(b.sigma == doctest::Approx(a.sigma).epsilon(1e-6));
}

TEST_CASE("the fitted objective reaches a dense location-scale grid's best") {
  auto inst = survival_instance(40, 1, 0.0, 0.5, 25.0, 21);
  const MatrixXd W = MatrixXd::Ones(40, 1);
  const auto prev = support::theta_of(VectorXd::Zero(1), VectorXd(0),
                                      MatrixXd::Zero(4, 1), 1.0);
  const auto fit = aft_m_step(W, inst.data, prev);
  VectorXd packed(2);
  packed << fit.beta0[0], std::log(fit.sigma);
  const double achieved = aft_objective(packed, W, inst.data).value;

  // Refining grid over (beta0, sigma).
  double lo_b = -2.0, hi_b = 4.0, lo_s = 0.05, hi_s = 3.0, best = -1e300;
  for (int pass = 0; pass < 4; ++pass) {
    const double sb = (hi_b - lo_b) / 24.0, ss = (hi_s - lo_s) / 24.0;
    double arg_b = lo_b, arg_s = lo_s;
    for (int ib = 0; ib <= 24; ++ib)
      for (int is = 0; is <= 24; ++is) {
        VectorXd pt(2);
        pt << lo_b + sb * ib, std::log(lo_s + ss * is);
        const double v = oracle::aft_objective_value(pt, W, inst.data);
        if (v > best) {
          best = v;
          arg_b = lo_b + sb * ib;
          arg_s = lo_s + ss * is;
        }
      }
    lo_b = arg_b - 1.5 * sb;
    hi_b = arg_b + 1.5 * sb;
    lo_s = std::max(0.01, arg_s - 1.5 * ss);
    hi_s = arg_s + 1.5 * ss;
  }
  CHECK(achieved >= best - 1e-3);
}

TEST_CASE("a cluster with no observed events is a numeric error") {
  auto inst = survival_instance(30, 2, 1.0, 0.5, 30.0, 31);
  inst.data.event.setZero();  // everyone censored
  MatrixXd W = MatrixXd::Constant(30, 2, 0.5);
  const auto prev = support::theta_of(VectorXd::Zero(2), VectorXd(0),
                                      MatrixXd::Zero(4, 2), 1.0);
  CHECK_THROWS_AS(aft_m_step(W, inst.data, prev), Error);
}

TEST_CASE("full survival fits converge with a monotone trace") {
  const auto inst = survival_instance(120, 2, 2.0, 0.5, 60.0, 41);
  PenaltySpec pen{PenaltyKind::group_lasso_ridge, 0.5, 0.5};
  FitControls c;
  c.max_em_iters = 200;
  c.em_tol = 1e-7;
  c.n_restarts = 2;
  c.rng_seed = 17;
  const auto fit =
      ogclust::fit(inst.data, 2, pen, LossSpec::aft(), c);
  CHECK(std::isfinite(fit.loglik));
  for (size_t t = 1; t < fit.objective_trace.size(); ++t)
    CHECK(fit.objective_trace[t] >= fit.objective_trace[t - 1] - 1e-6);

  // The two fitted log-time locations straddle the generating separation.
  CHECK(fit.theta.beta0[1] - fit.theta.beta0[0] > 0.8);

  // Outcome-informed labels recover the partition far better than chance.
  const MatrixXd R = responsibilities(fit, inst.data);
  std::vector<int> lab(120);
  for (Index i = 0; i < 120; ++i) {
    Index arg = 0;
    R.row(i).maxCoeff(&arg);
    lab[size_t(i)] = int(arg);
  }
  CHECK(oracle::ari(lab, inst.z) > 0.5);
}
