#include <cmath>
#include <vector>

#include "cyclic/errors.hpp"
#include "cyclic/poly.hpp"
#include "cyclic/problems.hpp"
#include "cyclic/rate.hpp"
#include "cyclic/rng.hpp"
#include "cyclic/solvers.hpp"
#include "cyclic/spectrum.hpp"
#include "cyclic/tuning.hpp"
#include "doctest.h"

using namespace cyclic;

TEST_CASE("run_hbk one-step exact solve") {
  ObjectiveInstance obj = make_diag_quadratic({1.0}, 3);
  Vector x0 = {(*obj.x_star())[0] + 3.0};
  CycleParams p;
  p.h = {1.0};
  p.m = 0.0;
  RunTrace tr = run_hbk(obj, p, x0, 1);
  REQUIRE(tr.metric.size() == 2);
  CHECK(tr.metric[0] == doctest::Approx(3.0).epsilon(1e-14));
  CHECK(tr.metric[1] <= 1e-14);
}

TEST_CASE("run_hbk matches the scalar residual recurrence") {
  // On a one-eigenvalue quadratic the iterate error is P_t(lambda) e_0 with
  // P_0 = 1, P_1 = 1 - h_0 lambda / (1+m),
  // P_{t+1} = (1 + m - h_{t mod K} lambda) P_t - m P_{t-1}.
  double lambda = 1.7;
  ObjectiveInstance obj = make_diag_quadratic({lambda}, 5);
  Vector x0 = {(*obj.x_star())[0] + 2.0};
  CycleParams p = tune_K2(single_interval(1, 3));
  RunTrace tr = run_hbk(obj, p, x0, 50);

  double prev = 1.0;
  double cur = 1.0 - p.h[0] * lambda / (1.0 + p.m);
  CHECK(tr.metric[1] / tr.metric[0] ==
        doctest::Approx(std::abs(cur)).epsilon(1e-12));
  for (int t = 1; t < 50; ++t) {
    double next = (1.0 + p.m - p.h[t % 2] * lambda) * cur - p.m * prev;
    prev = cur;
    cur = next;
    double measured = tr.metric[t + 1] / tr.metric[0];
    CHECK(std::abs(measured - std::abs(cur)) <=
          1e-10 * (1.0 + std::abs(cur)));
  }
}

TEST_CASE("run_hbk respects the even-step envelope") {
  // Worst-case two-cycle bound at t=2: m (1 + 2 sqrt((rho^2-1)/(rho^2-R^2)))
  // = (1/7)(1 + 2 * 0.75) = 5/14 on the gapped reference spectrum.
  SpectrumSet s = two_intervals(1, 2, 8, 9);
  CycleParams p = tune_K2(s);
  GapParams gp = gap_params(s);
  ObjectiveInstance obj = make_diag_quadratic({1, 2, 8, 9}, 17);
  Rng rng(31);
  Vector x0 = *obj.x_star();
  double nrm = 0.0;
  Vector dir(4);
  for (auto& v : dir) v = rng.normal();
  for (double v : dir) nrm += v * v;
  nrm = std::sqrt(nrm);
  for (int i = 0; i < 4; ++i) x0[i] += dir[i] / nrm;

  RunTrace tr = run_hbk(obj, p, x0, 20);
  for (int t = 2; t <= 20; t += 2) {
    double bound = optimal_rate_K2(gp, t).bound;
    CHECK(tr.metric[t] / tr.metric[0] <= bound + 1e-9);
  }
  CHECK(optimal_rate_K2(gp, 2).bound ==
        doctest::Approx(5.0 / 14.0).epsilon(1e-13));
}

TEST_CASE("run_hbk flags divergence") {
  // h = 3/8 on both steps puts sigma* past the divergence threshold 25/7.
  CycleParams p;
  p.h = {3.0 / 8.0, 3.0 / 8.0};
  p.m = 1.0 / 7.0;
  SpectrumSet s = two_intervals(1, 2, 8, 9);
  CHECK(rate_report(p, s).regime == Regime::Divergent);

  ObjectiveInstance obj = make_diag_quadratic({1, 2, 8, 9}, 23);
  Vector x0 = *obj.x_star();
  x0[3] += 1.0;
  RunTrace tr = run_hbk(obj, p, x0, 500);
  CHECK(tr.divergent);
  CHECK(tr.metric.size() < 501);
}

TEST_CASE("chebyshev semi-iterative weight and bound") {
  // One-dimensional run exposes omega_1 through the third iterate:
  // e_2 = e_0 + omega_1 ((1 - 0.2 lambda) e_1 - e_0) at kappa = 1/9.
  ObjectiveInstance one = make_diag_quadratic({1.0}, 3);
  Vector x0 = {(*one.x_star())[0] + 3.0};
  RunTrace tr = run_cheby_semi_iterative(one, 1.0, 9.0, x0, 2);
  CHECK(tr.metric[1] == doctest::Approx(2.4).epsilon(1e-13));
  double omega1 = (3.0 - tr.metric[2]) / 1.08;
  CHECK(omega1 == doctest::Approx(1.0 / 0.68).epsilon(1e-12));

  ObjectiveInstance mix = make_diag_quadratic({1.0, 9.0}, 4);
  Vector y0 = *mix.x_star();
  y0[0] += 1.0;
  y0[1] += 1.0;
  RunTrace tm = run_cheby_semi_iterative(mix, 1.0, 9.0, y0, 12);
  for (int t = 1; t <= 12; ++t) {
    CHECK(tm.metric[t] <= tm.metric[0] / cheb_T(t, 1.25) + 1e-12);
  }
}

TEST_CASE("cheby schedules require quadratics") {
  Matrix A = make_spiked_covariance(6, 20, 1, 5.0, 2);
  auto labels = make_sign_labels(A, 3);
  ObjectiveInstance lg = make_logistic(A, labels, 1e-3);
  Vector x0(6, 0.0);
  CHECK_THROWS_AS(run_cheby_semi_iterative(lg, 1, 9, x0, 5), NotQuadratic);
  CHECK_THROWS_AS(
      run_cyclic_cheby2(lg, two_intervals(1, 2, 8, 9), x0, 5), NotQuadratic);
}

TEST_CASE("two-phase chebyshev schedule hits the degree-1 composite ratio") {
  // After one full cycle the residual polynomial is T_1(sigma)/T_1(sigma(0));
  // on the eigenvalue 2 that is |-1| / (25/7) = 7/25.
  ObjectiveInstance obj = make_diag_quadratic({2.0}, 9);
  Vector x0 = {(*obj.x_star())[0] + 1.0};
  SpectrumSet s = two_intervals(1, 2, 8, 9);
  RunTrace tr = run_cyclic_cheby2(obj, s, x0, 2);
  CHECK(tr.metric[2] / tr.metric[0] ==
        doctest::Approx(7.0 / 25.0).epsilon(1e-12));

  CHECK_THROWS_AS(
      run_cyclic_cheby2(obj, two_intervals(1, 2, 8, 9.5), x0, 2),
      UnequalIntervals);
}

TEST_CASE("two-phase chebyshev reaches the tuned asymptotic rate") {
  ObjectiveInstance obj = make_diag_quadratic({1, 2, 8, 9}, 29);
  // A unit offset reaches the roundoff floor near x* by t ~ 40; starting far
  // out keeps the decay clean across the whole fit window (the method is
  // linear in the error, so the rate does not depend on the scale).
  Vector x0 = *obj.x_star();
  for (auto& v : x0) v += 1e120;
  SpectrumSet s = two_intervals(1, 2, 8, 9);
  RunTrace tr = run_cyclic_cheby2(obj, s, x0, 600);
  double emp = empirical_rate(tr, 60);
  CHECK(std::abs(emp - 1.0 / std::sqrt(7.0)) <= 0.02);
}

TEST_CASE("empirical_rate on synthetic traces") {
  RunTrace geo;
  for (int t = 0; t <= 60; ++t) geo.metric.push_back(std::pow(0.5, t));
  CHECK(empirical_rate(geo, 0) == doctest::Approx(0.5).epsilon(1e-12));

  RunTrace flat;
  for (int t = 0; t <= 60; ++t) flat.metric.push_back(3.0);
  CHECK(empirical_rate(flat, 0) == doctest::Approx(1.0).epsilon(1e-12));

  RunTrace tiny;
  for (int t = 0; t <= 8; ++t) tiny.metric.push_back(std::pow(0.5, t));
  CHECK_THROWS_AS(empirical_rate(tiny, 0), InsufficientData);
}
