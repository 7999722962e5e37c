#include <algorithm>
#include <cmath>
#include <vector>

#include "cyclic/errors.hpp"
#include "cyclic/poly.hpp"
#include "cyclic/rate.hpp"
#include "cyclic/rng.hpp"
#include "cyclic/spectrum.hpp"
#include "doctest.h"

using namespace cyclic;

namespace {

CycleParams make_cycle(std::vector<double> h, double m) {
  CycleParams p;
  p.h = std::move(h);
  p.m = m;
  return p;
}

CycleParams random_cycle(Rng& rng, int K) {
  CycleParams p;
  p.m = rng.uniform(0.05, 0.95);
  for (int i = 0; i < K; ++i) p.h.push_back(rng.log_uniform(1e-3, 3.0));
  return p;
}

}  // namespace

TEST_CASE("sigma_cycle pinned values") {
  CHECK(sigma_cycle(make_cycle({1.0}, 0.25), 0.0) ==
        doctest::Approx(1.25).epsilon(1e-14));
  CHECK(sigma_cycle(make_cycle({4.0 / 7.0, 1.0 / 7.0}, 1.0 / 7.0), 2.0) ==
        doctest::Approx(-1.0).epsilon(1e-13));
  // sigma(0) is the K-th Chebyshev value of (1+m)/(2 sqrt(m)), independent of h.
  CHECK(sigma_cycle(make_cycle({0.1, 0.2, 0.3}, 0.25), 0.0) ==
        doctest::Approx(4.0625).epsilon(1e-13));
  CHECK(sigma_cycle(make_cycle({0.1, 0.2, 0.3}, 0.25), 0.0) ==
        doctest::Approx(cheb_T(3, 1.25)).epsilon(1e-13));
}

TEST_CASE("sigma_cycle needs positive momentum for K >= 2") {
  CHECK_THROWS_AS(sigma_cycle(make_cycle({0.1, 0.2}, 0.0), 1.0),
                  InvalidMomentum);
}

TEST_CASE("sigma(0) identity over random cycles") {
  Rng rng(2024);
  for (int trial = 0; trial < 500; ++trial) {
    int K = 1 + static_cast<int>(rng.next_below(6));
    CycleParams p = random_cycle(rng, K);
    double expect =
        (1.0 + std::pow(p.m, K)) / (2.0 * std::pow(p.m, 0.5 * K));
    CHECK(std::abs(sigma_cycle(p, 0.0) - expect) <= 1e-10 * expect);
  }
}

TEST_CASE("sigma_cycle cyclic invariance") {
  Rng rng(77);
  for (int trial = 0; trial < 50; ++trial) {
    int K = 2 + static_cast<int>(rng.next_below(5));
    CycleParams p = random_cycle(rng, K);
    double lambda = rng.uniform(0.0, 5.0);
    double base = sigma_cycle(p, lambda);
    CycleParams q = p;
    for (int r = 1; r < K; ++r) {
      std::rotate(q.h.begin(), q.h.begin() + 1, q.h.end());
      CHECK(sigma_cycle(q, lambda) ==
            doctest::Approx(base).epsilon(1e-12));
    }
  }
}

TEST_CASE("K=2 product form") {
  Rng rng(5150);
  for (int trial = 0; trial < 100; ++trial) {
    CycleParams p = random_cycle(rng, 2);
    double lambda = rng.uniform(0.0, 4.0);
    double a = (1.0 + p.m - lambda * p.h[0]) / (2.0 * std::sqrt(p.m));
    double b = (1.0 + p.m - lambda * p.h[1]) / (2.0 * std::sqrt(p.m));
    double expect = 2.0 * a * b - 1.0;
    CHECK(sigma_cycle(p, lambda) ==
          doctest::Approx(expect).epsilon(1e-12));
  }
}

TEST_CASE("sigma_poly matches sigma_cycle") {
  Rng rng(31);
  for (int trial = 0; trial < 30; ++trial) {
    int K = 1 + static_cast<int>(rng.next_below(6));
    CycleParams p = random_cycle(rng, K);
    Poly sp = sigma_poly(p);
    REQUIRE(sp.degree() == K);
    for (int k = 0; k < 5; ++k) {
      double lambda = rng.uniform(0.0, 6.0);
      double direct = sigma_cycle(p, lambda);
      CHECK(std::abs(sp(lambda) - direct) <= 1e-9 * (1.0 + std::abs(direct)));
    }
  }
}

TEST_CASE("sigma_sup exact candidate sets") {
  // Tuned single-interval two-cycle equioscillates at the endpoints.
  SigmaSup a = sigma_sup(make_cycle({0.25, 0.25}, 0.25), single_interval(1, 9));
  CHECK(a.sigma_star == doctest::Approx(1.0).epsilon(1e-12));

  SigmaSup b = sigma_sup(make_cycle({4.0 / 7.0, 1.0 / 7.0}, 1.0 / 7.0),
                         two_intervals(1, 2, 8, 9));
  CHECK(b.sigma_star == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(b.witness_lambda == doctest::Approx(1.0).epsilon(1e-9));

  // K=1 with h = 0.2 on [1,9]: |sigma| peaks at the left endpoint,
  // (1.25 - 0.2) / (2 * 0.5) = 1.05.
  SigmaSup c = sigma_sup(make_cycle({0.2}, 0.25), single_interval(1, 9));
  CHECK(c.sigma_star == doctest::Approx(1.05).epsilon(1e-13));
  CHECK(c.witness_lambda == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(std::abs(sigma_cycle(make_cycle({0.2}, 0.25), 9.0) - (-0.55)) <= 1e-13);
}

TEST_CASE("sigma_sup interior stationary points for K >= 3") {
  Rng rng(909);
  SpectrumSet s = two_intervals(1, 2, 8, 9);
  for (int trial = 0; trial < 20; ++trial) {
    CycleParams p = random_cycle(rng, 3 + static_cast<int>(rng.next_below(3)));
    SigmaSup sup = sigma_sup(p, s);
    // Dense-grid lower bound can never beat the reported sup.
    double dense = 0.0;
    for (int k = 0; k <= 4000; ++k) {
      double lambda = 1.0 + 8.0 * k / 4000.0;
      if (!s.contains(lambda, 1e-12)) continue;
      dense = std::max(dense, std::abs(sigma_cycle(p, lambda)));
    }
    CHECK(sup.sigma_star >= dense - 1e-7 * (1.0 + dense));
    CHECK(std::abs(sigma_cycle(p, sup.witness_lambda)) ==
          doctest::Approx(sup.sigma_star).epsilon(1e-9));
  }
}

TEST_CASE("rate_factor regimes") {
  RateReport rob = rate_factor(0.9, 0.3, 2);
  CHECK(rob.regime == Regime::Robust);
  CHECK(rob.rate == doctest::Approx(std::sqrt(0.3)).epsilon(1e-14));

  // Divergence boundary for K=2 at m=0.25 is (1+m^2)/(2m) = 2.125, where the
  // factor evaluates to exactly 1.
  RateReport bdry = rate_factor(2.125, 0.25, 2);
  CHECK(bdry.regime == Regime::Divergent);
  CHECK(bdry.rate == doctest::Approx(1.0).epsilon(1e-12));

  RateReport conv = rate_factor(1.5, 0.25, 2);
  CHECK(conv.regime == Regime::Convergent);
  CHECK(conv.rate ==
        doctest::Approx(0.5 * std::sqrt(1.5 + std::sqrt(1.25))).epsilon(1e-12));
  CHECK(conv.rate == doctest::Approx(0.8090169943749475).epsilon(1e-12));
}

TEST_CASE("rate_factor continuity at sigma* = 1") {
  for (double m : {0.1, 0.25, 0.6}) {
    for (int K : {1, 2, 3}) {
      RateReport at = rate_factor(1.0, m, K);
      RateReport below = rate_factor(1.0 - 1e-14, m, K);
      RateReport above = rate_factor(1.0 + 1e-14, m, K);
      CHECK(at.rate == doctest::Approx(std::sqrt(m)).epsilon(1e-12));
      CHECK(below.rate == doctest::Approx(std::sqrt(m)).epsilon(1e-12));
      CHECK(above.rate == doctest::Approx(std::sqrt(m)).epsilon(1e-10));
    }
  }
}

TEST_CASE("rate_report handles plain gradient descent") {
  RateReport gd =
      rate_report(make_cycle({0.2}, 0.0), single_interval(1, 9));
  CHECK(gd.rate == doctest::Approx(0.8).epsilon(1e-14));
}

TEST_CASE("validate_cycle rejects malformed parameters") {
  CHECK_THROWS_AS(validate_cycle(make_cycle({}, 0.2)), ValidationError);
  CHECK_THROWS_AS(validate_cycle(make_cycle({0.1, -0.2}, 0.2)),
                  ValidationError);
  CHECK_THROWS_AS(validate_cycle(make_cycle({0.1}, 1.0)), InvalidMomentum);
  CHECK_THROWS_AS(validate_cycle(make_cycle({0.1}, -0.1)), InvalidMomentum);
}

TEST_CASE("optimal_rate_K2 closed forms") {
  GapParams gapped = gap_params(two_intervals(1, 2, 8, 9));
  CHECK(optimal_rate_K2(gapped).rate ==
        doctest::Approx(1.0 / std::sqrt(7.0)).epsilon(1e-14));

  GapParams flat = gap_params(single_interval(1, 9));
  CHECK(optimal_rate_K2(flat).rate == doctest::Approx(0.5).epsilon(1e-14));

  // r_2 = rate^2 (1 + 2 sqrt((rho^2-1)/(rho^2-R^2))) at R=0: 0.25 (1 + 1.2).
  OptimalK2 with_bound = optimal_rate_K2(flat, 2);
  CHECK(with_bound.bound == doctest::Approx(0.55).epsilon(1e-13));
}

TEST_CASE("optimal_rate_K2 decreasing in R, PHB at R=0") {
  double rho = 1.25;
  double prev = 1.0;
  for (int i = 0; i <= 9; ++i) {
    GapParams gp;
    gp.rho = rho;
    gp.R = 0.1 * i;
    gp.kappa = (rho - 1.0) / (rho + 1.0);
    gp.mu = gp.kappa;
    gp.L = 1.0;
    double rate = optimal_rate_K2(gp).rate;
    CHECK(rate < prev);
    prev = rate;
    if (i == 0) {
      double sk = std::sqrt(gp.kappa);
      CHECK(rate == doctest::Approx((1.0 - sk) / (1.0 + sk)).epsilon(1e-12));
    }
  }
}

TEST_CASE("asymptotic_expansion leading orders") {
  CHECK(asymptotic_expansion(0.6, 1e-6, 2) ==
        doctest::Approx(0.9975).epsilon(1e-12));
  CHECK(asymptotic_expansion(0.0, 1e-6, 2) ==
        doctest::Approx(0.998).epsilon(1e-12));
  CHECK(asymptotic_expansion(0.6, 1e-6, 3) ==
        doctest::Approx(1.0 - 2e-3 * std::sqrt(0.96 / 0.64)).epsilon(1e-12));
}
