#include <cmath>
#include <vector>

#include "cyclic/errors.hpp"
#include "cyclic/minimax.hpp"
#include "cyclic/poly.hpp"
#include "cyclic/spectrum.hpp"
#include "doctest.h"

using namespace cyclic;

TEST_CASE("solve_sigma_lp recovers the linear single-interval design") {
  SigmaLpResult lp = solve_sigma_lp(single_interval(1, 9), 1, 64);
  CHECK(lp.sigma0 == doctest::Approx(1.25).epsilon(1e-9));
  REQUIRE(lp.sigma.degree() == 1);
  CHECK(lp.sigma.coeffs[0] == doctest::Approx(1.25).epsilon(1e-9));
  CHECK(lp.sigma.coeffs[1] == doctest::Approx(-0.25).epsilon(1e-8));
}

TEST_CASE("solve_sigma_lp two-interval K=2 optimum") {
  SpectrumSet s = two_intervals(1, 2, 8, 9);
  SigmaLpResult lp = solve_sigma_lp(s, 2, 2000);
  CHECK(std::abs(lp.sigma0 - 25.0 / 7.0) <= 1e-4 * (25.0 / 7.0));

  // Endpoint samples are always included, so they must be feasible.
  for (double lambda : {1.0, 2.0, 8.0, 9.0}) {
    CHECK(std::abs(lp.sigma(lambda)) <= 1.0 + 1e-9);
  }

  Poly closed = closed_form_sigma2(s);
  for (int i = 0; i <= 2; ++i) {
    CHECK(std::abs(lp.sigma.coeffs[i] - closed.coeffs[i]) <=
          1e-3 * std::abs(closed.coeffs[i]));
  }
}

TEST_CASE("solve_sigma_lp single-interval K=2 composition value") {
  SigmaLpResult lp = solve_sigma_lp(single_interval(1, 9), 2, 2000);
  CHECK(std::abs(lp.sigma0 - 2.125) <= 1e-4 * 2.125);
}

TEST_CASE("solve_sigma_lp discretization convergence") {
  SpectrumSet s = two_intervals(1, 2, 8, 9);
  double coarse = solve_sigma_lp(s, 2, 1000).sigma0;
  double fine = solve_sigma_lp(s, 2, 2000).sigma0;
  CHECK(std::abs(coarse - fine) <= 1e-4 * fine);
}

TEST_CASE("check_equioscillation certificates") {
  SpectrumSet s19 = single_interval(1, 9);
  Poly sigma1({1.25, -0.25});
  EquioscResult lin = check_equioscillation(sigma1, s19, 1e-8);
  REQUIRE(lin.ok);
  REQUIRE(lin.points.size() >= 2);
  CHECK(lin.points[0].lambda == doctest::Approx(1.0));
  CHECK(lin.points[0].sign == 1);
  CHECK(lin.points[1].lambda == doctest::Approx(9.0));
  CHECK(lin.points[1].sign == -1);

  SpectrumSet s = two_intervals(1, 2, 8, 9);
  EquioscResult quad = check_equioscillation(closed_form_sigma2(s), s, 1e-8);
  REQUIRE(quad.ok);
  CHECK(quad.points.size() >= 3);
  CHECK(quad.points[0].lambda == doctest::Approx(1.0));
  CHECK(quad.points[0].sign == 1);

  // Half-size polynomial never touches +-1.
  EquioscResult half = check_equioscillation(0.5 * sigma1, s19, 1e-8);
  CHECK(!half.ok);
}

TEST_CASE("check_equioscillation on LP output for the certified families") {
  SpectrumSet s2 = two_intervals(1, 2, 8, 9);
  CHECK(check_equioscillation(solve_sigma_lp(single_interval(1, 9), 1, 2000).sigma,
                              single_interval(1, 9), 1e-3)
            .ok);
  CHECK(check_equioscillation(solve_sigma_lp(s2, 2, 2000).sigma, s2, 1e-3).ok);
  Sigma3Family fam = closed_form_sigma3(1, 9, 0.5);
  CHECK(check_equioscillation(solve_sigma_lp(fam.spectrum, 3, 2000).sigma,
                              fam.spectrum, 1e-3)
            .ok);
}

TEST_CASE("check_strong_optimality inclusion test") {
  SpectrumSet s = two_intervals(1, 2, 8, 9);
  CHECK(check_strong_optimality(closed_form_sigma2(s), s));

  Sigma3Family fam = closed_form_sigma3(1, 9, 0.5);
  CHECK(check_strong_optimality(fam.sigma, fam.spectrum));

  // Preimage of the [1,9] linear design is all of [1,9]: too big for [1,5].
  CHECK(!check_strong_optimality(Poly({1.25, -0.25}), single_interval(1, 5)));
}

TEST_CASE("closed_form_sigma2 values") {
  SpectrumSet s = two_intervals(1, 2, 8, 9);
  Poly sigma = closed_form_sigma2(s);
  CHECK(sigma(0.0) == doctest::Approx(25.0 / 7.0).epsilon(1e-14));
  CHECK(sigma(1.0) == doctest::Approx(1.0).epsilon(1e-13));
  CHECK(sigma(2.0) == doctest::Approx(-1.0).epsilon(1e-13));
  CHECK(sigma(8.0) == doctest::Approx(-1.0).epsilon(1e-13));
  CHECK(sigma(9.0) == doctest::Approx(1.0).epsilon(1e-13));

  // Degenerate split of one interval: vertex sits at the split point.
  SpectrumSet split(std::vector<Interval>{{1, 5}, {5, 9}});
  Poly deg = closed_form_sigma2(split);
  CHECK(deg(5.0) == doctest::Approx(-1.0).epsilon(1e-13));
  CHECK(std::abs(deg.derivative()(5.0)) <= 1e-12);

  CHECK_THROWS_AS(closed_form_sigma2(two_intervals(1, 2, 8, 9.5)),
                  UnequalIntervals);
}

TEST_CASE("closed_form_sigma3 family geometry") {
  // R = 0: r1 = 0.75, r2 = 0.25 split the interval at 7.
  Sigma3Family flat = closed_form_sigma3(1, 9, 0.0);
  REQUIRE(flat.spectrum.intervals.size() == 2);
  CHECK(flat.spectrum.intervals[0].lo == doctest::Approx(1.0));
  CHECK(flat.spectrum.intervals[0].hi == doctest::Approx(7.0));
  CHECK(flat.spectrum.intervals[1].lo == doctest::Approx(7.0));
  CHECK(flat.spectrum.intervals[1].hi == doctest::Approx(9.0));

  for (double R : {0.0, 0.3, 0.5, 0.8}) {
    Sigma3Family fam = closed_form_sigma3(1, 9, R);
    double len = 8.0;
    double r1 = (fam.spectrum.intervals[0].hi - 1.0) / len;
    double r2 = (9.0 - fam.spectrum.intervals[1].lo) / len;
    CHECK(r1 == doctest::Approx(2.0 * std::sqrt(r2) - r2).epsilon(1e-12));

    // Construction pins the sign pattern 1, 1, 1, -1 on the four endpoints.
    CHECK(fam.sigma(fam.spectrum.intervals[0].lo) ==
          doctest::Approx(1.0).epsilon(1e-12));
    CHECK(fam.sigma(fam.spectrum.intervals[0].hi) ==
          doctest::Approx(1.0).epsilon(1e-12));
    CHECK(fam.sigma(fam.spectrum.intervals[1].lo) ==
          doctest::Approx(1.0).epsilon(1e-12));
    CHECK(fam.sigma(9.0) == doctest::Approx(-1.0).epsilon(1e-12));
    CHECK(fam.sigma0 == doctest::Approx(fam.sigma(0.0)).epsilon(1e-13));
  }

  CHECK(closed_form_sigma3(1, 9, 0.5).sigma0 ==
        doctest::Approx(5.25).epsilon(1e-13));
}

TEST_CASE("spectra touching zero are rejected at construction") {
  // The LP can never see lo = 0: SpectrumSet itself enforces positivity.
  CHECK_THROWS_AS(SpectrumSet(std::vector<Interval>{{0.0, 9.0}}),
                  DegenerateInput);
}
