#include "cyclic/spectrum.hpp"

#include <algorithm>
#include <cmath>

#include "cyclic/errors.hpp"

namespace cyclic {

SpectrumSet::SpectrumSet(std::vector<Interval> ivs) : intervals(std::move(ivs)) {
  if (intervals.empty()) throw DegenerateInput("spectrum: no intervals");
  for (const Interval& iv : intervals) {
    if (!(iv.lo > 0.0)) throw DegenerateInput("spectrum: interval must be positive");
    if (!(iv.hi >= iv.lo)) throw DegenerateInput("spectrum: interval reversed");
  }
  for (size_t i = 1; i < intervals.size(); ++i) {
    if (intervals[i].lo < intervals[i - 1].hi) {
      throw DegenerateInput("spectrum: intervals overlap or are out of order");
    }
  }
}

bool SpectrumSet::contains(double lambda, double slack) const {
  for (const Interval& iv : intervals) {
    if (lambda >= iv.lo - slack && lambda <= iv.hi + slack) return true;
  }
  return false;
}

double SpectrumSet::length() const {
  double len = 0.0;
  for (const Interval& iv : intervals) len += iv.hi - iv.lo;
  return len;
}

SpectrumSet single_interval(double mu, double L) {
  return SpectrumSet({{mu, L}});
}

SpectrumSet two_intervals(double mu1, double L1, double mu2, double L2) {
  return SpectrumSet({{mu1, L1}, {mu2, L2}});
}

GapParams gap_params(const SpectrumSet& s) {
  if (s.intervals.size() > 2) {
    throw UnsupportedShape("gap_params: more than two intervals");
  }
  const double mu = s.mu();
  const double L = s.L();
  if (!(L > mu)) throw DegenerateInput("gap_params: spectrum is a single point");
  GapParams gp;
  gp.mu = mu;
  gp.L = L;
  gp.kappa = mu / L;
  gp.rho = (L + mu) / (L - mu);
  if (s.intervals.size() == 1) {
    gp.R = 0.0;
  } else {
    const Interval& a = s.intervals[0];
    const Interval& b = s.intervals[1];
    double la = a.hi - a.lo;
    double lb = b.hi - b.lo;
    if (std::abs(la - lb) > 1e-9 * std::max({la, lb, 1e-300})) {
      throw UnequalIntervals("gap_params: intervals must have equal length");
    }
    gp.R = (b.lo - a.hi) / (b.hi - a.lo);
  }
  return gp;
}

SpectrumSet two_interval_fit(std::vector<double> eigs) {
  std::sort(eigs.begin(), eigs.end());
  if (eigs.empty() || !(eigs.front() > 0.0)) {
    throw DegenerateInput("two_interval_fit: need positive eigenvalues");
  }
  if (eigs.back() <= eigs.front()) {
    throw DegenerateInput("two_interval_fit: all eigenvalues coincide");
  }

  size_t split = 0;  // gap between eigs[split] and eigs[split+1]
  double best_gap = -1.0;
  for (size_t i = 0; i + 1 < eigs.size(); ++i) {
    double g = eigs[i + 1] - eigs[i];
    if (g > best_gap) {
      best_gap = g;
      split = i;
    }
  }

  const double mu1 = eigs.front();
  const double L1 = eigs[split];
  const double mu2 = eigs[split + 1];
  const double L2 = eigs.back();
  const double len = std::max(L1 - mu1, L2 - mu2);

  // Widen the shorter cluster toward the gap, then check the pieces are
  // still ordered; otherwise the gap was not worth a two-interval model.
  const double left_hi = mu1 + len;
  const double right_lo = L2 - len;
  if (left_hi >= right_lo) return single_interval(mu1, L2);
  return two_intervals(mu1, left_hi, right_lo, L2);
}

}  // namespace cyclic
