#pragma once

#include <vector>

namespace cyclic {

struct Interval {
  double lo;
  double hi;
};

// Union of closed positive intervals, ascending and non-overlapping.
// Touching endpoints (lo_{i+1} == hi_i) are allowed: the R = 0 constructions
// split a single interval at an interior point.
struct SpectrumSet {
  std::vector<Interval> intervals;

  SpectrumSet() = default;
  explicit SpectrumSet(std::vector<Interval> ivs);

  double mu() const { return intervals.front().lo; }
  double L() const { return intervals.back().hi; }
  bool contains(double lambda, double slack = 0.0) const;
  double length() const;  // total measure
};

SpectrumSet single_interval(double mu, double L);
SpectrumSet two_intervals(double mu1, double L1, double mu2, double L2);

// Condition/gap summary of a one- or two-interval spectrum.
// R = (mu2 - L1) / (L2 - mu1) for two intervals, 0 for one.
struct GapParams {
  double mu;
  double L;
  double kappa;
  double rho;  // (L + mu) / (L - mu)
  double R;
};

// Requires one interval, or two of equal length (1e-9 relative tolerance).
GapParams gap_params(const SpectrumSet& s);

// Cover a sorted positive eigenvalue list by two equal-length intervals:
// split at the largest consecutive gap (ties -> leftmost), take the longer
// cluster's span as the common length, widen the shorter cluster toward the
// gap. Falls back to one interval when the widened pieces would overlap.
SpectrumSet two_interval_fit(std::vector<double> eigs);

}  // namespace cyclic
