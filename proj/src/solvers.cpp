#include "cyclic/solvers.hpp"

#include <algorithm>
#include <cmath>

#include "cyclic/errors.hpp"

namespace cyclic {

namespace {

double run_metric(const ObjectiveInstance& obj, const Vector& x) {
  if (obj.x_star().has_value()) {
    Vector d = x;
    axpy(-1.0, *obj.x_star(), d);
    return norm2(d);
  }
  return norm2(obj.gradient(x));
}

// Shared iteration driver: the schedule supplies (h_t, momentum_t) per step.
template <typename Schedule>
RunTrace drive(const ObjectiveInstance& obj, const Vector& x0, int T,
               double first_step, Schedule schedule) {
  RunTrace trace;
  trace.distance_metric = obj.x_star().has_value();

  Vector x_prev = x0;
  Vector x = x0;
  trace.metric.push_back(run_metric(obj, x));
  const double abort_level =
      1e12 * (trace.metric.front() + 1e-300);  // divergence cut-off

  if (T >= 1) {
    Vector g = obj.gradient(x0);
    Vector x1 = x0;
    axpy(-first_step, g, x1);
    x_prev = x0;
    x = std::move(x1);
    trace.metric.push_back(run_metric(obj, x));
  }

  for (int t = 1; t < T; ++t) {
    auto [h, mom] = schedule(t);
    Vector g = obj.gradient(x);
    Vector x_next = x;
    axpy(-h, g, x_next);
    for (size_t i = 0; i < x_next.size(); ++i) {
      x_next[i] += mom * (x[i] - x_prev[i]);
    }
    x_prev = std::move(x);
    x = std::move(x_next);
    double metric = run_metric(obj, x);
    trace.metric.push_back(metric);
    if (!std::isfinite(metric) || metric > abort_level) {
      trace.divergent = true;
      break;
    }
  }
  return trace;
}

}  // namespace

RunTrace run_hbk(const ObjectiveInstance& obj, const CycleParams& p,
                 const Vector& x0, int T) {
  validate_cycle(p);
  if (p.m == 0.0 && p.K() != 1) {
    throw InvalidMomentum("run_hbk: m = 0 requires K = 1");
  }
  if (static_cast<int>(x0.size()) != obj.dim()) {
    throw DegenerateInput("run_hbk: x0 dimension mismatch");
  }
  const int K = p.K();
  RunTrace trace = drive(obj, x0, T, p.h[0] / (1.0 + p.m), [&](int t) {
    return std::pair<double, double>(p.h[t % K], p.m);
  });
  trace.params = p;
  return trace;
}

RunTrace run_cheby_semi_iterative(const ObjectiveInstance& obj, double mu,
                                  double L, const Vector& x0, int T) {
  if (!obj.is_quadratic()) {
    throw NotQuadratic("cheby schedule needs a quadratic objective");
  }
  if (!(mu > 0.0) || !(L > mu)) throw DegenerateInput("cheby: need 0 < mu < L");
  const double kappa = mu / L;
  const double q = (1.0 - kappa) / (1.0 + kappa);
  const double base = 2.0 / (L + mu);

  double omega = 2.0;
  RunTrace trace = drive(obj, x0, T, base, [&, q, base](int) mutable {
    omega = 1.0 / (1.0 - 0.25 * q * q * omega);
    return std::pair<double, double>(base * omega, omega - 1.0);
  });
  trace.schedule = "cheby";
  return trace;
}

RunTrace run_cyclic_cheby2(const ObjectiveInstance& obj, const SpectrumSet& s,
                           const Vector& x0, int T) {
  if (!obj.is_quadratic()) {
    throw NotQuadratic("cheby2 schedule needs a quadratic objective");
  }
  GapParams gp = gap_params(s);
  double L1, mu2;
  if (s.intervals.size() == 1) {
    L1 = mu2 = 0.5 * (gp.mu + gp.L);
  } else {
    L1 = s.intervals[0].hi;
    mu2 = s.intervals[1].lo;
  }
  const double c2 =
      (gp.rho * gp.rho - gp.R * gp.R) / (1.0 - gp.R * gp.R);  // c^2

  double omega = 2.0;
  RunTrace trace = drive(obj, x0, T, 1.0 / L1, [&, c2, L1, mu2](int t) mutable {
    omega = 1.0 / (1.0 - omega / (4.0 * c2));
    double h = (t % 2 == 0) ? omega / L1 : omega / mu2;
    return std::pair<double, double>(h, omega - 1.0);
  });
  trace.schedule = "cheby2";
  return trace;
}

double empirical_rate(const RunTrace& trace, int burn_in) {
  if (burn_in < 0) throw DegenerateInput("empirical_rate: negative burn_in");
  const auto& v = trace.metric;
  if (static_cast<int>(v.size()) <= burn_in + 10) {
    throw InsufficientData("empirical_rate: trace shorter than burn_in + 10");
  }

  // Usable window: positive, above the double-precision trust floor, and
  // before the trace settles onto its numerical floor.
  double vmin = std::numeric_limits<double>::infinity();
  for (double m : v) {
    if (m > 0.0) vmin = std::min(vmin, m);
  }
  const bool decayed = vmin < 1e-6 * v.front();
  const double floor_level = decayed ? 10.0 * vmin : 0.0;

  std::vector<std::pair<double, double>> pts;  // (t, log metric)
  for (size_t t = burn_in; t < v.size(); ++t) {
    if (!(v[t] > 0.0) || v[t] < 1e-290) break;
    if (decayed && v[t] <= floor_level && pts.size() >= 10) break;
    pts.push_back({static_cast<double>(t), std::log(v[t])});
  }
  if (pts.size() < 10) {
    throw InsufficientData("empirical_rate: too few usable points after burn_in");
  }

  double n = static_cast<double>(pts.size());
  double st = 0.0, sy = 0.0, stt = 0.0, sty = 0.0;
  for (auto [t, y] : pts) {
    st += t;
    sy += y;
    stt += t * t;
    sty += t * y;
  }
  double slope = (n * sty - st * sy) / (n * stt - st * st);
  return std::exp(slope);
}

}  // namespace cyclic
