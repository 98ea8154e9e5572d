#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "magnikit/expsum.hpp"

namespace magnikit {

struct CriticalPoint {
  double value = 0.0;
  int index = 0;
};

enum class CycleKind { GraphMetric, Euclidean, Geodesic };

CycleKind parse_cycle_kind(const std::string& name);
std::string to_string(CycleKind kind);

/// Rips magnitude function of the n-cycle. Graph metric needs n ≥ 1, the
/// other two n ≥ 3.
ExpSum cycle_magnitude(int n, CycleKind kind);

/// Euler characteristic of the Rips complex of the graph n-cycle at integer
/// scale r, 0 ≤ r ≤ ⌊n/2⌋.
long adamaszek_euler(int n, int r);

/// Number of i-simplices of the Rips complex of the graph n-cycle at scale
/// r < ⌊n/2⌋, from the divisor-style closed formula with binom(m, j) = 0 for
/// m < 0.
long long simplex_count(int n, int r, int i);

/// n - Σ exp(-(a_{j+1} - a_j) t) for strictly increasing points.
ExpSum real_subset_magnitude(const std::vector<double>& points);

/// Limit of the Rips magnitude of fine partitions of [0, 1] at scale t.
double interval_limit(double t);
/// δ (2t + t²/2): bound on 1 + t - |tA| for a partition A of mesh δ.
double interval_error_bound(double delta, double t);

struct EuclideanCircleLimits {
  double liminf = 0.0;
  double limsup_partial = 0.0;
  double limsup_tail_bound = 0.0;
};

/// Lower and upper limits of the Euclidean n-cycle magnitude at t as n → ∞;
/// the upper limit is summed over odd r ≤ r_max (r_max odd).
EuclideanCircleLimits ec_limits(double t, int r_max);

/// Limit along the subsequence n = m·p, p prime.
double ec_subsequence_limit(int m, double t);

/// e^{-πt} + 2πt.
double geo_liminf(double t);
/// Partial sums over odd r ≤ r_max of the divergent upper-limit series.
double geo_limsup_partial(double t, int r_max);

/// Σ (-1)^index exp(-value t).
ExpSum morse_magnitude(const std::vector<CriticalPoint>& crits);

/// πt / (1 - e^{-πt}).
double leinster_geodesic_circle(double t);

struct ConvexityReport {
  bool convex = true;
  double min_second_derivative = 0.0;
  double argmin = 0.0;
};

/// Samples f'' on [t0, t1] with the given step. Numerical evidence only.
ConvexityReport convexity_scan(const ExpSum& f, double t0, double t1, double step);

/// Positive divisors of n in increasing order.
std::vector<int> divisors(int n);

}  // namespace magnikit
