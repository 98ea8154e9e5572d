#include "magnikit/closedforms.hpp"

#include <gmpxx.h>

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace magnikit {

using std::numbers::pi;

CycleKind parse_cycle_kind(const std::string& name) {
  if (name == "graph") return CycleKind::GraphMetric;
  if (name == "eucl" || name == "euclidean") return CycleKind::Euclidean;
  if (name == "geo" || name == "geodesic") return CycleKind::Geodesic;
  throw std::invalid_argument("unknown cycle kind '" + name + "'");
}

std::string to_string(CycleKind kind) {
  switch (kind) {
    case CycleKind::GraphMetric: return "graph";
    case CycleKind::Euclidean: return "eucl";
    case CycleKind::Geodesic: return "geo";
  }
  return "?";
}

std::vector<int> divisors(int n) {
  if (n < 1) throw std::invalid_argument("divisors: n must be positive");
  std::vector<int> low, high;
  for (int d = 1; static_cast<long>(d) * d <= n; ++d) {
    if (n % d) continue;
    low.push_back(d);
    if (d != n / d) high.push_back(n / d);
  }
  low.insert(low.end(), high.rbegin(), high.rend());
  return low;
}

ExpSum cycle_magnitude(int n, CycleKind kind) {
  if (n < 1) throw std::invalid_argument("cycle_magnitude: n must be positive");
  if (kind != CycleKind::GraphMetric && n < 3)
    throw std::invalid_argument("cycle_magnitude: Euclidean and geodesic cycles need n >= 3");

  // Rates for the r-th divisor: "low" at the r-cycle diameter, "high" one
  // step further; `last` is the top rate.
  auto low = [&](int r) -> double {
    const double frac = static_cast<double>(r / 2) / r;
    switch (kind) {
      case CycleKind::GraphMetric: return static_cast<double>(n / r) * (r - 1) / 2;
      case CycleKind::Euclidean: return 2.0 * std::sin(pi * frac);
      case CycleKind::Geodesic: return 2.0 * pi * frac;
    }
    return 0.0;
  };
  auto high = [&](int r) -> double {
    const double frac = 1.0 / n + static_cast<double>(r / 2) / r;
    switch (kind) {
      case CycleKind::GraphMetric: return low(r) + 1.0;
      case CycleKind::Euclidean: return 2.0 * std::sin(pi * frac);
      case CycleKind::Geodesic: return 2.0 * pi * frac;
    }
    return 0.0;
  };
  const double last = kind == CycleKind::GraphMetric ? static_cast<double>(n / 2) : low(n);

  std::vector<ExpSum::Term> terms;
  for (int r : divisors(n)) {
    if (r % 2 == 0 || r == n) continue;
    const double mult = static_cast<double>(n / r);
    terms.push_back({mult, low(r)});
    terms.push_back({-mult, high(r)});
  }
  terms.push_back({1.0, last});
  return ExpSum(std::move(terms));
}

long adamaszek_euler(int n, int r) {
  if (n < 1 || r < 0 || r > n / 2) throw std::invalid_argument("adamaszek_euler: need 0 <= r <= n/2");
  if (n == 2 * r) return 1;
  const int d = n - 2 * r;
  if (n % d == 0 && (n / d) % 2 == 1) return d;
  return 0;
}

namespace {

mpz_class binom(long m, long j) {
  if (m < 0 || j < 0 || j > m) return 0;
  mpz_class out;
  mpz_bin_uiui(out.get_mpz_t(), static_cast<unsigned long>(m), static_cast<unsigned long>(j));
  return out;
}

}  // namespace

long long simplex_count(int n, int r, int i) {
  if (n < 1 || r < 0 || r >= std::max(1, n / 2))
    throw std::invalid_argument("simplex_count: need 0 <= r < diam C_n");
  if (i < 0) return 0;
  mpq_class total = 0;
  for (long k = 0; k <= n / 2; ++k) {
    const long top = (2 * k + 1) * r - k * n;
    const mpz_class prod = binom(top + 2 * k, 2 * k) * binom(top, i - 2 * k);
    if (prod == 0) continue;
    total += mpq_class(n, 2 * k + 1) * prod;
  }
  total.canonicalize();
  if (total.get_den() != 1) throw std::logic_error("simplex_count: formula produced a non-integer");
  if (!total.get_num().fits_slong_p()) throw std::overflow_error("simplex_count: count overflows");
  return total.get_num().get_si();
}

ExpSum real_subset_magnitude(const std::vector<double>& points) {
  std::vector<ExpSum::Term> terms;
  terms.push_back({static_cast<double>(points.size()), 0.0});
  for (std::size_t j = 0; j + 1 < points.size(); ++j) {
    const double gap = points[j + 1] - points[j];
    if (!(gap > 0)) throw std::invalid_argument("real_subset_magnitude: points must be strictly increasing");
    terms.push_back({-1.0, gap});
  }
  return ExpSum(std::move(terms));
}

double interval_limit(double t) { return 1.0 + t; }

double interval_error_bound(double delta, double t) { return delta * (2.0 * t + t * t / 2.0); }

namespace {

double ec_term(int r, double t) {
  const double a = pi / (2.0 * r);
  return std::exp(-2.0 * t * std::cos(a)) * std::sin(a) / r;
}

}  // namespace

EuclideanCircleLimits ec_limits(double t, int r_max) {
  if (!(t > 0)) throw std::invalid_argument("ec_limits: t must be positive");
  if (r_max < 1 || r_max % 2 == 0) throw std::invalid_argument("ec_limits: r_max must be odd and positive");
  EuclideanCircleLimits out;
  out.liminf = std::exp(-2.0 * t) + 2.0 * pi * t;
  double sum = 0.0;
  for (int r = 1; r <= r_max; r += 2) sum += ec_term(r, t);
  out.limsup_partial = std::exp(-2.0 * t) + 2.0 * pi * t * sum;
  // Terms are at most π/(2r²); the odd-r tail of 1/r² is below 1/(2 r_max).
  out.limsup_tail_bound = 2.0 * pi * t * (pi / 2.0) / (2.0 * r_max);
  return out;
}

double ec_subsequence_limit(int m, double t) {
  if (m < 1) throw std::invalid_argument("ec_subsequence_limit: m must be positive");
  double sum = 0.0;
  for (int r : divisors(m))
    if (r % 2 == 1) sum += ec_term(r, t);
  return std::exp(-2.0 * t) + 2.0 * pi * t * sum;
}

double geo_liminf(double t) {
  if (!(t > 0)) throw std::invalid_argument("geo_liminf: t must be positive");
  return std::exp(-pi * t) + 2.0 * pi * t;
}

double geo_limsup_partial(double t, int r_max) {
  if (!(t > 0)) throw std::invalid_argument("geo_limsup_partial: t must be positive");
  if (r_max < 1) throw std::invalid_argument("geo_limsup_partial: r_max must be positive");
  double sum = std::exp(-pi * t);
  for (int r = 1; r <= r_max; r += 2) sum += 2.0 * pi * t / r * std::exp(-pi * (r - 1) * t / r);
  return sum;
}

ExpSum morse_magnitude(const std::vector<CriticalPoint>& crits) {
  std::vector<ExpSum::Term> terms;
  for (const auto& c : crits) {
    if (!std::isfinite(c.value)) throw std::invalid_argument("morse_magnitude: critical values must be finite");
    if (c.index < 0) throw std::invalid_argument("morse_magnitude: index must be nonnegative");
    terms.push_back({c.index % 2 == 0 ? 1.0 : -1.0, c.value});
  }
  return ExpSum(std::move(terms));
}

double leinster_geodesic_circle(double t) {
  if (!(t > 0)) throw std::invalid_argument("leinster_geodesic_circle: t must be positive");
  return pi * t / -std::expm1(-pi * t);
}

ConvexityReport convexity_scan(const ExpSum& f, double t0, double t1, double step) {
  if (!(step > 0) || t1 < t0) throw std::invalid_argument("convexity_scan: bad grid");
  const ExpSum f2 = derivative(derivative(f));
  ConvexityReport out;
  out.min_second_derivative = f2(t0);
  out.argmin = t0;
  const auto steps = static_cast<long>(std::floor((t1 - t0) / step + 1e-9));
  for (long i = 0; i <= steps; ++i) {
    const double t = t0 + i * step;
    const double v = f2(t);
    if (v < out.min_second_derivative) {
      out.min_second_derivative = v;
      out.argmin = t;
    }
  }
  const double scale = std::max(1.0, std::abs(f(t0)));
  out.convex = out.min_second_derivative >= -1e-12 * scale;
  return out;
}

}  // namespace magnikit
