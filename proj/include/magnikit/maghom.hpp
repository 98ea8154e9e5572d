#pragma once

#include <cstddef>
#include <map>
#include <utility>
#include <vector>

#include "magnikit/barcode.hpp"
#include "magnikit/complex.hpp"
#include "magnikit/expsum.hpp"
#include "magnikit/metric.hpp"

namespace magnikit {

struct MaghomOptions {
  FieldConfig field = FieldConfig::rationals();
  /// Refuse to build complexes with more generators than this.
  std::size_t tuple_cap = 2'000'000;
  bool parallel = true;
};

/// Ranks of MH_{k,l}. Only nonzero entries are stored; `l_values` lists
/// every ℓ-value ≤ l_max that was examined.
struct RankTable {
  std::map<std::pair<int, double>, long> entries;
  std::vector<double> l_values;
  double delta = 0.0;
  int k_max = 0;

  /// Rank at (k, l), matching l with the rate tolerance; 0 when absent.
  long rank(int k, double l) const;
  /// Σ_k (-1)^k rank(k, l).
  long euler_characteristic(double l) const;
};

/// Magnitude homology ranks for k ≤ k_max and ℓ-values ≤ l_max. Each ℓ-value
/// is reduced as its own chain complex, in parallel when enabled.
RankTable mh_ranks(const FiniteMetricSpace& x, int k_max, double l_max, const MaghomOptions& options = {});

/// Blurred magnitude chain complex with generators in degrees 0..k_max+1,
/// filtered by tuple length.
FilteredComplex bmc_complex(const FiniteMetricSpace& x, int k_max, const MaghomOptions& options = {});

struct BmhResult {
  GradedBarcode barcode;  // degrees ≤ k_max
  ExpSum magnitude;       // truncated alternating sum over those degrees
};

BmhResult bmh_magnitude_partial(const FiniteMetricSpace& x, int k_max, const MaghomOptions& options = {});

/// n (n e^{-δt})^{k_max+1} / (1 - n e^{-δt}): bounds |partial - |tX|| for
/// bmh_magnitude_partial. Throws std::domain_error unless n e^{-δt} < 1.
double tail_bound(std::size_t n, double delta, int k_max, double t);

/// Smallest t for which n e^{-δt} ≤ ratio.
double convergence_threshold(std::size_t n, double delta, double ratio = 1.0);

struct Estimate {
  double value = 0.0;
  double error_bound = 0.0;
};

/// Σ_{l ≤ l_max} Σ_k (-1)^k rank MH_{k,l} e^{-lt} with a bound on the
/// omitted l > l_max terms. Throws std::domain_error unless n e^{-δt} < 1.
Estimate alternating_sum_magnitude(const FiniteMetricSpace& x, double l_max, double t,
                                   const MaghomOptions& options = {});

struct LesSides {
  double l = 0.0;
  long magnitude_homology = 0;  // Σ_k (-1)^k rank MH_{k,l_j}
  long blurred_difference = 0;  // Σ_k (-1)^k [rank BMH_k(l_j) - rank BMH_k(l_{j-1})]
};

/// Both sides of the alternating-rank identity at the j-th ℓ-value.
LesSides les_sides(const FiniteMetricSpace& x, std::size_t j, const MaghomOptions& options = {});
bool les_rank_check(const FiniteMetricSpace& x, std::size_t j, const MaghomOptions& options = {});

}  // namespace magnikit
