#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "magnikit/barcode.hpp"
#include "magnikit/complex.hpp"
#include "magnikit/expsum.hpp"
#include "magnikit/metric.hpp"

namespace magnikit {

/// Largest point count accepted by full subset enumeration: 22, or the
/// value of MAGNIKIT_SUBSET_CAP when set.
std::size_t default_subset_cap();

struct RipsOptions {
  enum class Method { Subsets, EulerCurve, Barcode };

  /// Highest simplex dimension; -1 means n - 1 (the full simplex).
  int max_dim = -1;
  Method method = Method::Subsets;
  std::size_t subset_cap = default_subset_cap();
  FieldConfig field = FieldConfig::rationals();
  bool parallel = true;
};

/// Vietoris-Rips filtration: every subset of size ≤ max_dim + 1, filtered by
/// diameter, with alternating face boundaries (omitted when
/// with_boundary is false, which is enough for Euler characteristics).
FilteredComplex rips_filtration(const FiniteMetricSpace& x, int max_dim, bool with_boundary = true);

/// Σ over nonempty A ⊆ X of (-1)^(#A-1) exp(-diam(A) t).
ExpSum rips_magnitude_subsets(const FiniteMetricSpace& x, std::size_t cap = default_subset_cap(),
                              bool parallel = true);

/// Telescoped sum of Euler characteristics of the clique complex at each
/// distinct pairwise distance.
ExpSum rips_magnitude_euler(const FiniteMetricSpace& x, std::size_t cap = default_subset_cap());

struct RipsBarcodeResult {
  GradedBarcode barcode;
  ExpSum magnitude;
  /// True when max_dim < n - 1, in which case the magnitude is a truncation.
  bool truncated = false;
};

RipsBarcodeResult rips_magnitude_barcode(const FiniteMetricSpace& x, int max_dim = -1,
                                         const FieldConfig& field = FieldConfig::rationals(),
                                         std::size_t cap = default_subset_cap());

ExpSum rips_magnitude(const FiniteMetricSpace& x, const RipsOptions& options = {});

/// Distinct pairwise distances (0 first), grouped with the rate tolerance.
/// `representative` is the smallest member of each group and `threshold`
/// the largest.
struct DistanceLevel {
  double representative;
  double threshold;
};
std::vector<DistanceLevel> distinct_distances(const FiniteMetricSpace& x);

/// Number of simplices of each dimension in the Rips complex at scale r.
std::vector<long long> rips_simplex_counts(const FiniteMetricSpace& x, double r);

}  // namespace magnikit
