#pragma once

// Enumeration kernels shared by the Rips and magnitude-homology modules.
// Each kernel has a single-threaded reference and an OpenMP version; both
// return identical results for identical input.

#include <cstdint>
#include <vector>

#include "magnikit/metric.hpp"

namespace magnikit::kernels {

/// Distinct pairwise distances in increasing order (0 first) and, for every
/// nonempty subset A of X, Σ (-1)^(#A-1) accumulated at the index of diam(A).
struct DiameterCounts {
  std::vector<double> distances;
  std::vector<long long> signed_counts;

  bool operator==(const DiameterCounts&) const = default;
};

DiameterCounts signed_diameter_counts_serial(const FiniteMetricSpace& x);
DiameterCounts signed_diameter_counts_omp(const FiniteMetricSpace& x);

/// Tuples (x_0,...,x_k) with consecutive entries distinct, grouped by degree
/// k, in lexicographic order within each degree.
struct TupleLayer {
  int degree = 0;
  std::vector<std::uint16_t> points;  // (degree + 1) entries per tuple
  std::vector<double> lengths;

  std::size_t size() const { return lengths.size(); }
  const std::uint16_t* tuple(std::size_t i) const { return points.data() + i * (degree + 1); }
};

struct TupleTable {
  std::vector<TupleLayer> layers;  // layers[k].degree == k

  std::size_t total() const;
  bool operator==(const TupleTable& other) const;
};

/// All tuples of degree ≤ max_degree whose length is ≤ length_cap. Throws
/// std::length_error once more than `tuple_cap` tuples would be produced.
TupleTable enumerate_tuples_serial(const FiniteMetricSpace& x, int max_degree, double length_cap,
                                   std::size_t tuple_cap);
TupleTable enumerate_tuples_omp(const FiniteMetricSpace& x, int max_degree, double length_cap,
                                std::size_t tuple_cap);

}  // namespace magnikit::kernels
