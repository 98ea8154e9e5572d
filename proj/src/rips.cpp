#include "magnikit/rips.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <stdexcept>
#include <string>
#include <unordered_map>

#include "magnikit/kernels.hpp"

namespace magnikit {

std::size_t default_subset_cap() {
  if (const char* env = std::getenv("MAGNIKIT_SUBSET_CAP")) {
    try {
      const long v = std::stol(env);
      if (v > 0) return static_cast<std::size_t>(std::min(v, 62L));
    } catch (const std::exception&) {
    }
  }
  return 22;
}

namespace {

void check_cap(const FiniteMetricSpace& x, std::size_t cap) {
  if (x.size() > cap)
    throw std::length_error("subset enumeration: " + std::to_string(x.size()) +
                            " points exceeds the cap of " + std::to_string(cap));
}

int resolve_max_dim(const FiniteMetricSpace& x, int max_dim) {
  const int full = static_cast<int>(x.size()) - 1;
  if (max_dim < 0) return full;
  if (max_dim > full) throw std::invalid_argument("rips: max_dim must be below the number of points");
  return max_dim;
}

}  // namespace

FilteredComplex rips_filtration(const FiniteMetricSpace& x, int max_dim, bool with_boundary) {
  const std::size_t n = x.size();
  if (n > 62) throw std::length_error("rips_filtration: more than 62 points");
  max_dim = resolve_max_dim(x, max_dim);

  FilteredComplex c;
  std::unordered_map<std::uint64_t, std::size_t> id_of;
  std::vector<std::size_t> combo;
  for (int dim = 0; dim <= max_dim; ++dim) {
    const std::size_t k = static_cast<std::size_t>(dim) + 1;
    combo.resize(k);
    for (std::size_t i = 0; i < k; ++i) combo[i] = i;
    while (true) {
      double diam = 0.0;
      for (std::size_t a = 0; a < k; ++a)
        for (std::size_t b = a + 1; b < k; ++b) diam = std::max(diam, x(combo[a], combo[b]));
      std::uint64_t mask = 0;
      for (auto v : combo) mask |= std::uint64_t{1} << v;

      std::vector<FilteredComplex::Entry> boundary;
      if (with_boundary && dim > 0) {
        for (std::size_t i = 0; i < k; ++i) {
          const std::uint64_t face = mask & ~(std::uint64_t{1} << combo[i]);
          boundary.push_back({id_of.at(face), i % 2 == 0 ? 1LL : -1LL});
        }
      }
      const std::size_t id = c.add_cell(dim, diam, std::move(boundary));
      if (with_boundary) id_of.emplace(mask, id);

      // Next combination in lexicographic order.
      std::size_t i = k;
      while (i > 0 && combo[i - 1] == n - k + (i - 1)) --i;
      if (i == 0) break;
      ++combo[i - 1];
      for (std::size_t j = i; j < k; ++j) combo[j] = combo[j - 1] + 1;
    }
  }
  return c;
}

ExpSum rips_magnitude_subsets(const FiniteMetricSpace& x, std::size_t cap, bool parallel) {
  check_cap(x, cap);
  const auto counts = parallel ? kernels::signed_diameter_counts_omp(x)
                               : kernels::signed_diameter_counts_serial(x);
  std::vector<ExpSum::Term> terms;
  for (std::size_t i = 0; i < counts.distances.size(); ++i)
    if (counts.signed_counts[i] != 0)
      terms.push_back({static_cast<double>(counts.signed_counts[i]), counts.distances[i]});
  return ExpSum(std::move(terms));
}

std::vector<DistanceLevel> distinct_distances(const FiniteMetricSpace& x) {
  std::vector<double> all{0.0};
  for (std::size_t i = 0; i < x.size(); ++i)
    for (std::size_t j = i + 1; j < x.size(); ++j) all.push_back(x(i, j));
  std::sort(all.begin(), all.end());
  std::vector<DistanceLevel> levels;
  for (double d : all) {
    if (!levels.empty() && Tolerance::same_rate(levels.back().representative, d))
      levels.back().threshold = d;
    else
      levels.push_back({d, d});
  }
  return levels;
}

ExpSum rips_magnitude_euler(const FiniteMetricSpace& x, std::size_t cap) {
  check_cap(x, cap);
  if (x.size() == 0) return {};
  const auto levels = distinct_distances(x);
  const FilteredComplex c = rips_filtration(x, -1, /*with_boundary=*/false);
  std::vector<double> thresholds;
  for (const auto& l : levels) thresholds.push_back(l.threshold);
  const std::vector<long> chi = euler_at(c, thresholds);

  std::vector<ExpSum::Term> terms;
  for (std::size_t j = 0; j < levels.size(); ++j) {
    const double c_j = static_cast<double>(chi[j]);
    if (c_j == 0.0) continue;
    terms.push_back({c_j, levels[j].representative});
    if (j + 1 < levels.size()) terms.push_back({-c_j, levels[j + 1].representative});
  }
  return ExpSum(std::move(terms));
}

RipsBarcodeResult rips_magnitude_barcode(const FiniteMetricSpace& x, int max_dim, const FieldConfig& field,
                                         std::size_t cap) {
  check_cap(x, cap);
  max_dim = resolve_max_dim(x, max_dim);
  RipsBarcodeResult out;
  out.truncated = max_dim < static_cast<int>(x.size()) - 1;
  out.barcode = reduce(rips_filtration(x, max_dim), field);
  out.magnitude = graded_magnitude(out.barcode);
  return out;
}

ExpSum rips_magnitude(const FiniteMetricSpace& x, const RipsOptions& options) {
  switch (options.method) {
    case RipsOptions::Method::Subsets:
      return rips_magnitude_subsets(x, options.subset_cap, options.parallel);
    case RipsOptions::Method::EulerCurve:
      return rips_magnitude_euler(x, options.subset_cap);
    case RipsOptions::Method::Barcode:
      return rips_magnitude_barcode(x, options.max_dim, options.field, options.subset_cap).magnitude;
  }
  throw std::invalid_argument("rips: unknown method");
}

namespace {

void count_cliques(const std::vector<std::uint64_t>& adj, std::uint64_t candidates, std::size_t size,
                   std::vector<long long>& counts) {
  while (candidates) {
    const int v = __builtin_ctzll(candidates);
    candidates &= candidates - 1;
    if (counts.size() <= size) counts.resize(size + 1, 0);
    ++counts[size];
    count_cliques(adj, candidates & adj[v], size + 1, counts);
  }
}

}  // namespace

std::vector<long long> rips_simplex_counts(const FiniteMetricSpace& x, double r) {
  const std::size_t n = x.size();
  if (n > 64) throw std::length_error("rips_simplex_counts: more than 64 points");
  std::vector<std::uint64_t> adj(n, 0);
  const double cap = r + Tolerance::kRateAbs + Tolerance::kRateRel * std::abs(r);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      if (x(i, j) <= cap) adj[i] |= std::uint64_t{1} << j;
  std::vector<long long> counts;
  const std::uint64_t all = n == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << n) - 1;
  count_cliques(adj, all, 0, counts);
  return counts;
}

}  // namespace magnikit
