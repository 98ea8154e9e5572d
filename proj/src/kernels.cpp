#include "magnikit/kernels.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <stdexcept>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "magnikit/expsum.hpp"

namespace magnikit::kernels {

namespace {

struct DistanceIndex {
  std::vector<double> distances;
  std::vector<int> index;  // n*n
  std::size_t n = 0;

  explicit DistanceIndex(const FiniteMetricSpace& x) : n(x.size()) {
    distances.push_back(0.0);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j) distances.push_back(x(i, j));
    std::sort(distances.begin(), distances.end());
    distances.erase(std::unique(distances.begin(), distances.end()), distances.end());
    index.resize(n * n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        index[i * n + j] = static_cast<int>(
            std::lower_bound(distances.begin(), distances.end(), x(i, j)) - distances.begin());
  }
  int operator()(std::size_t i, std::size_t j) const { return index[i * n + j]; }
};

// Depth-first enumeration of every subset whose elements are drawn from
// [first, n) and appended to a base set described by `reach` (max distance
// index from the base to each vertex), `diam` and `size`.
class SubsetWalker {
 public:
  SubsetWalker(const DistanceIndex& d, std::vector<long long>& counts)
      : d_(d), counts_(counts), reach_(d.n + 1, std::vector<int>(d.n, 0)) {}

  void walk(std::size_t first, const std::vector<int>& reach, int diam, std::size_t size) {
    reach_[0] = reach;
    recurse(0, first, diam, size);
  }

 private:
  void recurse(std::size_t level, std::size_t first, int diam, std::size_t size) {
    const std::size_t n = d_.n;
    const long long sign = size % 2 == 0 ? 1 : -1;  // (-1)^(#A-1) with #A = size + 1
    for (std::size_t j = first; j < n; ++j) {
      const int new_diam = std::max(diam, reach_[level][j]);
      counts_[new_diam] += sign;
      if (j + 1 < n) {
        auto& next = reach_[level + 1];
        for (std::size_t m = j + 1; m < n; ++m) next[m] = std::max(reach_[level][m], d_(j, m));
        recurse(level + 1, j + 1, new_diam, size + 1);
      }
    }
  }

  const DistanceIndex& d_;
  std::vector<long long>& counts_;
  std::vector<std::vector<int>> reach_;
};

void check_subset_size(const FiniteMetricSpace& x) {
  if (x.size() > 62) throw std::length_error("subset enumeration: more than 62 points");
}

}  // namespace

DiameterCounts signed_diameter_counts_serial(const FiniteMetricSpace& x) {
  check_subset_size(x);
  DistanceIndex d(x);
  DiameterCounts out{d.distances, std::vector<long long>(d.distances.size(), 0)};
  if (x.size() == 0) return out;
  SubsetWalker walker(d, out.signed_counts);
  walker.walk(0, std::vector<int>(x.size(), 0), 0, 0);
  return out;
}

DiameterCounts signed_diameter_counts_omp(const FiniteMetricSpace& x) {
  check_subset_size(x);
  DistanceIndex d(x);
  const std::size_t n = x.size();
  const std::size_t m = d.distances.size();
  DiameterCounts out{d.distances, std::vector<long long>(m, 0)};
  if (n == 0) return out;

  // Tasks are indexed by which of the first `prefix` vertices are present;
  // each task enumerates the extensions by vertices [prefix, n).
  const std::size_t prefix = std::min<std::size_t>(n, 8);
  const long long tasks = 1LL << prefix;

#pragma omp parallel
  {
    std::vector<long long> local(m, 0);
    SubsetWalker walker(d, local);
    std::vector<int> reach(n);
#pragma omp for schedule(dynamic)
    for (long long mask = 0; mask < tasks; ++mask) {
      std::fill(reach.begin(), reach.end(), 0);
      int diam = 0;
      std::size_t size = 0;
      for (std::size_t i = 0; i < prefix; ++i) {
        if (!((mask >> i) & 1)) continue;
        diam = std::max(diam, reach[i]);
        for (std::size_t k = 0; k < n; ++k) reach[k] = std::max(reach[k], d(i, k));
        ++size;
      }
      if (size > 0) local[diam] += size % 2 == 1 ? 1 : -1;
      if (prefix < n) walker.walk(prefix, reach, diam, size);
    }
#pragma omp critical
    for (std::size_t k = 0; k < m; ++k) out.signed_counts[k] += local[k];
  }
  return out;
}

std::size_t TupleTable::total() const {
  std::size_t t = 0;
  for (const auto& l : layers) t += l.size();
  return t;
}

bool TupleTable::operator==(const TupleTable& other) const {
  if (layers.size() != other.layers.size()) return false;
  for (std::size_t k = 0; k < layers.size(); ++k) {
    if (layers[k].points != other.layers[k].points || layers[k].lengths != other.layers[k].lengths)
      return false;
  }
  return true;
}

namespace {

double effective_cap(double length_cap) {
  if (std::isinf(length_cap)) return length_cap;
  return length_cap + Tolerance::kRateAbs + Tolerance::kRateRel * length_cap;
}

void check_tuple_input(const FiniteMetricSpace& x, int max_degree) {
  if (max_degree < 0) throw std::invalid_argument("tuple enumeration: negative degree");
  if (x.size() > 65535) throw std::length_error("tuple enumeration: too many points");
}

TupleLayer base_layer(const FiniteMetricSpace& x) {
  TupleLayer layer;
  for (std::size_t i = 0; i < x.size(); ++i) {
    layer.points.push_back(static_cast<std::uint16_t>(i));
    layer.lengths.push_back(0.0);
  }
  return layer;
}

// Appends the one-step extensions of tuples [begin, end) of `src` to `dst`.
// Returns false if `budget` ran out.
bool extend_range(const FiniteMetricSpace& x, const TupleLayer& src, std::size_t begin, std::size_t end,
                  double cap, TupleLayer& dst, std::atomic<long long>& budget) {
  const std::size_t n = x.size();
  const int width = src.degree + 1;
  for (std::size_t t = begin; t < end; ++t) {
    const std::uint16_t* tup = src.tuple(t);
    const std::uint16_t last = tup[width - 1];
    for (std::size_t y = 0; y < n; ++y) {
      if (y == last) continue;
      const double len = src.lengths[t] + x(last, y);
      if (len > cap) continue;
      if (budget.fetch_sub(1, std::memory_order_relaxed) <= 0) return false;
      dst.points.insert(dst.points.end(), tup, tup + width);
      dst.points.push_back(static_cast<std::uint16_t>(y));
      dst.lengths.push_back(len);
    }
  }
  return true;
}

}  // namespace

TupleTable enumerate_tuples_serial(const FiniteMetricSpace& x, int max_degree, double length_cap,
                                   std::size_t tuple_cap) {
  check_tuple_input(x, max_degree);
  const double cap = effective_cap(length_cap);
  TupleTable table;
  table.layers.push_back(base_layer(x));
  std::atomic<long long> budget(static_cast<long long>(tuple_cap) - static_cast<long long>(x.size()));
  if (budget < 0) throw std::length_error("tuple enumeration: tuple cap exceeded");
  for (int k = 1; k <= max_degree; ++k) {
    TupleLayer next;
    next.degree = k;
    const auto& prev = table.layers.back();
    if (!extend_range(x, prev, 0, prev.size(), cap, next, budget))
      throw std::length_error("tuple enumeration: tuple cap exceeded");
    table.layers.push_back(std::move(next));
  }
  return table;
}

TupleTable enumerate_tuples_omp(const FiniteMetricSpace& x, int max_degree, double length_cap,
                                std::size_t tuple_cap) {
  check_tuple_input(x, max_degree);
  const double cap = effective_cap(length_cap);
  TupleTable table;
  table.layers.push_back(base_layer(x));
  std::atomic<long long> budget(static_cast<long long>(tuple_cap) - static_cast<long long>(x.size()));
  if (budget < 0) throw std::length_error("tuple enumeration: tuple cap exceeded");

  for (int k = 1; k <= max_degree; ++k) {
    const TupleLayer& prev = table.layers.back();
    const std::size_t count = prev.size();
    const std::size_t chunks = std::max<std::size_t>(1, std::min<std::size_t>(count, 256));
    std::vector<TupleLayer> parts(chunks);
    std::atomic<bool> ok(true);

#pragma omp parallel for schedule(dynamic)
    for (long long c = 0; c < static_cast<long long>(chunks); ++c) {
      if (!ok.load(std::memory_order_relaxed)) continue;
      const std::size_t begin = count * c / chunks, end = count * (c + 1) / chunks;
      parts[c].degree = k;
      if (!extend_range(x, prev, begin, end, cap, parts[c], budget)) ok = false;
    }
    if (!ok) throw std::length_error("tuple enumeration: tuple cap exceeded");

    TupleLayer next;
    next.degree = k;
    std::size_t total = 0;
    for (const auto& p : parts) total += p.size();
    next.lengths.reserve(total);
    next.points.reserve(total * (k + 1));
    for (auto& p : parts) {
      next.points.insert(next.points.end(), p.points.begin(), p.points.end());
      next.lengths.insert(next.lengths.end(), p.lengths.begin(), p.lengths.end());
    }
    table.layers.push_back(std::move(next));
  }
  return table;
}

}  // namespace magnikit::kernels
