#pragma once

// Shared generators and independent oracles for the test suites.

#include <gmpxx.h>

#include <boost/multiprecision/cpp_bin_float.hpp>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

#include "magnikit/barcode.hpp"
#include "magnikit/complex.hpp"
#include "magnikit/expsum.hpp"
#include "magnikit/metric.hpp"

namespace testing {

using magnikit::ExpSum;
using magnikit::FilteredComplex;
using magnikit::FiniteMetricSpace;

inline constexpr std::uint64_t kDefaultSeed = 20240611;

inline FiniteMetricSpace random_cloud(std::mt19937_64& rng, std::size_t n, std::size_t dim = 2) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::vector<std::vector<double>> pts(n, std::vector<double>(dim));
  for (auto& p : pts)
    for (auto& c : p) c = u(rng);
  return magnikit::from_point_cloud(pts);
}

/// Shortest-path metric of a random connected graph with small integer
/// weights, so many distances tie.
inline FiniteMetricSpace random_graph_metric(std::mt19937_64& rng, std::size_t n) {
  std::uniform_int_distribution<int> w(1, 3);
  std::bernoulli_distribution extra(0.35);
  std::vector<magnikit::WeightedEdge> edges;
  for (std::size_t v = 1; v < n; ++v) {
    std::uniform_int_distribution<std::size_t> parent(0, v - 1);
    edges.push_back({parent(rng), v, static_cast<double>(w(rng))});
  }
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      if (extra(rng)) edges.push_back({i, j, static_cast<double>(w(rng))});
  return magnikit::from_graph(n, edges);
}

/// Symmetric positive dissimilarity with no triangle inequality.
inline FiniteMetricSpace random_dissimilarity(std::mt19937_64& rng, std::size_t n) {
  std::uniform_real_distribution<double> u(0.1, 2.0);
  std::vector<std::vector<double>> d(n, std::vector<double>(n, 0.0));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) d[i][j] = d[j][i] = u(rng);
  std::vector<std::string> labels;
  for (std::size_t i = 0; i < n; ++i) labels.push_back("p" + std::to_string(i));
  return FiniteMetricSpace(labels, d);
}

inline FiniteMetricSpace random_space(std::mt19937_64& rng, std::size_t n, int kind) {
  switch (kind % 3) {
    case 0: return random_cloud(rng, n);
    case 1: return random_graph_metric(rng, n);
    default: return random_dissimilarity(rng, n);
  }
}

/// Random simplicial complex on at most 6 vertices, closed under faces,
/// with monotone filtration values drawn from a coarse grid (to force ties).
inline FilteredComplex random_filtered_complex(std::mt19937_64& rng, std::size_t max_cells) {
  std::uniform_int_distribution<int> nv(1, 6);
  const int v = nv(rng);
  std::uniform_int_distribution<std::uint32_t> mask_dist(1, (1u << v) - 1);
  std::uniform_int_distribution<int> grid(0, 8);

  std::vector<std::uint32_t> chosen;
  auto has = [&](std::uint32_t m) { return std::find(chosen.begin(), chosen.end(), m) != chosen.end(); };
  auto close = [&](auto&& self, std::uint32_t m) -> void {
    if (has(m)) return;
    if (std::popcount(m) > 1)
      for (std::uint32_t b = m; b; b &= b - 1) self(self, m & ~(b & -b));
    chosen.push_back(m);
  };
  for (int attempt = 0; attempt < 40; ++attempt) {
    const auto before = chosen;
    close(close, mask_dist(rng));
    if (chosen.size() > max_cells) {
      chosen = before;
      break;
    }
  }
  std::sort(chosen.begin(), chosen.end(), [](std::uint32_t a, std::uint32_t b) {
    return std::popcount(a) != std::popcount(b) ? std::popcount(a) < std::popcount(b) : a < b;
  });

  FilteredComplex c;
  std::vector<std::pair<std::uint32_t, std::size_t>> ids;
  auto id_of = [&](std::uint32_t m) {
    for (auto [mm, id] : ids)
      if (mm == m) return id;
    return std::size_t(-1);
  };
  for (std::uint32_t m : chosen) {
    std::vector<FilteredComplex::Entry> boundary;
    double f = grid(rng) * 0.5;
    int i = 0;
    for (int vtx = 0; vtx < v; ++vtx) {
      if (!(m >> vtx & 1)) continue;
      if (std::popcount(m) > 1) {
        const std::size_t fid = id_of(m & ~(1u << vtx));
        f = std::max(f, c.cell(fid).filtration);
        boundary.push_back({fid, i % 2 == 0 ? 1LL : -1LL});
      }
      ++i;
    }
    ids.emplace_back(m, c.add_cell(std::popcount(m) - 1, f, std::move(boundary)));
  }
  return c;
}

/// Rank of a dense integer matrix over Q (p == 0) or F_p.
inline long dense_rank(std::vector<std::vector<long long>> m, std::uint32_t p = 0) {
  if (m.empty()) return 0;
  const std::size_t rows = m.size(), cols = m[0].size();
  if (p == 0) {
    std::vector<std::vector<mpq_class>> a(rows, std::vector<mpq_class>(cols));
    for (std::size_t i = 0; i < rows; ++i)
      for (std::size_t j = 0; j < cols; ++j) a[i][j] = static_cast<long>(m[i][j]);
    long rank = 0;
    for (std::size_t col = 0; col < cols && static_cast<std::size_t>(rank) < rows; ++col) {
      std::size_t piv = rank;
      while (piv < rows && a[piv][col] == 0) ++piv;
      if (piv == rows) continue;
      std::swap(a[piv], a[rank]);
      for (std::size_t i = rank + 1; i < rows; ++i) {
        if (a[i][col] == 0) continue;
        const mpq_class f = a[i][col] / a[rank][col];
        for (std::size_t j = col; j < cols; ++j) a[i][j] -= f * a[rank][j];
      }
      ++rank;
    }
    return rank;
  }
  auto mod = [&](long long v) { return static_cast<std::uint64_t>(((v % (long long)p) + p) % p); };
  auto inv = [&](std::uint64_t a) {
    std::uint64_t r = 1, e = p - 2;
    while (e) {
      if (e & 1) r = r * a % p;
      a = a * a % p;
      e >>= 1;
    }
    return r;
  };
  std::vector<std::vector<std::uint64_t>> a(rows, std::vector<std::uint64_t>(cols));
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j) a[i][j] = mod(m[i][j]);
  long rank = 0;
  for (std::size_t col = 0; col < cols && static_cast<std::size_t>(rank) < rows; ++col) {
    std::size_t piv = rank;
    while (piv < rows && a[piv][col] == 0) ++piv;
    if (piv == rows) continue;
    std::swap(a[piv], a[rank]);
    const std::uint64_t iv = inv(a[rank][col]);
    for (std::size_t i = rank + 1; i < rows; ++i) {
      if (a[i][col] == 0) continue;
      const std::uint64_t f = a[i][col] * iv % p;
      for (std::size_t j = col; j < cols; ++j) a[i][j] = (a[i][j] + p - f * a[rank][j] % p) % p;
    }
    ++rank;
  }
  return rank;
}

/// β_k of the subcomplex of cells with filtration ≤ s, from dense ranks.
inline long betti_at(const FilteredComplex& c, int k, double s, std::uint32_t p = 0) {
  std::vector<std::size_t> in_k, in_km1, in_kp1;
  for (std::size_t id = 0; id < c.size(); ++id) {
    const auto& cell = c.cell(id);
    if (cell.filtration > s) continue;
    if (cell.degree == k) in_k.push_back(id);
    if (cell.degree == k - 1) in_km1.push_back(id);
    if (cell.degree == k + 1) in_kp1.push_back(id);
  }
  auto boundary_matrix = [&](const std::vector<std::size_t>& rows, const std::vector<std::size_t>& cols) {
    std::vector<std::vector<long long>> m(rows.size(), std::vector<long long>(cols.size(), 0));
    for (std::size_t j = 0; j < cols.size(); ++j)
      for (const auto& e : c.cell(cols[j]).boundary) {
        const auto it = std::find(rows.begin(), rows.end(), e.cell);
        if (it != rows.end()) m[it - rows.begin()][j] += e.coeff;
      }
    return m;
  };
  const long rk = in_km1.empty() || in_k.empty() ? 0 : dense_rank(boundary_matrix(in_km1, in_k), p);
  const long rk1 = in_k.empty() || in_kp1.empty() ? 0 : dense_rank(boundary_matrix(in_k, in_kp1), p);
  return static_cast<long>(in_k.size()) - rk - rk1;
}

/// Σ over nonempty subsets of (-1)^(#A-1) exp(-diam(A) t), evaluated
/// directly at t by iterating masks.
inline double subsets_value(const FiniteMetricSpace& x, double t) {
  const std::size_t n = x.size();
  double total = 0.0;
  for (std::uint64_t mask = 1; mask < (std::uint64_t{1} << n); ++mask) {
    double diam = 0.0;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j)
        if ((mask >> i & 1) && (mask >> j & 1)) diam = std::max(diam, x(i, j));
    total += (std::popcount(mask) % 2 == 1 ? 1.0 : -1.0) * std::exp(-diam * t);
  }
  return total;
}

/// 50-digit floats for checks whose tolerance falls below double resolution.
using Big = boost::multiprecision::cpp_bin_float_50;

/// Σ w for Z w = 1, Z = exp(-t d), by partial pivoting in 50 digits. Throws
/// on a numerically singular matrix.
inline Big leinster_big(const FiniteMetricSpace& x, double t) {
  const std::size_t n = x.size();
  std::vector<std::vector<Big>> a(n, std::vector<Big>(n + 1, Big(1)));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) a[i][j] = exp(-Big(t) * Big(x(i, j)));
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t piv = col;
    for (std::size_t i = col + 1; i < n; ++i)
      if (abs(a[i][col]) > abs(a[piv][col])) piv = i;
    if (abs(a[piv][col]) < Big("1e-40")) throw std::runtime_error("leinster_big: singular");
    std::swap(a[piv], a[col]);
    for (std::size_t i = col + 1; i < n; ++i) {
      const Big f = a[i][col] / a[col][col];
      for (std::size_t j = col; j <= n; ++j) a[i][j] -= f * a[col][j];
    }
  }
  std::vector<Big> w(n);
  Big total = 0;
  for (std::size_t i = n; i-- > 0;) {
    Big v = a[i][n];
    for (std::size_t j = i + 1; j < n; ++j) v -= a[i][j] * w[j];
    w[i] = v / a[i][i];
    total += w[i];
  }
  return total;
}

/// Σ_k (-1)^k Σ_bars (e^{-at} - e^{-bt}), bar by bar in 50 digits.
inline Big barcode_value_big(const magnikit::GradedBarcode& g, double t) {
  Big total = 0;
  for (const auto& [k, b] : g.degrees())
    for (const auto& bar : b.bars) {
      Big v = exp(-Big(t) * Big(bar.start()));
      if (!bar.is_infinite()) v -= exp(-Big(t) * Big(bar.end()));
      total += k % 2 == 0 ? v : -v;
    }
  return total;
}

inline bool near(double a, double b, double tol) { return std::abs(a - b) <= tol * std::max(1.0, std::abs(b)); }

}  // namespace testing
