#include "magnikit/maghom.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>
#include <unordered_map>

#include "magnikit/kernels.hpp"

namespace magnikit {

namespace {

using kernels::TupleLayer;
using kernels::TupleTable;

std::string key_of(const std::uint16_t* tuple, std::size_t width) {
  return std::string(reinterpret_cast<const char*>(tuple), width * sizeof(std::uint16_t));
}

// Index of the ℓ-value matching l, or -1.
long find_level(const std::vector<double>& levels, double l) {
  auto it = std::lower_bound(levels.begin(), levels.end(), l);
  if (it != levels.end() && Tolerance::same_rate(*it, l)) return it - levels.begin();
  if (it != levels.begin() && Tolerance::same_rate(*std::prev(it), l)) return it - levels.begin() - 1;
  return -1;
}

TupleTable tuples(const FiniteMetricSpace& x, int max_degree, double length_cap, const MaghomOptions& o) {
  return o.parallel ? kernels::enumerate_tuples_omp(x, max_degree, length_cap, o.tuple_cap)
                    : kernels::enumerate_tuples_serial(x, max_degree, length_cap, o.tuple_cap);
}

// Length of the tuple with entry i removed.
double face_length(const FiniteMetricSpace& x, const std::uint16_t* t, int k, double length, int i) {
  if (i == 0) return length - x(t[0], t[1]);
  if (i == k) return length - x(t[k - 1], t[k]);
  return length - x(t[i - 1], t[i]) - x(t[i], t[i + 1]) + x(t[i - 1], t[i + 1]);
}

// The tuple with entry i removed is degenerate when its neighbours coincide.
bool degenerate_face(const std::uint16_t* t, int k, int i) { return i > 0 && i < k && t[i - 1] == t[i + 1]; }

std::vector<std::uint16_t> remove_entry(const std::uint16_t* t, int k, int i) {
  std::vector<std::uint16_t> face;
  face.reserve(k);
  for (int m = 0; m <= k; ++m)
    if (m != i) face.push_back(t[m]);
  return face;
}

int degree_limit(double l_max, double delta) {
  return static_cast<int>(std::floor(l_max / delta + 1e-9));
}

// Ranks of the magnitude chain complex MC_{*,l} built from the listed tuples
// (all of length l), for degrees ≤ k_max.
std::map<int, long> ranks_at_level(const FiniteMetricSpace& x, const TupleTable& table,
                                   const std::vector<std::vector<std::size_t>>& members, double l, int k_max,
                                   const FieldConfig& field) {
  FilteredComplex c;
  std::unordered_map<std::string, std::size_t> id_of;
  for (std::size_t k = 0; k < members.size(); ++k) {
    const TupleLayer& layer = table.layers[k];
    const int deg = static_cast<int>(k);
    for (std::size_t idx : members[k]) {
      const std::uint16_t* t = layer.tuple(idx);
      std::vector<FilteredComplex::Entry> boundary;
      for (int i = 0; deg > 0 && i <= deg; ++i) {
        if (degenerate_face(t, deg, i)) continue;
        const double fl = face_length(x, t, deg, layer.lengths[idx], i);
        if (!Tolerance::same_rate(fl, l)) continue;  // length drops: omitted
        const auto face = remove_entry(t, deg, i);
        auto it = id_of.find(key_of(face.data(), face.size()));
        if (it == id_of.end()) continue;
        boundary.push_back({it->second, i % 2 == 0 ? 1LL : -1LL});
      }
      const std::size_t id = c.add_cell(deg, l, std::move(boundary));
      id_of.emplace(key_of(t, deg + 1), id);
    }
  }
  std::map<int, long> out;
  for (const auto& [k, r] : betti_numbers(c, field))
    if (k <= k_max) out[k] = r;
  return out;
}

}  // namespace

long RankTable::rank(int k, double l) const {
  for (const auto& [key, r] : entries)
    if (key.first == k && Tolerance::same_rate(key.second, l)) return r;
  return 0;
}

long RankTable::euler_characteristic(double l) const {
  long chi = 0;
  for (const auto& [key, r] : entries)
    if (Tolerance::same_rate(key.second, l)) chi += key.first % 2 == 0 ? r : -r;
  return chi;
}

RankTable mh_ranks(const FiniteMetricSpace& x, int k_max, double l_max, const MaghomOptions& options) {
  if (k_max < 0) throw std::invalid_argument("mh_ranks: k_max must be nonnegative");
  if (l_max < 0) throw std::invalid_argument("mh_ranks: l_max must be nonnegative");
  RankTable table;
  table.k_max = k_max;
  const std::size_t n = x.size();
  if (n == 0) return table;
  if (n == 1) {
    table.l_values = {0.0};
    table.entries[{0, 0.0}] = 1;
    return table;
  }
  table.delta = min_nonzero_distance(x);
  table.l_values = l_values(x, l_max);
  const int max_degree = std::min(k_max + 1, degree_limit(l_max, table.delta));
  const TupleTable all = tuples(x, max_degree, l_max, options);

  // members[level][degree] = tuple indices within that layer.
  const std::size_t levels = table.l_values.size();
  std::vector<std::vector<std::vector<std::size_t>>> members(
      levels, std::vector<std::vector<std::size_t>>(all.layers.size()));
  for (std::size_t k = 0; k < all.layers.size(); ++k) {
    const auto& layer = all.layers[k];
    for (std::size_t i = 0; i < layer.size(); ++i) {
      const long level = find_level(table.l_values, layer.lengths[i]);
      if (level < 0) throw std::logic_error("mh_ranks: tuple length missing from the ℓ-values");
      members[level][k].push_back(i);
    }
  }

  std::vector<std::map<int, long>> ranks(levels);
  std::exception_ptr failure;
#pragma omp parallel for schedule(dynamic) if (options.parallel)
  for (long j = 0; j < static_cast<long>(levels); ++j) {
    try {
      ranks[j] = ranks_at_level(x, all, members[j], table.l_values[j], k_max, options.field);
    } catch (...) {
#pragma omp critical
      failure = std::current_exception();
    }
  }
  if (failure) std::rethrow_exception(failure);

  for (std::size_t j = 0; j < levels; ++j)
    for (const auto& [k, r] : ranks[j])
      if (r != 0) table.entries[{k, table.l_values[j]}] = r;
  return table;
}

FilteredComplex bmc_complex(const FiniteMetricSpace& x, int k_max, const MaghomOptions& options) {
  if (k_max < 0) throw std::invalid_argument("bmc_complex: k_max must be nonnegative");
  const TupleTable all = tuples(x, k_max + 1, kInfinity, options);
  FilteredComplex c;
  std::unordered_map<std::string, std::size_t> id_of;
  for (const auto& layer : all.layers) {
    const int deg = layer.degree;
    for (std::size_t idx = 0; idx < layer.size(); ++idx) {
      const std::uint16_t* t = layer.tuple(idx);
      std::vector<FilteredComplex::Entry> boundary;
      // Rounding in ℓ must never let a face enter after its coface.
      double filtration = layer.lengths[idx];
      for (int i = 0; deg > 0 && i <= deg; ++i) {
        if (degenerate_face(t, deg, i)) continue;
        const auto face = remove_entry(t, deg, i);
        const std::size_t fid = id_of.at(key_of(face.data(), face.size()));
        filtration = std::max(filtration, c.cell(fid).filtration);
        boundary.push_back({fid, i % 2 == 0 ? 1LL : -1LL});
      }
      const std::size_t id = c.add_cell(deg, filtration, std::move(boundary));
      id_of.emplace(key_of(t, deg + 1), id);
    }
  }
  return c;
}

BmhResult bmh_magnitude_partial(const FiniteMetricSpace& x, int k_max, const MaghomOptions& options) {
  BmhResult out;
  out.barcode = reduce(bmc_complex(x, k_max, options), options.field).truncated(k_max);
  out.magnitude = graded_magnitude(out.barcode);
  return out;
}

double tail_bound(std::size_t n, double delta, int k_max, double t) {
  if (k_max < 0) throw std::invalid_argument("tail_bound: k_max must be nonnegative");
  const double ratio = static_cast<double>(n) * std::exp(-delta * t);
  if (!(ratio < 1.0)) throw std::domain_error("tail_bound: n e^{-δt} must be below 1");
  return static_cast<double>(n) * std::pow(ratio, k_max + 1) / (1.0 - ratio);
}

double convergence_threshold(std::size_t n, double delta, double ratio) {
  return std::log(static_cast<double>(n) / ratio) / delta;
}

Estimate alternating_sum_magnitude(const FiniteMetricSpace& x, double l_max, double t,
                                   const MaghomOptions& options) {
  const std::size_t n = x.size();
  if (n <= 1) return {static_cast<double>(n), 0.0};
  const double delta = min_nonzero_distance(x);
  const double ratio = static_cast<double>(n) * std::exp(-delta * t);
  if (!(ratio < 1.0)) throw std::domain_error("alternating_sum_magnitude: n e^{-δt} must be below 1");

  const int kk = degree_limit(l_max, delta);
  const RankTable table = mh_ranks(x, kk, l_max, options);
  Estimate out;
  for (double l : table.l_values) out.value += table.euler_characteristic(l) * std::exp(-l * t);

  // Every omitted tuple has length > l_max and, in degree k, at least kδ;
  // there are at most n^{k+1} tuples of degree k.
  const double nd = static_cast<double>(n);
  double low_degrees = 0.0;
  for (int k = 0; k <= kk; ++k) low_degrees += std::pow(nd, k + 1);
  out.error_bound = low_degrees * std::exp(-l_max * t) + nd * std::pow(ratio, kk + 1) / (1.0 - ratio);
  return out;
}

LesSides les_sides(const FiniteMetricSpace& x, std::size_t j, const MaghomOptions& options) {
  LesSides out;
  const std::size_t n = x.size();
  if (n <= 1 || j == 0) {
    out.l = 0.0;
    out.magnitude_homology = out.blurred_difference = static_cast<long>(j == 0 ? n : 0);
    return out;
  }
  const double delta = min_nonzero_distance(x);
  // 0, δ, ..., jδ are all ℓ-values, so the first j + 1 lie below jδ.
  const auto levels = l_values(x, static_cast<double>(j) * delta);
  const double lj = levels.at(j), lprev = levels.at(j - 1);
  out.l = lj;
  const int kk = degree_limit(lj, delta);

  out.magnitude_homology = mh_ranks(x, kk, lj, options).euler_characteristic(lj);

  const GradedBarcode bmh = reduce(bmc_complex(x, kk, options), options.field);
  auto rank_at = [&](const Barcode& b, double l) {
    const double eps = Tolerance::kRateAbs + Tolerance::kRateRel * std::abs(l);
    long r = 0;
    for (const auto& bar : b.bars) r += (bar.start() <= l + eps && bar.end() > l + eps) ? 1 : 0;
    return r;
  };
  for (const auto& [k, b] : bmh.degrees()) {
    if (k > kk) continue;
    const long diff = rank_at(b, lj) - rank_at(b, lprev);
    out.blurred_difference += k % 2 == 0 ? diff : -diff;
  }
  return out;
}

bool les_rank_check(const FiniteMetricSpace& x, std::size_t j, const MaghomOptions& options) {
  const LesSides s = les_sides(x, j, options);
  return s.magnitude_homology == s.blurred_difference;
}

}  // namespace magnikit
