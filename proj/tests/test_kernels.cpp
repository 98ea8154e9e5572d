#include <doctest.h>

#include <map>
#include <omp.h>
#include <random>

#include "magnikit/kernels.hpp"
#include "support.hpp"

using namespace magnikit;
using namespace magnikit::kernels;

namespace {

// Signed counts keyed by exact diameter, straight from the subset masks.
std::map<double, long long> brute_counts(const FiniteMetricSpace& x) {
  std::map<double, long long> out;
  const std::size_t n = x.size();
  for (std::uint64_t mask = 1; mask < (std::uint64_t{1} << n); ++mask) {
    double diam = 0.0;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j)
        if ((mask >> i & 1) && (mask >> j & 1)) diam = std::max(diam, x(i, j));
    out[diam] += std::popcount(mask) % 2 == 1 ? 1 : -1;
  }
  return out;
}

// All tuples with consecutive entries distinct, by odometer over n^(k+1).
std::vector<std::pair<std::vector<std::uint16_t>, double>> brute_tuples(const FiniteMetricSpace& x, int k,
                                                                       double cap) {
  std::vector<std::pair<std::vector<std::uint16_t>, double>> out;
  const std::size_t n = x.size();
  std::vector<std::uint16_t> t(k + 1, 0);
  while (true) {
    bool ok = true;
    double l = 0.0;
    for (int i = 0; i < k; ++i) {
      if (t[i] == t[i + 1]) ok = false;
      l += x(t[i], t[i + 1]);
    }
    if (ok && l <= cap + 1e-9) out.emplace_back(t, l);
    int pos = k;
    while (pos >= 0 && ++t[pos] == n) t[pos--] = 0;
    if (pos < 0) break;
  }
  return out;
}

}  // namespace

TEST_CASE("signed diameter counts match direct subset enumeration") {
  std::mt19937_64 rng(testing::kDefaultSeed);
  for (int i = 0; i < 60; ++i) {
    const FiniteMetricSpace x = testing::random_space(rng, 1 + i % 11, i);
    const DiameterCounts got = signed_diameter_counts_serial(x);
    const auto want = brute_counts(x);
    long long total = 0;
    for (auto c : got.signed_counts) total += c;
    CHECK(total == 1);
    for (std::size_t j = 0; j < got.distances.size(); ++j) {
      long long expected = 0;
      for (auto [d, c] : want)
        if (Tolerance::same_rate(d, got.distances[j])) expected += c;
      CHECK(got.signed_counts[j] == expected);
    }
  }
}

TEST_CASE("OpenMP and serial diameter counts are identical") {
  std::mt19937_64 rng(testing::kDefaultSeed + 1);
  for (int threads : {1, 2, 4}) {
    omp_set_num_threads(threads);
    for (int i = 0; i < 20; ++i) {
      const FiniteMetricSpace x = testing::random_space(rng, 3 + i % 12, i);
      CHECK(signed_diameter_counts_omp(x) == signed_diameter_counts_serial(x));
    }
  }
  omp_set_num_threads(omp_get_num_procs());
}

TEST_CASE("tuple enumeration matches an odometer") {
  std::mt19937_64 rng(testing::kDefaultSeed + 2);
  for (int i = 0; i < 20; ++i) {
    const FiniteMetricSpace x = testing::random_space(rng, 2 + i % 4, i);
    const double cap = i % 2 ? kInfinity : 2.5 * min_nonzero_distance(x);
    const TupleTable table = enumerate_tuples_serial(x, 3, cap, 1'000'000);
    REQUIRE(table.layers.size() == 4);
    for (int k = 0; k <= 3; ++k) {
      const auto want = brute_tuples(x, k, cap);
      const TupleLayer& layer = table.layers[k];
      CHECK(layer.degree == k);
      REQUIRE(layer.size() == want.size());
      for (std::size_t j = 0; j < want.size(); ++j) {
        CHECK(std::equal(want[j].first.begin(), want[j].first.end(), layer.tuple(j)));
        CHECK(layer.lengths[j] == doctest::Approx(want[j].second));
      }
    }
  }
}

TEST_CASE("OpenMP and serial tuple tables are identical") {
  std::mt19937_64 rng(testing::kDefaultSeed + 3);
  for (int threads : {1, 3}) {
    omp_set_num_threads(threads);
    for (int i = 0; i < 10; ++i) {
      const FiniteMetricSpace x = testing::random_space(rng, 3 + i % 5, i);
      CHECK(enumerate_tuples_omp(x, 4, kInfinity, 1'000'000) == enumerate_tuples_serial(x, 4, kInfinity, 1'000'000));
      const double cap = 3 * min_nonzero_distance(x);
      CHECK(enumerate_tuples_omp(x, 5, cap, 1'000'000) == enumerate_tuples_serial(x, 5, cap, 1'000'000));
    }
  }
  omp_set_num_threads(omp_get_num_procs());
}

TEST_CASE("tuple cap is enforced") {
  const FiniteMetricSpace c5 = cycle_graph(5);
  CHECK(enumerate_tuples_serial(c5, 4, kInfinity, 10'000).total() == 5 + 20 + 80 + 320 + 1280);
  CHECK_THROWS_AS(enumerate_tuples_serial(c5, 4, kInfinity, 1000), std::length_error);
  CHECK_THROWS_AS(enumerate_tuples_omp(c5, 4, kInfinity, 1000), std::length_error);
}
