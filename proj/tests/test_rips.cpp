#include <doctest.h>

#include <cmath>
#include <cstdlib>
#include <random>

#include "magnikit/closedforms.hpp"
#include "magnikit/rips.hpp"
#include "support.hpp"

using namespace magnikit;

namespace {

// Brute-force simplex counts of the Rips complex at scale r.
std::vector<long long> brute_simplex_counts(const FiniteMetricSpace& x, double r) {
  std::vector<long long> out;
  const std::size_t n = x.size();
  for (std::uint64_t mask = 1; mask < (std::uint64_t{1} << n); ++mask) {
    bool in = true;
    for (std::size_t i = 0; i < n && in; ++i)
      for (std::size_t j = i + 1; j < n && in; ++j)
        if ((mask >> i & 1) && (mask >> j & 1) && x(i, j) > r + 1e-9) in = false;
    if (!in) continue;
    const std::size_t dim = std::popcount(mask) - 1;
    if (out.size() <= dim) out.resize(dim + 1, 0);
    ++out[dim];
  }
  return out;
}

}  // namespace

TEST_CASE("Rips filtration cells") {
  const double d = 1.2;
  const FiniteMetricSpace two({"a", "b"}, {{0, d}, {d, 0}});
  const FilteredComplex c = rips_filtration(two, 1);
  REQUIRE(c.size() == 3);
  CHECK(c.cell(2).degree == 1);
  CHECK(c.cell(2).filtration == d);
  const FiniteMetricSpace tri({"a", "b", "c"}, {{0, d, d}, {d, 0, d}, {d, d, 0}});
  const FilteredComplex t = rips_filtration(tri, 2);
  CHECK(t.size() == 7);
  CHECK(t.cell(6).degree == 2);
  CHECK(t.cell(6).filtration == d);
  CHECK(rips_filtration(tri, 1).size() == 6);
  CHECK_THROWS_AS(rips_filtration(tri, 3), std::invalid_argument);
}

TEST_CASE("Rips magnitude of complete multipartite graphs") {
  CHECK(rips_magnitude_subsets(complete_multipartite_graph({5, 6})) == ExpSum({{11, 0}, {-30, 1}, {20, 2}}));
  CHECK(rips_magnitude_subsets(complete_multipartite_graph({4, 4, 4})) == ExpSum({{12, 0}, {16, 1}, {-27, 2}}));
  CHECK(approx_equal(rips_magnitude_subsets(real_line_points({0, 0.3, 1})), ExpSum({{3, 0}, {-1, 0.3}, {-1, 0.7}}),
                     1e-12));
}

TEST_CASE("Euler route on small spaces") {
  const double d = 0.4;
  const FiniteMetricSpace two({"a", "b"}, {{0, d}, {d, 0}});
  CHECK(rips_magnitude_euler(two) == ExpSum({{2, 0}, {-1, d}}));
  CHECK(rips_magnitude_euler(cycle_graph(6)) == ExpSum({{6, 0}, {-6, 1}, {2, 2}, {-1, 3}}));
}

TEST_CASE("barcode route on small spaces") {
  const double d = 0.4;
  const FiniteMetricSpace two({"a", "b"}, {{0, d}, {d, 0}});
  const auto r = rips_magnitude_barcode(two);
  CHECK(r.barcode.same_bars(GradedBarcode{{0, Barcode{Interval(0, kInfinity), Interval(0, d)}}}));
  CHECK(r.magnitude == ExpSum({{2, 0}, {-1, d}}));
  CHECK_FALSE(r.truncated);
  CHECK(rips_magnitude_barcode(FiniteMetricSpace({"p"}, {{0}})).magnitude == ExpSum::constant(1));
  const auto c6 = rips_magnitude_barcode(cycle_graph(6));
  CHECK(c6.magnitude == ExpSum({{6, 0}, {-6, 1}, {2, 2}, {-1, 3}}));
  CHECK(rips_magnitude_barcode(cycle_graph(6), 2).truncated);
}

TEST_CASE("three routes agree") {
  std::mt19937_64 rng(testing::kDefaultSeed);
  for (int i = 0; i < 60; ++i) {
    const FiniteMetricSpace x = testing::random_space(rng, 1 + i % 8, i);
    const ExpSum subsets = rips_magnitude_subsets(x);
    CHECK(approx_equal(rips_magnitude_euler(x), subsets, 1e-9));
    CHECK(approx_equal(rips_magnitude_barcode(x).magnitude, subsets, 1e-9));
    CHECK(approx_equal(rips_magnitude_subsets(x, default_subset_cap(), false), subsets, 0));
    for (double t : {0.5, 2.0}) CHECK(subsets(t) == doctest::Approx(testing::subsets_value(x, t)).epsilon(1e-10));
  }
  for (int n = 3; n <= 10; ++n) {
    const FiniteMetricSpace c = cycle_graph(n);
    const ExpSum subsets = rips_magnitude_subsets(c);
    CHECK(approx_equal(rips_magnitude_euler(c), subsets, 1e-9));
    CHECK(approx_equal(rips_magnitude_barcode(c).magnitude, subsets, 1e-9));
  }
}

TEST_CASE("Rips magnitude limits and scaling") {
  std::mt19937_64 rng(testing::kDefaultSeed + 1);
  for (int i = 0; i < 40; ++i) {
    const FiniteMetricSpace x = testing::random_space(rng, 1 + i % 9, i);
    const ExpSum f = rips_magnitude_subsets(x);
    CHECK(std::abs(limit_at_zero(f) - 1) <= 1e-9);
    CHECK(limit_at_infinity(f) == static_cast<double>(x.size()));
    CHECK(approx_equal(rips_magnitude_subsets(x.scaled(2.5)), rescale(f, 2.5), 1e-12));
  }
}

TEST_CASE("adding a point on the line never lowers the magnitude") {
  std::mt19937_64 rng(testing::kDefaultSeed + 2);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int i = 0; i < 30; ++i) {
    std::vector<double> pts;
    for (int j = 0; j < 2 + i % 6; ++j) pts.push_back(u(rng));
    std::sort(pts.begin(), pts.end());
    auto more = pts;
    more.push_back(u(rng));
    std::sort(more.begin(), more.end());
    const ExpSum a = rips_magnitude_subsets(real_line_points(pts)), b = rips_magnitude_subsets(real_line_points(more));
    for (double t : {0.5, 1.0, 2.0}) CHECK(a(t) <= b(t) + 1e-12);
  }
}

TEST_CASE("simplex counts of Rips complexes") {
  std::mt19937_64 rng(testing::kDefaultSeed + 3);
  for (int i = 0; i < 20; ++i) {
    const FiniteMetricSpace x = testing::random_space(rng, 3 + i % 8, i);
    for (const auto& level : distinct_distances(x))
      CHECK(rips_simplex_counts(x, level.threshold) == brute_simplex_counts(x, level.threshold));
  }
  for (int n = 3; n <= 12; ++n) {
    const FiniteMetricSpace c = cycle_graph(n);
    const FilteredComplex f = rips_filtration(c, n - 1, false);
    for (int r = 0; r < n / 2; ++r) {
      std::vector<long long> from_filtration;
      for (const auto& cell : f.cells()) {
        if (cell.filtration > r) continue;
        if (from_filtration.size() <= static_cast<std::size_t>(cell.degree)) from_filtration.resize(cell.degree + 1, 0);
        ++from_filtration[cell.degree];
      }
      CHECK(rips_simplex_counts(c, r) == from_filtration);
      for (std::size_t i = 0; i < from_filtration.size(); ++i)
        CHECK(simplex_count(n, r, static_cast<int>(i)) == from_filtration[i]);
    }
  }
}

TEST_CASE("distinct distances group near-ties") {
  const auto levels = distinct_distances(euclidean_cycle(7));
  CHECK(levels.size() == 4);
  CHECK(levels.front().representative == 0);
  for (const auto& l : levels) CHECK(l.representative <= l.threshold);
}

TEST_CASE("subset cap") {
  CHECK(default_subset_cap() == 22);
  CHECK_THROWS_AS(rips_magnitude_subsets(cycle_graph(8), 7), std::length_error);
  CHECK_THROWS_AS(rips_magnitude_euler(cycle_graph(8), 7), std::length_error);
  setenv("MAGNIKIT_SUBSET_CAP", "5", 1);
  CHECK(default_subset_cap() == 5);
  RipsOptions o;
  CHECK(o.subset_cap == 5);
  CHECK_THROWS_AS(rips_magnitude(cycle_graph(6), o), std::length_error);
  unsetenv("MAGNIKIT_SUBSET_CAP");
  RipsOptions e;
  e.method = RipsOptions::Method::EulerCurve;
  CHECK(rips_magnitude(cycle_graph(6), e) == cycle_magnitude(6, CycleKind::GraphMetric));
}
