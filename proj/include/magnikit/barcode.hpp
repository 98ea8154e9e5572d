#pragma once

#include <limits>
#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "magnikit/expsum.hpp"

namespace magnikit {

inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

/// Half-open interval [start, end) with finite start; end may be +inf.
class Interval {
 public:
  /// Throws std::invalid_argument unless start is finite and start < end.
  Interval(double start, double end);

  double start() const { return start_; }
  double end() const { return end_; }
  bool is_infinite() const { return end_ == kInfinity; }
  bool contains(double s) const { return start_ <= s && s < end_; }

  auto operator<=>(const Interval&) const = default;

 private:
  double start_;
  double end_;
};

/// [a+c, min(a+d, b+c)), or nothing when that range is empty.
std::optional<Interval> tensor(const Interval& x, const Interval& y);
/// [max(a+d, b+c), b+d), or nothing when empty (always the case if either
/// interval is infinite).
std::optional<Interval> tor1(const Interval& x, const Interval& y);

struct Barcode {
  std::vector<Interval> bars;

  Barcode() = default;
  Barcode(std::initializer_list<Interval> init) : bars(init) {}
  explicit Barcode(std::vector<Interval> b) : bars(std::move(b)) {}

  std::size_t size() const { return bars.size(); }
  bool empty() const { return bars.empty(); }
  void add(Interval i) { bars.push_back(i); }

  /// Bars sorted, for multiset comparison.
  std::vector<Interval> sorted() const;
};

/// Multiset union.
Barcode disjoint_union(const Barcode& a, const Barcode& b);
Barcode rescale(const Barcode& b, double t0);

/// Barcodes indexed by homological degree. Empty degrees are not stored.
class GradedBarcode {
 public:
  GradedBarcode() = default;
  GradedBarcode(std::initializer_list<std::pair<const int, Barcode>> init);

  void add(int degree, Interval bar);
  const Barcode& at(int degree) const;
  const std::map<int, Barcode>& degrees() const { return by_degree_; }
  std::size_t total_bars() const;
  /// Highest degree that carries a bar, or -1.
  int max_degree() const;

  /// Drops every degree above `degree`.
  GradedBarcode truncated(int degree) const;

  /// Degree-wise multiset equality.
  bool same_bars(const GradedBarcode& other) const;

 private:
  std::map<int, Barcode> by_degree_;
};

/// Starts (gr0) and finite ends (gr1) of a barcode.
struct GradedPoints {
  std::vector<double> gr0;
  std::vector<double> gr1;
};

ExpSum magnitude(const Barcode& b);
ExpSum graded_magnitude(const GradedBarcode& g);
ExpSum graded_points_magnitude(const std::vector<double>& points);
GradedPoints gr(const Barcode& b);

struct TensorResult {
  GradedBarcode tensor;
  /// Stored at total degree i + j; callers apply any Künneth shift.
  GradedBarcode tor1;
};
TensorResult tensor_barcodes(const GradedBarcode& x, const GradedBarcode& y);

/// Piecewise-constant function with breakpoints r_0 < r_1 < ...; value j
/// holds on [r_j, r_{j+1}), and the function is zero before r_0.
template <class V>
struct StepFunction {
  std::vector<double> breakpoints;
  std::vector<V> values;

  V at(double s) const {
    V v{};
    for (std::size_t j = 0; j < breakpoints.size() && breakpoints[j] <= s; ++j) v = values[j];
    return v;
  }
};

using RankCurve = StepFunction<std::map<int, long>>;
using EulerCurve = StepFunction<long>;

RankCurve rank_curve(const GradedBarcode& g);
EulerCurve euler_curve(const GradedBarcode& g);
ExpSum magnitude_via_euler(const GradedBarcode& g);

}  // namespace magnikit
