#include "magnikit/barcode.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace magnikit {

Interval::Interval(double start, double end) : start_(start), end_(end) {
  if (!std::isfinite(start)) throw std::invalid_argument("Interval: start must be finite");
  if (std::isnan(end) || !(start < end))
    throw std::invalid_argument("Interval: start must be strictly below end");
}

namespace {

std::optional<Interval> make_if_nonempty(double start, double end) {
  if (!std::isfinite(start) || !(start < end)) return std::nullopt;
  return Interval(start, end);
}

}  // namespace

std::optional<Interval> tensor(const Interval& x, const Interval& y) {
  const double a = x.start(), b = x.end(), c = y.start(), d = y.end();
  return make_if_nonempty(a + c, std::min(a + d, b + c));
}

std::optional<Interval> tor1(const Interval& x, const Interval& y) {
  const double a = x.start(), b = x.end(), c = y.start(), d = y.end();
  return make_if_nonempty(std::max(a + d, b + c), b + d);
}

std::vector<Interval> Barcode::sorted() const {
  auto out = bars;
  std::sort(out.begin(), out.end());
  return out;
}

Barcode disjoint_union(const Barcode& a, const Barcode& b) {
  Barcode out = a;
  out.bars.insert(out.bars.end(), b.bars.begin(), b.bars.end());
  return out;
}

Barcode rescale(const Barcode& b, double t0) {
  if (!(t0 > 0.0)) throw std::invalid_argument("rescale: scale factor must be positive");
  Barcode out;
  for (const auto& bar : b.bars) out.add(Interval(t0 * bar.start(), t0 * bar.end()));
  return out;
}

GradedBarcode::GradedBarcode(std::initializer_list<std::pair<const int, Barcode>> init) {
  for (const auto& [degree, bars] : init)
    for (const auto& bar : bars.bars) add(degree, bar);
}

void GradedBarcode::add(int degree, Interval bar) {
  if (degree < 0) throw std::invalid_argument("GradedBarcode: negative degree");
  by_degree_[degree].add(bar);
}

const Barcode& GradedBarcode::at(int degree) const {
  static const Barcode empty;
  auto it = by_degree_.find(degree);
  return it == by_degree_.end() ? empty : it->second;
}

std::size_t GradedBarcode::total_bars() const {
  std::size_t n = 0;
  for (const auto& [_, b] : by_degree_) n += b.size();
  return n;
}

int GradedBarcode::max_degree() const {
  return by_degree_.empty() ? -1 : by_degree_.rbegin()->first;
}

GradedBarcode GradedBarcode::truncated(int degree) const {
  GradedBarcode out;
  for (const auto& [k, b] : by_degree_)
    if (k <= degree) out.by_degree_[k] = b;
  return out;
}

bool GradedBarcode::same_bars(const GradedBarcode& other) const {
  if (by_degree_.size() != other.by_degree_.size()) return false;
  for (const auto& [k, b] : by_degree_) {
    if (b.sorted() != other.at(k).sorted()) return false;
  }
  return true;
}

ExpSum magnitude(const Barcode& b) {
  std::vector<ExpSum::Term> terms;
  terms.reserve(2 * b.size());
  for (const auto& bar : b.bars) {
    terms.push_back({1.0, bar.start()});
    if (!bar.is_infinite()) terms.push_back({-1.0, bar.end()});
  }
  return ExpSum(std::move(terms));
}

ExpSum graded_magnitude(const GradedBarcode& g) {
  std::vector<ExpSum::Term> terms;
  for (const auto& [k, b] : g.degrees()) {
    const double sign = k % 2 == 0 ? 1.0 : -1.0;
    for (const auto& bar : b.bars) {
      terms.push_back({sign, bar.start()});
      if (!bar.is_infinite()) terms.push_back({-sign, bar.end()});
    }
  }
  return ExpSum(std::move(terms));
}

ExpSum graded_points_magnitude(const std::vector<double>& points) {
  std::vector<ExpSum::Term> terms;
  for (double a : points) terms.push_back({1.0, a});
  return ExpSum(std::move(terms));
}

GradedPoints gr(const Barcode& b) {
  GradedPoints out;
  for (const auto& bar : b.bars) {
    out.gr0.push_back(bar.start());
    if (!bar.is_infinite()) out.gr1.push_back(bar.end());
  }
  std::sort(out.gr0.begin(), out.gr0.end());
  std::sort(out.gr1.begin(), out.gr1.end());
  return out;
}

TensorResult tensor_barcodes(const GradedBarcode& x, const GradedBarcode& y) {
  TensorResult out;
  for (const auto& [i, bx] : x.degrees()) {
    for (const auto& [j, by] : y.degrees()) {
      for (const auto& p : bx.bars) {
        for (const auto& q : by.bars) {
          if (auto t = tensor(p, q)) out.tensor.add(i + j, *t);
          if (auto t = tor1(p, q)) out.tor1.add(i + j, *t);
        }
      }
    }
  }
  return out;
}

namespace {

std::vector<double> endpoints(const GradedBarcode& g) {
  std::vector<double> pts;
  for (const auto& [_, b] : g.degrees()) {
    for (const auto& bar : b.bars) {
      pts.push_back(bar.start());
      if (!bar.is_infinite()) pts.push_back(bar.end());
    }
  }
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  return pts;
}

}  // namespace

RankCurve rank_curve(const GradedBarcode& g) {
  RankCurve curve;
  curve.breakpoints = endpoints(g);
  for (double s : curve.breakpoints) {
    std::map<int, long> ranks;
    for (const auto& [k, b] : g.degrees()) {
      long r = 0;
      for (const auto& bar : b.bars) r += bar.contains(s) ? 1 : 0;
      if (r != 0) ranks[k] = r;
    }
    curve.values.push_back(std::move(ranks));
  }
  return curve;
}

EulerCurve euler_curve(const GradedBarcode& g) {
  const RankCurve ranks = rank_curve(g);
  EulerCurve curve;
  curve.breakpoints = ranks.breakpoints;
  for (const auto& r : ranks.values) {
    long chi = 0;
    for (const auto& [k, v] : r) chi += k % 2 == 0 ? v : -v;
    curve.values.push_back(chi);
  }
  return curve;
}

ExpSum magnitude_via_euler(const GradedBarcode& g) {
  const EulerCurve chi = euler_curve(g);
  std::vector<ExpSum::Term> terms;
  const std::size_t n = chi.breakpoints.size();
  for (std::size_t j = 0; j < n; ++j) {
    const double c = static_cast<double>(chi.values[j]);
    if (c == 0.0) continue;
    terms.push_back({c, chi.breakpoints[j]});
    if (j + 1 < n) terms.push_back({-c, chi.breakpoints[j + 1]});
  }
  return ExpSum(std::move(terms));
}

}  // namespace magnikit
