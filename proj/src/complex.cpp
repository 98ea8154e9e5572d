#include "magnikit/complex.hpp"

#include <gmpxx.h>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace magnikit {

FieldConfig FieldConfig::prime(std::uint32_t p) {
  if (p < 2) throw std::invalid_argument("FieldConfig: p must be prime");
  for (std::uint32_t d = 2; static_cast<std::uint64_t>(d) * d <= p; ++d)
    if (p % d == 0) throw std::invalid_argument("FieldConfig: p must be prime");
  return {Kind::PrimeField, p};
}

std::string FieldConfig::name() const {
  return kind == Kind::Rationals ? "Q" : "F" + std::to_string(p);
}

std::size_t FilteredComplex::add_cell(int degree, double filtration, std::vector<Entry> boundary) {
  if (degree < 0) throw std::invalid_argument("FilteredComplex: negative degree");
  if (std::isnan(filtration)) throw std::invalid_argument("FilteredComplex: NaN filtration");
  for (const auto& e : boundary) {
    if (e.cell >= cells_.size())
      throw std::invalid_argument("FilteredComplex: boundary references an unknown cell");
    const Cell& face = cells_[e.cell];
    if (face.degree != degree - 1)
      throw std::invalid_argument("FilteredComplex: boundary face has the wrong degree");
    if (face.filtration > filtration)
      throw std::invalid_argument("FilteredComplex: face enters after its coface");
  }
  cells_.push_back({degree, filtration, std::move(boundary)});
  return cells_.size() - 1;
}

int FilteredComplex::max_degree() const {
  int d = -1;
  for (const auto& c : cells_) d = std::max(d, c.degree);
  return d;
}

namespace {

struct RationalOps {
  using Value = mpq_class;
  Value from_int(long long x) const { return Value(static_cast<long>(x)); }
  bool is_zero(const Value& v) const { return sgn(v) == 0; }
  Value mul(const Value& a, const Value& b) const { return a * b; }
  Value sub(const Value& a, const Value& b) const { return a - b; }
  Value add(const Value& a, const Value& b) const { return a + b; }
  Value div(const Value& a, const Value& b) const { return a / b; }
};

struct PrimeOps {
  using Value = std::uint32_t;
  std::uint32_t p;
  Value from_int(long long x) const {
    long long r = x % static_cast<long long>(p);
    return static_cast<Value>(r < 0 ? r + p : r);
  }
  bool is_zero(Value v) const { return v == 0; }
  Value mul(Value a, Value b) const {
    return static_cast<Value>(static_cast<std::uint64_t>(a) * b % p);
  }
  Value add(Value a, Value b) const { return static_cast<Value>((static_cast<std::uint64_t>(a) + b) % p); }
  Value sub(Value a, Value b) const { return static_cast<Value>((static_cast<std::uint64_t>(a) + p - b) % p); }
  Value inv(Value a) const {
    // Fermat: a^(p-2).
    std::uint64_t result = 1, base = a, e = p - 2;
    while (e) {
      if (e & 1) result = result * base % p;
      base = base * base % p;
      e >>= 1;
    }
    return static_cast<Value>(result);
  }
  Value div(Value a, Value b) const { return mul(a, inv(b)); }
};

template <class Ops>
using Column = std::vector<std::pair<std::size_t, typename Ops::Value>>;

// target <- target - factor * source, both sorted by row.
template <class Ops>
void axpy(const Ops& ops, Column<Ops>& target, const typename Ops::Value& factor,
          const Column<Ops>& source) {
  Column<Ops> out;
  out.reserve(target.size() + source.size());
  std::size_t i = 0, j = 0;
  while (i < target.size() || j < source.size()) {
    if (j == source.size() || (i < target.size() && target[i].first < source[j].first)) {
      out.push_back(std::move(target[i++]));
    } else if (i == target.size() || source[j].first < target[i].first) {
      out.emplace_back(source[j].first, ops.sub(ops.from_int(0), ops.mul(factor, source[j].second)));
      ++j;
    } else {
      auto v = ops.sub(target[i].second, ops.mul(factor, source[j].second));
      if (!ops.is_zero(v)) out.emplace_back(target[i].first, std::move(v));
      ++i;
      ++j;
    }
  }
  target = std::move(out);
}

template <class Ops>
void check_squared(const FilteredComplex& c, const Ops& ops) {
  for (std::size_t id = 0; id < c.size(); ++id) {
    std::map<std::size_t, typename Ops::Value> acc;
    for (const auto& e : c.cell(id).boundary) {
      const auto ce = ops.from_int(e.coeff);
      for (const auto& f : c.cell(e.cell).boundary) {
        auto it = acc.try_emplace(f.cell, ops.from_int(0)).first;
        it->second = ops.add(it->second, ops.mul(ce, ops.from_int(f.coeff)));
      }
    }
    for (const auto& [row, v] : acc)
      if (!ops.is_zero(v))
        throw std::logic_error("FilteredComplex: boundary of a boundary is nonzero at cell " +
                               std::to_string(id));
  }
}

template <class Ops>
GradedBarcode reduce_with(const FilteredComplex& c, const Ops& ops) {
  const auto& cells = c.cells();
  const std::size_t n = cells.size();
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    if (cells[a].filtration != cells[b].filtration) return cells[a].filtration < cells[b].filtration;
    return cells[a].degree < cells[b].degree;
  });
  std::vector<std::size_t> position(n);
  for (std::size_t i = 0; i < n; ++i) position[order[i]] = i;

  constexpr std::size_t kNone = static_cast<std::size_t>(-1);
  std::vector<Column<Ops>> reduced(n);
  std::vector<std::size_t> pivot_owner(n, kNone);
  std::vector<bool> is_pivot_row(n, false);

  for (std::size_t j = 0; j < n; ++j) {
    Column<Ops> col;
    for (const auto& e : cells[order[j]].boundary) {
      auto v = ops.from_int(e.coeff);
      if (!ops.is_zero(v)) col.emplace_back(position[e.cell], std::move(v));
    }
    std::sort(col.begin(), col.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
    // Merge repeated faces.
    Column<Ops> merged;
    for (auto& entry : col) {
      if (!merged.empty() && merged.back().first == entry.first) {
        merged.back().second = ops.add(merged.back().second, entry.second);
        if (ops.is_zero(merged.back().second)) merged.pop_back();
      } else {
        merged.push_back(std::move(entry));
      }
    }
    col = std::move(merged);

    while (!col.empty()) {
      const std::size_t low = col.back().first;
      const std::size_t owner = pivot_owner[low];
      if (owner == kNone) break;
      const auto factor = ops.div(col.back().second, reduced[owner].back().second);
      axpy(ops, col, factor, reduced[owner]);
    }
    if (!col.empty()) {
      pivot_owner[col.back().first] = j;
      is_pivot_row[col.back().first] = true;
    }
    reduced[j] = std::move(col);
  }

  GradedBarcode out;
  for (std::size_t j = 0; j < n; ++j) {
    const auto& cell = cells[order[j]];
    if (!reduced[j].empty()) {
      const auto& birth = cells[order[reduced[j].back().first]];
      if (birth.filtration < cell.filtration)
        out.add(birth.degree, Interval(birth.filtration, cell.filtration));
    } else if (!is_pivot_row[j]) {
      out.add(cell.degree, Interval(cell.filtration, kInfinity));
    }
  }
  return out;
}

}  // namespace

void FilteredComplex::check_boundary_squared(const FieldConfig& field) const {
  if (field.kind == FieldConfig::Kind::Rationals)
    check_squared(*this, RationalOps{});
  else
    check_squared(*this, PrimeOps{field.p});
}

GradedBarcode reduce(const FilteredComplex& c, const FieldConfig& field, bool verify) {
  if (verify) c.check_boundary_squared(field);
  if (field.kind == FieldConfig::Kind::Rationals) return reduce_with(c, RationalOps{});
  return reduce_with(c, PrimeOps{field.p});
}

ExpSum chain_magnitude(const FilteredComplex& c) {
  std::vector<ExpSum::Term> terms;
  terms.reserve(c.size());
  for (const auto& cell : c.cells())
    terms.push_back({cell.degree % 2 == 0 ? 1.0 : -1.0, cell.filtration});
  return ExpSum(std::move(terms));
}

long euler_at(const FilteredComplex& c, double s) {
  long chi = 0;
  for (const auto& cell : c.cells())
    if (cell.filtration <= s) chi += cell.degree % 2 == 0 ? 1 : -1;
  return chi;
}

std::vector<long> euler_at(const FilteredComplex& c, std::span<const double> thresholds) {
  std::vector<std::pair<double, int>> cells;
  cells.reserve(c.size());
  for (const auto& cell : c.cells()) cells.emplace_back(cell.filtration, cell.degree % 2 == 0 ? 1 : -1);
  std::sort(cells.begin(), cells.end());
  std::vector<std::size_t> order(thresholds.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](auto a, auto b) { return thresholds[a] < thresholds[b]; });
  std::vector<long> out(thresholds.size(), 0);
  long chi = 0;
  std::size_t next = 0;
  for (std::size_t idx : order) {
    while (next < cells.size() && cells[next].first <= thresholds[idx]) chi += cells[next++].second;
    out[idx] = chi;
  }
  return out;
}

std::map<int, long> betti_numbers(const FilteredComplex& c, const FieldConfig& field) {
  std::map<int, long> out;
  const GradedBarcode barcode = reduce(c, field);
  for (const auto& [k, b] : barcode.degrees()) {
    long r = 0;
    for (const auto& bar : b.bars) r += bar.is_infinite() ? 1 : 0;
    if (r != 0) out[k] = r;
  }
  return out;
}

FieldComparison compare_fields(const FilteredComplex& c, std::uint32_t p) {
  FieldComparison out;
  out.over_rationals = reduce(c, FieldConfig::rationals());
  out.over_prime = reduce(c, FieldConfig::prime(p));
  out.agree = out.over_rationals.same_bars(out.over_prime);
  return out;
}

}  // namespace magnikit
