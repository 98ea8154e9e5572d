#pragma once

#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "magnikit/barcode.hpp"
#include "magnikit/expsum.hpp"

namespace magnikit {

/// Ground field for homology: exact rationals or F_p.
struct FieldConfig {
  enum class Kind { Rationals, PrimeField };

  Kind kind = Kind::Rationals;
  std::uint32_t p = 0;

  static FieldConfig rationals() { return {}; }
  /// Throws std::invalid_argument unless p is prime.
  static FieldConfig prime(std::uint32_t p);

  std::string name() const;
};

/// Finite chain complex whose cells carry a real filtration value.
///
/// Cells are identified by insertion index. A cell's boundary may only
/// reference previously inserted cells of degree one lower whose filtration
/// does not exceed its own; integer coefficients are mapped into the field
/// at reduction time.
class FilteredComplex {
 public:
  struct Entry {
    std::size_t cell;
    long long coeff;
  };
  struct Cell {
    int degree;
    double filtration;
    std::vector<Entry> boundary;
  };

  /// Throws std::invalid_argument when the new cell breaks an invariant.
  std::size_t add_cell(int degree, double filtration, std::vector<Entry> boundary = {});

  const std::vector<Cell>& cells() const { return cells_; }
  const Cell& cell(std::size_t id) const { return cells_.at(id); }
  std::size_t size() const { return cells_.size(); }
  bool empty() const { return cells_.empty(); }
  int max_degree() const;

  /// Throws std::logic_error if ∂∘∂ ≠ 0 over `field`.
  void check_boundary_squared(const FieldConfig& field) const;

 private:
  std::vector<Cell> cells_;
};

/// Persistent homology by left-to-right column reduction. Cells are ordered
/// by (filtration, degree, insertion index); zero-length bars are dropped.
GradedBarcode reduce(const FilteredComplex& c, const FieldConfig& field = FieldConfig::rationals(),
                     bool verify = true);

/// Σ over cells of (-1)^degree · exp(-filtration · t).
ExpSum chain_magnitude(const FilteredComplex& c);

/// Σ (-1)^degree over cells with filtration ≤ s.
long euler_at(const FilteredComplex& c, double s);
/// euler_at for each threshold, sweeping the sorted filtration once.
std::vector<long> euler_at(const FilteredComplex& c, std::span<const double> thresholds);

/// Ranks of the homology of the whole complex (the essential classes).
std::map<int, long> betti_numbers(const FilteredComplex& c,
                                  const FieldConfig& field = FieldConfig::rationals());

struct FieldComparison {
  bool agree = true;
  GradedBarcode over_rationals;
  GradedBarcode over_prime;
};

/// Reduces over Q and F_p and reports whether the barcodes coincide.
FieldComparison compare_fields(const FilteredComplex& c, std::uint32_t p);

}  // namespace magnikit
