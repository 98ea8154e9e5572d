#pragma once

#include <functional>
#include <span>
#include <string>
#include <vector>

namespace magnikit {

/// Tolerances shared by every module that groups real-valued parameters
/// (rates, filtration values, ℓ-values).
struct Tolerance {
  static constexpr double kRateAbs = 1e-12;
  static constexpr double kRateRel = 1e-9;
  /// Coefficients below this fraction of the largest merged contribution are
  /// treated as cancelled.
  static constexpr double kCoeffRel = 1e-12;

  static bool same_rate(double a, double b);
};

/// A finite exponential sum  Σ coeff_i · exp(-rate_i · t).
///
/// Always held in normal form: rates strictly increasing (no two within the
/// merge tolerance) and every coefficient nonzero. The empty sum is the zero
/// function.
class ExpSum {
 public:
  struct Term {
    double coeff = 0.0;
    double rate = 0.0;
    bool operator==(const Term&) const = default;
  };

  ExpSum() = default;
  explicit ExpSum(std::vector<Term> terms);

  static ExpSum constant(double c);
  static ExpSum exponential(double coeff, double rate);

  std::span<const Term> terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }
  bool is_zero() const { return terms_.empty(); }

  double operator()(double t) const { return eval(t); }
  double eval(double t) const;

  /// Coefficient attached to `rate` (0 if absent), matched with the merge
  /// tolerance.
  double coeff_at(double rate) const;

  ExpSum operator-() const;
  ExpSum& operator+=(const ExpSum& other);
  ExpSum& operator-=(const ExpSum& other);

  friend ExpSum operator+(ExpSum a, const ExpSum& b) { return a += b; }
  friend ExpSum operator-(ExpSum a, const ExpSum& b) { return a -= b; }
  friend ExpSum operator*(const ExpSum& a, const ExpSum& b);
  friend ExpSum operator*(double s, const ExpSum& f);

  bool operator==(const ExpSum&) const = default;

 private:
  std::vector<Term> terms_;
};

ExpSum add(const ExpSum& a, const ExpSum& b);
ExpSum mul(const ExpSum& a, const ExpSum& b);
double eval(const ExpSum& f, double t);

/// f(t0 · t) as a function of t. Throws std::invalid_argument if t0 <= 0.
ExpSum rescale(const ExpSum& f, double t0);

/// Replaces each rate r by h(r). h must be strictly increasing on the rate
/// set (distinct images beyond the merge tolerance), else
/// std::invalid_argument.
ExpSum reparam(const ExpSum& f, const std::function<double(double)>& h);

/// Pointwise derivative with respect to t.
ExpSum derivative(const ExpSum& f);

double limit_at_zero(const ExpSum& f);
/// Coefficient of the rate-0 term. Throws std::domain_error when a negative
/// rate makes the function diverge.
double limit_at_infinity(const ExpSum& f);

/// Euler characteristic of a barcode as the one-sided derivative at t = 0.
double bb_euler_characteristic(const ExpSum& f);

/// True when every coefficient of a - b is within tol (relative to
/// max(1, |largest coefficient|)).
bool approx_equal(const ExpSum& a, const ExpSum& b, double tol);

/// Max |coeff| of a - b after normalisation.
double max_coeff_difference(const ExpSum& a, const ExpSum& b);

/// Human-readable form, e.g. "5 - 5e^{-1t} + 1e^{-2t}".
std::string to_string(const ExpSum& f);

}  // namespace magnikit
