#include "magnikit/expsum.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <stdexcept>

namespace magnikit {

bool Tolerance::same_rate(double a, double b) {
  if (a == b) return true;
  return std::abs(a - b) <= kRateAbs + kRateRel * std::max(std::abs(a), std::abs(b));
}

namespace {

std::vector<ExpSum::Term> normalize(std::vector<ExpSum::Term> in) {
  for (const auto& term : in) {
    if (!std::isfinite(term.coeff) || !std::isfinite(term.rate))
      throw std::invalid_argument("ExpSum: non-finite coefficient or rate");
  }
  std::sort(in.begin(), in.end(), [](const auto& a, const auto& b) {
    return a.rate < b.rate || (a.rate == b.rate && a.coeff < b.coeff);
  });

  std::vector<ExpSum::Term> out;
  out.reserve(in.size());
  std::size_t i = 0;
  while (i < in.size()) {
    // Clusters are anchored at their smallest rate so that grouping never
    // drifts along a chain of near-ties.
    const double anchor = in[i].rate;
    double sum = 0.0;
    double scale = 0.0;
    std::size_t j = i;
    for (; j < in.size() && Tolerance::same_rate(anchor, in[j].rate); ++j) {
      sum += in[j].coeff;
      scale = std::max(scale, std::abs(in[j].coeff));
    }
    if (sum != 0.0 && std::abs(sum) > Tolerance::kCoeffRel * scale) out.push_back({sum, anchor});
    i = j;
  }
  return out;
}

}  // namespace

ExpSum::ExpSum(std::vector<Term> terms) : terms_(normalize(std::move(terms))) {}

ExpSum ExpSum::constant(double c) { return ExpSum({{c, 0.0}}); }

ExpSum ExpSum::exponential(double coeff, double rate) { return ExpSum({{coeff, rate}}); }

double ExpSum::eval(double t) const {
  double s = 0.0;
  for (const auto& term : terms_) s += term.coeff * std::exp(-term.rate * t);
  return s;
}

double ExpSum::coeff_at(double rate) const {
  for (const auto& term : terms_)
    if (Tolerance::same_rate(term.rate, rate)) return term.coeff;
  return 0.0;
}

ExpSum ExpSum::operator-() const {
  ExpSum out = *this;
  for (auto& term : out.terms_) term.coeff = -term.coeff;
  return out;
}

ExpSum& ExpSum::operator+=(const ExpSum& other) {
  std::vector<Term> all = terms_;
  all.insert(all.end(), other.terms_.begin(), other.terms_.end());
  terms_ = normalize(std::move(all));
  return *this;
}

ExpSum& ExpSum::operator-=(const ExpSum& other) { return *this += -other; }

ExpSum operator*(const ExpSum& a, const ExpSum& b) {
  std::vector<ExpSum::Term> all;
  all.reserve(a.size() * b.size());
  for (const auto& x : a.terms_)
    for (const auto& y : b.terms_) all.push_back({x.coeff * y.coeff, x.rate + y.rate});
  return ExpSum(std::move(all));
}

ExpSum operator*(double s, const ExpSum& f) {
  std::vector<ExpSum::Term> all(f.terms_.begin(), f.terms_.end());
  for (auto& term : all) term.coeff *= s;
  return ExpSum(std::move(all));
}

ExpSum add(const ExpSum& a, const ExpSum& b) { return a + b; }
ExpSum mul(const ExpSum& a, const ExpSum& b) { return a * b; }
double eval(const ExpSum& f, double t) { return f.eval(t); }

ExpSum rescale(const ExpSum& f, double t0) {
  if (!(t0 > 0.0) || !std::isfinite(t0))
    throw std::invalid_argument("rescale: scale factor must be positive");
  std::vector<ExpSum::Term> out(f.terms().begin(), f.terms().end());
  for (auto& term : out) term.rate *= t0;
  return ExpSum(std::move(out));
}

ExpSum reparam(const ExpSum& f, const std::function<double(double)>& h) {
  std::vector<ExpSum::Term> out(f.terms().begin(), f.terms().end());
  for (auto& term : out) term.rate = h(term.rate);
  for (std::size_t i = 1; i < out.size(); ++i) {
    if (!(out[i].rate > out[i - 1].rate) || Tolerance::same_rate(out[i].rate, out[i - 1].rate))
      throw std::invalid_argument("reparam: map is not strictly increasing on the rates");
  }
  return ExpSum(std::move(out));
}

ExpSum derivative(const ExpSum& f) {
  std::vector<ExpSum::Term> out;
  for (const auto& term : f.terms()) out.push_back({-term.coeff * term.rate, term.rate});
  return ExpSum(std::move(out));
}

double limit_at_zero(const ExpSum& f) {
  double s = 0.0;
  for (const auto& term : f.terms()) s += term.coeff;
  return s;
}

double limit_at_infinity(const ExpSum& f) {
  double c = 0.0;
  for (const auto& term : f.terms()) {
    if (Tolerance::same_rate(term.rate, 0.0))
      c += term.coeff;
    else if (term.rate < 0.0)
      throw std::domain_error("limit_at_infinity: negative rate diverges");
  }
  return c;
}

double bb_euler_characteristic(const ExpSum& f) {
  double s = 0.0;
  for (const auto& term : f.terms()) s -= term.coeff * term.rate;
  return s;
}

double max_coeff_difference(const ExpSum& a, const ExpSum& b) {
  double worst = 0.0;
  const ExpSum diff = a - b;
  for (const auto& term : diff.terms()) worst = std::max(worst, std::abs(term.coeff));
  return worst;
}

bool approx_equal(const ExpSum& a, const ExpSum& b, double tol) {
  double scale = 1.0;
  for (const auto& term : a.terms()) scale = std::max(scale, std::abs(term.coeff));
  for (const auto& term : b.terms()) scale = std::max(scale, std::abs(term.coeff));
  return max_coeff_difference(a, b) <= tol * scale;
}

std::string to_string(const ExpSum& f) {
  if (f.is_zero()) return "0";
  std::string out;
  char buf[64];
  bool first = true;
  for (const auto& term : f.terms()) {
    double c = term.coeff;
    if (!first) {
      out += c < 0 ? " - " : " + ";
      c = std::abs(c);
    }
    std::snprintf(buf, sizeof buf, "%.10g", c);
    out += buf;
    if (term.rate != 0.0) {
      std::snprintf(buf, sizeof buf, "e^{-%.10gt}", term.rate);
      out += buf;
    }
    first = false;
  }
  return out;
}

}  // namespace magnikit
