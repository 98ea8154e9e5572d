#include "magnikit/io.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>
#include <stdexcept>

namespace magnikit::io {

json number(double v) {
  if (std::isfinite(v) && std::nearbyint(v) == v && std::abs(v) < 9.0e15)
    return static_cast<long long>(v);
  return v;
}

json coefficient(double c) {
  const double r = std::nearbyint(c);
  if (std::isfinite(c) && std::abs(c - r) <= 1e-6 && std::abs(r) < 9.0e15) return static_cast<long long>(r);
  return c;
}

std::string format_number(double v) {
  if (v == kInfinity) return "inf";
  if (v == -kInfinity) return "-inf";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.15g", v);
  return buf;
}

json to_json(const ExpSum& f) {
  json terms = json::array();
  for (const auto& t : f.terms()) terms.push_back({{"coeff", coefficient(t.coeff)}, {"rate", number(t.rate)}});
  return {{"terms", terms}};
}

namespace {

double as_double(const json& j, const char* what) {
  if (j.is_number()) return j.get<double>();
  if (j.is_string() && j.get<std::string>() == "inf") return kInfinity;
  throw std::invalid_argument(std::string("json: '") + what + "' must be a number");
}

}  // namespace

ExpSum expsum_from_json(const json& j) {
  if (!j.is_object() || !j.contains("terms") || !j["terms"].is_array())
    throw std::invalid_argument("json: expected {\"terms\": [...]}");
  std::vector<ExpSum::Term> terms;
  for (const auto& t : j["terms"]) {
    if (!t.is_object() || !t.contains("coeff") || !t.contains("rate"))
      throw std::invalid_argument("json: each term needs coeff and rate");
    const double rate = as_double(t["rate"], "rate");
    if (!std::isfinite(rate)) throw std::invalid_argument("json: rate must be finite");
    terms.push_back({as_double(t["coeff"], "coeff"), rate});
  }
  return ExpSum(std::move(terms));
}

json to_json(const GradedBarcode& g) {
  json degrees = json::object();
  for (const auto& [k, b] : g.degrees()) {
    json bars = json::array();
    for (const auto& bar : b.sorted())
      bars.push_back({{"start", number(bar.start())},
                      {"end", bar.is_infinite() ? json("inf") : number(bar.end())}});
    degrees[std::to_string(k)] = bars;
  }
  return {{"degrees", degrees}};
}

GradedBarcode barcode_from_json(const json& j) {
  if (!j.is_object() || !j.contains("degrees") || !j["degrees"].is_object())
    throw std::invalid_argument("json: expected {\"degrees\": {...}}");
  GradedBarcode g;
  for (const auto& [key, bars] : j["degrees"].items()) {
    int k = 0;
    try {
      k = std::stoi(key);
    } catch (const std::exception&) {
      throw std::invalid_argument("json: degree keys must be integers");
    }
    for (const auto& bar : bars) g.add(k, Interval(as_double(bar.at("start"), "start"), as_double(bar.at("end"), "end")));
  }
  return g;
}

std::string euler_curve_csv(const EulerCurve& curve) {
  std::string out = "s,chi\n";
  for (std::size_t i = 0; i < curve.breakpoints.size(); ++i)
    out += format_number(curve.breakpoints[i]) + "," + std::to_string(curve.values[i]) + "\n";
  return out;
}

std::string cells_csv(const FilteredComplex& c) {
  std::string out = "id,degree,filtration,boundary\n";
  for (std::size_t id = 0; id < c.size(); ++id) {
    const auto& cell = c.cell(id);
    out += std::to_string(id) + "," + std::to_string(cell.degree) + "," + format_number(cell.filtration) + ",";
    for (std::size_t i = 0; i < cell.boundary.size(); ++i)
      out += (i ? " " : "") + std::to_string(cell.boundary[i].cell) + ":" + std::to_string(cell.boundary[i].coeff);
    out += "\n";
  }
  return out;
}

std::string rank_table_csv(const RankTable& table) {
  std::string out = "k,l,rank\n";
  for (const auto& [key, r] : table.entries)
    out += std::to_string(key.first) + "," + format_number(key.second) + "," + std::to_string(r) + "\n";
  return out;
}

json to_json(const RankTable& table) {
  json entries = json::array();
  for (const auto& [key, r] : table.entries)
    entries.push_back({{"k", key.first}, {"l", number(key.second)}, {"rank", r}});
  json levels = json::array();
  for (double l : table.l_values) levels.push_back(number(l));
  return {{"delta", number(table.delta)}, {"k_max", table.k_max}, {"l_values", levels}, {"entries", entries}};
}

std::vector<double> Grid::points() const {
  std::vector<double> out;
  const auto steps = static_cast<long>(std::floor((stop - start) / step + 1e-9));
  for (long i = 0; i <= steps; ++i) out.push_back(start + static_cast<double>(i) * step);
  return out;
}

Grid parse_grid(const std::string& text) {
  Grid g;
  char extra = 0;
  if (std::sscanf(text.c_str(), "%lf:%lf:%lf%c", &g.start, &g.stop, &g.step, &extra) != 3)
    throw std::invalid_argument("grid must look like start:stop:step, got '" + text + "'");
  if (!(g.step > 0)) throw std::invalid_argument("grid step must be positive");
  if (!(g.start <= g.stop)) throw std::invalid_argument("grid is empty");
  return g;
}

std::string sample_csv(const ExpSum& f, const Grid& grid) {
  std::string out = "t,value\n";
  for (double t : grid.points()) out += format_number(t) + "," + format_number(f(t)) + "\n";
  return out;
}

std::vector<CriticalPoint> critical_points_from_csv_text(const std::string& text) {
  std::vector<CriticalPoint> out;
  std::istringstream in(text);
  std::string line;
  bool first = true;
  while (std::getline(in, line)) {
    if (line.find_first_not_of(" \t\r\n") == std::string::npos || line[0] == '#') continue;
    double value = 0.0;
    int index = 0;
    char extra = 0;
    const int got = std::sscanf(line.c_str(), " %lf , %d %c", &value, &index, &extra);
    if (got == 2 || (got == 3 && (extra == '\r'))) {
      out.push_back({value, index});
    } else if (!first) {
      throw std::invalid_argument("csv: critical point rows are value,index; got '" + line + "'");
    }
    first = false;
  }
  return out;
}

}  // namespace magnikit::io
