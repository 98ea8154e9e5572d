#pragma once

#include <json.hpp>
#include <string>
#include <vector>

#include "magnikit/barcode.hpp"
#include "magnikit/closedforms.hpp"
#include "magnikit/complex.hpp"
#include "magnikit/expsum.hpp"
#include "magnikit/maghom.hpp"

namespace magnikit::io {

using nlohmann::json;

/// A double as a JSON number; exactly integral values become integers.
json number(double v);
/// Rounded to the nearest integer when within 1e-6 of it.
json coefficient(double c);
/// 15 significant digits, "inf" for +∞.
std::string format_number(double v);

/// {"terms":[{"coeff":c,"rate":r},...]}
json to_json(const ExpSum& f);
/// Throws std::invalid_argument on malformed input.
ExpSum expsum_from_json(const json& j);

/// {"degrees":{"0":[{"start":a,"end":b or "inf"}],...}}
json to_json(const GradedBarcode& g);
GradedBarcode barcode_from_json(const json& j);

/// `s,chi` rows.
std::string euler_curve_csv(const EulerCurve& curve);
/// `id,degree,filtration,boundary` with boundary as space-separated
/// `cell:coeff` pairs.
std::string cells_csv(const FilteredComplex& c);
/// `k,l,rank` rows.
std::string rank_table_csv(const RankTable& table);
json to_json(const RankTable& table);

struct Grid {
  double start = 0.0;
  double stop = 0.0;
  double step = 0.0;

  std::vector<double> points() const;
};
/// "start:stop:step"; throws std::invalid_argument unless step > 0 and
/// start ≤ stop.
Grid parse_grid(const std::string& text);
/// `t,value` rows over the grid.
std::string sample_csv(const ExpSum& f, const Grid& grid);

/// `value,index` rows (an optional header is skipped).
std::vector<CriticalPoint> critical_points_from_csv_text(const std::string& text);

}  // namespace magnikit::io
