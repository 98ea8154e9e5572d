#include "magnikit/cli.hpp"

#include <CLI11.hpp>
#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "magnikit/closedforms.hpp"
#include "magnikit/io.hpp"
#include "magnikit/maghom.hpp"
#include "magnikit/metric.hpp"
#include "magnikit/rips.hpp"

namespace magnikit::cli {

namespace {

using io::json;

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write '" + path + "'");
  out << text;
}

FiniteMetricSpace load_space(const std::string& path, const std::string& metric) {
  const std::string text = read_file(path);
  if (metric == "matrix") return distance_matrix_from_csv_text(text);
  if (metric == "euclidean") return point_cloud_from_csv_text(text);
  if (metric == "graph") return graph_from_csv_text(text);
  throw std::invalid_argument("unknown metric '" + metric + "'");
}

FieldConfig parse_field(const std::string& s) {
  if (s == "rationals" || s == "Q" || s == "q") return FieldConfig::rationals();
  std::size_t used = 0;
  long p = 0;
  try {
    p = std::stol(s, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used != s.size() || p < 2 || p > 2147483647L)
    throw std::invalid_argument("--field must be 'rationals' or a prime, got '" + s + "'");
  return FieldConfig::prime(static_cast<std::uint32_t>(p));
}

struct Settings {
  std::string format;
  std::string input;
  std::string metric = "matrix";
  std::string sample;
  std::string field = "rationals";
  std::string method = "subsets";
  std::string barcode_out;
  std::string kind;
  std::string family;
  std::string crit_csv;
  std::string convexity;
  int max_dim = -1;
  int kmax = 0;
  int n = 0;
  int rmax = 999;
  int m = 0;
  double lmax = 0.0;
  double t = 0.0;
  double check_t = 0.0;

  bool csv(const std::string& fallback = "json") const { return (format.empty() ? fallback : format) == "csv"; }
};

void emit_json(std::ostream& out, const json& j) { out << j.dump(2) << "\n"; }

void emit_function(std::ostream& out, const ExpSum& f, const Settings& s) {
  if (!s.sample.empty()) {
    const io::Grid grid = io::parse_grid(s.sample);
    if (s.csv()) {
      out << io::sample_csv(f, grid);
      return;
    }
    json samples = json::array();
    for (double t : grid.points()) samples.push_back({{"t", t}, {"value", f(t)}});
    emit_json(out, {{"function", io::to_json(f)}, {"samples", samples}});
    return;
  }
  if (s.csv()) {
    out << "coeff,rate\n";
    for (const auto& term : f.terms()) out << io::coefficient(term.coeff).dump() << "," << io::format_number(term.rate) << "\n";
    return;
  }
  emit_json(out, io::to_json(f));
}

int undefined(std::ostream& out, const json& extra = json::object()) {
  json body = {{"status", "undefined"}};
  body.update(extra);
  emit_json(out, body);
  return kUndefined;
}

int cmd_magnitude(const Settings& s, std::ostream& out, std::ostream& err) {
  const FiniteMetricSpace x = load_space(s.input, s.metric);
  if (!s.sample.empty()) {
    const io::Grid grid = io::parse_grid(s.sample);
    std::vector<std::pair<double, double>> rows;
    for (double t : grid.points()) {
      if (t <= 0) continue;
      const LeinsterResult r = leinster_magnitude(x, t);
      if (!r.defined()) return undefined(out, {{"t", t}});
      if (r.warning) err << "warning: ill-conditioned weighting at t=" << t << "\n";
      rows.emplace_back(t, r.value);
    }
    if (s.csv()) {
      out << "t,value\n";
      for (const auto& [t, v] : rows) out << io::format_number(t) << "," << io::format_number(v) << "\n";
    } else {
      json samples = json::array();
      for (const auto& [t, v] : rows) samples.push_back({{"t", t}, {"value", v}});
      emit_json(out, {{"samples", samples}});
    }
    return kOk;
  }
  const LeinsterResult r = leinster_magnitude(x, s.t);
  if (!r.defined()) return undefined(out, {{"t", s.t}, {"residual", r.residual}});
  if (r.warning) err << "warning: ill-conditioned weighting (residual " << r.residual << ")\n";
  if (s.csv()) {
    out << "t,magnitude\n" << io::format_number(s.t) << "," << io::format_number(r.value) << "\n";
  } else {
    emit_json(out, {{"status", "defined"},
                    {"t", s.t},
                    {"magnitude", r.value},
                    {"residual", r.residual},
                    {"warning", r.warning}});
  }
  return kOk;
}

int cmd_rips(const Settings& s, std::ostream& out, std::ostream& err) {
  const FiniteMetricSpace x = load_space(s.input, s.metric);
  const FieldConfig field = parse_field(s.field);
  ExpSum f;
  if (s.method == "barcode" || !s.barcode_out.empty()) {
    const RipsBarcodeResult r = rips_magnitude_barcode(x, s.max_dim, field);
    if (r.truncated) err << "warning: max-dim below n-1, the magnitude is a truncation\n";
    if (!s.barcode_out.empty()) write_file(s.barcode_out, io::to_json(r.barcode).dump(2) + "\n");
    if (s.method == "barcode") f = r.magnitude;
  }
  if (s.method == "subsets") f = rips_magnitude_subsets(x);
  if (s.method == "euler") f = rips_magnitude_euler(x);
  emit_function(out, f, s);
  return kOk;
}

MaghomOptions maghom_options(const Settings& s) {
  MaghomOptions o;
  o.field = parse_field(s.field);
  return o;
}

int cmd_maghom(const Settings& s, std::ostream& out, std::ostream&) {
  const FiniteMetricSpace x = load_space(s.input, s.metric);
  const RankTable table = mh_ranks(x, s.kmax, s.lmax, maghom_options(s));
  if (s.csv("csv"))
    out << io::rank_table_csv(table);
  else
    emit_json(out, io::to_json(table));
  return kOk;
}

int cmd_bmh(const Settings& s, std::ostream& out, std::ostream&) {
  const FiniteMetricSpace x = load_space(s.input, s.metric);
  const BmhResult r = bmh_magnitude_partial(x, s.kmax, maghom_options(s));
  if (!s.barcode_out.empty()) write_file(s.barcode_out, io::to_json(r.barcode).dump(2) + "\n");
  if (s.check_t <= 0) {
    emit_function(out, r.magnitude, s);
    return kOk;
  }
  const double t = s.check_t;
  const double delta = x.size() > 1 ? min_nonzero_distance(x) : 1.0;
  double bound = 0.0;
  try {
    bound = x.size() > 1 ? tail_bound(x.size(), delta, s.kmax, t) : 0.0;
  } catch (const std::domain_error& e) {
    emit_json(out, {{"status", "convergence"},
                    {"message", e.what()},
                    {"min_t", convergence_threshold(x.size(), delta)}});
    return kUndefined;
  }
  const LeinsterResult l = leinster_magnitude(x, t);
  if (!l.defined()) return undefined(out, {{"t", t}});
  const double partial = r.magnitude(t);
  // Both sides are doubles near n; a bound below their resolution is unreadable.
  const double rounding = 64 * std::numeric_limits<double>::epsilon() * std::max(1.0, std::abs(l.value));
  const bool within = std::abs(partial - l.value) <= bound + rounding;
  if (s.csv()) {
    out << "t,partial,leinster,bound\n"
        << io::format_number(t) << "," << io::format_number(partial) << "," << io::format_number(l.value) << ","
        << io::format_number(bound) << "\n";
  } else {
    emit_json(out, {{"t", t},
                    {"k_max", s.kmax},
                    {"partial", partial},
                    {"leinster", l.value},
                    {"bound", bound},
                    {"rounding", rounding},
                    {"within_bound", within},
                    {"magnitude", io::to_json(r.magnitude)}});
  }
  return within ? kOk : kUndefined;
}

int cmd_cycle(const Settings& s, std::ostream& out, std::ostream&) {
  const ExpSum f = cycle_magnitude(s.n, parse_cycle_kind(s.kind));
  if (!s.convexity.empty()) {
    const io::Grid g = io::parse_grid(s.convexity);
    const ConvexityReport r = convexity_scan(f, g.start, g.stop, g.step);
    emit_json(out, {{"n", s.n},
                    {"kind", s.kind},
                    {"convex_on_grid", r.convex},
                    {"min_second_derivative", r.min_second_derivative},
                    {"argmin", r.argmin}});
    return kOk;
  }
  emit_function(out, f, s);
  return kOk;
}

int cmd_limits(const Settings& s, std::ostream& out, std::ostream&) {
  json body;
  if (s.family == "eucl") {
    const EuclideanCircleLimits l = ec_limits(s.t, s.rmax);
    body = {{"family", "eucl"},
            {"t", s.t},
            {"r_max", s.rmax},
            {"liminf", l.liminf},
            {"limsup_partial", l.limsup_partial},
            {"limsup_tail_bound", l.limsup_tail_bound}};
    if (s.m > 0) body["subsequence_limit"] = ec_subsequence_limit(s.m, s.t);
  } else if (s.family == "geo") {
    body = {{"family", "geo"},
            {"t", s.t},
            {"r_max", s.rmax},
            {"liminf", geo_liminf(s.t)},
            {"limsup_partial", geo_limsup_partial(s.t, s.rmax)},
            {"leinster_circle", leinster_geodesic_circle(s.t)}};
  } else {
    throw std::invalid_argument("--family must be eucl or geo");
  }
  if (s.csv()) {
    out << "key,value\n";
    for (const auto& [k, v] : body.items())
      if (v.is_number()) out << k << "," << io::format_number(v.get<double>()) << "\n";
  } else {
    emit_json(out, body);
  }
  return kOk;
}

int cmd_morse(const Settings& s, std::ostream& out, std::ostream&) {
  emit_function(out, morse_magnitude(io::critical_points_from_csv_text(read_file(s.crit_csv))), s);
  return kOk;
}

int cmd_sample(const Settings& s, std::ostream& out, std::ostream&) {
  const ExpSum f = io::expsum_from_json(json::parse(read_file(s.input)));
  Settings csv_default = s;
  if (csv_default.format.empty()) csv_default.format = "csv";
  emit_function(out, f, csv_default);
  return kOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Settings s;
  CLI::App app{"Persistent, Leinster and Rips magnitude of finite metric spaces", "magnikit"};
  app.require_subcommand(1, 1);
  app.fallthrough();
  app.add_option("--format", s.format, "Output format")->check(CLI::IsMember({"json", "csv"}));

  auto input = [&](CLI::App* sub, bool required = true) {
    auto* opt = sub->add_option("--input", s.input, "Input file");
    if (required) opt->required();
    sub->add_option("--metric", s.metric, "How to read the input")
        ->check(CLI::IsMember({"matrix", "euclidean", "graph"}));
  };
  auto sample = [&](CLI::App* sub) { sub->add_option("--sample", s.sample, "Sample on start:stop:step"); };
  auto field = [&](CLI::App* sub) { sub->add_option("--field", s.field, "rationals or a prime p"); };

  auto* magnitude = app.add_subcommand("magnitude", "Leinster magnitude |tX|");
  input(magnitude);
  magnitude->add_option("--t", s.t, "Scale")->check(CLI::PositiveNumber);
  sample(magnitude);

  auto* rips = app.add_subcommand("rips", "Rips magnitude function");
  input(rips);
  rips->add_option("--method", s.method)->check(CLI::IsMember({"subsets", "euler", "barcode"}));
  rips->add_option("--max-dim", s.max_dim, "Highest simplex dimension (barcode method)");
  rips->add_option("--barcode-out", s.barcode_out, "Write the Rips barcode JSON here");
  field(rips);
  sample(rips);

  auto* maghom = app.add_subcommand("maghom", "Magnitude homology ranks");
  input(maghom);
  maghom->add_option("--kmax", s.kmax)->required()->check(CLI::NonNegativeNumber);
  maghom->add_option("--lmax", s.lmax)->required()->check(CLI::NonNegativeNumber);
  field(maghom);

  auto* bmh = app.add_subcommand("bmh", "Blurred magnitude homology and its magnitude");
  input(bmh);
  bmh->add_option("--kmax", s.kmax)->required()->check(CLI::NonNegativeNumber);
  bmh->add_option("--check-t", s.check_t, "Compare with Leinster magnitude at this t")->check(CLI::PositiveNumber);
  bmh->add_option("--barcode-out", s.barcode_out, "Write the BMH barcode JSON here");
  field(bmh);
  sample(bmh);

  auto* cycle = app.add_subcommand("cycle", "Closed-form Rips magnitude of an n-cycle");
  cycle->add_option("--kind", s.kind)->required()->check(CLI::IsMember({"graph", "eucl", "geo"}));
  cycle->add_option("--n", s.n)->required()->check(CLI::PositiveNumber);
  cycle->add_option("--convexity", s.convexity, "Scan the second derivative on start:stop:step");
  sample(cycle);

  auto* limits = app.add_subcommand("limits", "Circle asymptotics");
  limits->add_option("--family", s.family)->required()->check(CLI::IsMember({"eucl", "geo"}));
  limits->add_option("--t", s.t)->required()->check(CLI::PositiveNumber);
  limits->add_option("--rmax", s.rmax, "Largest odd r in the series")->check(CLI::PositiveNumber);
  limits->add_option("--m", s.m, "Subsequence n = m p")->check(CLI::PositiveNumber);

  auto* morse = app.add_subcommand("morse", "Magnitude from Morse critical data");
  morse->add_option("--crit-csv", s.crit_csv, "CSV of value,index")->required();
  sample(morse);

  auto* sampler = app.add_subcommand("sample", "Sample an ExpSum JSON file");
  sampler->add_option("--input", s.input, "ExpSum JSON")->required();
  sampler->add_option("--sample", s.sample, "start:stop:step")->required();

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kInputError;
  }

  try {
    if (*magnitude) {
      if (s.sample.empty() && !(s.t > 0)) throw std::invalid_argument("magnitude needs --t or --sample");
      return cmd_magnitude(s, out, err);
    }
    if (*rips) return cmd_rips(s, out, err);
    if (*maghom) return cmd_maghom(s, out, err);
    if (*bmh) return cmd_bmh(s, out, err);
    if (*cycle) return cmd_cycle(s, out, err);
    if (*limits) return cmd_limits(s, out, err);
    if (*morse) return cmd_morse(s, out, err);
    if (*sampler) return cmd_sample(s, out, err);
  } catch (const std::domain_error& e) {
    err << "error: " << e.what() << "\n";
    emit_json(out, {{"status", "convergence"}, {"message", e.what()}});
    return kUndefined;
  } catch (const json::exception& e) {
    err << "error: " << e.what() << "\n";
    return kInputError;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kInputError;
  }
  return kInputError;
}

}  // namespace magnikit::cli
