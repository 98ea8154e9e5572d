#include "magnikit/metric.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <map>
#include <numbers>
#include <set>
#include <sstream>
#include <stdexcept>

#include "magnikit/expsum.hpp"

namespace magnikit {

FiniteMetricSpace::FiniteMetricSpace(std::vector<std::string> labels,
                                     std::vector<std::vector<double>> dist, bool enforce_triangle)
    : labels_(std::move(labels)) {
  const std::size_t n = labels_.size();
  if (dist.size() != n) throw std::invalid_argument("metric: matrix size does not match labels");
  dist_.assign(n * n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    if (dist[i].size() != n) throw std::invalid_argument("metric: matrix is not square");
    for (std::size_t j = 0; j < n; ++j) {
      const double d = dist[i][j];
      if (!std::isfinite(d) || d < 0.0) throw std::invalid_argument("metric: distances must be finite and nonnegative");
      if (i == j && d != 0.0) throw std::invalid_argument("metric: diagonal must be zero");
      if (i != j && d == 0.0) throw std::invalid_argument("metric: distinct points at distance zero");
      dist_[i * n + j] = d;
    }
  }
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      if (dist_[i * n + j] != dist_[j * n + i]) throw std::invalid_argument("metric: matrix is not symmetric");

  for (std::size_t i = 0; i < n && triangle_ok_; ++i)
    for (std::size_t j = 0; j < n && triangle_ok_; ++j)
      for (std::size_t k = 0; k < n; ++k) {
        const double lhs = dist_[i * n + j], rhs = dist_[i * n + k] + dist_[k * n + j];
        if (lhs > rhs * (1.0 + 1e-12)) {
          triangle_ok_ = false;
          break;
        }
      }
  if (enforce_triangle && !triangle_ok_) throw std::invalid_argument("metric: triangle inequality violated");
}

std::vector<std::vector<double>> FiniteMetricSpace::matrix() const {
  const std::size_t n = size();
  std::vector<std::vector<double>> m(n, std::vector<double>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) m[i][j] = (*this)(i, j);
  return m;
}

FiniteMetricSpace FiniteMetricSpace::scaled(double t) const {
  if (!(t > 0.0)) throw std::invalid_argument("metric: scale must be positive");
  auto m = matrix();
  for (auto& row : m)
    for (auto& d : row) d *= t;
  return FiniteMetricSpace(labels_, std::move(m));
}

FiniteMetricSpace FiniteMetricSpace::permuted(const std::vector<std::size_t>& perm) const {
  const std::size_t n = size();
  if (perm.size() != n) throw std::invalid_argument("metric: permutation has the wrong size");
  std::vector<std::string> labels(n);
  std::vector<std::vector<double>> m(n, std::vector<double>(n));
  for (std::size_t i = 0; i < n; ++i) {
    labels[i] = labels_.at(perm[i]);
    for (std::size_t j = 0; j < n; ++j) m[i][j] = (*this)(perm[i], perm.at(j));
  }
  return FiniteMetricSpace(std::move(labels), std::move(m));
}

namespace {

std::vector<std::string> default_labels(std::size_t n) {
  std::vector<std::string> labels(n);
  for (std::size_t i = 0; i < n; ++i) labels[i] = std::to_string(i);
  return labels;
}

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

std::vector<std::vector<std::string>> parse_csv(const std::string& text) {
  std::vector<std::vector<std::string>> rows;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    line = trim(line);
    if (line.empty() || line[0] == '#') continue;
    std::vector<std::string> fields;
    std::string field;
    std::istringstream ls(line);
    while (std::getline(ls, field, ',')) fields.push_back(trim(field));
    if (!line.empty() && line.back() == ',') fields.push_back("");
    rows.push_back(std::move(fields));
  }
  return rows;
}

double parse_number(const std::string& s) {
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(s, &used);
  } catch (const std::exception&) {
    throw std::invalid_argument("csv: malformed number '" + s + "'");
  }
  if (used != s.size()) throw std::invalid_argument("csv: malformed number '" + s + "'");
  return v;
}

bool is_number(const std::string& s) {
  try {
    parse_number(s);
    return true;
  } catch (const std::invalid_argument&) {
    return false;
  }
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

FiniteMetricSpace from_point_cloud(const std::vector<std::vector<double>>& points) {
  if (points.empty()) throw std::invalid_argument("point cloud is empty");
  const std::size_t n = points.size(), dim = points[0].size();
  std::vector<std::vector<double>> m(n, std::vector<double>(n, 0.0));
  for (std::size_t i = 0; i < n; ++i) {
    if (points[i].size() != dim) throw std::invalid_argument("point cloud: inconsistent dimensions");
    for (std::size_t j = 0; j < i; ++j) {
      double s = 0.0;
      for (std::size_t c = 0; c < dim; ++c) s += (points[i][c] - points[j][c]) * (points[i][c] - points[j][c]);
      m[i][j] = m[j][i] = std::sqrt(s);
    }
  }
  return FiniteMetricSpace(default_labels(n), std::move(m));
}

FiniteMetricSpace from_graph(std::size_t n, const std::vector<WeightedEdge>& edges,
                             std::vector<std::string> labels) {
  if (n == 0) throw std::invalid_argument("graph: no vertices");
  if (labels.empty()) labels = default_labels(n);
  constexpr double inf = std::numeric_limits<double>::infinity();
  std::vector<std::vector<double>> d(n, std::vector<double>(n, inf));
  for (std::size_t i = 0; i < n; ++i) d[i][i] = 0.0;
  for (const auto& e : edges) {
    if (e.u >= n || e.v >= n) throw std::invalid_argument("graph: edge endpoint out of range");
    if (!(e.weight > 0.0)) throw std::invalid_argument("graph: edge weights must be positive");
    if (e.u == e.v) continue;
    d[e.u][e.v] = std::min(d[e.u][e.v], e.weight);
    d[e.v][e.u] = std::min(d[e.v][e.u], e.weight);
  }
  // Floyd-Warshall.
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        if (d[i][k] + d[k][j] < d[i][j]) d[i][j] = d[i][k] + d[k][j];
  for (const auto& row : d)
    for (double v : row)
      if (v == inf) throw std::invalid_argument("graph: not connected");
  return FiniteMetricSpace(std::move(labels), std::move(d));
}

FiniteMetricSpace cycle_graph(std::size_t n) {
  std::vector<WeightedEdge> edges;
  for (std::size_t i = 0; i < n && n > 1; ++i) edges.push_back({i, (i + 1) % n, 1.0});
  return from_graph(n, edges);
}

FiniteMetricSpace complete_multipartite_graph(const std::vector<std::size_t>& parts) {
  std::vector<std::size_t> part_of;
  for (std::size_t p = 0; p < parts.size(); ++p) part_of.insert(part_of.end(), parts[p], p);
  std::vector<WeightedEdge> edges;
  for (std::size_t i = 0; i < part_of.size(); ++i)
    for (std::size_t j = i + 1; j < part_of.size(); ++j)
      if (part_of[i] != part_of[j]) edges.push_back({i, j, 1.0});
  return from_graph(part_of.size(), edges);
}

FiniteMetricSpace petersen_graph() {
  std::vector<WeightedEdge> edges;
  for (std::size_t i = 0; i < 5; ++i) {
    edges.push_back({i, (i + 1) % 5, 1.0});          // outer cycle
    edges.push_back({i, i + 5, 1.0});                // spokes
    edges.push_back({5 + i, 5 + (i + 2) % 5, 1.0});  // inner pentagram
  }
  return from_graph(10, edges);
}

FiniteMetricSpace real_line_points(const std::vector<double>& xs) {
  const std::size_t n = xs.size();
  std::vector<std::vector<double>> m(n, std::vector<double>(n, 0.0));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) m[i][j] = std::abs(xs[i] - xs[j]);
  return FiniteMetricSpace(default_labels(n), std::move(m));
}

namespace {

FiniteMetricSpace circulant(std::size_t n, double (*chord)(std::size_t, std::size_t)) {
  std::vector<std::vector<double>> m(n, std::vector<double>(n, 0.0));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      if (i == j) continue;
      const std::size_t gap = i > j ? i - j : j - i;
      m[i][j] = chord(std::min(gap, n - gap), n);
    }
  return FiniteMetricSpace(default_labels(n), std::move(m));
}

}  // namespace

FiniteMetricSpace euclidean_cycle(std::size_t n) {
  return circulant(n, [](std::size_t k, std::size_t n) {
    return 2.0 * std::sin(std::numbers::pi * static_cast<double>(k) / static_cast<double>(n));
  });
}

FiniteMetricSpace geodesic_cycle(std::size_t n) {
  return circulant(n, [](std::size_t k, std::size_t n) {
    return 2.0 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(n);
  });
}

FiniteMetricSpace distance_matrix_from_csv_text(const std::string& text) {
  auto rows = parse_csv(text);
  if (rows.empty()) throw std::invalid_argument("csv: empty distance matrix");
  std::vector<std::string> labels = rows[0];
  const std::size_t n = labels.size();
  if (rows.size() != n + 1) throw std::invalid_argument("csv: distance matrix is not square");
  std::vector<std::vector<double>> m;
  for (std::size_t i = 1; i <= n; ++i) {
    auto& row = rows[i];
    // Tolerate a leading label column.
    if (row.size() == n + 1 && !is_number(row[0])) row.erase(row.begin());
    if (row.size() != n) throw std::invalid_argument("csv: distance matrix row has the wrong length");
    std::vector<double> values;
    for (const auto& f : row) values.push_back(parse_number(f));
    m.push_back(std::move(values));
  }
  return FiniteMetricSpace(std::move(labels), std::move(m));
}

std::string to_csv(const FiniteMetricSpace& x) {
  std::string out;
  for (std::size_t i = 0; i < x.size(); ++i) out += (i ? "," : "") + x.labels()[i];
  out += "\n";
  char buf[40];
  for (std::size_t i = 0; i < x.size(); ++i) {
    for (std::size_t j = 0; j < x.size(); ++j) {
      std::snprintf(buf, sizeof buf, "%.17g", x(i, j));
      out += (j ? "," : "") + std::string(buf);
    }
    out += "\n";
  }
  return out;
}

FiniteMetricSpace from_csv(const std::filesystem::path& path) {
  return distance_matrix_from_csv_text(read_file(path));
}

FiniteMetricSpace point_cloud_from_csv_text(const std::string& text) {
  std::vector<std::vector<double>> points;
  for (const auto& row : parse_csv(text)) {
    // Skip a header row.
    if (points.empty() && !row.empty() && !is_number(row[0])) continue;
    std::vector<double> p;
    for (const auto& f : row) p.push_back(parse_number(f));
    points.push_back(std::move(p));
  }
  return from_point_cloud(points);
}

namespace {

bool is_edge_header(const std::vector<std::string>& row) {
  static const std::set<std::string> names{"u", "v", "w", "weight", "source", "target", "from", "to"};
  if (row.size() < 2) return false;
  for (auto field : row) {
    std::transform(field.begin(), field.end(), field.begin(), [](unsigned char ch) { return std::tolower(ch); });
    if (!names.count(field)) return false;
  }
  return true;
}

}  // namespace

FiniteMetricSpace graph_from_csv_text(const std::string& text) {
  std::map<std::string, std::size_t> index;
  std::vector<std::string> labels;
  std::vector<WeightedEdge> edges;
  auto id = [&](const std::string& label) {
    auto [it, inserted] = index.try_emplace(label, labels.size());
    if (inserted) labels.push_back(label);
    return it->second;
  };
  auto rows = parse_csv(text);
  if (!rows.empty() && is_edge_header(rows.front())) rows.erase(rows.begin());
  for (const auto& row : rows) {
    if (row.size() == 1) {  // isolated vertex
      id(row[0]);
      continue;
    }
    if (row.size() != 2 && row.size() != 3) throw std::invalid_argument("csv: edge rows are u,v[,weight]");
    const double w = row.size() == 3 ? parse_number(row[2]) : 1.0;
    edges.push_back({id(row[0]), id(row[1]), w});
  }
  return from_graph(labels.size(), edges, labels);
}

LeinsterResult leinster_magnitude(const FiniteMetricSpace& x, double t) {
  if (!(t > 0.0)) throw std::invalid_argument("leinster_magnitude: t must be positive");
  const std::size_t n = x.size();
  LeinsterResult result;
  if (n == 0) {
    result.status = LeinsterResult::Status::Defined;
    return result;
  }
  std::vector<std::vector<double>> z(n, std::vector<double>(n + 1, 1.0));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) z[i][j] = std::exp(-t * x(i, j));
  const auto original = z;

  // Row echelon form with partial pivoting; columns whose best pivot falls
  // below the threshold are free and their unknowns are set to zero.
  constexpr double kPivotRel = 1e-12;
  std::vector<std::size_t> pivot_col;
  std::size_t row = 0;
  for (std::size_t col = 0; col < n && row < n; ++col) {
    std::size_t best = row;
    for (std::size_t r = row + 1; r < n; ++r)
      if (std::abs(z[r][col]) > std::abs(z[best][col])) best = r;
    if (std::abs(z[best][col]) <= kPivotRel) {
      result.warning = true;
      continue;
    }
    std::swap(z[row], z[best]);
    for (std::size_t r = row + 1; r < n; ++r) {
      const double f = z[r][col] / z[row][col];
      if (f == 0.0) continue;
      for (std::size_t c = col; c <= n; ++c) z[r][c] -= f * z[row][c];
    }
    pivot_col.push_back(col);
    ++row;
  }
  if (pivot_col.size() < n) result.warning = true;

  std::vector<double> w(n, 0.0);
  for (std::size_t r = pivot_col.size(); r-- > 0;) {
    const std::size_t col = pivot_col[r];
    double s = z[r][n];
    for (std::size_t c = col + 1; c < n; ++c) s -= z[r][c] * w[c];
    w[col] = s / z[r][col];
  }

  double residual = 0.0, total = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    double s = 0.0;
    for (std::size_t j = 0; j < n; ++j) s += original[i][j] * w[j];
    residual = std::max(residual, std::abs(s - 1.0));
    total += w[i];
  }
  result.residual = residual;
  result.value = total;
  if (residual > 1e-10) result.warning = true;
  result.status = residual <= 1e-8 ? LeinsterResult::Status::Defined : LeinsterResult::Status::Undefined;
  return result;
}

double min_nonzero_distance(const FiniteMetricSpace& x) {
  if (x.size() < 2) throw std::invalid_argument("min_nonzero_distance: need at least two points");
  double delta = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < x.size(); ++i)
    for (std::size_t j = i + 1; j < x.size(); ++j) delta = std::min(delta, x(i, j));
  return delta;
}

namespace {

// Inserts v into a sorted vector unless a value within the merge tolerance is
// already present. Returns true when inserted.
bool insert_merged(std::vector<double>& sorted, double v) {
  auto it = std::lower_bound(sorted.begin(), sorted.end(), v);
  if (it != sorted.end() && Tolerance::same_rate(*it, v)) return false;
  if (it != sorted.begin() && Tolerance::same_rate(*std::prev(it), v)) return false;
  sorted.insert(it, v);
  return true;
}

}  // namespace

std::vector<double> l_values(const FiniteMetricSpace& x, double l_max) {
  if (l_max < 0.0) throw std::invalid_argument("l_values: l_max must be nonnegative");
  const std::size_t n = x.size();
  std::vector<double> values{0.0};
  if (n < 2) return values;

  // Breadth-first over (endpoint, length) states; δ > 0 bounds the depth by
  // l_max / δ.
  std::vector<std::vector<double>> seen(n, std::vector<double>{0.0});
  std::vector<std::pair<std::size_t, double>> frontier;
  for (std::size_t i = 0; i < n; ++i) frontier.emplace_back(i, 0.0);
  const double cap = l_max + Tolerance::kRateAbs + Tolerance::kRateRel * l_max;
  while (!frontier.empty()) {
    std::vector<std::pair<std::size_t, double>> next;
    for (const auto& [u, len] : frontier) {
      for (std::size_t v = 0; v < n; ++v) {
        if (v == u) continue;
        const double l = len + x(u, v);
        if (l > cap) continue;
        if (insert_merged(seen[v], l)) {
          next.emplace_back(v, l);
          insert_merged(values, l);
        }
      }
    }
    frontier = std::move(next);
  }
  return values;
}

}  // namespace magnikit
