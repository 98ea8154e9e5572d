#pragma once

#include <filesystem>
#include <string>
#include <utility>
#include <vector>

namespace magnikit {

/// Labelled points with a symmetric dissimilarity matrix (zero diagonal,
/// strictly positive off-diagonal). The triangle inequality is checked and
/// recorded, and only enforced when asked for.
class FiniteMetricSpace {
 public:
  FiniteMetricSpace() = default;

  /// Throws std::invalid_argument on a non-square, asymmetric, negative or
  /// degenerate matrix, or (with enforce_triangle) a triangle violation.
  FiniteMetricSpace(std::vector<std::string> labels, std::vector<std::vector<double>> dist,
                    bool enforce_triangle = false);

  std::size_t size() const { return labels_.size(); }
  const std::vector<std::string>& labels() const { return labels_; }
  double operator()(std::size_t i, std::size_t j) const { return dist_[i * labels_.size() + j]; }
  std::vector<std::vector<double>> matrix() const;

  bool satisfies_triangle_inequality() const { return triangle_ok_; }

  /// Same points, every distance multiplied by t.
  FiniteMetricSpace scaled(double t) const;
  /// Points reordered so that new point i is old point perm[i].
  FiniteMetricSpace permuted(const std::vector<std::size_t>& perm) const;

  bool operator==(const FiniteMetricSpace&) const = default;

 private:
  std::vector<std::string> labels_;
  std::vector<double> dist_;
  bool triangle_ok_ = true;
};

FiniteMetricSpace from_point_cloud(const std::vector<std::vector<double>>& points);

/// Shortest-path metric of a connected graph on vertices 0..n-1. Edge
/// weights must be positive; throws std::invalid_argument if disconnected.
struct WeightedEdge {
  std::size_t u;
  std::size_t v;
  double weight = 1.0;
};
FiniteMetricSpace from_graph(std::size_t n, const std::vector<WeightedEdge>& edges,
                             std::vector<std::string> labels = {});

/// Common test spaces.
FiniteMetricSpace cycle_graph(std::size_t n);
FiniteMetricSpace complete_multipartite_graph(const std::vector<std::size_t>& parts);
FiniteMetricSpace petersen_graph();
FiniteMetricSpace real_line_points(const std::vector<double>& xs);
FiniteMetricSpace euclidean_cycle(std::size_t n);
FiniteMetricSpace geodesic_cycle(std::size_t n);

/// Distance-matrix CSV: header row of labels, then the square matrix.
FiniteMetricSpace distance_matrix_from_csv_text(const std::string& text);
std::string to_csv(const FiniteMetricSpace& x);
FiniteMetricSpace from_csv(const std::filesystem::path& path);
/// Point cloud CSV: one point per row, comma-separated coordinates.
FiniteMetricSpace point_cloud_from_csv_text(const std::string& text);
/// Edge-list CSV: rows `u,v` or `u,v,weight` with arbitrary vertex labels,
/// after an optional header such as `u,v,w` or `source,target`.
FiniteMetricSpace graph_from_csv_text(const std::string& text);

struct LeinsterResult {
  enum class Status { Defined, Undefined };
  Status status = Status::Undefined;
  double value = 0.0;
  /// ‖Zw − 1‖∞ of the returned weighting.
  double residual = 0.0;
  /// Set when a pivot fell below the singularity threshold or the residual
  /// is large enough to suggest poor conditioning.
  bool warning = false;

  bool defined() const { return status == Status::Defined; }
};

/// Σw for a weighting w of tX, i.e. a solution of Z w = 1 with
/// Z_ij = exp(-t d(x_i, x_j)). Throws std::invalid_argument if t <= 0.
LeinsterResult leinster_magnitude(const FiniteMetricSpace& x, double t);

/// Minimum off-diagonal distance δ. Requires at least two points.
double min_nonzero_distance(const FiniteMetricSpace& x);

/// Every tuple length ℓ(x_0,...,x_k) ≤ l_max over tuples with consecutive
/// entries distinct, sorted, with near-equal values merged.
std::vector<double> l_values(const FiniteMetricSpace& x, double l_max);

}  // namespace magnikit
