#pragma once

#include <cstddef>
#include <memory>
#include <string>
#include <vector>

namespace mlab {

enum class GridScheme { composite_gauss, graded };

std::string to_string(GridScheme scheme);
GridScheme grid_scheme_from_string(const std::string& name);

/// One quadrature panel [a, b] with the indices of the nodes it owns and the
/// polynomial degree its weights integrate exactly.
struct GridPanel {
  double a = 0.0;
  double b = 0.0;
  std::size_t first = 0;
  std::size_t count = 0;
  int exact_degree = 0;
};

/// Radial quadrature grid on (0, r_max]. Nodes are strictly increasing, all
/// weights are positive, and the weights integrate the constant 1 over
/// [0, r_max] exactly up to roundoff.
class RadialGrid {
 public:
  static constexpr double graded_ratio = 1.15;

  RadialGrid(std::vector<double> nodes, std::vector<double> weights, double r_max,
             GridScheme scheme, std::vector<GridPanel> panels);

  const std::vector<double>& nodes() const { return nodes_; }
  const std::vector<double>& weights() const { return weights_; }
  const std::vector<double>& log_nodes() const { return log_nodes_; }
  const std::vector<GridPanel>& panels() const { return panels_; }
  double r_max() const { return r_max_; }
  GridScheme scheme() const { return scheme_; }
  std::size_t size() const { return nodes_.size(); }

  double node(std::size_t k) const { return nodes_[k]; }
  double weight(std::size_t k) const { return weights_[k]; }

  /// Index of the first node with value >= r, or size() if none.
  std::size_t lower_node_bound(double r) const;

 private:
  std::vector<double> nodes_;
  std::vector<double> weights_;
  std::vector<double> log_nodes_;
  std::vector<GridPanel> panels_;
  double r_max_;
  GridScheme scheme_;
};

using GridPtr = std::shared_ptr<const RadialGrid>;

/// Builds a radial grid. composite_gauss places Gauss-Legendre panels of
/// equal width; graded places a geometric node sequence with ratio 1.15
/// clustering toward 0, ending exactly at r_max.
GridPtr build_radial_grid(double r_max, std::size_t node_count, GridScheme scheme);

}  // namespace mlab
