#include "momentum_lab/radial_grid.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <stdexcept>

#include "momentum_lab/quadrature.hpp"

namespace mlab {

std::string to_string(GridScheme scheme) {
  return scheme == GridScheme::composite_gauss ? "composite-gauss" : "graded";
}

GridScheme grid_scheme_from_string(const std::string& name) {
  if (name == "composite-gauss") return GridScheme::composite_gauss;
  if (name == "graded") return GridScheme::graded;
  throw std::invalid_argument("unknown grid scheme: " + name);
}

RadialGrid::RadialGrid(std::vector<double> nodes, std::vector<double> weights, double r_max,
                       GridScheme scheme, std::vector<GridPanel> panels)
    : nodes_(std::move(nodes)),
      weights_(std::move(weights)),
      panels_(std::move(panels)),
      r_max_(r_max),
      scheme_(scheme) {
  if (nodes_.empty() || nodes_.size() != weights_.size())
    throw std::invalid_argument("RadialGrid: node/weight size mismatch");
  double prev = 0.0;
  for (std::size_t k = 0; k < nodes_.size(); ++k) {
    if (!(nodes_[k] > prev)) throw std::invalid_argument("RadialGrid: nodes must increase in (0, r_max]");
    if (!(nodes_[k] <= r_max_ * (1.0 + 1e-14)))
      throw std::invalid_argument("RadialGrid: node beyond r_max");
    if (!(weights_[k] > 0.0)) throw std::invalid_argument("RadialGrid: nonpositive weight");
    prev = nodes_[k];
  }
  const double total = pairwise_sum(weights_);
  if (std::abs(total - r_max_) > 1e-12 * r_max_)
    throw std::invalid_argument("RadialGrid: weights do not integrate 1 over [0, r_max]");
  log_nodes_.resize(nodes_.size());
  std::transform(nodes_.begin(), nodes_.end(), log_nodes_.begin(),
                 [](double x) { return std::log(x); });
}

std::size_t RadialGrid::lower_node_bound(double r) const {
  return static_cast<std::size_t>(std::lower_bound(nodes_.begin(), nodes_.end(), r) -
                                  nodes_.begin());
}

namespace {

GridPtr build_composite_gauss(double r_max, std::size_t n) {
  std::size_t per_panel = 8;
  while (per_panel > 1 && n % per_panel != 0) per_panel /= 2;
  const std::size_t panel_count = n / per_panel;
  const GaussRule& rule = gauss_legendre(static_cast<int>(per_panel));
  const double width = r_max / static_cast<double>(panel_count);

  std::vector<double> nodes, weights;
  std::vector<GridPanel> panels;
  nodes.reserve(n);
  weights.reserve(n);
  for (std::size_t p = 0; p < panel_count; ++p) {
    const double a = width * static_cast<double>(p);
    const double b = (p + 1 == panel_count) ? r_max : width * static_cast<double>(p + 1);
    const double mid = 0.5 * (a + b);
    const double hw = 0.5 * (b - a);
    for (std::size_t i = 0; i < per_panel; ++i) {
      nodes.push_back(mid + hw * rule.nodes[i]);
      weights.push_back(hw * rule.weights[i]);
    }
    panels.push_back({a, b, p * per_panel, per_panel, static_cast<int>(2 * per_panel - 1)});
  }
  return std::make_shared<RadialGrid>(std::move(nodes), std::move(weights), r_max,
                                      GridScheme::composite_gauss, std::move(panels));
}

// Weights of the quadratic through (x0, x1, x2) integrated over [a, b].
std::array<double, 3> quadratic_weights(double x0, double x1, double x2, double a, double b) {
  const double xs[3] = {x0, x1, x2};
  std::array<double, 3> w{};
  for (int i = 0; i < 3; ++i) {
    const double xa = xs[(i + 1) % 3];
    const double xb = xs[(i + 2) % 3];
    const double denom = (xs[i] - xa) * (xs[i] - xb);
    // integral of (x - xa)(x - xb) over [a, b]
    auto prim = [&](double x) {
      return x * x * x / 3.0 - 0.5 * (xa + xb) * x * x + xa * xb * x;
    };
    w[i] = (prim(b) - prim(a)) / denom;
  }
  return w;
}

GridPtr build_graded(double r_max, std::size_t n) {
  const double q = RadialGrid::graded_ratio;
  std::vector<double> nodes(n);
  for (std::size_t k = 0; k < n; ++k)
    nodes[k] = r_max * std::pow(q, static_cast<double>(k) - static_cast<double>(n - 1));
  nodes[n - 1] = r_max;

  std::vector<double> weights(n, 0.0);
  std::vector<GridPanel> panels;

  // Stub [0, rho_0]: right-endpoint rule. The stub is exponentially small in
  // n, so only constant exactness matters here.
  weights[0] += nodes[0];
  panels.push_back({0.0, nodes[0], 0, 1, 0});

  std::size_t i = 0;
  if ((n - 1) % 2 == 1) {
    // Odd interval count: absorb the parity at the tiny end with a trapezoid.
    const double h = nodes[1] - nodes[0];
    weights[0] += 0.5 * h;
    weights[1] += 0.5 * h;
    panels.push_back({nodes[0], nodes[1], 0, 2, 1});
    i = 1;
  }
  for (; i + 2 < n; i += 2) {
    const auto w = quadratic_weights(nodes[i], nodes[i + 1], nodes[i + 2], nodes[i], nodes[i + 2]);
    weights[i] += w[0];
    weights[i + 1] += w[1];
    weights[i + 2] += w[2];
    panels.push_back({nodes[i], nodes[i + 2], i, 3, 2});
  }
  return std::make_shared<RadialGrid>(std::move(nodes), std::move(weights), r_max,
                                      GridScheme::graded, std::move(panels));
}

}  // namespace

GridPtr build_radial_grid(double r_max, std::size_t node_count, GridScheme scheme) {
  if (!(r_max > 0.0)) throw std::invalid_argument("build_radial_grid: r_max must be positive");
  if (node_count < 8) throw std::invalid_argument("build_radial_grid: need at least 8 nodes");
  return scheme == GridScheme::composite_gauss ? build_composite_gauss(r_max, node_count)
                                               : build_graded(r_max, node_count);
}

}  // namespace mlab
