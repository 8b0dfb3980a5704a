#include "momentum_lab/spectral_function.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace mlab {

InterpStencil interpolation_stencil(const RadialGrid& grid, double r) {
  const auto& nodes = grid.nodes();
  const auto& logs = grid.log_nodes();
  const std::size_t n = nodes.size();
  InterpStencil st;

  if (r <= nodes.front()) {
    // Even quadratic a + b r^2 through the first two samples; radial
    // functions are even in r, so this is the right extrapolation basis.
    const double d = nodes[1] * nodes[1] - nodes[0] * nodes[0];
    const double u = (r * r - nodes[0] * nodes[0]) / d;
    st.first = 0;
    st.size = 2;
    st.weights[0] = 1.0 - u;
    st.weights[1] = u;
    return st;
  }

  std::size_t hi = grid.lower_node_bound(r);  // first node >= r
  if (hi >= n) hi = n - 1;
  const std::size_t width = std::min<std::size_t>(6, n);
  std::size_t first = (hi >= 3) ? hi - 3 : 0;
  if (first + width > n) first = n - width;

  st.first = first;
  st.size = width;

  // Radial samples are values of even functions. Stencils that span more
  // than a factor e^3 in radius (the near-origin panels of composite grids)
  // are interpolated in the even coordinate r^2; elsewhere log r keeps the
  // Lagrange basis well conditioned, graded grids being uniform in it.
  const bool wide = logs[first + width - 1] - logs[first] > 3.0;
  const double t = wide ? r * r : std::log(r);
  auto coord = [&](std::size_t k) {
    return wide ? nodes[k] * nodes[k] : logs[k];
  };
  for (std::size_t i = 0; i < width; ++i) {
    double w = 1.0;
    for (std::size_t j = 0; j < width; ++j) {
      if (j == i) continue;
      w *= (t - coord(first + j)) / (coord(first + i) - coord(first + j));
    }
    st.weights[i] = w;
  }
  return st;
}

std::array<double, 2> tail_fit_weights(const RadialGrid& grid, double p) {
  if (!std::isfinite(p)) return {0.0, 0.0};
  const std::size_t n = grid.size();
  // Least-squares fit of c * rho^(-p) through the last two samples, linear in
  // the samples so that operators built on top stay linear.
  const double b0 = std::pow(grid.node(n - 2), -p);
  const double b1 = std::pow(grid.node(n - 1), -p);
  const double den = b0 * b0 + b1 * b1;
  if (!(den > 0.0) || !std::isfinite(den)) return {0.0, 0.0};
  return {b0 / den, b1 / den};
}

namespace {

double fit_tail_coefficient(const RadialGrid& grid, const std::vector<double>& values, double p) {
  const auto w = tail_fit_weights(grid, p);
  const std::size_t n = values.size();
  const double c = w[0] * values[n - 2] + w[1] * values[n - 1];
  return std::isfinite(c) ? c : 0.0;
}

}  // namespace

RadialSpectralFunction::RadialSpectralFunction(GridPtr grid, std::vector<double> values,
                                               double tail_exponent)
    : grid_(std::move(grid)), values_(std::move(values)), tail_exponent_(tail_exponent) {
  if (!grid_) throw std::invalid_argument("RadialSpectralFunction: null grid");
  if (values_.size() != grid_->size())
    throw std::invalid_argument("RadialSpectralFunction: sample count != grid size");
  for (double v : values_)
    if (!std::isfinite(v)) throw std::invalid_argument("RadialSpectralFunction: non-finite sample");
  if (std::isnan(tail_exponent_))
    throw std::invalid_argument("RadialSpectralFunction: tail exponent is NaN");
  tail_coefficient_ = fit_tail_coefficient(*grid_, values_, tail_exponent_);
}

RadialSpectralFunction RadialSpectralFunction::from_function(
    GridPtr grid, const std::function<double(double)>& f, double tail_exponent) {
  if (!grid) throw std::invalid_argument("from_function: null grid");
  std::vector<double> values(grid->size());
  for (std::size_t k = 0; k < values.size(); ++k) values[k] = f(grid->node(k));
  return RadialSpectralFunction(std::move(grid), std::move(values), tail_exponent);
}

RadialSpectralFunction RadialSpectralFunction::zero(GridPtr grid, double tail_exponent) {
  std::vector<double> values(grid->size(), 0.0);
  return RadialSpectralFunction(std::move(grid), std::move(values), tail_exponent);
}

double RadialSpectralFunction::operator()(double r) const {
  if (r < 0.0) throw std::invalid_argument("RadialSpectralFunction: negative radius");
  const auto& nodes = grid_->nodes();
  if (r > nodes.back()) {
    if (tail_coefficient_ == 0.0) return 0.0;
    return tail_coefficient_ * std::pow(r, -tail_exponent_);
  }
  const InterpStencil st = interpolation_stencil(*grid_, r);
  double s = 0.0;
  for (std::size_t i = 0; i < st.size; ++i) s += st.weights[i] * values_[st.first + i];
  return s;
}

RadialSpectralFunction axpby(double a, const RadialSpectralFunction& f, double b,
                             const RadialSpectralFunction& g) {
  if (!f.shares_grid(g)) throw std::invalid_argument("axpby: functions live on different grids");
  std::vector<double> values(f.size());
  for (std::size_t k = 0; k < values.size(); ++k)
    values[k] = a * f.value(k) + b * g.value(k);
  return RadialSpectralFunction(f.grid(), std::move(values),
                                std::min(f.tail_exponent(), g.tail_exponent()));
}

RadialSpectralFunction scale(double a, const RadialSpectralFunction& f) {
  std::vector<double> values(f.size());
  for (std::size_t k = 0; k < values.size(); ++k) values[k] = a * f.value(k);
  return RadialSpectralFunction(f.grid(), std::move(values), f.tail_exponent());
}

}  // namespace mlab
