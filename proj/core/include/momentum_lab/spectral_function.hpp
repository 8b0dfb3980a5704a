#pragma once

#include <array>
#include <cstddef>
#include <functional>
#include <limits>
#include <vector>

#include "momentum_lab/radial_grid.hpp"

namespace mlab {

/// Interpolation stencil: sample indices [first, first + size) with weights,
/// linear in the samples.
struct InterpStencil {
  std::size_t first = 0;
  std::size_t size = 0;
  std::array<double, 6> weights{};
};

/// Stencil for evaluating a grid-sampled radial function at r in
/// [nodes.front(), nodes.back()]: 6-point Lagrange in log r. Below the first
/// node an even quadratic through the first two nodes is used.
InterpStencil interpolation_stencil(const RadialGrid& grid, double r);

/// Weights of the tail-coefficient fit c = w0*f[n-2] + w1*f[n-1] for the
/// model c * rho^(-p); both zero when p is infinite or rho^(-p) underflows.
std::array<double, 2> tail_fit_weights(const RadialGrid& grid, double p);

/// A rotation-invariant function on R^3 stored as radial samples f(rho_k);
/// beyond r_max it is extrapolated as c * rho^(-tail_exponent) with c fitted
/// from the last two samples. Immutable after construction.
class RadialSpectralFunction {
 public:
  static constexpr double no_tail = std::numeric_limits<double>::infinity();

  RadialSpectralFunction(GridPtr grid, std::vector<double> values, double tail_exponent);

  static RadialSpectralFunction from_function(GridPtr grid,
                                              const std::function<double(double)>& f,
                                              double tail_exponent);
  static RadialSpectralFunction zero(GridPtr grid, double tail_exponent = no_tail);

  const GridPtr& grid() const { return grid_; }
  const std::vector<double>& values() const { return values_; }
  double value(std::size_t k) const { return values_[k]; }
  double tail_exponent() const { return tail_exponent_; }
  std::size_t size() const { return values_.size(); }

  /// Signed tail coefficient c: least-squares fit of c * rho^(-p) through the
  /// last two samples. Zero when the tail exponent is infinite or the fit
  /// underflows.
  double tail_coefficient() const { return tail_coefficient_; }

  /// Interpolated evaluation anywhere on [0, infinity).
  double operator()(double r) const;

  bool shares_grid(const RadialSpectralFunction& other) const {
    return grid_.get() == other.grid_.get();
  }

 private:
  GridPtr grid_;
  std::vector<double> values_;
  double tail_exponent_;
  double tail_coefficient_;
};

/// a*f + b*g on a shared grid; the result's tail exponent is the slower decay.
RadialSpectralFunction axpby(double a, const RadialSpectralFunction& f, double b,
                             const RadialSpectralFunction& g);
RadialSpectralFunction scale(double a, const RadialSpectralFunction& f);

}  // namespace mlab
