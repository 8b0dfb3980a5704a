#pragma once

#include <span>
#include <vector>

#include "momentum_lab/spectral_function.hpp"

namespace mlab {

/// Angular reduction of the momentum-space Coulomb kernel: integrating
/// |omega - eta|^(-2) over the sphere |eta| = r gives (2 pi r / rho) * L with
/// L(rho, r) = log((rho + r)/|rho - r|), so for radial f
///   (K f)(rho) = 1/(pi rho) * integral of r f(r) L(rho, r) dr.
double coulomb_log_kernel(double rho, double r);

/// (K f)(rho_j) at every grid node: panel quadrature between nodes, dyadic
/// refinement into the two panels meeting the logarithmic diagonal r = rho_j,
/// and an analytic power-law tail beyond r_max. Input must be integrable
/// (tail_exponent > 3); output carries tail exponent min(2, p - 2).
RadialSpectralFunction apply_K_radial(const RadialSpectralFunction& f);

/// Dense matrix form of apply_K_radial for repeated application on one grid
/// (the quadrature and interpolation are linear in the samples).
class KRadialOperator {
 public:
  KRadialOperator(GridPtr grid, double input_tail_exponent);

  std::vector<double> apply(std::span<const double> samples) const;
  RadialSpectralFunction apply(const RadialSpectralFunction& f) const;

  const GridPtr& grid() const { return grid_; }
  double output_tail_exponent() const { return p_out_; }

 private:
  GridPtr grid_;
  double p_in_;
  double p_out_;
  std::vector<double> matrix_;  // row-major size x size
};

/// [ integral (1+|w|^2)^(-theta/2) |K f| dw ] / [ integral |f| dw ], both as
/// radial integrals over R^3. Always <= kappa(theta).
double lemma23_ratio(const RadialSpectralFunction& f, double theta);

/// lemma23_ratio of an L1-normalized smooth bump of width epsilon at the
/// origin; tends to kappa(theta)/2 as epsilon -> 0.
double sharpness_probe(double epsilon, double theta);

/// The bump profile used by sharpness_probe, supported on [eps/8, eps] and
/// smooth on the log axis so graded grids resolve it at any scale.
double sharpness_bump_profile(double r, double epsilon);

}  // namespace mlab
