#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "momentum_lab/coulomb_operator.hpp"
#include "momentum_lab/norms.hpp"
#include "momentum_lab/spectral_function.hpp"

namespace mlab {

/// Resolvent multiplier 2 / (rho^2 - 2 lambda); requires lambda < 0.
double g_multiplier(double lambda, double rho);

/// Nodewise multiplication by g_multiplier; output tail gains two powers.
RadialSpectralFunction apply_G(double lambda, const RadialSpectralFunction& f);

/// T(lambda) f = G(lambda) Z K f for the central-Coulomb case. The attraction
/// sign combines with the sign convention of T so that T has a positive
/// kernel; positivity-preserving.
RadialSpectralFunction apply_T(double lambda, double Z, const RadialSpectralFunction& f);

/// Sharp nodewise high-frequency mask: samples at rho_k < Omega are zeroed,
/// so the effective cut sits on a node (panel boundary). Idempotent.
RadialSpectralFunction highpass(double Omega, const RadialSpectralFunction& f);

/// Complement f - highpass(Omega, f).
RadialSpectralFunction lowpass(double Omega, const RadialSpectralFunction& f);

/// Matrix form of T(lambda) on one grid for repeated application.
class TOperator {
 public:
  TOperator(GridPtr grid, double lambda, double Z, double input_tail_exponent = 4.0);

  RadialSpectralFunction apply(const RadialSpectralFunction& f) const;
  std::vector<double> apply(std::span<const double> samples) const;

  const GridPtr& grid() const { return grid_; }
  double lambda() const { return lambda_; }

 private:
  GridPtr grid_;
  KRadialOperator k_op_;
  double lambda_;
  double z_;
};

enum class OperatorNormKind { H1, L1_B0 };

/// Empirical contraction factor of P T(lambda): the max over seeded test
/// functions (Gaussian shells spread over the spectrum plus broad profiles)
/// of |P T f| / |f| in the selected norm. Decreases with Omega consistently
/// with the (1 + Omega^2)^(-1/2) high-frequency damping.
double contraction_factor(double lambda, double Z, double Omega, OperatorNormKind norm_kind,
                          int trials, const GridPtr& grid, std::uint64_t seed = 41);

struct NeumannResult {
  RadialSpectralFunction v;
  int terms = 0;
  double contraction = 0.0;  // empirical H1 factor checked before summing
};

/// Solves v = P T(lambda) (v + u_low) for the high-frequency part by summing
/// the Neumann series; requires the empirical contraction factor at Omega to
/// be < 1 (NotContractiveError otherwise). The returned v satisfies
/// |v - P T (v + u_low)| < tol (1 + |v|) in the H1 norm.
NeumannResult neumann_highfreq_solve(double lambda, double Z, double Omega,
                                     const RadialSpectralFunction& u_low, double tol,
                                     int max_terms = 400);

struct SolverConfig {
  double nuclear_charge = 1.0;
  std::pair<double, double> lambda_bracket{-1.0, -0.1};
  double cutoff = 0.0;
  double fixed_point_tol = 1e-4;
  int max_iterations = 400;
  GridPtr grid;

  void validate() const;
};

struct EigenResult {
  double lambda = 0.0;
  RadialSpectralFunction u;
  int iterations = 0;
  double residual = 0.0;  // |u - T(lambda) u| / |u| in the H1 norm
};

/// Locates lambda in the bracket with dominant eigenvalue mu(lambda) of
/// A(lambda) = G(lambda) Z K equal to 1 (bisection outside, power iteration
/// with H1 normalization inside) and returns the eigenpair.
EigenResult eigen_solve(const SolverConfig& config);

/// |T(lambda) f|_{1,s} / (kappa(2-s) |f|_{1,0}).
double t_lambda_bound_ratio(double lambda, double Z, const RadialSpectralFunction& f, double s);

/// [ integral |x|^-2 |u|^2 ] / [ 4 integral |grad u|^2 ] for a radial
/// position-space function with supplied derivative; <= 1 by the Hardy
/// inequality.
double hardy_ratio(const std::function<double(double)>& u, const std::function<double(double)>& du,
                   const RadialGrid& grid);

struct BarronProfileRow {
  double s = 0.0;
  double norm = 0.0;
  double compensated = 0.0;  // (1 - s) * norm
  bool diverged = false;
};

/// Weighted L1 norms over a list of exponents with the compensated values
/// (1-s) |u|_{1,s}; divergent entries are flagged, not fatal.
std::vector<BarronProfileRow> barron_growth_profile(const RadialSpectralFunction& u,
                                                    const std::vector<double>& s_list);

}  // namespace mlab
