#pragma once

#include "momentum_lab/spectral_function.hpp"

namespace mlab {

/// Exponent s of the weight (1 + rho^2)^(s/2) in the weighted L1 norms.
struct BarronExponent {
  double s = 0.0;
};

/// 4*pi * integral of rho^2 (1+rho^2)^(s/2) |f(rho)| d rho over (0, inf),
/// grid quadrature plus the analytic power-law tail beyond r_max.
/// Throws DivergenceError unless tail_exponent - s > 3.
double weighted_l1_norm(const RadialSpectralFunction& f, BarronExponent s);

/// (4*pi * integral of rho^2 (1+rho^2)^s |f(rho)|^2 d rho)^(1/2).
/// Throws DivergenceError unless 2*tail_exponent - 2s > 3.
double weighted_l2_norm(const RadialSpectralFunction& f, double s);

/// Tail integral of rho^2 (1+rho^2)^(s/2) * |c| rho^(-p) over [R, inf),
/// evaluated by the binomial expansion of (1 + rho^-2)^(s/2); requires
/// R >= 2 and p - s > 3.
double l1_tail_integral(double R, double c, double p, double s);

/// Tail integral of rho^2 (1+rho^2)^s * c^2 rho^(-2p) over [R, inf).
double l2_tail_integral(double R, double c, double p, double s);

}  // namespace mlab
