#pragma once

namespace mlab {

/// Parameters of the kernel pair |x|^(-alpha) <-> |omega|^(-beta) in
/// dimension n, with beta = n - alpha and 0 < alpha < n.
struct RieszParams {
  int n = 3;
  double alpha = 1.0;
  double beta = 2.0;

  RieszParams(int n_, double alpha_);
};

/// gamma(alpha) with 1/gamma = pi^(-n/2) 2^(-alpha) Gamma(beta/2)/Gamma(alpha/2).
double riesz_gamma(const RieszParams& p);

/// kappa(theta) = 2 Gamma((theta-1)/2) / (sqrt(pi) Gamma(theta/2)), the bound
/// constant of the weighted L1 estimate; strictly decreasing on (1, inf).
/// Throws DivergenceError for theta <= 1.
double kappa(double theta);

/// (4/pi) * integral of (1+r^2)^(-theta/2) over (0, inf) by adaptive
/// quadrature plus an analytic tail; equals kappa(theta) up to quadrature.
double kappa_via_quadrature(double theta);

struct IdentityResidual {
  double lhs = 0.0;
  double rhs = 0.0;
  double residual = 0.0;
};

/// Both sides of the Riesz identity for the Gaussian amplitude * exp(-t|x|^2),
/// each reduced to a 1d integral and evaluated independently.
IdentityResidual riesz_identity_residual(double t, const RieszParams& p, double amplitude = 1.0);

}  // namespace mlab
