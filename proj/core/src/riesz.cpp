#include "momentum_lab/riesz.hpp"

#include <cmath>
#include <stdexcept>

#include "momentum_lab/errors.hpp"
#include "momentum_lab/quadrature.hpp"

namespace mlab {

RieszParams::RieszParams(int n_, double alpha_) : n(n_), alpha(alpha_), beta(n_ - alpha_) {
  if (n < 1) throw std::invalid_argument("RieszParams: dimension must be positive");
  if (!(alpha > 0.0 && alpha < static_cast<double>(n)))
    throw std::invalid_argument("RieszParams: need 0 < alpha < n");
}

double riesz_gamma(const RieszParams& p) {
  const double log_inv = -0.5 * p.n * std::log(M_PI) - p.alpha * std::log(2.0) +
                         std::lgamma(0.5 * p.beta) - std::lgamma(0.5 * p.alpha);
  return std::exp(-log_inv);
}

double kappa(double theta) {
  if (!(theta > 1.0)) throw DivergenceError("kappa: diverges for theta <= 1");
  const double log_value = std::log(2.0) + std::lgamma(0.5 * (theta - 1.0)) -
                           0.5 * std::log(M_PI) - std::lgamma(0.5 * theta);
  return std::exp(log_value);
}

double kappa_via_quadrature(double theta) {
  if (!(theta > 1.0)) throw DivergenceError("kappa_via_quadrature: diverges for theta <= 1");
  const double R = 50.0;
  const double body = integrate_adaptive(
      [theta](double r) { return std::pow(1.0 + r * r, -0.5 * theta); }, 0.0, R, 1e-14);
  // integral over [R, inf) of r^(-theta) (1 + r^-2)^(-theta/2)
  double binom = 1.0;
  double power = std::pow(R, 1.0 - theta);
  double tail = 0.0;
  for (int k = 0; k < 40; ++k) {
    const double term = binom * power / (theta - 1.0 + 2.0 * k);
    tail += term;
    if (std::abs(term) < 1e-17 * tail && k > 2) break;
    binom *= (-0.5 * theta - k) / (k + 1.0);
    power /= R * R;
  }
  return 4.0 / M_PI * (body + tail);
}

IdentityResidual riesz_identity_residual(double t, const RieszParams& p, double amplitude) {
  if (!(t > 0.0)) throw std::invalid_argument("riesz_identity_residual: t must be positive");
  const double n = static_cast<double>(p.n);
  const double sphere = 2.0 * std::pow(M_PI, 0.5 * n) / std::exp(std::lgamma(0.5 * n));

  // lhs: integral of |x|^(-alpha) amplitude e^(-t|x|^2) over R^n, reduced to
  // the radial line. The Gaussian is below 1e-45 beyond r^2 = 104/t.
  const double r_cut = std::sqrt(104.0 / t);
  const double lhs =
      sphere * amplitude *
      integrate_adaptive(
          [&](double r) { return std::pow(r, n - 1.0 - p.alpha) * std::exp(-t * r * r); }, 0.0,
          r_cut, 1e-13);

  // rhs: (sqrt(2 pi))^n / gamma(alpha) * integral of |w|^(-beta) fhat, with
  // fhat(w) = amplitude (2t)^(-n/2) e^(-|w|^2/(4t)).
  const double w_cut = std::sqrt(104.0 * 4.0 * t);
  const double integral = integrate_adaptive(
      [&](double w) { return std::pow(w, n - 1.0 - p.beta) * std::exp(-w * w / (4.0 * t)); }, 0.0,
      w_cut, 1e-13);
  const double rhs = std::pow(2.0 * M_PI, 0.5 * n) / riesz_gamma(p) * sphere * amplitude *
                     std::pow(2.0 * t, -0.5 * n) * integral;

  IdentityResidual out;
  out.lhs = lhs;
  out.rhs = rhs;
  out.residual = std::abs(lhs - rhs) / std::abs(lhs);
  return out;
}

}  // namespace mlab
