#include "momentum_lab/norms.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

#include "momentum_lab/errors.hpp"
#include "momentum_lab/quadrature.hpp"

namespace mlab {

namespace {

// integral over [R, inf) of rho^(a) * (1 + rho^-2)^(q) d rho for a < -1,
// expanded as sum_k binom(q, k) R^(a+1-2k) / (-(a+1) + 2k).
double tail_series(double R, double a, double q) {
  if (!(R >= 2.0))
    throw std::invalid_argument("tail correction requires r_max >= 2");
  double binom = 1.0;
  double power = std::pow(R, a + 1.0);
  double acc = 0.0;
  const double inv_r2 = 1.0 / (R * R);
  for (int k = 0; k < 64; ++k) {
    const double denom = -(a + 1.0) + 2.0 * k;
    const double term = binom * power / denom;
    acc += term;
    if (std::abs(term) < 1e-17 * std::abs(acc) && k > 2) break;
    binom *= (q - k) / (k + 1.0);
    power *= inv_r2;
  }
  return acc;
}

}  // namespace

double l1_tail_integral(double R, double c, double p, double s) {
  if (c == 0.0) return 0.0;
  return std::abs(c) * tail_series(R, 2.0 + s - p, 0.5 * s);
}

double l2_tail_integral(double R, double c, double p, double s) {
  if (c == 0.0) return 0.0;
  return c * c * tail_series(R, 2.0 + 2.0 * s - 2.0 * p, s);
}

double weighted_l1_norm(const RadialSpectralFunction& f, BarronExponent s) {
  const double p = f.tail_exponent();
  if (!(p - s.s > 3.0))
    throw DivergenceError("weighted_l1_norm: tail_exponent - s <= 3, integral diverges");
  const RadialGrid& grid = *f.grid();
  std::vector<double> terms(grid.size());
  for (std::size_t k = 0; k < grid.size(); ++k) {
    const double rho = grid.node(k);
    terms[k] = grid.weight(k) * rho * rho * std::pow(1.0 + rho * rho, 0.5 * s.s) *
               std::abs(f.value(k));
  }
  double total = pairwise_sum(terms);
  total += l1_tail_integral(grid.r_max(), f.tail_coefficient(), p, s.s);
  return 4.0 * M_PI * total;
}

double weighted_l2_norm(const RadialSpectralFunction& f, double s) {
  const double p = f.tail_exponent();
  if (!(2.0 * p - 2.0 * s > 3.0))
    throw DivergenceError("weighted_l2_norm: 2*tail_exponent - 2s <= 3, integral diverges");
  const RadialGrid& grid = *f.grid();
  std::vector<double> terms(grid.size());
  for (std::size_t k = 0; k < grid.size(); ++k) {
    const double rho = grid.node(k);
    const double v = f.value(k);
    terms[k] = grid.weight(k) * rho * rho * std::pow(1.0 + rho * rho, s) * v * v;
  }
  double total = pairwise_sum(terms);
  total += l2_tail_integral(grid.r_max(), f.tail_coefficient(), p, s);
  return std::sqrt(4.0 * M_PI * total);
}

}  // namespace mlab
