#include "momentum_lab/hydrogen.hpp"

#include <cmath>
#include <stdexcept>

#include "momentum_lab/errors.hpp"

namespace mlab {

double hydrogen_ground_state_ft(double rho) {
  if (rho < 0.0) throw std::invalid_argument("hydrogen_ground_state_ft: negative frequency");
  const double d = 1.0 + rho * rho;
  return std::sqrt(2.0 / M_PI) * 2.0 / (d * d);
}

RadialSpectralFunction make_hydrogen_ft(GridPtr grid) {
  return RadialSpectralFunction::from_function(
      std::move(grid), [](double rho) { return hydrogen_ground_state_ft(rho); }, 4.0);
}

double hydrogen_barron_norm_exact(BarronExponent s) {
  if (!(s.s < 1.0))
    throw DivergenceError("hydrogen_barron_norm_exact: norm is infinite for s >= 1");
  const double log_value = 1.5 * std::log(2.0 * M_PI) + std::lgamma(0.5 * (1.0 - s.s)) -
                           0.5 * std::log(M_PI) - std::lgamma(0.5 * (4.0 - s.s));
  return std::exp(log_value);
}

}  // namespace mlab
