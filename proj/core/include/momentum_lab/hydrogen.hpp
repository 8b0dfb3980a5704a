#pragma once

#include "momentum_lab/norms.hpp"
#include "momentum_lab/spectral_function.hpp"

namespace mlab {

/// Fourier transform of the unnormalized ground state exp(-|x|):
/// sqrt(2/pi) * 2 / (1 + rho^2)^2. Throws std::invalid_argument for rho < 0.
double hydrogen_ground_state_ft(double rho);

/// Samples of the hydrogen ground-state transform; tail exponent 4.
RadialSpectralFunction make_hydrogen_ft(GridPtr grid);

/// Closed form of the weighted L1 norm of the hydrogen transform,
///   (2 pi)^(3/2) * Gamma((1-s)/2) / (sqrt(pi) * Gamma((4-s)/2)),
/// obtained by reducing 4 pi sqrt(2/pi) * 2 * integral of
/// rho^2 (1+rho^2)^((s-4)/2) to an Euler beta integral.
/// Throws DivergenceError for s >= 1.
double hydrogen_barron_norm_exact(BarronExponent s);

}  // namespace mlab
