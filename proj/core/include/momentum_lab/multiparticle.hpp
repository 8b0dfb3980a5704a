#pragma once

#include <complex>
#include <cstddef>
#include <functional>
#include <memory>
#include <vector>

#include "momentum_lab/monte_carlo.hpp"
#include "momentum_lab/vec3.hpp"

namespace mlab {

struct Nucleus {
  Vec3 position{0.0, 0.0, 0.0};
  double charge = 1.0;
};

/// Electron count and clamped nuclei (positions pairwise distinct, charges
/// positive).
struct MolecularSystem {
  std::size_t electron_count = 1;
  std::vector<Nucleus> nuclei;

  MolecularSystem(std::size_t electrons, std::vector<Nucleus> nuclei_list);

  double total_charge() const;
};

/// A point omega = (omega_1, ..., omega_N) in (R^3)^N.
struct FrequencyVector {
  std::vector<Vec3> blocks;

  double norm() const;
};

/// e^(-i omega_i . a) * value; the unitary modulation shifting nucleus a to
/// the origin for electron i.
std::complex<double> phase_modulate(std::complex<double> value, const FrequencyVector& omega,
                                    std::size_t i, const Vec3& a);

/// Orthogonal pair rotation: block i -> (omega_i - omega_j)/sqrt(2),
/// block j -> (omega_i + omega_j)/sqrt(2), others unchanged.
FrequencyVector pair_rotation_apply(const FrequencyVector& omega, std::size_t i, std::size_t j);

/// Inverse (transpose) of pair_rotation_apply.
FrequencyVector pair_rotation_inverse(const FrequencyVector& omega, std::size_t i, std::size_t j);

/// Separable test function: product over electrons of
/// exp(-|x_k - center|^2 / (2 width^2)) * exp(i wavevector . x_k).
/// Both the function and its Fourier transform are closed-form.
struct GaussianBlock {
  Vec3 center{0.0, 0.0, 0.0};
  double width = 1.0;
  Vec3 wavevector{0.0, 0.0, 0.0};
};

struct SeparableGaussianState {
  std::vector<GaussianBlock> blocks;
  double amplitude = 1.0;

  explicit SeparableGaussianState(std::vector<GaussianBlock> blocks_list, double amplitude_ = 1.0);

  std::complex<double> value(const std::vector<Vec3>& x) const;
  std::complex<double> fourier(const FrequencyVector& omega) const;
};

/// A momentum-space function with the importance envelopes the assembled
/// operator needs: one envelope per electron block for the attraction terms
/// and, for N >= 2, an envelope factory for the rotated pair integrals.
struct BlockEnvelope {
  Vec3 center{0.0, 0.0, 0.0};
  std::shared_ptr<const RadialEnvelope> radial;
};

struct MomentumState {
  std::size_t electron_count = 1;
  std::function<std::complex<double>(const FrequencyVector&)> u_hat;
  std::vector<BlockEnvelope> block_envelopes;
  std::function<BlockEnvelope(std::size_t i, std::size_t j, const Vec3& xi_i)> pair_envelope;
};

MomentumState make_momentum_state(const SeparableGaussianState& state);

/// N=1 state holding the hydrogen ground-state transform.
MomentumState hydrogen_momentum_state();

/// Monte Carlo application of the assembled momentum-space potential
/// operator: minus the nuclear attraction terms Z_nu tau_i(a_nu) K_i
/// tau_i(-a_nu) plus the pair terms Q_ij^(-1) K_j Q_ij / sqrt(2), each
/// single-block convolution estimated with the mixed proposal of
/// apply_K_monte_carlo. The std error aggregates per-term variances.
ComplexEstimate apply_assembled_K(const MolecularSystem& system, const MomentumState& state,
                                  const FrequencyVector& omega, const MonteCarloConfig& mc);

/// Position-space oracle: (2 pi)^(-3N/2) integral of V(x) u(x) e^(-i omega.x),
/// sampled from the Gaussian profile of u with an extra 1/r-cancelling
/// spherical proposal around every Coulomb singularity.
ComplexEstimate fourier_of_potential_product_mc(const MolecularSystem& system,
                                                const SeparableGaussianState& state,
                                                const FrequencyVector& omega,
                                                const MonteCarloConfig& mc);

struct CommutationCheck {
  std::complex<double> lhs{0.0, 0.0};
  std::complex<double> rhs{0.0, 0.0};
  double lhs_error = 0.0;
  double rhs_error = 0.0;
  double sigma_distance = 0.0;
};

/// Compares the two independent estimators of F(Vu): the position-space
/// transform and the assembled momentum-space operator applied to u-hat.
CommutationCheck commutation_residual(const MolecularSystem& system,
                                      const SeparableGaussianState& state,
                                      const FrequencyVector& omega, const MonteCarloConfig& mc);

/// Sum of the absolute coefficients of the assembled operator:
/// N * sum(Z_nu) + N(N-1)/(2 sqrt(2)); the phase and rotation factors are
/// norm-preserving, so this bounds the operator on the weighted L1 scale.
double aggregate_bound_constant(const MolecularSystem& system);

}  // namespace mlab
