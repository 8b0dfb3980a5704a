#include "momentum_lab/multiparticle.hpp"

#include <cmath>
#include <stdexcept>

#include "momentum_lab/hydrogen.hpp"

namespace mlab {

namespace {
constexpr double kInvSqrt2 = 0.70710678118654752440;
}

MolecularSystem::MolecularSystem(std::size_t electrons, std::vector<Nucleus> nuclei_list)
    : electron_count(electrons), nuclei(std::move(nuclei_list)) {
  if (electron_count < 1) throw std::invalid_argument("MolecularSystem: need at least one electron");
  for (const auto& nuc : nuclei)
    if (!(nuc.charge > 0.0)) throw std::invalid_argument("MolecularSystem: charges must be positive");
  for (std::size_t a = 0; a < nuclei.size(); ++a)
    for (std::size_t b = a + 1; b < nuclei.size(); ++b) {
      const Vec3 d = nuclei[a].position - nuclei[b].position;
      if (dot(d, d) == 0.0)
        throw std::invalid_argument("MolecularSystem: nuclear positions must be distinct");
    }
}

double MolecularSystem::total_charge() const {
  double z = 0.0;
  for (const auto& nuc : nuclei) z += nuc.charge;
  return z;
}

double FrequencyVector::norm() const {
  double s = 0.0;
  for (const auto& b : blocks) s += dot(b, b);
  return std::sqrt(s);
}

std::complex<double> phase_modulate(std::complex<double> value, const FrequencyVector& omega,
                                    std::size_t i, const Vec3& a) {
  if (i >= omega.blocks.size())
    throw std::invalid_argument("phase_modulate: electron index out of range");
  const double phase = -dot(omega.blocks[i], a);
  return value * std::polar(1.0, phase);
}

FrequencyVector pair_rotation_apply(const FrequencyVector& omega, std::size_t i, std::size_t j) {
  if (i == j) throw std::invalid_argument("pair_rotation_apply: indices must differ");
  if (i >= omega.blocks.size() || j >= omega.blocks.size())
    throw std::invalid_argument("pair_rotation_apply: index out of range");
  FrequencyVector out = omega;
  out.blocks[i] = kInvSqrt2 * (omega.blocks[i] - omega.blocks[j]);
  out.blocks[j] = kInvSqrt2 * (omega.blocks[i] + omega.blocks[j]);
  return out;
}

FrequencyVector pair_rotation_inverse(const FrequencyVector& omega, std::size_t i, std::size_t j) {
  if (i == j) throw std::invalid_argument("pair_rotation_inverse: indices must differ");
  if (i >= omega.blocks.size() || j >= omega.blocks.size())
    throw std::invalid_argument("pair_rotation_inverse: index out of range");
  FrequencyVector out = omega;
  out.blocks[i] = kInvSqrt2 * (omega.blocks[i] + omega.blocks[j]);
  out.blocks[j] = kInvSqrt2 * (omega.blocks[j] - omega.blocks[i]);
  return out;
}

SeparableGaussianState::SeparableGaussianState(std::vector<GaussianBlock> blocks_list,
                                               double amplitude_)
    : blocks(std::move(blocks_list)), amplitude(amplitude_) {
  if (blocks.empty()) throw std::invalid_argument("SeparableGaussianState: no blocks");
  for (const auto& b : blocks)
    if (!(b.width > 0.0)) throw std::invalid_argument("SeparableGaussianState: widths must be positive");
}

std::complex<double> SeparableGaussianState::value(const std::vector<Vec3>& x) const {
  if (x.size() != blocks.size())
    throw std::invalid_argument("SeparableGaussianState: block count mismatch");
  double log_mod = 0.0;
  double phase = 0.0;
  for (std::size_t k = 0; k < blocks.size(); ++k) {
    const Vec3 d = x[k] - blocks[k].center;
    log_mod -= 0.5 * dot(d, d) / (blocks[k].width * blocks[k].width);
    phase += dot(blocks[k].wavevector, x[k]);
  }
  return amplitude * std::exp(log_mod) * std::polar(1.0, phase);
}

std::complex<double> SeparableGaussianState::fourier(const FrequencyVector& omega) const {
  if (omega.blocks.size() != blocks.size())
    throw std::invalid_argument("SeparableGaussianState: block count mismatch");
  double log_mod = 0.0;
  double phase = 0.0;
  for (std::size_t k = 0; k < blocks.size(); ++k) {
    const double w = blocks[k].width;
    const Vec3 shifted = omega.blocks[k] - blocks[k].wavevector;
    log_mod += 3.0 * std::log(w) - 0.5 * w * w * dot(shifted, shifted);
    phase -= dot(shifted, blocks[k].center);
  }
  return amplitude * std::exp(log_mod) * std::polar(1.0, phase);
}

MomentumState make_momentum_state(const SeparableGaussianState& state) {
  MomentumState out;
  out.electron_count = state.blocks.size();
  out.u_hat = [state](const FrequencyVector& omega) { return state.fourier(omega); };
  for (const auto& b : state.blocks)
    out.block_envelopes.push_back(
        {b.wavevector, std::make_shared<GaussianEnvelope>(1.0 / b.width)});
  out.pair_envelope = [state](std::size_t i, std::size_t j, const Vec3& xi_i) -> BlockEnvelope {
    const double wi2 = state.blocks[i].width * state.blocks[i].width;
    const double wj2 = state.blocks[j].width * state.blocks[j].width;
    // Product of the two rotated block Gaussians, as a function of the
    // integration block eta: centers xi_i -+ sqrt(2) b, combined precision
    // (wi^2 + wj^2)/2.
    const Vec3 u = xi_i - std::sqrt(2.0) * state.blocks[i].wavevector;
    const Vec3 v = std::sqrt(2.0) * state.blocks[j].wavevector - xi_i;
    const Vec3 m = (1.0 / (wi2 + wj2)) * (wi2 * u + wj2 * v);
    const double sigma = std::sqrt(2.0 / (wi2 + wj2));
    return {m, std::make_shared<GaussianEnvelope>(sigma)};
  };
  return out;
}

MomentumState hydrogen_momentum_state() {
  MomentumState out;
  out.electron_count = 1;
  out.u_hat = [](const FrequencyVector& omega) -> std::complex<double> {
    return hydrogen_ground_state_ft(mlab::norm(omega.blocks[0]));
  };
  out.block_envelopes.push_back({Vec3{0.0, 0.0, 0.0}, std::make_shared<HydrogenEnvelope>()});
  return out;
}

namespace {

// One single-block convolution (1/2pi^2) integral of g(eta)/|center-eta|^2
// with the mixed kernel/envelope proposal; g complex.
ComplexEstimate convolve_block_mc(const std::function<std::complex<double>(const Vec3&)>& g,
                                  const Vec3& center, const BlockEnvelope& envelope,
                                  const MonteCarloConfig& mc) {
  const double R1 = std::max(4.0, 2.0 * mlab::norm(center - envelope.center));
  const double kernel_norm = 1.0 / (4.0 * M_PI * R1);

  auto draw = [&](Rng& rng) -> std::complex<double> {
    std::uniform_real_distribution<double> uni(0.0, 1.0);
    Vec3 eta;
    if (uni(rng) < 0.5) {
      const double r = R1 * uni(rng);
      eta = center + r * sample_unit_direction(rng);
    } else {
      eta = envelope.center + envelope.radial->sample_radius(rng) * sample_unit_direction(rng);
    }
    const Vec3 d = center - eta;
    const double dist2 = dot(d, d);
    if (dist2 == 0.0) return {0.0, 0.0};
    const double q1 = dist2 <= R1 * R1 ? kernel_norm / dist2 : 0.0;
    const double q2 = envelope.radial->pdf(mlab::norm(eta - envelope.center));
    const double q = 0.5 * (q1 + q2);
    if (q <= 0.0) return {0.0, 0.0};
    return g(eta) / (2.0 * M_PI * M_PI * dist2 * q);
  };
  return mc_run(mc, draw);
}

}  // namespace

ComplexEstimate apply_assembled_K(const MolecularSystem& system, const MomentumState& state,
                                  const FrequencyVector& omega, const MonteCarloConfig& mc) {
  mc.validate();
  const std::size_t N = system.electron_count;
  if (state.electron_count != N || omega.blocks.size() != N)
    throw std::invalid_argument("apply_assembled_K: block count mismatch");

  std::complex<double> total{0.0, 0.0};
  double var = 0.0;
  std::size_t term_index = 0;

  auto term_config = [&](std::size_t t) {
    MonteCarloConfig sub = mc;
    sub.seed = stream_seed(mc.seed, 0x100 + t);
    return sub;
  };

  // attraction terms: -Z_nu tau_i(a_nu) K_i tau_i(-a_nu)
  for (std::size_t i = 0; i < N; ++i) {
    for (const auto& nuc : system.nuclei) {
      auto g = [&](const Vec3& eta) -> std::complex<double> {
        FrequencyVector shifted = omega;
        shifted.blocks[i] = eta;
        // tau_i(-a) multiplies by e^{+i eta . a} before the convolution
        return state.u_hat(shifted) * std::polar(1.0, dot(eta, nuc.position));
      };
      ComplexEstimate est =
          convolve_block_mc(g, omega.blocks[i], state.block_envelopes[i], term_config(term_index++));
      // tau_i(a) in front, nuclear charge, attraction sign
      const std::complex<double> outer =
          -nuc.charge * std::polar(1.0, -dot(omega.blocks[i], nuc.position));
      total += outer * est.estimate;
      var += nuc.charge * nuc.charge * est.std_error * est.std_error;
    }
  }

  // pair terms: Q_ij^{-1} K_j Q_ij / sqrt(2)
  for (std::size_t i = 0; i < N; ++i) {
    for (std::size_t j = i + 1; j < N; ++j) {
      const FrequencyVector xi = pair_rotation_inverse(omega, i, j);
      if (!state.pair_envelope)
        throw std::invalid_argument("apply_assembled_K: state lacks a pair envelope");
      const BlockEnvelope env = state.pair_envelope(i, j, xi.blocks[i]);
      auto g = [&](const Vec3& eta) -> std::complex<double> {
        FrequencyVector rotated = xi;
        rotated.blocks[i] = kInvSqrt2 * (xi.blocks[i] - eta);
        rotated.blocks[j] = kInvSqrt2 * (xi.blocks[i] + eta);
        return state.u_hat(rotated);
      };
      ComplexEstimate est = convolve_block_mc(g, xi.blocks[j], env, term_config(term_index++));
      total += kInvSqrt2 * est.estimate;
      var += 0.5 * est.std_error * est.std_error;
    }
  }

  return {total, std::sqrt(var)};
}

namespace {

double coulomb_potential(const MolecularSystem& system, const std::vector<Vec3>& x) {
  double v = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i)
    for (const auto& nuc : system.nuclei) v -= nuc.charge / mlab::norm(x[i] - nuc.position);
  for (std::size_t i = 0; i < x.size(); ++i)
    for (std::size_t j = i + 1; j < x.size(); ++j) v += 1.0 / mlab::norm(x[i] - x[j]);
  return v;
}

// density of the 1/r-cancelling spherical draw around a singular center
double spherical_pdf(double r, double s) {
  return std::exp(-0.5 * r * r / (s * s)) / (4.0 * M_PI * s * s * r);
}

double sample_spherical_radius(Rng& rng, double s) {
  std::uniform_real_distribution<double> uni(0.0, 1.0);
  return s * std::sqrt(-2.0 * std::log1p(-uni(rng)));
}

}  // namespace

ComplexEstimate fourier_of_potential_product_mc(const MolecularSystem& system,
                                                const SeparableGaussianState& state,
                                                const FrequencyVector& omega,
                                                const MonteCarloConfig& mc) {
  mc.validate();
  const std::size_t N = system.electron_count;
  if (state.blocks.size() != N || omega.blocks.size() != N)
    throw std::invalid_argument("fourier_of_potential_product_mc: block count mismatch");

  struct SingularComponent {
    std::size_t electron;
    std::size_t partner_electron;  // only for pair components
    Vec3 center;                   // only for nuclear components
    bool is_pair;
  };
  std::vector<SingularComponent> singular;
  for (std::size_t i = 0; i < N; ++i)
    for (const auto& nuc : system.nuclei) singular.push_back({i, 0, nuc.position, false});
  for (std::size_t i = 0; i < N; ++i)
    for (std::size_t j = i + 1; j < N; ++j) singular.push_back({i, j, {}, true});
  const std::size_t n_comp = 1 + singular.size();

  const double fourier_norm = std::pow(2.0 * M_PI, -1.5 * static_cast<double>(N));

  auto gaussian_pdf = [&](const Vec3& x, std::size_t k) {
    const double w2 = state.blocks[k].width * state.blocks[k].width;
    const Vec3 d = x - state.blocks[k].center;
    return std::pow(2.0 * M_PI * w2, -1.5) * std::exp(-0.5 * dot(d, d) / w2);
  };

  auto draw = [&](Rng& rng) -> std::complex<double> {
    std::uniform_real_distribution<double> uni(0.0, 1.0);
    std::normal_distribution<double> normal(0.0, 1.0);

    const std::size_t comp = std::min<std::size_t>(
        static_cast<std::size_t>(uni(rng) * static_cast<double>(n_comp)), n_comp - 1);

    std::vector<Vec3> x(N);
    for (std::size_t k = 0; k < N; ++k) {
      const Vec3 g{normal(rng), normal(rng), normal(rng)};
      x[k] = state.blocks[k].center + state.blocks[k].width * g;
    }
    if (comp > 0) {
      const auto& sc = singular[comp - 1];
      const double s = state.blocks[sc.electron].width;
      const Vec3 offset = sample_spherical_radius(rng, s) * sample_unit_direction(rng);
      x[sc.electron] = (sc.is_pair ? x[sc.partner_electron] : sc.center) + offset;
    }

    // mixture density at x
    double q = 0.0;
    double plain = 1.0;
    for (std::size_t k = 0; k < N; ++k) plain *= gaussian_pdf(x[k], k);
    q += plain;
    for (const auto& sc : singular) {
      double qc = 1.0;
      for (std::size_t k = 0; k < N; ++k)
        if (k != sc.electron) qc *= gaussian_pdf(x[k], k);
      const Vec3 center = sc.is_pair ? x[sc.partner_electron] : sc.center;
      qc *= spherical_pdf(mlab::norm(x[sc.electron] - center), state.blocks[sc.electron].width);
      q += qc;
    }
    q /= static_cast<double>(n_comp);
    if (!(q > 0.0) || !std::isfinite(q)) return {0.0, 0.0};

    double phase = 0.0;
    for (std::size_t k = 0; k < N; ++k) phase -= dot(omega.blocks[k], x[k]);
    return fourier_norm * coulomb_potential(system, x) * state.value(x) *
           std::polar(1.0, phase) / q;
  };

  return mc_run(mc, draw);
}

CommutationCheck commutation_residual(const MolecularSystem& system,
                                      const SeparableGaussianState& state,
                                      const FrequencyVector& omega, const MonteCarloConfig& mc) {
  MonteCarloConfig lhs_mc = mc;
  lhs_mc.seed = stream_seed(mc.seed, 101);
  MonteCarloConfig rhs_mc = mc;
  rhs_mc.seed = stream_seed(mc.seed, 202);

  const ComplexEstimate lhs = fourier_of_potential_product_mc(system, state, omega, lhs_mc);
  const ComplexEstimate rhs = apply_assembled_K(system, make_momentum_state(state), omega, rhs_mc);

  CommutationCheck out;
  out.lhs = lhs.estimate;
  out.rhs = rhs.estimate;
  out.lhs_error = lhs.std_error;
  out.rhs_error = rhs.std_error;
  const double combined =
      std::sqrt(lhs.std_error * lhs.std_error + rhs.std_error * rhs.std_error);
  out.sigma_distance = combined > 0.0 ? std::abs(lhs.estimate - rhs.estimate) / combined : 0.0;
  return out;
}

double aggregate_bound_constant(const MolecularSystem& system) {
  const double N = static_cast<double>(system.electron_count);
  return N * system.total_charge() + N * (N - 1.0) / (2.0 * std::sqrt(2.0));
}

}  // namespace mlab
