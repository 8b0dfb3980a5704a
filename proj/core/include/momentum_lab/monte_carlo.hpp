#pragma once

#include <complex>
#include <cstdint>
#include <functional>
#include <future>
#include <memory>
#include <random>
#include <vector>

#include "momentum_lab/vec3.hpp"

namespace mlab {

using Rng = std::mt19937_64;

/// Budget and seeding of a Monte Carlo estimate. Work is split over
/// stream_count independent substreams; stream j is seeded by
/// stream_seed(seed, j), so results depend only on (seed, stream_count),
/// never on the execution parallelism.
struct MonteCarloConfig {
  std::size_t sample_count = 1'000'000;
  std::uint64_t seed = 1;
  std::size_t stream_count = 16;

  void validate() const;
};

/// SplitMix64 step applied to seed + (j+1) * 0x9e3779b97f4a7c15; documented
/// here as the fixed stream-derivation rule.
std::uint64_t stream_seed(std::uint64_t seed, std::size_t j);

/// Worker threads used for Monte Carlo streams; MOMENTUM_LAB_THREADS
/// overrides the hardware default.
unsigned mc_thread_count();

struct McEstimate {
  double estimate = 0.0;
  double std_error = 0.0;
};

struct ComplexEstimate {
  std::complex<double> estimate{0.0, 0.0};
  double std_error = 0.0;  // sqrt of summed component variances of the mean
};

namespace detail {

struct StreamMoments {
  double sum_re = 0.0, sum_im = 0.0, sum_re2 = 0.0, sum_im2 = 0.0;
};

ComplexEstimate combine_streams(const std::vector<StreamMoments>& moments, std::size_t total);

std::vector<std::size_t> stream_partition(std::size_t n, std::size_t streams);

}  // namespace detail

/// Mean and standard error of draw(rng) over mc.sample_count samples.
template <class Draw>
ComplexEstimate mc_run(const MonteCarloConfig& mc, Draw&& draw) {
  mc.validate();
  const auto counts = detail::stream_partition(mc.sample_count, mc.stream_count);
  std::vector<detail::StreamMoments> moments(counts.size());

  auto run_stream = [&](std::size_t j) {
    Rng rng(stream_seed(mc.seed, j));
    detail::StreamMoments m;
    for (std::size_t i = 0; i < counts[j]; ++i) {
      const std::complex<double> v = draw(rng);
      m.sum_re += v.real();
      m.sum_im += v.imag();
      m.sum_re2 += v.real() * v.real();
      m.sum_im2 += v.imag() * v.imag();
    }
    moments[j] = m;
  };

  const unsigned threads = mc_thread_count();
  if (threads <= 1 || counts.size() <= 1) {
    for (std::size_t j = 0; j < counts.size(); ++j) run_stream(j);
  } else {
    std::vector<std::future<void>> futures;
    futures.reserve(counts.size());
    for (std::size_t j = 0; j < counts.size(); ++j)
      futures.push_back(std::async(std::launch::async, run_stream, j));
    for (auto& f : futures) f.get();
  }
  return detail::combine_streams(moments, mc.sample_count);
}

/// Positive radial probability density on R^3 with a radius sampler; used as
/// the importance envelope of an integrand's mass.
class RadialEnvelope {
 public:
  virtual ~RadialEnvelope() = default;
  virtual double pdf(double r) const = 0;  // 3d density value at radius r
  virtual double sample_radius(Rng& rng) const = 0;
};

/// Isotropic Gaussian with scale width (density of N(0, width^2 I)).
class GaussianEnvelope final : public RadialEnvelope {
 public:
  explicit GaussianEnvelope(double width);
  double pdf(double r) const override;
  double sample_radius(Rng& rng) const override;

 private:
  double width_;
};

/// Density proportional to (1 + r^2)^(-2), the hydrogen transform profile.
class HydrogenEnvelope final : public RadialEnvelope {
 public:
  double pdf(double r) const override;
  double sample_radius(Rng& rng) const override;
};

/// Uniform density on the ball of the given radius.
class BallEnvelope final : public RadialEnvelope {
 public:
  explicit BallEnvelope(double radius);
  double pdf(double r) const override;
  double sample_radius(Rng& rng) const override;

 private:
  double radius_;
};

Vec3 sample_unit_direction(Rng& rng);

/// Unbiased estimate of (K f)(omega) = 1/(2 pi^2) integral of
/// f(eta)/|omega-eta|^2 d eta. Proposals mix, with equal weight, a uniform
/// radial draw around omega (cancelling the kernel singularity) and the
/// supplied envelope of f; either alone has unbounded variance for some
/// inputs. kernel_radius bounds the singular component's reach; <= 0 selects
/// max(4, 2|omega|).
McEstimate apply_K_monte_carlo(const std::function<double(const Vec3&)>& f, const Vec3& omega,
                               const RadialEnvelope& envelope, const MonteCarloConfig& mc,
                               double kernel_radius = 0.0);

}  // namespace mlab
