#include "momentum_lab/monte_carlo.hpp"

#include <cmath>
#include <cstdlib>
#include <stdexcept>
#include <thread>

namespace mlab {

void MonteCarloConfig::validate() const {
  if (sample_count < 1000)
    throw std::invalid_argument("MonteCarloConfig: sample_count must be >= 1000");
  if (stream_count < 1)
    throw std::invalid_argument("MonteCarloConfig: stream_count must be positive");
}

std::uint64_t stream_seed(std::uint64_t seed, std::size_t j) {
  std::uint64_t z = seed + (static_cast<std::uint64_t>(j) + 1) * 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

unsigned mc_thread_count() {
  if (const char* env = std::getenv("MOMENTUM_LAB_THREADS")) {
    const long v = std::strtol(env, nullptr, 10);
    if (v >= 1) return static_cast<unsigned>(v);
  }
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : hw;
}

namespace detail {

std::vector<std::size_t> stream_partition(std::size_t n, std::size_t streams) {
  std::vector<std::size_t> counts(streams, n / streams);
  for (std::size_t j = 0; j < n % streams; ++j) ++counts[j];
  return counts;
}

ComplexEstimate combine_streams(const std::vector<StreamMoments>& moments, std::size_t total) {
  double sum_re = 0.0, sum_im = 0.0, sum_re2 = 0.0, sum_im2 = 0.0;
  for (const auto& m : moments) {
    sum_re += m.sum_re;
    sum_im += m.sum_im;
    sum_re2 += m.sum_re2;
    sum_im2 += m.sum_im2;
  }
  const double n = static_cast<double>(total);
  ComplexEstimate out;
  out.estimate = {sum_re / n, sum_im / n};
  if (total > 1) {
    const double var_re = std::max(0.0, (sum_re2 - n * out.estimate.real() * out.estimate.real()) / (n - 1.0));
    const double var_im = std::max(0.0, (sum_im2 - n * out.estimate.imag() * out.estimate.imag()) / (n - 1.0));
    out.std_error = std::sqrt((var_re + var_im) / n);
  }
  return out;
}

}  // namespace detail

GaussianEnvelope::GaussianEnvelope(double width) : width_(width) {
  if (!(width > 0.0)) throw std::invalid_argument("GaussianEnvelope: width must be positive");
}

double GaussianEnvelope::pdf(double r) const {
  const double w2 = width_ * width_;
  return std::pow(2.0 * M_PI * w2, -1.5) * std::exp(-0.5 * r * r / w2);
}

double GaussianEnvelope::sample_radius(Rng& rng) const {
  std::normal_distribution<double> normal(0.0, width_);
  const double x = normal(rng), y = normal(rng), z = normal(rng);
  return std::sqrt(x * x + y * y + z * z);
}

double HydrogenEnvelope::pdf(double r) const {
  const double d = 1.0 + r * r;
  return 1.0 / (M_PI * M_PI * d * d);
}

double HydrogenEnvelope::sample_radius(Rng& rng) const {
  // radial cdf F(rho) = (2/pi)(phi - sin phi cos phi) with rho = tan phi
  std::uniform_real_distribution<double> uni(0.0, 1.0);
  const double target = 0.5 * M_PI * uni(rng);
  double phi = std::cbrt(1.5 * target);  // exact as target -> 0
  if (phi > 1.0) phi = 1.0;
  for (int iter = 0; iter < 60; ++iter) {
    const double g = phi - std::sin(phi) * std::cos(phi) - target;
    const double dg = 2.0 * std::sin(phi) * std::sin(phi);
    if (dg < 1e-30) break;
    double step = g / dg;
    if (step > 0.5) step = 0.5;
    if (step < -0.5) step = -0.5;
    phi -= step;
    if (phi < 0.0) phi = 0.0;
    if (phi > M_PI_2 * (1.0 - 1e-15)) phi = M_PI_2 * (1.0 - 1e-15);
    if (std::abs(step) < 1e-14) break;
  }
  return std::tan(phi);
}

BallEnvelope::BallEnvelope(double radius) : radius_(radius) {
  if (!(radius > 0.0)) throw std::invalid_argument("BallEnvelope: radius must be positive");
}

double BallEnvelope::pdf(double r) const {
  if (r > radius_) return 0.0;
  return 3.0 / (4.0 * M_PI * radius_ * radius_ * radius_);
}

double BallEnvelope::sample_radius(Rng& rng) const {
  std::uniform_real_distribution<double> uni(0.0, 1.0);
  return radius_ * std::cbrt(uni(rng));
}

Vec3 sample_unit_direction(Rng& rng) {
  std::uniform_real_distribution<double> uni(0.0, 1.0);
  const double u = 2.0 * uni(rng) - 1.0;
  const double phi = 2.0 * M_PI * uni(rng);
  const double s = std::sqrt(std::max(0.0, 1.0 - u * u));
  return {s * std::cos(phi), s * std::sin(phi), u};
}

McEstimate apply_K_monte_carlo(const std::function<double(const Vec3&)>& f, const Vec3& omega,
                               const RadialEnvelope& envelope, const MonteCarloConfig& mc,
                               double kernel_radius) {
  if (mc.sample_count == 0) throw std::invalid_argument("apply_K_monte_carlo: zero samples");
  const double R1 = kernel_radius > 0.0 ? kernel_radius : std::max(4.0, 2.0 * norm(omega));
  const double kernel_norm = 1.0 / (4.0 * M_PI * R1);  // q1(eta) = kernel_norm / r^2

  auto draw = [&](Rng& rng) -> std::complex<double> {
    std::uniform_real_distribution<double> uni(0.0, 1.0);
    Vec3 eta;
    if (uni(rng) < 0.5) {
      const double r = R1 * uni(rng);
      eta = omega + r * sample_unit_direction(rng);
    } else {
      eta = envelope.sample_radius(rng) * sample_unit_direction(rng);
    }
    const Vec3 d = omega - eta;
    const double dist2 = dot(d, d);
    if (dist2 == 0.0) return 0.0;
    const double q1 = dist2 <= R1 * R1 ? kernel_norm / dist2 : 0.0;
    const double q2 = envelope.pdf(norm(eta));
    const double q = 0.5 * (q1 + q2);
    if (q <= 0.0) return 0.0;
    return f(eta) / (2.0 * M_PI * M_PI * dist2 * q);
  };

  const ComplexEstimate est = mc_run(mc, draw);
  return {est.estimate.real(), est.std_error};
}

}  // namespace mlab
