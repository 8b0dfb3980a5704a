#include "momentum_lab/quadrature.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <numeric>
#include <stdexcept>

namespace mlab {

namespace {

GaussRule make_gauss_rule(int n) {
  if (n < 1) throw std::invalid_argument("gauss_legendre: order must be positive");
  GaussRule rule;
  rule.nodes.resize(n);
  rule.weights.resize(n);
  const int half = (n + 1) / 2;
  for (int k = 0; k < half; ++k) {
    // Tricomi initial guess, then Newton on P_n.
    double x = std::cos(M_PI * (k + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p0 = 1.0, p1 = x;
      for (int j = 2; j <= n; ++j) {
        const double p2 = ((2.0 * j - 1.0) * x * p1 - (j - 1.0) * p0) / j;
        p0 = p1;
        p1 = p2;
      }
      dp = n * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-15) break;
    }
    {
      double p0 = 1.0, p1 = x;
      for (int j = 2; j <= n; ++j) {
        const double p2 = ((2.0 * j - 1.0) * x * p1 - (j - 1.0) * p0) / j;
        p0 = p1;
        p1 = p2;
      }
      dp = n * (x * p1 - p0) / (x * x - 1.0);
    }
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    rule.nodes[k] = -x;
    rule.weights[k] = w;
    rule.nodes[n - 1 - k] = x;
    rule.weights[n - 1 - k] = w;
  }
  if (n % 2 == 1) rule.nodes[n / 2] = 0.0;
  return rule;
}

}  // namespace

const GaussRule& gauss_legendre(int n) {
  static std::mutex mutex;
  static std::map<int, GaussRule> cache;
  std::lock_guard<std::mutex> lock(mutex);
  auto it = cache.find(n);
  if (it == cache.end()) it = cache.emplace(n, make_gauss_rule(n)).first;
  return it->second;
}

double pairwise_sum(std::span<const double> v) {
  if (v.size() <= 8) {
    double s = 0.0;
    for (double x : v) s += x;
    return s;
  }
  const std::size_t half = v.size() / 2;
  return pairwise_sum(v.first(half)) + pairwise_sum(v.subspan(half));
}

double integrate_gauss(const std::function<double(double)>& f, double a, double b, int order) {
  const GaussRule& rule = gauss_legendre(order);
  const double mid = 0.5 * (a + b);
  const double hw = 0.5 * (b - a);
  double s = 0.0;
  for (std::size_t i = 0; i < rule.nodes.size(); ++i)
    s += rule.weights[i] * f(mid + hw * rule.nodes[i]);
  return s * hw;
}

namespace {

struct AdaptiveState {
  const std::function<double(double)>& f;
  double noise_floor;
  int max_depth;
  long budget;  // remaining subdivisions; guarantees termination
};

double adaptive_step(AdaptiveState& st, double a, double b, double coarse, double tol,
                     int depth) {
  const double fine = integrate_gauss(st.f, a, b, 20);
  const double err = std::abs(fine - coarse);
  // stop on the requested budget, on global roundoff, or once refinement no
  // longer changes the local value beyond its own roundoff
  if (err <= std::max(tol, st.noise_floor) ||
      err <= 1e-14 * (std::abs(fine) + std::abs(coarse)) || depth >= st.max_depth ||
      st.budget <= 0)
    return fine;
  --st.budget;
  const double mid = 0.5 * (a + b);
  const double left = integrate_gauss(st.f, a, mid, 10);
  const double right = integrate_gauss(st.f, mid, b, 10);
  return adaptive_step(st, a, mid, left, 0.5 * tol, depth + 1) +
         adaptive_step(st, mid, b, right, 0.5 * tol, depth + 1);
}

}  // namespace

double integrate_adaptive(const std::function<double(double)>& f, double a, double b,
                          double rel_tol, double abs_floor, int max_depth) {
  if (a == b) return 0.0;
  const double coarse = integrate_gauss(f, a, b, 10);
  const double scale = std::max(std::abs(coarse), abs_floor);
  const double tol = std::max(rel_tol * scale, 1e-300);
  AdaptiveState st{f, 1e-16 * scale, max_depth, 20000};
  return adaptive_step(st, a, b, coarse, tol, 0);
}

double integrate_endpoint_singular(const std::function<double(double)>& f, double a, double b,
                                   bool singular_at_b, int levels, int order) {
  if (!(b > a)) return 0.0;
  const double len = b - a;
  double total = 0.0;
  // Panel m spans a fraction [2^-(m+1), 2^-m] of the interval, measured from
  // the regular endpoint; the leftover sliver near the singularity has width
  // len * 2^-levels.
  double hi = 1.0;
  for (int m = 0; m < levels; ++m) {
    const double lo = 0.5 * hi;
    double pa, pb;
    if (singular_at_b) {
      pa = b - hi * len;
      pb = b - lo * len;
    } else {
      pa = a + lo * len;
      pb = a + hi * len;
    }
    total += integrate_gauss(f, pa, pb, order);
    hi = lo;
  }
  return total;
}

}  // namespace mlab
