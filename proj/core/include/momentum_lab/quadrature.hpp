#pragma once

#include <functional>
#include <span>
#include <vector>

namespace mlab {

/// Nodes and weights of an n-point Gauss-Legendre rule on [-1, 1].
struct GaussRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};

/// Cached Gauss-Legendre rule (Newton iteration on the Legendre recurrence).
const GaussRule& gauss_legendre(int n);

/// Deterministic pairwise summation; bit-stable independent of chunking.
double pairwise_sum(std::span<const double> v);

/// Fixed-order Gauss-Legendre quadrature on [a, b].
double integrate_gauss(const std::function<double(double)>& f, double a, double b, int order);

/// Adaptive quadrature on [a, b] with nested Gauss error estimates.
double integrate_adaptive(const std::function<double(double)>& f, double a, double b,
                          double rel_tol, double abs_floor = 0.0, int max_depth = 48);

/// Integral over [a, b] of a function with an integrable endpoint singularity
/// (logarithmic or weaker). Panels shrink geometrically toward the singular
/// endpoint; the last sliver is dropped, which is admissible for log-class
/// singularities at the chosen depth.
double integrate_endpoint_singular(const std::function<double(double)>& f, double a, double b,
                                   bool singular_at_b, int levels = 36, int order = 10);

}  // namespace mlab
