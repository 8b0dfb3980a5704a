#include "momentum_lab/coulomb_operator.hpp"

#include <cmath>
#include <stdexcept>

#include "momentum_lab/errors.hpp"
#include "momentum_lab/norms.hpp"
#include "momentum_lab/quadrature.hpp"

namespace mlab {

double coulomb_log_kernel(double rho, double r) {
  // (rho + r)/|rho - r| = 1 + 2 min(rho, r)/|rho - r|; log1p keeps full
  // relative precision when the arguments are far apart
  return std::log1p(2.0 * std::min(rho, r) / std::abs(rho - r));
}

namespace {

constexpr int kDyadicLevels = 32;
constexpr int kDyadicOrder = 12;
constexpr int kPanelOrder = 6;

// Emits quadrature points (r, w) for integral of r f(r) L(rho_j, r) over
// [0, r_max], w already containing r * L(rho_j, r). Panels follow the grid
// nodes; the two panels meeting r = rho_j are refined dyadically toward the
// diagonal.
template <class Visit>
void visit_k_quadrature(const RadialGrid& grid, std::size_t j, Visit&& visit) {
  const auto& nodes = grid.nodes();
  const std::size_t n = nodes.size();
  const double rho = nodes[j];
  const GaussRule& panel_rule = gauss_legendre(kPanelOrder);
  const GaussRule& dyadic_rule = gauss_legendre(kDyadicOrder);

  auto emit_gauss = [&](double a, double b, const GaussRule& rule) {
    const double mid = 0.5 * (a + b);
    const double hw = 0.5 * (b - a);
    for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
      const double r = mid + hw * rule.nodes[i];
      visit(r, hw * rule.weights[i] * r * coulomb_log_kernel(rho, r));
    }
  };
  auto emit_dyadic = [&](double a, double b, bool singular_at_b) {
    const double len = b - a;
    double hi = 1.0;
    for (int m = 0; m < kDyadicLevels; ++m) {
      const double lo = 0.5 * hi;
      if (singular_at_b)
        emit_gauss(b - hi * len, b - lo * len, dyadic_rule);
      else
        emit_gauss(a + lo * len, a + hi * len, dyadic_rule);
      hi = lo;
    }
  };

  for (std::size_t k = 0; k <= n; ++k) {
    const double a = (k == 0) ? 0.0 : nodes[k - 1];
    const double b = (k == n) ? grid.r_max() : nodes[k];
    if (!(b > a)) continue;
    if (k == j)
      emit_dyadic(a, b, /*singular_at_b=*/true);
    else if (k == j + 1)
      emit_dyadic(a, b, /*singular_at_b=*/false);
    else
      emit_gauss(a, b, panel_rule);
  }
}

// integral over [R, inf) of r^(1-p) L(rho_j, r) dr via r = R/u; the last grid
// node sits exactly on the diagonal, where the kernel is log-singular at u=1.
double k_tail_integral(const RadialGrid& grid, std::size_t j, double p) {
  if (!std::isfinite(p)) return 0.0;
  const double R = grid.r_max();
  const double rho = grid.node(j);
  auto integrand = [&](double u) {
    return std::pow(u, p - 3.0) * coulomb_log_kernel(rho, R / u);
  };
  if (rho >= R * (1.0 - 1e-12))
    return std::pow(R, 2.0 - p) *
           integrate_endpoint_singular(integrand, 0.0, 1.0, /*singular_at_b=*/true);
  return std::pow(R, 2.0 - p) * integrate_adaptive(integrand, 0.0, 1.0, 1e-12);
}

double tail_exponent_of_output(double p_in) {
  // Far field of K f is mass/(2 pi^2 rho^2); inputs decaying slower than
  // rho^-4 shift it to rho^(2-p).
  if (!std::isfinite(p_in)) return 2.0;
  return std::min(2.0, p_in - 2.0);
}

void check_input_tail(double p) {
  if (!(p > 3.0))
    throw DivergenceError("apply_K_radial: input tail_exponent <= 3, convolution diverges");
}

}  // namespace

RadialSpectralFunction apply_K_radial(const RadialSpectralFunction& f) {
  check_input_tail(f.tail_exponent());
  const RadialGrid& grid = *f.grid();
  const std::size_t n = grid.size();
  const double c_tail = f.tail_coefficient();
  std::vector<double> out(n);
  for (std::size_t j = 0; j < n; ++j) {
    double acc = 0.0;
    visit_k_quadrature(grid, j, [&](double r, double w) { acc += w * f(r); });
    if (c_tail != 0.0) acc += c_tail * k_tail_integral(grid, j, f.tail_exponent());
    out[j] = acc / (M_PI * grid.node(j));
  }
  return RadialSpectralFunction(f.grid(), std::move(out),
                                tail_exponent_of_output(f.tail_exponent()));
}

KRadialOperator::KRadialOperator(GridPtr grid, double input_tail_exponent)
    : grid_(std::move(grid)),
      p_in_(input_tail_exponent),
      p_out_(tail_exponent_of_output(input_tail_exponent)) {
  check_input_tail(p_in_);
  const RadialGrid& g = *grid_;
  const std::size_t n = g.size();
  matrix_.assign(n * n, 0.0);
  const auto tail_w = tail_fit_weights(g, p_in_);
  for (std::size_t j = 0; j < n; ++j) {
    double* row = matrix_.data() + j * n;
    visit_k_quadrature(g, j, [&](double r, double w) {
      if (r > g.nodes().back()) {
        // beyond the last node the evaluator uses the fitted tail
        if (tail_w[0] == 0.0 && tail_w[1] == 0.0) return;
        const double tail_value = std::pow(r, -p_in_);
        row[n - 2] += w * tail_w[0] * tail_value;
        row[n - 1] += w * tail_w[1] * tail_value;
        return;
      }
      const InterpStencil st = interpolation_stencil(g, r);
      for (std::size_t i = 0; i < st.size; ++i) row[st.first + i] += w * st.weights[i];
    });
    if (tail_w[0] != 0.0 || tail_w[1] != 0.0) {
      const double t = k_tail_integral(g, j, p_in_);
      row[n - 2] += t * tail_w[0];
      row[n - 1] += t * tail_w[1];
    }
    const double scale = 1.0 / (M_PI * g.node(j));
    for (std::size_t k = 0; k < n; ++k) row[k] *= scale;
  }
}

std::vector<double> KRadialOperator::apply(std::span<const double> samples) const {
  const std::size_t n = grid_->size();
  if (samples.size() != n) throw std::invalid_argument("KRadialOperator: sample count mismatch");
  std::vector<double> out(n, 0.0);
  for (std::size_t j = 0; j < n; ++j) {
    const double* row = matrix_.data() + j * n;
    double acc = 0.0;
    for (std::size_t k = 0; k < n; ++k) acc += row[k] * samples[k];
    out[j] = acc;
  }
  return out;
}

RadialSpectralFunction KRadialOperator::apply(const RadialSpectralFunction& f) const {
  if (f.grid().get() != grid_.get())
    throw std::invalid_argument("KRadialOperator: function lives on a different grid");
  return RadialSpectralFunction(grid_, apply(std::span<const double>(f.values())), p_out_);
}

double lemma23_ratio(const RadialSpectralFunction& f, double theta) {
  if (!(theta > 1.0)) throw std::invalid_argument("lemma23_ratio: requires theta > 1");
  const double denom = weighted_l1_norm(f, BarronExponent{0.0});
  if (denom == 0.0) throw UndefinedRatioError("lemma23_ratio: zero function");
  const RadialSpectralFunction kf = apply_K_radial(f);
  return weighted_l1_norm(kf, BarronExponent{-theta}) / denom;
}

double sharpness_bump_profile(double r, double epsilon) {
  if (r <= 0.0) return 0.0;
  const double half_log_width = 0.5 * std::log(8.0);
  const double y = (std::log(r) - std::log(epsilon) + half_log_width) / half_log_width;
  if (std::abs(y) >= 1.0) return 0.0;
  return std::exp(-1.0 / (1.0 - y * y));
}

double sharpness_probe(double epsilon, double theta) {
  if (!(epsilon > 0.0 && epsilon < 1.0))
    throw std::invalid_argument("sharpness_probe: epsilon must lie in (0, 1)");
  if (!(theta > 1.0)) throw std::invalid_argument("sharpness_probe: requires theta > 1");
  const GridPtr grid = build_radial_grid(240.0, 320, GridScheme::graded);
  RadialSpectralFunction bump = RadialSpectralFunction::from_function(
      grid, [epsilon](double r) { return sharpness_bump_profile(r, epsilon); },
      RadialSpectralFunction::no_tail);
  const double mass = weighted_l1_norm(bump, BarronExponent{0.0});
  bump = scale(1.0 / mass, bump);
  return lemma23_ratio(bump, theta);
}

}  // namespace mlab
