#include "momentum_lab/solver.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>

#include "momentum_lab/errors.hpp"
#include "momentum_lab/quadrature.hpp"
#include "momentum_lab/riesz.hpp"

namespace mlab {

double g_multiplier(double lambda, double rho) {
  if (!(lambda < 0.0)) throw std::invalid_argument("g_multiplier: requires lambda < 0");
  return 2.0 / (rho * rho - 2.0 * lambda);
}

RadialSpectralFunction apply_G(double lambda, const RadialSpectralFunction& f) {
  if (!(lambda < 0.0)) throw std::invalid_argument("apply_G: requires lambda < 0");
  const RadialGrid& grid = *f.grid();
  std::vector<double> out(f.size());
  for (std::size_t k = 0; k < out.size(); ++k)
    out[k] = g_multiplier(lambda, grid.node(k)) * f.value(k);
  return RadialSpectralFunction(f.grid(), std::move(out), f.tail_exponent() + 2.0);
}

RadialSpectralFunction apply_T(double lambda, double Z, const RadialSpectralFunction& f) {
  if (!(Z > 0.0)) throw std::invalid_argument("apply_T: requires Z > 0");
  return apply_G(lambda, scale(Z, apply_K_radial(f)));
}

RadialSpectralFunction highpass(double Omega, const RadialSpectralFunction& f) {
  if (!(Omega >= 0.0)) throw std::invalid_argument("highpass: requires Omega >= 0");
  const RadialGrid& grid = *f.grid();
  std::vector<double> out(f.size());
  for (std::size_t k = 0; k < out.size(); ++k)
    out[k] = grid.node(k) >= Omega ? f.value(k) : 0.0;
  return RadialSpectralFunction(f.grid(), std::move(out), f.tail_exponent());
}

RadialSpectralFunction lowpass(double Omega, const RadialSpectralFunction& f) {
  if (!(Omega >= 0.0)) throw std::invalid_argument("lowpass: requires Omega >= 0");
  const RadialGrid& grid = *f.grid();
  std::vector<double> out(f.size());
  for (std::size_t k = 0; k < out.size(); ++k)
    out[k] = grid.node(k) < Omega ? f.value(k) : 0.0;
  return RadialSpectralFunction(f.grid(), std::move(out), f.tail_exponent());
}

TOperator::TOperator(GridPtr grid, double lambda, double Z, double input_tail_exponent)
    : grid_(grid), k_op_(grid, input_tail_exponent), lambda_(lambda), z_(Z) {
  if (!(lambda < 0.0)) throw std::invalid_argument("TOperator: requires lambda < 0");
  if (!(Z > 0.0)) throw std::invalid_argument("TOperator: requires Z > 0");
}

std::vector<double> TOperator::apply(std::span<const double> samples) const {
  std::vector<double> out = k_op_.apply(samples);
  for (std::size_t k = 0; k < out.size(); ++k)
    out[k] *= z_ * g_multiplier(lambda_, grid_->node(k));
  return out;
}

RadialSpectralFunction TOperator::apply(const RadialSpectralFunction& f) const {
  if (f.grid().get() != grid_.get())
    throw std::invalid_argument("TOperator: function lives on a different grid");
  return RadialSpectralFunction(grid_, apply(std::span<const double>(f.values())),
                                k_op_.output_tail_exponent() + 2.0);
}

namespace {

// Smooth positive test functions probing both ends of the operator: Gaussian
// shells at seeded centers (frequency-localized) and dilated hydrogen-type
// profiles (1 + d^2 rho^2)^-2 over a log-uniform range of scales, whose
// momentum tails realize the (1 + Omega^2)^(-1/2) high-frequency rate.
RadialSpectralFunction contraction_test_function(const GridPtr& grid, std::mt19937_64& rng,
                                                 int trial) {
  std::uniform_real_distribution<double> uni(0.0, 1.0);
  const double r_max = grid->r_max();
  if (trial % 2 == 0) {
    const double center = uni(rng) * 0.8 * r_max;
    const double width = 0.3 + 2.7 * uni(rng);
    return RadialSpectralFunction::from_function(
        grid,
        [=](double rho) {
          const double d = (rho - center) / width;
          return std::exp(-0.5 * d * d);
        },
        RadialSpectralFunction::no_tail);
  }
  const double log_lo = std::log(2.0 / r_max);
  const double log_hi = std::log(2.0);
  const double dilation = std::exp(log_lo + (log_hi - log_lo) * uni(rng));
  return RadialSpectralFunction::from_function(
      grid,
      [=](double rho) {
        const double q = 1.0 + dilation * dilation * rho * rho;
        return 1.0 / (q * q);
      },
      4.0);
}

}  // namespace

double contraction_factor(double lambda, double Z, double Omega, OperatorNormKind norm_kind,
                          int trials, const GridPtr& grid, std::uint64_t seed) {
  if (trials < 10) throw std::invalid_argument("contraction_factor: need at least 10 trials");
  const TOperator T(grid, lambda, Z);
  std::mt19937_64 rng(seed);
  double worst = 0.0;
  for (int t = 0; t < trials; ++t) {
    const RadialSpectralFunction f = contraction_test_function(grid, rng, t);
    const RadialSpectralFunction ptf = highpass(Omega, T.apply(f));
    double num, den;
    if (norm_kind == OperatorNormKind::H1) {
      num = weighted_l2_norm(ptf, 1.0);
      den = weighted_l2_norm(f, 1.0);
    } else {
      num = weighted_l1_norm(ptf, BarronExponent{0.0});
      den = weighted_l1_norm(f, BarronExponent{0.0});
    }
    if (den > 0.0) worst = std::max(worst, num / den);
  }
  return worst;
}

NeumannResult neumann_highfreq_solve(double lambda, double Z, double Omega,
                                     const RadialSpectralFunction& u_low, double tol,
                                     int max_terms) {
  if (!(tol > 0.0)) throw std::invalid_argument("neumann_highfreq_solve: tol must be positive");
  const double factor =
      contraction_factor(lambda, Z, Omega, OperatorNormKind::H1, 12, u_low.grid());
  if (!(factor < 1.0))
    throw NotContractiveError("neumann_highfreq_solve: PT(lambda) is not contractive at Omega = " +
                              std::to_string(Omega) + " (factor " + std::to_string(factor) + ")");

  const TOperator T(u_low.grid(), lambda, Z, std::min(u_low.tail_exponent(), 4.0));
  RadialSpectralFunction v = RadialSpectralFunction::zero(u_low.grid(), 4.0);
  for (int term = 1; term <= max_terms; ++term) {
    // v_{m+1} = P T (u_low + v_m) accumulates the partial Neumann sums
    const RadialSpectralFunction next = highpass(Omega, T.apply(axpby(1.0, u_low, 1.0, v)));
    const double increment = weighted_l2_norm(axpby(1.0, next, -1.0, v), 1.0);
    v = next;
    if (increment < tol * (1.0 + weighted_l2_norm(v, 1.0))) {
      const RadialSpectralFunction residual =
          axpby(1.0, v, -1.0, highpass(Omega, T.apply(axpby(1.0, u_low, 1.0, v))));
      if (weighted_l2_norm(residual, 1.0) < tol * (1.0 + weighted_l2_norm(v, 1.0)))
        return {std::move(v), term, factor};
    }
  }
  throw ConvergenceError("neumann_highfreq_solve: series did not converge within max_terms");
}

void SolverConfig::validate() const {
  if (!(nuclear_charge > 0.0)) throw std::invalid_argument("SolverConfig: Z must be positive");
  if (!(lambda_bracket.first < lambda_bracket.second && lambda_bracket.second < 0.0))
    throw std::invalid_argument("SolverConfig: need lambda_lo < lambda_hi < 0");
  if (!(cutoff >= 0.0)) throw std::invalid_argument("SolverConfig: cutoff must be >= 0");
  if (!(fixed_point_tol > 0.0)) throw std::invalid_argument("SolverConfig: tolerance must be positive");
  if (max_iterations < 1) throw std::invalid_argument("SolverConfig: max_iterations must be positive");
  if (!grid) throw std::invalid_argument("SolverConfig: grid is required");
}

namespace {

struct PowerResult {
  double mu = 0.0;
  std::vector<double> vec;
  int iterations = 0;
};

// Dominant eigenvalue of A(lambda) = G Z K by power iteration with H1
// normalization; the kernel is positive, so the dominant pair is simple.
PowerResult power_iteration(const KRadialOperator& K, const GridPtr& grid, double lambda, double Z,
                            std::vector<double> start, int max_iterations, double tol) {
  const std::size_t n = grid->size();
  auto h1_norm = [&](const std::vector<double>& v) {
    return weighted_l2_norm(RadialSpectralFunction(grid, v, 4.0), 1.0);
  };
  double nrm = h1_norm(start);
  if (!(nrm > 0.0)) throw ConvergenceError("power_iteration: zero start vector");
  for (auto& x : start) x /= nrm;

  PowerResult out;
  out.vec = std::move(start);
  double mu_prev = 0.0;
  for (int it = 1; it <= max_iterations; ++it) {
    std::vector<double> next = K.apply(out.vec);
    for (std::size_t k = 0; k < n; ++k) next[k] *= Z * g_multiplier(lambda, grid->node(k));
    const double mu = h1_norm(next);
    if (!(mu > 0.0)) throw ConvergenceError("power_iteration: iterate collapsed to zero");
    for (auto& x : next) x /= mu;
    out.vec = std::move(next);
    out.mu = mu;
    out.iterations = it;
    if (std::abs(mu - mu_prev) < tol * std::max(1.0, mu)) return out;
    mu_prev = mu;
  }
  throw ConvergenceError("power_iteration: stagnation, no convergence within max_iterations");
}

}  // namespace

EigenResult eigen_solve(const SolverConfig& config) {
  config.validate();
  const GridPtr& grid = config.grid;
  const double Z = config.nuclear_charge;
  const KRadialOperator K(grid, 4.0);
  const double inner_tol = 0.1 * config.fixed_point_tol;

  std::vector<double> start(grid->size());
  for (std::size_t k = 0; k < start.size(); ++k) {
    const double rho = grid->node(k);
    start[k] = 1.0 / ((1.0 + rho * rho) * (1.0 + rho * rho));
  }

  int total_iterations = 0;
  auto mu_at = [&](double lambda, std::vector<double> warm) {
    PowerResult pr =
        power_iteration(K, grid, lambda, Z, std::move(warm), config.max_iterations, inner_tol);
    total_iterations += pr.iterations;
    return pr;
  };

  double lo = config.lambda_bracket.first;
  double hi = config.lambda_bracket.second;
  PowerResult at_lo = mu_at(lo, start);
  PowerResult at_hi = mu_at(hi, at_lo.vec);
  // mu(lambda) increases toward lambda = 0-: the bracket must straddle mu = 1
  if ((at_lo.mu - 1.0) * (at_hi.mu - 1.0) > 0.0)
    throw NoEigenvalueError("eigen_solve: mu(lambda) - 1 does not change sign in the bracket");

  PowerResult mid_result = at_lo;
  double lambda = lo;
  for (int step = 0; step < 200; ++step) {
    lambda = 0.5 * (lo + hi);
    mid_result = mu_at(lambda, mid_result.vec);
    if (std::abs(mid_result.mu - 1.0) < 0.5 * config.fixed_point_tol) break;
    if ((mid_result.mu - 1.0) * (at_lo.mu - 1.0) > 0.0) {
      lo = lambda;
      at_lo = mid_result;
    } else {
      hi = lambda;
    }
    if (hi - lo < 1e-13 * std::abs(lo)) break;
  }

  // sign convention: the ground state is positive
  double mass = 0.0;
  for (double v : mid_result.vec) mass += v;
  if (mass < 0.0)
    for (auto& v : mid_result.vec) v = -v;

  RadialSpectralFunction u(grid, mid_result.vec, 4.0);
  const RadialSpectralFunction tu = apply_G(lambda, scale(Z, RadialSpectralFunction(
                                                                 grid, K.apply(u.values()), 2.0)));
  const double residual =
      weighted_l2_norm(axpby(1.0, u, -1.0, tu), 1.0) / weighted_l2_norm(u, 1.0);

  EigenResult out{lambda, std::move(u), total_iterations, residual};
  if (residual > config.fixed_point_tol)
    throw ConvergenceError("eigen_solve: residual " + std::to_string(residual) +
                           " above fixed_point_tol");
  return out;
}

double t_lambda_bound_ratio(double lambda, double Z, const RadialSpectralFunction& f, double s) {
  if (!(s < 1.0)) throw DivergenceError("t_lambda_bound_ratio: requires s < 1");
  const double denom = weighted_l1_norm(f, BarronExponent{0.0});
  if (denom == 0.0) throw UndefinedRatioError("t_lambda_bound_ratio: zero function");
  const RadialSpectralFunction tf = apply_T(lambda, Z, f);
  return weighted_l1_norm(tf, BarronExponent{s}) / (kappa(2.0 - s) * denom);
}

double hardy_ratio(const std::function<double(double)>& u, const std::function<double(double)>& du,
                   const RadialGrid& grid) {
  std::vector<double> num_terms(grid.size()), den_terms(grid.size());
  for (std::size_t k = 0; k < grid.size(); ++k) {
    const double r = grid.node(k);
    const double ur = u(r);
    const double dur = du(r);
    num_terms[k] = grid.weight(k) * ur * ur;              // |x|^-2 |u|^2 over the sphere
    den_terms[k] = grid.weight(k) * r * r * dur * dur;    // |grad u|^2 over the sphere
  }
  return pairwise_sum(num_terms) / (4.0 * pairwise_sum(den_terms));
}

std::vector<BarronProfileRow> barron_growth_profile(const RadialSpectralFunction& u,
                                                    const std::vector<double>& s_list) {
  std::vector<BarronProfileRow> rows;
  rows.reserve(s_list.size());
  for (double s : s_list) {
    if (!(s < 1.0)) throw std::invalid_argument("barron_growth_profile: requires s < 1");
    BarronProfileRow row;
    row.s = s;
    try {
      row.norm = weighted_l1_norm(u, BarronExponent{s});
      row.compensated = (1.0 - s) * row.norm;
    } catch (const DivergenceError&) {
      row.diverged = true;
    }
    rows.push_back(row);
  }
  return rows;
}

}  // namespace mlab
