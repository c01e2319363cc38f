#include "omffm/filled_function.hpp"

#include <cmath>
#include <numeric>

namespace omffm {

namespace {

constexpr double kSignTol = 1e-12;  // threshold on s^T grad f for the sign trichotomy

double equality_tol(double anchor_value) { return 1e-10 * std::max(1.0, std::abs(anchor_value)); }

ObjectiveVector anchor_objectives_for(const FilledContext& ctx, const MopProblem& problem,
                                      const DecisionVector& anchor) {
  if (anchor == ctx.anchor && !ctx.anchor_objectives.empty()) return ctx.anchor_objectives;
  return problem.evaluate(anchor);
}

}  // namespace

void FilledContext::validate() const {
  if (anchor.empty()) throw std::invalid_argument("filled context has no anchor");
  if (!(mu_hat > 0.0 && mu_hat < 1.0)) throw std::invalid_argument("mu_hat must be in (0, 1)");
  if (!(mu > 0.0 && mu <= mu_U && mu_U <= 1.0))
    throw std::invalid_argument("mu must satisfy 0 < mu <= mu_U <= 1");
  if (!(mu_L > 0.0)) throw std::invalid_argument("mu_L must be positive");
  if (!(kappa > 0.0)) throw std::invalid_argument("kappa must be positive");
  if (!(epsilon > 0.0)) throw std::invalid_argument("epsilon must be positive");
  if (!(beta_U > 0.0)) throw std::invalid_argument("beta_U must be positive");
  if (l < 1) throw std::invalid_argument("l must be >= 1");
}

double phi(double nu, double t) {
  if (!(nu > 0.0)) throw std::invalid_argument("phi requires nu > 0");
  if (t >= 0.0) return -nu * t * t * t;
  return -(t * t) / nu;
}

double phi_prime(double nu, double t) {
  if (!(nu > 0.0)) throw std::invalid_argument("phi_prime requires nu > 0");
  if (t >= 0.0) return -3.0 * nu * t * t;
  return -2.0 * t / nu;
}

ObjectiveVector filled_value_from(const FilledContext& ctx, const ObjectiveVector& fy,
                                  const DecisionVector& y) {
  if (fy.size() != ctx.anchor_objectives.size())
    throw std::invalid_argument("filled_value: objective arity mismatch");
  const double dist2 = squared_distance(y, ctx.anchor);
  ObjectiveVector out(fy.size());
  for (std::size_t j = 0; j < fy.size(); ++j)
    out[j] = -dist2 + phi(ctx.mu, fy[j] - ctx.anchor_objectives[j]);
  return out;
}

ObjectiveVector filled_value(const FilledContext& ctx, const MopProblem& problem,
                             const DecisionVector& y) {
  return filled_value_from(ctx, problem.evaluate(y), y);
}

Jacobian filled_gradient(const FilledContext& ctx, const MopProblem& problem,
                         const DecisionVector& y) {
  const ObjectiveVector fy = problem.evaluate(y);
  const Jacobian jac = problem.jacobian_or_fd(y);
  Jacobian out(fy.size(), std::vector<double>(y.size()));
  for (std::size_t j = 0; j < fy.size(); ++j) {
    const double w = phi_prime(ctx.mu, fy[j] - ctx.anchor_objectives[j]);
    for (std::size_t i = 0; i < y.size(); ++i)
      out[j][i] = -2.0 * (y[i] - ctx.anchor[i]) + w * jac[j][i];
  }
  return out;
}

MuBounds mu_bounds(const FilledContext& ctx, const MopProblem& problem,
                   const DecisionVector& anchor, const DecisionVector& ybar,
                   const std::vector<double>& s) {
  if (s.size() != ybar.size() || ybar.size() != anchor.size())
    throw std::invalid_argument("mu_bounds: dimension mismatch");
  double sd = 0.0;
  for (std::size_t i = 0; i < s.size(); ++i) sd += s[i] * (ybar[i] - anchor[i]);
  if (!(sd > 0.0))
    throw std::invalid_argument("mu_bounds requires s^T (ybar - anchor) > 0");

  const ObjectiveVector fa = anchor_objectives_for(ctx, problem, anchor);
  const ObjectiveVector fb = problem.evaluate(ybar);
  const Jacobian jac = problem.jacobian_or_fd(ybar);

  MuBounds out;
  double q2_max = 0.0;  // max over Q2 of -(f_i(ybar) - f_i(anchor)) * s^T grad f_i
  double p3_max = 0.0;  // max over P3 of -3 (f_i(ybar) - f_i(anchor))^2 * s^T grad f_i
  for (std::size_t j = 0; j < fb.size(); ++j) {
    const double delta = fb[j] - fa[j];
    if (std::abs(delta) <= equality_tol(fa[j])) continue;  // I1: no constraint
    const double sg = std::inner_product(s.begin(), s.end(), jac[j].begin(), 0.0);
    if (std::abs(sg) <= kSignTol) continue;  // P1 / Q1: no constraint
    if (delta > 0.0 && sg < 0.0) {           // P3
      const double v = -3.0 * delta * delta * sg;
      p3_max = out.p3_empty ? v : std::max(p3_max, v);
      out.p3_empty = false;
    } else if (delta < 0.0 && sg > 0.0) {    // Q2
      const double v = -delta * sg;
      q2_max = out.q2_empty ? v : std::max(q2_max, v);
      out.q2_empty = false;
    }
  }

  out.lower_raw = out.q2_empty ? 0.0 : q2_max / sd;
  out.upper = out.p3_empty ? 1.0 : std::min(1.0, 2.0 * sd / p3_max);
  // Adaptive rule: offset the theoretical bound, floor at 1e-5, and reset to
  // the floor when the result would not fit under the mu cap.
  out.lower = out.q2_empty ? 1e-5 : out.lower_raw + 1e-5;
  if (out.lower >= ctx.mu_U) {
    out.lower = 1e-5;
    out.reset = true;
  }
  return out;
}

double mu_lower(const FilledContext& ctx, const MopProblem& problem, const DecisionVector& anchor,
                const DecisionVector& ybar, const std::vector<double>& s) {
  return mu_bounds(ctx, problem, anchor, ybar, s).lower;
}

double mu_upper(const FilledContext& ctx, const MopProblem& problem, const DecisionVector& anchor,
                const DecisionVector& ybar, const std::vector<double>& s) {
  return mu_bounds(ctx, problem, anchor, ybar, s).upper;
}

DescentCheckResult descent_check(const FilledContext& ctx, const MopProblem& problem,
                                 const DecisionVector& y) {
  if (y == ctx.anchor) throw std::invalid_argument("descent_check requires y != anchor");
  const Jacobian grad = filled_gradient(ctx, problem, y);
  for (std::size_t j = 0; j < grad.size(); ++j) {
    double norm2 = 0.0, dot = 0.0;
    for (std::size_t i = 0; i < y.size(); ++i) {
      norm2 += grad[j][i] * grad[j][i];
      dot += (y[i] - ctx.anchor[i]) * grad[j][i];
    }
    if (std::sqrt(norm2) < ctx.kappa || dot >= 0.0)
      return {false, static_cast<int>(j)};
  }
  return {true, -1};
}

FilledContext reduce_mu(const FilledContext& ctx) { return reduce_mu(ctx, ctx.l); }

FilledContext reduce_mu(const FilledContext& ctx, int l) {
  if (l < 1) throw std::invalid_argument("reduction exponent must be >= 1");
  FilledContext out = ctx;
  for (int i = 0; i < l; ++i) out.mu *= ctx.mu_hat;
  return out;
}

}  // namespace omffm
