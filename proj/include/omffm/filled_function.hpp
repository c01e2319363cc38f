#pragma once

#include <vector>

#include "omffm/problem.hpp"

namespace omffm {

// Anchor point and every parameter of the auxiliary function built around it.
// Immutable value; reductions return new contexts.
struct FilledContext {
  DecisionVector anchor;
  ObjectiveVector anchor_objectives;
  double mu = 0.01;
  double mu_hat = 0.005;
  double mu_L = 1e-5;
  double mu_U = 1.0;
  double kappa = 1e-4;
  double epsilon = 0.1;
  double beta_U = 0.1;
  int l = 1;

  void validate() const;
};

// Piecewise kernel: -nu t^3 for t >= 0, -(1/nu) t^2 for t < 0.
// C^1 at t = 0, nonpositive everywhere.
double phi(double nu, double t);
double phi_prime(double nu, double t);

// Component j: -||y - anchor||^2 + phi_mu(f_j(y) - f_j(anchor)).
ObjectiveVector filled_value(const FilledContext& ctx, const MopProblem& problem,
                             const DecisionVector& y);
// Same, reusing an already-evaluated objective vector at y.
ObjectiveVector filled_value_from(const FilledContext& ctx, const ObjectiveVector& fy,
                                  const DecisionVector& y);

// Row j: -2(y - anchor) + phi_mu'(f_j(y) - f_j(anchor)) * grad f_j(y).
Jacobian filled_gradient(const FilledContext& ctx, const MopProblem& problem,
                         const DecisionVector& y);

// Admissible-interval bounds for mu along a probe direction s with
// s^T (ybar - anchor) > 0. Indices with f_j(ybar) below the anchor value and
// s^T grad f_j > 0 (the set Q2) force the lower bound; indices above the
// anchor value with s^T grad f_j < 0 (the set P3) force the upper bound.
struct MuBounds {
  double lower_raw = 0.0;  // bound before the offset/reset rules
  double lower = 0.0;      // adaptive value: raw + 1e-5, floor 1e-5, reset below mu_U
  double upper = 1.0;
  bool q2_empty = true;
  bool p3_empty = true;
  bool reset = false;  // the offset value hit the mu cap and fell back to the floor
};

MuBounds mu_bounds(const FilledContext& ctx, const MopProblem& problem,
                   const DecisionVector& anchor, const DecisionVector& ybar,
                   const std::vector<double>& s);
double mu_lower(const FilledContext& ctx, const MopProblem& problem, const DecisionVector& anchor,
                const DecisionVector& ybar, const std::vector<double>& s);
double mu_upper(const FilledContext& ctx, const MopProblem& problem, const DecisionVector& anchor,
                const DecisionVector& ybar, const std::vector<double>& s);

// ok iff every filled-gradient row has norm >= kappa and negative inner
// product with (y - anchor). failing_index is -1 when ok.
struct DescentCheckResult {
  bool ok = false;
  int failing_index = -1;
};

DescentCheckResult descent_check(const FilledContext& ctx, const MopProblem& problem,
                                 const DecisionVector& y);

// New context with mu scaled by mu_hat^l (inner reduction uses ctx.l; the
// outer reduction passes l = 1).
FilledContext reduce_mu(const FilledContext& ctx);
FilledContext reduce_mu(const FilledContext& ctx, int l);

}  // namespace omffm
