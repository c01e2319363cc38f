#pragma once

#include <optional>
#include <vector>

#include "omffm/config.hpp"
#include "omffm/problem.hpp"

namespace omffm {

struct DescentDirection {
  std::vector<double> direction;    // subproblem minimizer d
  double theta = 0.0;               // optimal value; <= 0, and 0 iff Pareto-critical
  std::vector<double> multipliers;  // convex weights with d = -sum(lambda_j grad f_j)
};

// Solves min_d max_j g_j^T d + 0.5 ||d||^2 through its simplex dual
// min_{lambda in simplex} 0.5 ||sum lambda_j g_j||^2: projected gradient
// (500 iterations, 1e-12 tolerance) followed by an exact solve on the
// detected support so the returned point is the minimizer to machine
// precision.
DescentDirection steepest_descent_direction(const Jacobian& jac);

// Box-aware variant: min_d max_j g_j^T d + 0.5 ||d||^2 subject to
// y + d staying in the box. The inner minimizer for fixed simplex weights is
// the clamped negative combination, so the dual is solved by bisection for
// two objectives and projected supergradient ascent otherwise. theta = 0
// detects constrained criticality; used for stepping so iterates do not jam
// against active bounds.
DescentDirection constrained_descent_direction(const Jacobian& jac, const DecisionVector& y,
                                               const Box& box);

// Largest step in {beta0 * kArmijoRho^k, k <= kArmijoMaxBacktracks} whose
// box-projected point satisfies f_j(P(y + step d)) <= f_j(y) + c1 step theta
// for every objective. nullopt when no step qualifies.
std::optional<double> armijo_backtrack(const MopProblem& problem, const DecisionVector& y,
                                       const std::vector<double>& d, double theta,
                                       double c1 = kArmijoC1, double beta0 = kArmijoBeta0);

struct LocalStep {
  double theta;
  double beta;
  ObjectiveVector before;
  ObjectiveVector after;
};

struct LocalDescentResult {
  DecisionVector point;
  ObjectiveVector objectives;
  std::vector<double> multipliers;  // nonnegative, sum ~ 1
  double criticality = 0.0;         // theta at the returned point
  int iterations = 0;
  long long evals = 0;
  bool converged = false;  // |theta| < criticality_tolerance(n)
};

// Projected multi-objective steepest descent from y0. Stops at criticality,
// on line-search failure (the point is then treated as locally converged but
// flagged), or when the iteration/evaluation budget runs out.
LocalDescentResult local_weak_efficient(const MopProblem& problem, const DecisionVector& y0,
                                        const SolverConfig& cfg,
                                        std::vector<LocalStep>* trace = nullptr);

namespace detail {

// Line-search variant that reuses f(y) and hands back the accepted point.
// z stays empty on failure.
struct ArmijoOutcome {
  double step = 0.0;
  DecisionVector z;
  ObjectiveVector fz;
};

ArmijoOutcome armijo_backtrack_full(const MopProblem& problem, const DecisionVector& y,
                                    const ObjectiveVector& fy, const std::vector<double>& d,
                                    double theta, double c1 = kArmijoC1,
                                    double beta0 = kArmijoBeta0);

}  // namespace detail

}  // namespace omffm
