#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "omffm/config.hpp"
#include "omffm/filled_function.hpp"
#include "omffm/local_descent.hpp"
#include "omffm/rng.hpp"

namespace omffm {

struct InitialPoints {
  std::vector<DecisionVector> points;
  bool spacing_warning = false;  // minimum spacing not achievable after retries
};

// Seeded stratified (latin-hypercube) sampling with a minimum-spacing filter:
// spacing floor 0.1 * box diagonal / sqrt(N), 100 resample attempts per point.
// N = 1 degenerates to the box midpoint.
InitialPoints generate_initial_points(const MopProblem& problem, int N, std::uint64_t seed);

// Payoff-table estimate: each objective is minimized from lb, midpoint, ub
// plus 5 seeded random starts; ideal is the columnwise minimum, nadir the
// columnwise maximum over the table's non-dominated rows.
std::pair<ObjectiveVector, ObjectiveVector> estimate_ideal_nadir(const MopProblem& problem,
                                                                 const SolverConfig& cfg);

// Trial points in the box but outside the epsilon-ball around the anchor:
// +/- coordinate-axis perturbations with magnitude in [epsilon, 3 epsilon],
// projected, with uniform rejection resampling when projection lands the
// candidate back inside the ball.
std::vector<DecisionVector> make_trial_points(const MopProblem& problem,
                                              const DecisionVector& anchor, double epsilon,
                                              int count, std::uint64_t seed);

enum class ExhaustReason { mu_below_mu_L, budget, boundary_exhausted };

struct GlobalOutcome {
  bool improved = false;
  DecisionVector point;  // strictly dominating point when improved
  ExhaustReason reason = ExhaustReason::mu_below_mu_L;
  int outer_rounds = 0;
};

// One run of the global (filled) phase around a converged anchor. Mutates ctx:
// mu shrinks through inner/outer reductions and mu_L adapts per trial point.
GlobalOutcome global_phase(const MopProblem& problem, const LocalDescentResult& anchor_result,
                           FilledContext& ctx, const SolverConfig& cfg, Rng& rng);

enum class Termination { mu_below_mu_L, budget, boundary_exhausted };

struct RunReport {
  ParetoArchive wpf;   // anchors recorded after every local phase
  ParetoArchive wpff;  // final anchors at global-phase exhaustion
  ParetoArchive pf;    // nondominated_filter(wpf)
  ParetoArchive pff;   // nondominated_filter(wpff)
  long long evals = 0;
  int local_calls = 0;
  int global_escapes = 0;
  Termination termination = Termination::mu_below_mu_L;
  double wall_time_sec = 0.0;
  bool spacing_warning = false;
  int max_outer_rounds = 0;  // max outer rounds over all escape attempts
  // Objective vectors of the anchor sequence per initial point; strictly
  // componentwise decreasing along each trajectory.
  std::vector<std::vector<ObjectiveVector>> anchor_trajectories;
};

RunReport run_omffm(const MopProblem& problem, const SolverConfig& cfg);

// Baseline: local phase only, one descent per initial point.
RunReport run_local_only(const MopProblem& problem, const SolverConfig& cfg);

const char* to_string(Termination t);

}  // namespace omffm
