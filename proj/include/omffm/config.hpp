#pragma once

#include <cmath>
#include <cstdint>

namespace omffm {

// All tunables of a solver run. kappa and beta_U default to 0, meaning
// "derive from the problem": kappa -> 1e-4 * sqrt(n), beta_U -> epsilon.
struct SolverConfig {
  int N = 30;                    // initial points
  double mu_ini = 0.01;
  double mu_hat = 0.005;
  double epsilon = 0.1;          // anchor-neighborhood radius
  double kappa = 0.0;            // filled-gradient norm floor (0 = auto)
  double beta_U = 0.0;           // max global line-search step (0 = epsilon)
  int l = 1;                     // inner reduction exponent
  int max_global_rounds = 50;    // safety cap on outer rounds per escape attempt
  int max_local_iters = 500;
  long long eval_budget = 5'000'000;
  std::uint64_t seed = 0;
  int trial_count_factor = 2;    // trial points per round = factor * n

  // Copy with per-problem defaults filled in; validates the result.
  SolverConfig resolved(int n) const;
  void validate_resolved() const;
};

// Local-phase Armijo constants.
inline constexpr double kArmijoC1 = 1e-4;
inline constexpr double kArmijoRho = 0.5;
inline constexpr double kArmijoBeta0 = 1.0;
inline constexpr int kArmijoMaxBacktracks = 50;

// Global-phase caps.
inline constexpr int kFilledMaxBacktracks = 40;
inline constexpr int kInnerReductionCap = 60;
inline constexpr int kTrialStepCap = 200;
inline constexpr double kMuLFloor = 1e-5;
inline constexpr double kMuUnderflowGuard = 1e-300;

inline double criticality_tolerance(int n) { return 1e-8 * std::sqrt(static_cast<double>(n)); }

// Convergence additionally requires the subproblem direction norm (equal to
// ||sum lambda_j grad f_j||) to fall below this, so converged results certify
// the first-order condition with residual well under 1e-5.
inline constexpr double kLocalResidualTol = 1e-6;

}  // namespace omffm
