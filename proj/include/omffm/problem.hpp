#pragma once

#include <atomic>
#include <functional>
#include <memory>
#include <string>
#include <vector>

#include "omffm/core.hpp"

namespace omffm {

class UnknownProblemError : public std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Immutable definition of a box-constrained multi-objective problem. The
// evaluation counter is the only mutable piece; get_problem hands out a fresh
// counter and a run owns its instance, so no cross-run synchronization beyond
// the atomic itself is needed.
struct MopProblem {
  std::string name;
  int n = 0;
  int m = 0;
  Box box;
  std::function<ObjectiveVector(const DecisionVector&)> objectives;
  std::function<Jacobian(const DecisionVector&)> jacobian;                 // optional
  std::function<std::vector<ObjectiveVector>(int)> front_sampler;          // optional
  std::shared_ptr<std::atomic<long long>> eval_count =
      std::make_shared<std::atomic<long long>>(0);

  // Evaluates the objectives, counting the call. Throws std::domain_error for
  // points outside the box (callers project first) and EvalError on
  // non-finite results.
  ObjectiveVector evaluate(const DecisionVector& y) const;

  bool has_jacobian() const { return static_cast<bool>(jacobian); }
  bool has_front_sampler() const { return static_cast<bool>(front_sampler); }
  long long evals() const { return eval_count->load(); }

  // Analytic jacobian when present, central finite differences otherwise.
  Jacobian jacobian_or_fd(const DecisionVector& y) const;
};

MopProblem get_problem(const std::string& name);
std::vector<std::string> problem_names();

// Exact jacobian from the problem's closed form; CapabilityError when the
// problem has none.
Jacobian analytic_jacobian(const MopProblem& problem, const DecisionVector& y);

// count pairwise non-dominated points approximating the global front;
// CapabilityError when no sampler is registered.
std::vector<ObjectiveVector> sample_true_front(const MopProblem& problem, int count);

// Central-difference jacobian with one-sided fallback near the bounds.
// Per-coordinate step: h * max(1, |y_i|).
Jacobian finite_diff_jacobian(const MopProblem& problem, const DecisionVector& y, double h);

}  // namespace omffm
