#include "omffm/driver.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>

#include "omffm/log.hpp"

namespace omffm {

namespace {

double min_distance(const DecisionVector& c, const std::vector<DecisionVector>& accepted) {
  double best = std::numeric_limits<double>::infinity();
  for (const auto& a : accepted) best = std::min(best, distance(c, a));
  return best;
}

DecisionVector uniform_in_box(const Box& box, Rng& rng) {
  DecisionVector y(box.dim());
  for (std::size_t i = 0; i < y.size(); ++i) y[i] = rng.uniform(box.lower[i], box.upper[i]);
  return y;
}

std::vector<double> unit_direction(const DecisionVector& from_anchor_to,
                                   const DecisionVector& anchor) {
  std::vector<double> s(anchor.size());
  double norm = 0.0;
  for (std::size_t i = 0; i < s.size(); ++i) {
    s[i] = from_anchor_to[i] - anchor[i];
    norm += s[i] * s[i];
  }
  norm = std::sqrt(norm);
  if (!(norm > 0.0)) throw std::invalid_argument("probe direction undefined: y == anchor");
  for (auto& v : s) v /= norm;
  return s;
}

// Farthest feasible point from the anchor; trial placement is impossible when
// even that point sits inside the epsilon-ball.
double farthest_distance(const DecisionVector& anchor, const Box& box) {
  double s = 0.0;
  for (std::size_t i = 0; i < box.dim(); ++i) {
    const double d = std::max(anchor[i] - box.lower[i], box.upper[i] - anchor[i]);
    s += d * d;
  }
  return std::sqrt(s);
}

bool budget_exhausted(const MopProblem& problem, const SolverConfig& cfg) {
  return problem.evals() >= cfg.eval_budget;
}

// Single-objective view on one component, sharing the owning problem's
// evaluation counter. Used by the payoff-table estimate.
MopProblem single_objective_view(const MopProblem& problem, int j) {
  MopProblem view;
  view.name = problem.name + "#f" + std::to_string(j);
  view.n = problem.n;
  view.m = 1;
  view.box = problem.box;
  view.eval_count = problem.eval_count;
  auto raw = problem.objectives;
  view.objectives = [raw, j](const DecisionVector& y) {
    return ObjectiveVector{raw(y)[j]};
  };
  if (problem.has_jacobian()) {
    auto jac = problem.jacobian;
    view.jacobian = [jac, j](const DecisionVector& y) { return Jacobian{jac(y)[j]}; };
  }
  return view;
}

}  // namespace

InitialPoints generate_initial_points(const MopProblem& problem, int N, std::uint64_t seed) {
  if (N < 1) throw std::invalid_argument("N must be >= 1");
  const Box& box = problem.box;
  if (N == 1) return {{box.midpoint()}, false};

  const int n = problem.n;
  Rng rng(hash_seed(seed, "init"));

  // Latin hypercube: one stratum per point and dimension, shuffled per dimension.
  std::vector<std::vector<int>> strata(n, std::vector<int>(N));
  for (int d = 0; d < n; ++d) {
    for (int i = 0; i < N; ++i) strata[d][i] = i;
    for (int i = N - 1; i > 0; --i)
      std::swap(strata[d][i], strata[d][rng.index(static_cast<std::size_t>(i) + 1)]);
  }
  std::vector<DecisionVector> candidates(N, DecisionVector(n));
  for (int i = 0; i < N; ++i)
    for (int d = 0; d < n; ++d)
      candidates[i][d] = box.lower[d] + (strata[d][i] + rng.uniform()) * box.range(d) / N;

  const double spacing = 0.1 * box.diagonal() / std::sqrt(static_cast<double>(N));
  InitialPoints out;
  out.points.reserve(N);
  for (int i = 0; i < N; ++i) {
    DecisionVector c = candidates[i];
    DecisionVector best = c;
    double best_dist = min_distance(c, out.points);
    int attempts = 0;
    while (best_dist < spacing && attempts < 100) {
      c = uniform_in_box(box, rng);
      const double d = min_distance(c, out.points);
      if (d > best_dist) {
        best_dist = d;
        best = c;
      }
      ++attempts;
    }
    if (best_dist < spacing) out.spacing_warning = true;
    out.points.push_back(std::move(best));
  }
  return out;
}

// Lexicographic payoff refinement: from a minimizer of f_j, also minimize the
// sum of the other objectives under a quadratic penalty that keeps f_j at its
// minimum. Tied minimizers otherwise leave the other components at arbitrary
// extremes and wreck the nadir estimate.
MopProblem payoff_refine_view(const MopProblem& problem, int j, double cap) {
  constexpr double kPenalty = 1e4;
  MopProblem view;
  view.name = problem.name + "#payoff" + std::to_string(j);
  view.n = problem.n;
  view.m = 1;
  view.box = problem.box;
  view.eval_count = problem.eval_count;
  auto raw = problem.objectives;
  view.objectives = [raw, j, cap](const DecisionVector& y) {
    const ObjectiveVector f = raw(y);
    double value = 0.0;
    for (std::size_t k = 0; k < f.size(); ++k)
      if (static_cast<int>(k) != j) value += f[k];
    const double over = std::max(0.0, f[j] - cap);
    return ObjectiveVector{value + kPenalty * over * over};
  };
  if (problem.has_jacobian()) {
    auto jac = problem.jacobian;
    view.jacobian = [raw, jac, j, cap](const DecisionVector& y) {
      const ObjectiveVector f = raw(y);
      const Jacobian J = jac(y);
      std::vector<double> row(y.size(), 0.0);
      for (std::size_t k = 0; k < f.size(); ++k)
        if (static_cast<int>(k) != j)
          for (std::size_t i = 0; i < y.size(); ++i) row[i] += J[k][i];
      const double over = std::max(0.0, f[j] - cap);
      if (over > 0.0)
        for (std::size_t i = 0; i < y.size(); ++i) row[i] += 2.0 * kPenalty * over * J[j][i];
      return Jacobian{std::move(row)};
    };
  }
  return view;
}

std::pair<ObjectiveVector, ObjectiveVector> estimate_ideal_nadir(const MopProblem& problem,
                                                                 const SolverConfig& cfg0) {
  const SolverConfig cfg = cfg0.resolved(problem.n);
  // The table holds every run's outcome, one single-objective descent plus a
  // lexicographic polish per (objective, start); keeping only the best row
  // per objective would let tied minimizers hide whole columns of the nadir.
  std::vector<ObjectiveVector> rows;
  for (int j = 0; j < problem.m; ++j) {
    MopProblem view = single_objective_view(problem, j);
    std::vector<DecisionVector> starts = {problem.box.lower, problem.box.midpoint(),
                                          problem.box.upper};
    Rng rng(hash_seed(cfg.seed, "payoff", static_cast<std::uint64_t>(j)));
    for (int r = 0; r < 5; ++r) starts.push_back(uniform_in_box(problem.box, rng));

    for (const auto& y0 : starts) {
      auto res = local_weak_efficient(view, y0, cfg);
      DecisionVector point = res.point;
      if (problem.m > 1) {
        const double cap =
            res.objectives[0] + 1e-6 * std::max(1.0, std::abs(res.objectives[0]));
        auto refined = local_weak_efficient(payoff_refine_view(problem, j, cap), point, cfg);
        if (problem.objectives(refined.point)[j] <= cap) point = refined.point;
      }
      rows.push_back(problem.evaluate(point));
      if (problem.evals() >= cfg.eval_budget) break;
    }
  }

  ObjectiveVector ideal(problem.m, std::numeric_limits<double>::infinity());
  for (const auto& r : rows)
    for (int j = 0; j < problem.m; ++j) ideal[j] = std::min(ideal[j], r[j]);

  const auto surviving = nondominated_filter(rows);
  ObjectiveVector nadir(problem.m, -std::numeric_limits<double>::infinity());
  for (const auto& r : surviving)
    for (int j = 0; j < problem.m; ++j) nadir[j] = std::max(nadir[j], r[j]);
  return {ideal, nadir};
}

std::vector<DecisionVector> make_trial_points(const MopProblem& problem,
                                              const DecisionVector& anchor, double epsilon,
                                              int count, std::uint64_t seed) {
  if (count < 1) throw std::invalid_argument("trial count must be >= 1");
  if (!(epsilon > 0.0)) throw std::invalid_argument("epsilon must be positive");
  const Box& box = problem.box;
  if (epsilon >= box.diagonal() || epsilon >= farthest_distance(anchor, box))
    throw std::invalid_argument("epsilon too large: no feasible point outside the anchor ball");

  Rng rng(seed);
  const int n = problem.n;
  std::vector<DecisionVector> out;
  out.reserve(count);
  for (int k = 0; k < count; ++k) {
    const int axis = (k / 2) % n;
    const double sign = (k % 2 == 0) ? 1.0 : -1.0;
    DecisionVector c = anchor;
    c[axis] += sign * rng.uniform(epsilon, 3.0 * epsilon);
    c = project_to_box(c, box);
    int attempts = 0;
    while (distance(c, anchor) <= epsilon) {
      if (++attempts > 1000)
        throw std::invalid_argument("could not place a trial point outside the anchor ball");
      c = uniform_in_box(box, rng);
    }
    out.push_back(std::move(c));
  }
  return out;
}

GlobalOutcome global_phase(const MopProblem& problem, const LocalDescentResult& anchor_result,
                           FilledContext& ctx, const SolverConfig& cfg0, Rng& rng) {
  const SolverConfig cfg = cfg0.resolved(problem.n);
  ctx.validate();
  const DecisionVector& anchor = ctx.anchor;
  const ObjectiveVector& f_anchor = ctx.anchor_objectives;
  (void)anchor_result;

  GlobalOutcome out;
  const int trial_count = cfg.trial_count_factor * problem.n;

  while (true) {
    if (budget_exhausted(problem, cfg)) {
      out.reason = ExhaustReason::budget;
      return out;
    }
    if (out.outer_rounds >= cfg.max_global_rounds) {
      OMFFM_LOG_WARN("global phase hit the outer-round safety cap on %s", problem.name.c_str());
      out.reason = ExhaustReason::mu_below_mu_L;
      return out;
    }

    auto trials = make_trial_points(problem, anchor, ctx.epsilon, trial_count, rng.next_u64());
    ++out.outer_rounds;
    int boundary_exits = 0;

    for (const auto& trial : trials) {
      DecisionVector y = trial;
      ObjectiveVector fy = problem.evaluate(y);
      if (strictly_dominates(fy, f_anchor)) {
        out.improved = true;
        out.point = std::move(y);
        return out;
      }
      // Adaptive lower bound from this trial's entry geometry.
      ctx.mu_L = mu_lower(ctx, problem, anchor, y, unit_direction(y, anchor));

      for (int step = 0; step < kTrialStepCap; ++step) {
        if (budget_exhausted(problem, cfg)) {
          out.reason = ExhaustReason::budget;
          return out;
        }

        // Descent conditions, shrinking mu until they hold for every objective.
        bool conditions_ok = false;
        for (int inner = 0; inner <= kInnerReductionCap; ++inner) {
          if (descent_check(ctx, problem, y).ok) {
            conditions_ok = true;
            break;
          }
          FilledContext next = reduce_mu(ctx);
          if (next.mu < kMuUnderflowGuard) break;
          ctx = std::move(next);
        }
        if (!conditions_ok) break;  // abandon this trial point

        // Step away from the anchor while every filled component decreases.
        const auto s = unit_direction(y, anchor);
        const ObjectiveVector filled_here = filled_value_from(ctx, fy, y);
        bool stepped = false;
        double beta = ctx.beta_U;
        for (int bt = 0; bt < kFilledMaxBacktracks; ++bt, beta *= 0.5) {
          DecisionVector z(y.size());
          for (std::size_t i = 0; i < y.size(); ++i) z[i] = y[i] + beta * s[i];
          z = project_to_box(z, problem.box);
          if (z == y) continue;  // projection swallowed the whole step
          ObjectiveVector fz = problem.evaluate(z);
          ObjectiveVector filled_there = filled_value_from(ctx, fz, z);
          bool all_below = true;
          for (std::size_t j = 0; j < filled_there.size() && all_below; ++j)
            all_below = filled_there[j] < filled_here[j];
          if (all_below) {
            y = std::move(z);
            fy = std::move(fz);
            stepped = true;
            break;
          }
        }
        if (!stepped) break;  // abandon this trial point

        if (strictly_dominates(fy, f_anchor)) {
          out.improved = true;
          out.point = std::move(y);
          return out;
        }
        if (on_boundary(y, problem.box)) {
          ++boundary_exits;
          break;  // move on to the next trial point
        }
      }
    }

    // Outer reduction; the round is over once every trial point is processed.
    ctx = reduce_mu(ctx, 1);
    if (ctx.mu < ctx.mu_L) {
      out.reason = (boundary_exits == trial_count) ? ExhaustReason::boundary_exhausted
                                                   : ExhaustReason::mu_below_mu_L;
      return out;
    }
  }
}

namespace {

RunReport run_impl(const MopProblem& problem, const SolverConfig& cfg0, bool with_global) {
  const SolverConfig cfg = cfg0.resolved(problem.n);
  const auto t0 = std::chrono::steady_clock::now();

  RunReport rep;
  auto init = generate_initial_points(problem, cfg.N, cfg.seed);
  rep.spacing_warning = init.spacing_warning;
  if (rep.spacing_warning)
    OMFFM_LOG_WARN("initial-point spacing floor not met on %s", problem.name.c_str());

  Rng rng(hash_seed(cfg.seed, "global"));
  bool budget_hit = false;
  ExhaustReason last_reason = ExhaustReason::mu_below_mu_L;

  for (const auto& y0 : init.points) {
    if (budget_exhausted(problem, cfg)) {
      budget_hit = true;
      break;
    }
    auto local = local_weak_efficient(problem, y0, cfg);
    ++rep.local_calls;
    rep.wpf.append(local.point, local.objectives);
    std::vector<ObjectiveVector> trajectory{local.objectives};

    if (with_global) {
      FilledContext ctx;
      ctx.anchor = local.point;
      ctx.anchor_objectives = local.objectives;
      ctx.mu = cfg.mu_ini;
      ctx.mu_hat = cfg.mu_hat;
      ctx.mu_L = kMuLFloor;
      ctx.mu_U = 1.0;
      ctx.kappa = cfg.kappa;
      ctx.epsilon = cfg.epsilon;
      ctx.beta_U = cfg.beta_U;
      ctx.l = cfg.l;

      while (true) {
        auto outcome = global_phase(problem, local, ctx, cfg, rng);
        rep.max_outer_rounds = std::max(rep.max_outer_rounds, outcome.outer_rounds);
        if (!outcome.improved) {
          last_reason = outcome.reason;
          if (outcome.reason == ExhaustReason::budget) budget_hit = true;
          break;
        }
        ++rep.global_escapes;
        local = local_weak_efficient(problem, outcome.point, cfg);
        ++rep.local_calls;
        rep.wpf.append(local.point, local.objectives);
        trajectory.push_back(local.objectives);
        ctx.anchor = local.point;
        ctx.anchor_objectives = local.objectives;
        // mu and mu_L carry over across escape attempts.
      }
    }

    rep.wpff.append(local.point, local.objectives);
    rep.anchor_trajectories.push_back(std::move(trajectory));
  }

  rep.pf = nondominated_filter(rep.wpf);
  rep.pff = nondominated_filter(rep.wpff);
  rep.evals = problem.evals();
  rep.termination = budget_hit ? Termination::budget
                   : last_reason == ExhaustReason::boundary_exhausted
                       ? Termination::boundary_exhausted
                       : Termination::mu_below_mu_L;
  rep.wall_time_sec = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return rep;
}

}  // namespace

RunReport run_omffm(const MopProblem& problem, const SolverConfig& cfg) {
  return run_impl(problem, cfg, true);
}

RunReport run_local_only(const MopProblem& problem, const SolverConfig& cfg) {
  return run_impl(problem, cfg, false);
}

const char* to_string(Termination t) {
  switch (t) {
    case Termination::mu_below_mu_L: return "mu_below_mu_L";
    case Termination::budget: return "budget";
    case Termination::boundary_exhausted: return "boundary_exhausted";
  }
  return "unknown";
}

}  // namespace omffm
