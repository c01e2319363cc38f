#include <doctest.h>

#include <cmath>
#include <set>

#include "omffm/driver.hpp"
#include "test_util.hpp"

using namespace omffm;

TEST_CASE("initial points: midpoint degenerate case, spacing, determinism") {
  auto p = get_problem("P4a");
  auto single = generate_initial_points(p, 1, 7);
  REQUIRE(single.points.size() == 1);
  CHECK(single.points[0] == p.box.midpoint());
  CHECK_FALSE(single.spacing_warning);

  const int N = 4;
  auto pts = generate_initial_points(p, N, 7);
  REQUIRE(pts.points.size() == N);
  CHECK_FALSE(pts.spacing_warning);
  const double floor = 0.1 * p.box.diagonal() / std::sqrt(static_cast<double>(N));
  for (int i = 0; i < N; ++i) {
    CHECK(p.box.contains(pts.points[i]));
    for (int j = i + 1; j < N; ++j) CHECK(distance(pts.points[i], pts.points[j]) >= floor);
  }

  auto again = generate_initial_points(p, N, 7);
  CHECK(again.points == pts.points);
  auto other = generate_initial_points(p, N, 8);
  CHECK(other.points != pts.points);

  CHECK_THROWS_AS((void)generate_initial_points(p, 0, 7), std::invalid_argument);
}

TEST_CASE("ideal and nadir from the payoff table") {
  SolverConfig cfg;
  auto bk1 = get_problem("BK1");
  auto [ideal, nadir] = estimate_ideal_nadir(bk1, cfg);
  CHECK(ideal[0] == doctest::Approx(0.0).epsilon(1e-6));
  CHECK(ideal[1] == doctest::Approx(0.0).epsilon(1e-6));
  for (int j = 0; j < 2; ++j) CHECK(ideal[j] <= nadir[j]);

  // identical objectives degenerate the table
  auto same = testutil::make_custom(
      "same", 2, 2, Box{{-1, -1}, {1, 1}},
      [](const DecisionVector& y) {
        const double v = y[0] * y[0] + y[1] * y[1];
        return ObjectiveVector{v, v};
      },
      [](const DecisionVector& y) {
        return Jacobian{{2 * y[0], 2 * y[1]}, {2 * y[0], 2 * y[1]}};
      });
  auto [i2, n2] = estimate_ideal_nadir(same, cfg);
  CHECK(i2[0] == doctest::Approx(n2[0]).epsilon(1e-9));
  CHECK(i2[1] == doctest::Approx(n2[1]).epsilon(1e-9));

  auto zdt1 = get_problem("ZDT1");
  auto [iz, nz] = estimate_ideal_nadir(zdt1, cfg);
  CHECK(std::abs(iz[0] - 0.0) <= 0.05);
  CHECK(std::abs(iz[1] - 0.0) <= 0.05);
  CHECK(std::abs(nz[0] - 1.0) <= 0.05);
  CHECK(std::abs(nz[1] - 1.0) <= 0.05);
}

TEST_CASE("trial points stay feasible and outside the anchor ball") {
  auto p = get_problem("P4a");
  const DecisionVector center = p.box.midpoint();
  auto trials = make_trial_points(p, center, 0.1, 4, 99);
  REQUIRE(trials.size() == 4);
  for (const auto& t : trials) {
    CHECK(p.box.contains(t));
    CHECK(distance(t, center) > 0.1);
  }

  const DecisionVector corner{0.0, 0.0};
  auto corner_trials = make_trial_points(p, corner, 0.1, 8, 99);
  for (const auto& t : corner_trials) {
    CHECK(p.box.contains(t));
    CHECK(distance(t, corner) > 0.1);
  }

  CHECK(make_trial_points(p, center, 0.1, 4, 123) == make_trial_points(p, center, 0.1, 4, 123));
  CHECK_THROWS_AS((void)make_trial_points(p, center, 5.0, 4, 99), std::invalid_argument);
}

namespace {

FilledContext context_for(const LocalDescentResult& anchor, const SolverConfig& cfg, int n) {
  const SolverConfig r = cfg.resolved(n);
  FilledContext ctx;
  ctx.anchor = anchor.point;
  ctx.anchor_objectives = anchor.objectives;
  ctx.mu = r.mu_ini;
  ctx.mu_hat = r.mu_hat;
  ctx.mu_L = kMuLFloor;
  ctx.mu_U = 1.0;
  ctx.kappa = r.kappa;
  ctx.epsilon = r.epsilon;
  ctx.beta_U = r.beta_U;
  ctx.l = r.l;
  return ctx;
}

// Grid verification that a strictly dominating point exists (P4a curve scan).
bool p4a_anchor_strictly_dominated(const MopProblem& p, const ObjectiveVector& fa) {
  for (int i = 0; i <= 20000; ++i) {
    const double t = static_cast<double>(i) / 20000;
    const auto f = p.objectives({t, 0.0});
    if (f[0] < fa[0] && f[1] < fa[1]) return true;
  }
  return false;
}

}  // namespace

TEST_CASE("global phase exhausts on a convex problem anchored on its front") {
  auto bk1 = get_problem("BK1");
  SolverConfig cfg;
  auto anchor = local_weak_efficient(bk1, {1.0, 2.0}, cfg);
  REQUIRE(anchor.converged);
  auto ctx = context_for(anchor, cfg, bk1.n);
  Rng rng(61);
  const auto out = global_phase(bk1, anchor, ctx, cfg, rng);
  CHECK_FALSE(out.improved);
  CHECK(out.reason == ExhaustReason::mu_below_mu_L);
  CHECK(out.outer_rounds >= 1);
}

TEST_CASE("global phase escapes a dominated anchor on P4a") {
  auto p = get_problem("P4a");
  SolverConfig cfg;
  cfg.trial_count_factor = 12;  // more trial rays per round for a reliable escape
  auto anchor = local_weak_efficient(p, {0.97, 0.3}, cfg);
  REQUIRE(anchor.converged);
  REQUIRE(p4a_anchor_strictly_dominated(p, anchor.objectives));

  int improved = 0;
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    auto ctx = context_for(anchor, cfg, p.n);
    Rng rng(hash_seed(seed, "escape"));
    const auto out = global_phase(p, anchor, ctx, cfg, rng);
    if (out.improved) {
      ++improved;
      const auto f = p.evaluate(out.point);
      CHECK(strictly_dominates(f, anchor.objectives));
    }
  }
  CHECK(improved >= 9);
}

TEST_CASE("an entry mu below the floor exhausts after a single round") {
  auto bk1 = get_problem("BK1");
  SolverConfig cfg;
  cfg.mu_ini = 1e-6;  // below the 1e-5 lower-bound floor
  auto anchor = local_weak_efficient(bk1, {1.0, 2.0}, cfg);
  auto ctx = context_for(anchor, cfg, bk1.n);
  Rng rng(62);
  const auto out = global_phase(bk1, anchor, ctx, cfg, rng);
  CHECK_FALSE(out.improved);
  CHECK(out.outer_rounds == 1);
}

TEST_CASE("run_omffm on a convex toy: fronts coincide and are critical") {
  auto bk1 = get_problem("BK1");
  SolverConfig cfg;
  cfg.N = 10;
  cfg.seed = 5;
  const auto rep = run_omffm(bk1, cfg);
  CHECK(rep.local_calls >= 10);
  CHECK(rep.global_escapes == 0);  // local = global on convex problems
  CHECK(rep.pf.size() == rep.pff.size());

  for (const auto& e : rep.pff.entries) {
    auto dir = steepest_descent_direction(analytic_jacobian(bk1, e.x));
    CHECK(std::abs(dir.theta) < 1e-6);
  }
  // every PF point appears in PFF
  for (const auto& e : rep.pf.entries) {
    bool found = false;
    for (const auto& o : rep.pff.entries)
      found = found || distance(e.f, o.f) <= 1e-12;
    CHECK(found);
  }
}

TEST_CASE("zero evaluation budget yields empty archives and budget termination") {
  auto p = get_problem("P4a");
  SolverConfig cfg;
  cfg.eval_budget = 0;
  const auto rep = run_omffm(p, cfg);
  CHECK(rep.wpf.empty());
  CHECK(rep.wpff.empty());
  CHECK(rep.termination == Termination::budget);
}

TEST_CASE("identical seeds produce bit-identical archives") {
  auto a = get_problem("P5a");
  auto b = get_problem("P5a");
  SolverConfig cfg;
  cfg.N = 8;
  cfg.seed = 1234;
  const auto r1 = run_omffm(a, cfg);
  const auto r2 = run_omffm(b, cfg);
  REQUIRE(r1.wpf.size() == r2.wpf.size());
  for (std::size_t i = 0; i < r1.wpf.size(); ++i) {
    CHECK(r1.wpf.entries[i].x == r2.wpf.entries[i].x);
    CHECK(r1.wpf.entries[i].f == r2.wpf.entries[i].f);
  }
  REQUIRE(r1.wpff.size() == r2.wpff.size());
  for (std::size_t i = 0; i < r1.wpff.size(); ++i)
    CHECK(r1.wpff.entries[i].f == r2.wpff.entries[i].f);
  CHECK(r1.evals == r2.evals);
  CHECK(r1.global_escapes == r2.global_escapes);
}

TEST_CASE("anchor trajectories decrease strictly componentwise") {
  auto p = get_problem("P4a");
  SolverConfig cfg;
  cfg.N = 16;
  cfg.seed = 3;
  const auto rep = run_omffm(p, cfg);
  for (const auto& traj : rep.anchor_trajectories) {
    REQUIRE(!traj.empty());
    for (std::size_t k = 1; k < traj.size(); ++k) CHECK(strictly_dominates(traj[k], traj[k - 1]));
  }
  // report fronts are recomputable from the raw archives
  CHECK(nondominated_filter(rep.wpf).entries.size() == rep.pf.size());
  CHECK(nondominated_filter(rep.wpff).entries.size() == rep.pff.size());
}

TEST_CASE("outer rounds respect the geometric-reduction bound") {
  auto p = get_problem("P5a");
  SolverConfig cfg;
  cfg.N = 8;
  cfg.seed = 17;
  const auto rep = run_omffm(p, cfg);
  const int bound = static_cast<int>(
      std::ceil(std::log(kMuLFloor / cfg.mu_ini) / std::log(cfg.mu_hat)));
  CHECK(rep.max_outer_rounds <= bound);
  CHECK(rep.max_outer_rounds >= 1);
}

TEST_CASE("every evaluated point stays inside the box") {
  auto p = get_problem("P4a");
  auto raw = p.objectives;
  const Box box = p.box;
  long long audited = 0;
  bool all_feasible = true;
  p.objectives = [raw, box, &audited, &all_feasible](const DecisionVector& y) {
    ++audited;
    all_feasible = all_feasible && box.contains(y);
    return raw(y);
  };
  SolverConfig cfg;
  cfg.N = 6;
  cfg.seed = 9;
  const auto rep = run_omffm(p, cfg);
  CHECK(audited >= rep.evals);  // jacobians evaluate through the same closure
  CHECK(all_feasible);
}

TEST_CASE("PFF on P4a is not strictly dominated by the reference front") {
  auto p = get_problem("P4a");
  SolverConfig cfg;
  cfg.N = 20;
  cfg.seed = 10;
  const auto rep = run_omffm(p, cfg);
  REQUIRE(!rep.pff.empty());
  const auto reference = sample_true_front(p, 500);
  for (const auto& e : rep.pff.entries)
    for (const auto& r : reference) {
      const bool beyond_tol = r[0] < e.f[0] - 1e-3 && r[1] < e.f[1] - 1e-3;
      CHECK_FALSE(beyond_tol);
    }
}

TEST_CASE("local_only baseline mirrors the local phase") {
  auto p = get_problem("BK1");
  SolverConfig cfg;
  cfg.N = 5;
  cfg.seed = 2;
  const auto rep = run_local_only(p, cfg);
  CHECK(rep.global_escapes == 0);
  CHECK(rep.wpf.size() == rep.wpff.size());
  CHECK(rep.local_calls == 5);
}
