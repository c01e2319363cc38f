#include <doctest.h>

#include <cmath>
#include <numbers>

#include "omffm/filled_function.hpp"
#include "omffm/local_descent.hpp"
#include "omffm/rng.hpp"
#include "test_util.hpp"

using namespace omffm;

namespace {

// The worked bi-objective instance used across the kernel tests:
// f1 = y1^2 + y2^2, f2 = (y1-1)^2 + y2^2, anchor (0,0), mu = 0.5.
MopProblem worked_problem() {
  return testutil::make_custom(
      "worked", 2, 2, Box{{-3, -3}, {3, 3}},
      [](const DecisionVector& y) {
        return ObjectiveVector{y[0] * y[0] + y[1] * y[1],
                               (y[0] - 1) * (y[0] - 1) + y[1] * y[1]};
      },
      [](const DecisionVector& y) {
        return Jacobian{{2 * y[0], 2 * y[1]}, {2 * (y[0] - 1), 2 * y[1]}};
      });
}

FilledContext worked_context(const MopProblem& p, double mu = 0.5) {
  FilledContext ctx;
  ctx.anchor = {0, 0};
  ctx.anchor_objectives = p.objectives({0, 0});
  ctx.mu = mu;
  ctx.kappa = 1e-4 * std::sqrt(2.0);
  return ctx;
}

}  // namespace

TEST_CASE("kernel values match the hand computations exactly") {
  CHECK(phi(0.5, 2.0) == -4.0);
  CHECK(phi(0.5, -1.0) == -2.0);
  CHECK(phi(0.7, 0.0) == 0.0);
  CHECK(phi_prime(0.5, 2.0) == -6.0);
  CHECK(phi_prime(0.5, -1.0) == 4.0);
  CHECK(phi_prime(0.7, 0.0) == 0.0);
  CHECK_THROWS_AS((void)phi(0.0, 1.0), std::invalid_argument);
  CHECK_THROWS_AS((void)phi(-0.2, 1.0), std::invalid_argument);
  CHECK_THROWS_AS((void)phi_prime(0.0, 1.0), std::invalid_argument);
}

TEST_CASE("kernel is C1 at the kink: branch mismatch orders") {
  const double nu = 0.37;
  std::vector<double> hs{1e-2, 1e-3, 1e-4, 1e-5, 1e-6};
  std::vector<double> value_gap, slope_gap;
  for (double h : hs) {
    value_gap.push_back(phi(nu, h) - phi(nu, -h));
    slope_gap.push_back(phi_prime(nu, h) - phi_prime(nu, -h));
  }
  CHECK(testutil::loglog_slope(hs, value_gap) == doctest::Approx(2.0).epsilon(0.1));
  CHECK(testutil::loglog_slope(hs, slope_gap) == doctest::Approx(1.0).epsilon(0.1));
}

TEST_CASE("filled value: anchor, worked instance, flat region") {
  auto p = worked_problem();
  auto ctx = worked_context(p);

  CHECK(filled_value(ctx, p, {0, 0}) == ObjectiveVector{0, 0});

  const auto F = filled_value(ctx, p, {1, 0});
  CHECK(F[0] == doctest::Approx(-1.5).epsilon(1e-15));
  CHECK(F[1] == doctest::Approx(-3.0).epsilon(1e-15));

  // all objectives equal at y and anchor: only the distance term remains
  auto flat = testutil::make_custom("flat", 2, 2, Box{{-3, -3}, {3, 3}},
                                    [](const DecisionVector&) {
                                      return ObjectiveVector{1.0, 2.0};
                                    });
  FilledContext fctx;
  fctx.anchor = {0.5, 0.5};
  fctx.anchor_objectives = {1.0, 2.0};
  fctx.mu = 0.25;
  const auto Ff = filled_value(fctx, flat, {1.5, 0.5});
  CHECK(Ff[0] == doctest::Approx(-1.0).epsilon(1e-15));
  CHECK(Ff[1] == doctest::Approx(-1.0).epsilon(1e-15));
}

TEST_CASE("filled gradient: anchor rows vanish; worked rows match") {
  auto p = worked_problem();
  auto ctx = worked_context(p);

  const auto G0 = filled_gradient(ctx, p, {0, 0});
  CHECK(G0[0] == std::vector<double>{0, 0});
  CHECK(G0[1] == std::vector<double>{0, 0});

  const auto G = filled_gradient(ctx, p, {1, 0});
  // row 1: -2(1,0) - 3*0.5*1^2 * (2,0) = (-5, 0)
  CHECK(G[0][0] == doctest::Approx(-5.0).epsilon(1e-15));
  CHECK(G[0][1] == doctest::Approx(0.0));
  // row 2: -2(1,0) - (2/0.5)(-1) * (0,0) = (-2, 0)
  CHECK(G[1][0] == doctest::Approx(-2.0).epsilon(1e-15));
  CHECK(G[1][1] == doctest::Approx(0.0));
}

TEST_CASE("filled gradient matches finite differences away from kinks") {
  Rng rng(51);
  for (const char* name : {"P4a", "P5a", "DTLZ2n2", "BK1"}) {
    auto p = get_problem(name);
    SolverConfig cfg;
    // anchor from a local descent so the context is realistic
    auto anchor = local_weak_efficient(p, testutil::random_interior_point(p.box, rng), cfg);
    FilledContext ctx;
    ctx.anchor = anchor.point;
    ctx.anchor_objectives = anchor.objectives;
    ctx.mu = 0.01;

    int checked = 0;
    while (checked < 30) {
      const auto y = testutil::random_interior_point(p.box, rng);
      const auto fy = p.objectives(y);
      bool away_from_kinks = true;
      for (int j = 0; j < p.m && away_from_kinks; ++j)
        away_from_kinks = std::abs(fy[j] - ctx.anchor_objectives[j]) > 1e-4;
      if (!away_from_kinks) continue;
      ++checked;

      const auto Ga = filled_gradient(ctx, p, y);
      // central differences of filled_value, h scaled per coordinate
      Jacobian Gf(p.m, std::vector<double>(p.n));
      for (int i = 0; i < p.n; ++i) {
        const double h = 1e-6 * std::max(1.0, std::abs(y[i]));
        DecisionVector up = y, dn = y;
        up[i] += h;
        dn[i] -= h;
        const auto Fu = filled_value(ctx, p, up);
        const auto Fd = filled_value(ctx, p, dn);
        for (int j = 0; j < p.m; ++j) Gf[j][i] = (Fu[j] - Fd[j]) / (2.0 * h);
      }
      CHECK_MESSAGE(testutil::jacobian_rel_error(Ga, Gf) < 1e-5, name);
    }
  }
}

TEST_CASE("mu_lower hand instances") {
  // x = 0, ybar = 1, s = 1; f1 = y^2 puts index 1 in P2, f2 = (y-0.8)^2 in Q2
  auto p = testutil::make_custom(
      "mu1", 1, 2, Box{{-2}, {2}},
      [](const DecisionVector& y) {
        return ObjectiveVector{y[0] * y[0], (y[0] - 0.8) * (y[0] - 0.8)};
      },
      [](const DecisionVector& y) {
        return Jacobian{{2 * y[0]}, {2 * (y[0] - 0.8)}};
      });
  FilledContext ctx;
  ctx.anchor = {0.0};
  ctx.anchor_objectives = p.objectives({0.0});
  CHECK(mu_lower(ctx, p, {0.0}, {1.0}, {1.0}) == doctest::Approx(0.24001).epsilon(1e-12));
  CHECK(mu_upper(ctx, p, {0.0}, {1.0}, {1.0}) == 1.0);  // P3 empty

  // f2 = (y-2)^2: s grad f2(1) = -2 < 0 puts the index in Q3 instead
  auto q = testutil::make_custom(
      "mu2", 1, 2, Box{{-3}, {3}},
      [](const DecisionVector& y) {
        return ObjectiveVector{y[0] * y[0], (y[0] - 2.0) * (y[0] - 2.0)};
      },
      [](const DecisionVector& y) {
        return Jacobian{{2 * y[0]}, {2 * (y[0] - 2.0)}};
      });
  FilledContext qctx;
  qctx.anchor = {0.0};
  qctx.anchor_objectives = q.objectives({0.0});
  CHECK(mu_lower(qctx, q, {0.0}, {1.0}, {1.0}) == doctest::Approx(1e-5));

  // reset rule: a formula value at or above mu_U collapses to the floor
  FilledContext capped = ctx;
  capped.mu_U = 0.2;
  capped.mu = 0.1;
  CHECK(mu_lower(capped, p, {0.0}, {1.0}, {1.0}) == doctest::Approx(1e-5));

  CHECK_THROWS_AS((void)mu_lower(ctx, p, {0.0}, {1.0}, {-1.0}), std::invalid_argument);
}

TEST_CASE("mu_upper hand instance: sin(pi y) + y") {
  auto p = testutil::make_custom(
      "mu3", 1, 1, Box{{-2}, {2}},
      [](const DecisionVector& y) {
        return ObjectiveVector{std::sin(std::numbers::pi * y[0]) + y[0]};
      },
      [](const DecisionVector& y) {
        return Jacobian{{std::numbers::pi * std::cos(std::numbers::pi * y[0]) + 1.0}};
      });
  FilledContext ctx;
  ctx.anchor = {0.0};
  ctx.anchor_objectives = p.objectives({0.0});
  const double expected = 2.0 / (3.0 * (std::numbers::pi - 1.0));
  CHECK(mu_upper(ctx, p, {0.0}, {1.0}, {1.0}) == doctest::Approx(expected).epsilon(1e-12));
  CHECK_THROWS_AS((void)mu_upper(ctx, p, {0.0}, {1.0}, {0.0}), std::invalid_argument);
}

TEST_CASE("mu bounds are scale invariant in s for singleton index sets") {
  auto p = testutil::make_custom(
      "mu4", 1, 2, Box{{-2}, {2}},
      [](const DecisionVector& y) {
        return ObjectiveVector{y[0] * y[0], (y[0] - 0.8) * (y[0] - 0.8)};
      },
      [](const DecisionVector& y) {
        return Jacobian{{2 * y[0]}, {2 * (y[0] - 0.8)}};
      });
  FilledContext ctx;
  ctx.anchor = {0.0};
  ctx.anchor_objectives = p.objectives({0.0});
  const auto b1 = mu_bounds(ctx, p, {0.0}, {1.0}, {1.0});
  const auto b2 = mu_bounds(ctx, p, {0.0}, {1.0}, {2.5});
  CHECK(b1.lower == doctest::Approx(b2.lower).epsilon(1e-12));
  CHECK(b1.upper == doctest::Approx(b2.upper).epsilon(1e-12));
}

TEST_CASE("descent check: flat region, near-anchor failure, worked instance") {
  auto flat = testutil::make_custom("flat2", 2, 2, Box{{-3, -3}, {3, 3}},
                                    [](const DecisionVector&) {
                                      return ObjectiveVector{1.0, 2.0};
                                    },
                                    [](const DecisionVector&) {
                                      return Jacobian{{0, 0}, {0, 0}};
                                    });
  FilledContext fctx;
  fctx.anchor = {0, 0};
  fctx.anchor_objectives = {1.0, 2.0};
  fctx.kappa = 1e-4 * std::sqrt(2.0);
  // gradient is -2(y - anchor): passes iff 2 ||y - anchor|| >= kappa
  CHECK(descent_check(fctx, flat, {0.1, 0.0}).ok);
  const auto near = descent_check(fctx, flat, {1e-6, 0.0});
  CHECK_FALSE(near.ok);
  CHECK(near.failing_index == 0);
  CHECK_THROWS_AS((void)descent_check(fctx, flat, {0.0, 0.0}), std::invalid_argument);

  auto p = worked_problem();
  auto ctx = worked_context(p);
  const auto chk = descent_check(ctx, p, {1, 0});
  CHECK(chk.ok);
  CHECK(chk.failing_index == -1);
}

TEST_CASE("mu reductions") {
  FilledContext ctx;
  ctx.mu = 0.01;
  ctx.mu_hat = 0.005;
  ctx.l = 1;
  const auto once = reduce_mu(ctx);
  CHECK(once.mu == doctest::Approx(5e-5).epsilon(1e-15));

  const auto twice = reduce_mu(reduce_mu(ctx));
  const auto squared = reduce_mu(ctx, 2);
  CHECK(twice.mu == doctest::Approx(squared.mu).epsilon(1e-15));

  Rng rng(52);
  for (int k = 0; k < 50; ++k) {
    FilledContext c;
    c.mu = rng.uniform(1e-6, 1.0);
    c.mu_hat = rng.uniform(1e-3, 0.999);
    c.l = 1 + static_cast<int>(rng.index(4));
    CHECK(reduce_mu(c).mu < c.mu);  // contraction
  }
  CHECK_THROWS_AS((void)reduce_mu(ctx, 0), std::invalid_argument);
}

TEST_CASE("F1 property: some filled component is negative off the anchor") {
  Rng rng(53);
  SolverConfig cfg;
  for (const char* name : {"P4a", "DTLZ2n2"}) {
    auto p = get_problem(name);
    for (int a = 0; a < 4; ++a) {
      auto anchor = local_weak_efficient(p, testutil::random_interior_point(p.box, rng), cfg);
      FilledContext ctx;
      ctx.anchor = anchor.point;
      ctx.anchor_objectives = anchor.objectives;
      ctx.mu = cfg.mu_ini;
      for (int s = 0; s < 100; ++s) {
        DecisionVector y(p.n);
        for (int i = 0; i < p.n; ++i)
          y[i] = anchor.point[i] + rng.uniform(-ctx.epsilon, ctx.epsilon);
        y = project_to_box(y, p.box);
        if (y == anchor.point) continue;
        const auto F = filled_value(ctx, p, y);
        bool some_negative = false;
        for (double v : F) some_negative = some_negative || v < 0.0;
        CHECK(some_negative);
      }
    }
  }
}

TEST_CASE("F2 property: midpoint of the admissible interval yields descent") {
  Rng rng(54);
  SolverConfig cfg;
  auto p = get_problem("P4a");
  auto anchor = local_weak_efficient(p, {0.9, 0.5}, cfg);
  FilledContext ctx;
  ctx.anchor = anchor.point;
  ctx.anchor_objectives = anchor.objectives;

  int tested = 0;
  while (tested < 200) {
    const auto y = testutil::random_interior_point(p.box, rng);
    if (distance(y, anchor.point) < 1e-6) continue;
    const auto fy = p.objectives(y);
    bool in_b1 = false;  // some objective at or above the anchor value
    for (int j = 0; j < p.m; ++j) in_b1 = in_b1 || fy[j] >= anchor.objectives[j];
    if (!in_b1) continue;

    std::vector<double> s(p.n);
    const double nrm = distance(y, anchor.point);
    for (int i = 0; i < p.n; ++i) s[i] = (y[i] - anchor.point[i]) / nrm;

    const auto bounds = mu_bounds(ctx, p, anchor.point, y, s);
    // admissible interval exists only when the adaptive value kept the
    // theoretical bound (no reset) and sits strictly below the upper bound
    if (bounds.reset || !(bounds.lower < bounds.upper)) continue;
    ++tested;

    FilledContext probe = ctx;
    probe.mu = 0.5 * (bounds.lower + bounds.upper);
    const auto G = filled_gradient(probe, p, y);
    for (int j = 0; j < p.m; ++j) {
      double sg = 0.0;
      for (int i = 0; i < p.n; ++i) sg += s[i] * G[j][i];
      CHECK(sg < 0.0);
    }
  }
}

TEST_CASE("anchor is a strict componentwise maximizer over the rising set") {
  Rng rng(55);
  auto p = get_problem("P5a");
  SolverConfig cfg;
  auto anchor = local_weak_efficient(p, {0.6, 0.6}, cfg);
  FilledContext ctx;
  ctx.anchor = anchor.point;
  ctx.anchor_objectives = anchor.objectives;
  ctx.mu = 0.02;
  for (int s = 0; s < 300; ++s) {
    const auto y = testutil::random_interior_point(p.box, rng);
    if (y == anchor.point) continue;
    const auto fy = p.objectives(y);
    const auto F = filled_value_from(ctx, fy, y);
    for (int j = 0; j < p.m; ++j)
      if (fy[j] >= anchor.objectives[j]) CHECK(F[j] < 0.0);
  }
}
