#include "omffm/local_descent.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

namespace omffm {

namespace {

// Euclidean projection onto the probability simplex (sort-based).
std::vector<double> project_simplex(std::vector<double> v) {
  std::vector<double> u = v;
  std::sort(u.begin(), u.end(), std::greater<>());
  double cum = 0.0, tau = 0.0;
  for (std::size_t i = 0; i < u.size(); ++i) {
    cum += u[i];
    const double t = (cum - 1.0) / static_cast<double>(i + 1);
    if (u[i] - t > 0.0) tau = t;
  }
  for (auto& x : v) x = std::max(x - tau, 0.0);
  return v;
}

std::vector<double> combine(const Jacobian& jac, const std::vector<double>& lambda) {
  const std::size_t n = jac.front().size();
  std::vector<double> g(n, 0.0);
  for (std::size_t j = 0; j < jac.size(); ++j)
    for (std::size_t i = 0; i < n; ++i) g[i] += lambda[j] * jac[j][i];
  return g;
}

double dual_value(const Jacobian& jac, const std::vector<double>& lambda) {
  const auto g = combine(jac, lambda);
  double s = 0.0;
  for (double v : g) s += v * v;
  return 0.5 * s;
}

// Solves a small dense linear system in place; returns false on a near-zero pivot.
bool solve_dense(std::vector<std::vector<double>> A, std::vector<double>& b) {
  const std::size_t k = A.size();
  for (std::size_t c = 0; c < k; ++c) {
    std::size_t piv = c;
    for (std::size_t r = c + 1; r < k; ++r)
      if (std::abs(A[r][c]) > std::abs(A[piv][c])) piv = r;
    if (std::abs(A[piv][c]) < 1e-14) return false;
    std::swap(A[c], A[piv]);
    std::swap(b[c], b[piv]);
    for (std::size_t r = c + 1; r < k; ++r) {
      const double f = A[r][c] / A[c][c];
      for (std::size_t q = c; q < k; ++q) A[r][q] -= f * A[c][q];
      b[r] -= f * b[c];
    }
  }
  for (std::size_t c = k; c-- > 0;) {
    double s = b[c];
    for (std::size_t q = c + 1; q < k; ++q) s -= A[c][q] * b[q];
    b[c] = s / A[c][c];
  }
  return true;
}

// Equality-KKT solve of the dual restricted to a support set. Returns an
// empty vector when the subsystem is singular or leaves the simplex.
std::vector<double> solve_on_support(const std::vector<std::vector<double>>& gram,
                                     const std::vector<int>& support) {
  const std::size_t k = support.size();
  std::vector<std::vector<double>> A(k + 1, std::vector<double>(k + 1, 0.0));
  std::vector<double> b(k + 1, 0.0);
  for (std::size_t a = 0; a < k; ++a) {
    for (std::size_t c = 0; c < k; ++c) A[a][c] = gram[support[a]][support[c]];
    A[a][k] = 1.0;
    A[k][a] = 1.0;
  }
  b[k] = 1.0;
  if (!solve_dense(A, b)) return {};
  for (std::size_t a = 0; a < k; ++a)
    if (b[a] < -1e-12) return {};
  b.resize(k);
  return b;
}

}  // namespace

DescentDirection steepest_descent_direction(const Jacobian& jac) {
  if (jac.empty() || jac.front().empty())
    throw std::invalid_argument("steepest_descent_direction: empty jacobian");
  const std::size_t m = jac.size();
  const std::size_t n = jac.front().size();
  for (const auto& row : jac) {
    if (row.size() != n) throw std::invalid_argument("ragged jacobian");
    for (double v : row)
      if (!std::isfinite(v)) throw std::invalid_argument("non-finite jacobian entry");
  }

  std::vector<std::vector<double>> gram(m, std::vector<double>(m, 0.0));
  double trace = 0.0;
  for (std::size_t a = 0; a < m; ++a)
    for (std::size_t b = a; b < m; ++b) {
      double s = std::inner_product(jac[a].begin(), jac[a].end(), jac[b].begin(), 0.0);
      gram[a][b] = gram[b][a] = s;
      if (a == b) trace += s;
    }

  std::vector<double> lambda(m, 1.0 / static_cast<double>(m));
  if (trace > 0.0) {
    const double step = 1.0 / trace;
    for (int it = 0; it < 500; ++it) {
      std::vector<double> grad(m, 0.0);
      for (std::size_t a = 0; a < m; ++a)
        for (std::size_t b = 0; b < m; ++b) grad[a] += gram[a][b] * lambda[b];
      std::vector<double> next(m);
      for (std::size_t a = 0; a < m; ++a) next[a] = lambda[a] - step * grad[a];
      next = project_simplex(std::move(next));
      double delta = 0.0;
      for (std::size_t a = 0; a < m; ++a) delta = std::max(delta, std::abs(next[a] - lambda[a]));
      lambda = std::move(next);
      if (delta <= 1e-12) break;
    }
    // Exact polish on the support found by the projected-gradient pass.
    std::vector<int> support;
    for (std::size_t a = 0; a < m; ++a)
      if (lambda[a] > 1e-12) support.push_back(static_cast<int>(a));
    while (!support.empty()) {
      auto cand = solve_on_support(gram, support);
      if (!cand.empty()) {
        std::vector<double> polished(m, 0.0);
        for (std::size_t a = 0; a < support.size(); ++a)
          polished[support[a]] = std::max(cand[a], 0.0);
        if (dual_value(jac, polished) <= dual_value(jac, lambda) + 1e-16) lambda = polished;
        break;
      }
      // Singular or infeasible subsystem: drop the smallest-weight index.
      std::size_t drop = 0;
      for (std::size_t a = 1; a < support.size(); ++a)
        if (lambda[support[a]] < lambda[support[drop]]) drop = a;
      support.erase(support.begin() + drop);
    }
  }

  // Re-normalize against round-off.
  double sum = std::accumulate(lambda.begin(), lambda.end(), 0.0);
  if (sum > 0.0)
    for (auto& v : lambda) v /= sum;

  DescentDirection out;
  out.multipliers = lambda;
  auto g = combine(jac, lambda);
  out.direction.resize(n);
  double dd = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    out.direction[i] = -g[i];
    dd += g[i] * g[i];
  }
  double theta = -std::numeric_limits<double>::infinity();
  for (std::size_t j = 0; j < m; ++j) {
    const double gd = std::inner_product(jac[j].begin(), jac[j].end(), out.direction.begin(), 0.0);
    theta = std::max(theta, gd);
  }
  theta += 0.5 * dd;
  if (theta > 0.0 && theta < 1e-12) theta = 0.0;
  out.theta = theta;
  return out;
}

DescentDirection constrained_descent_direction(const Jacobian& jac, const DecisionVector& y,
                                               const Box& box) {
  const std::size_t m = jac.size();
  const std::size_t n = y.size();
  if (m == 0 || jac.front().size() != n)
    throw std::invalid_argument("constrained_descent_direction: shape mismatch");

  auto d_of = [&](const std::vector<double>& lambda) {
    std::vector<double> d(n);
    for (std::size_t i = 0; i < n; ++i) {
      double g = 0.0;
      for (std::size_t j = 0; j < m; ++j) g += lambda[j] * jac[j][i];
      d[i] = std::clamp(-g, box.lower[i] - y[i], box.upper[i] - y[i]);
    }
    return d;
  };
  auto primal = [&](const std::vector<double>& d) {
    double dd = 0.0;
    for (double v : d) dd += v * v;
    double worst = -std::numeric_limits<double>::infinity();
    for (std::size_t j = 0; j < m; ++j)
      worst = std::max(worst, std::inner_product(jac[j].begin(), jac[j].end(), d.begin(), 0.0));
    return worst + 0.5 * dd;
  };

  std::vector<double> lambda(m, 1.0 / static_cast<double>(m));
  if (m == 2) {
    // dual is concave in the single weight; its derivative is monotone, so
    // bisection pins the maximizer regardless of gradient scales
    auto slope = [&](double s) {
      const auto d = d_of({1.0 - s, s});
      double v = 0.0;
      for (std::size_t i = 0; i < n; ++i) v += (jac[1][i] - jac[0][i]) * d[i];
      return v;
    };
    double lo = 0.0, hi = 1.0;
    if (slope(0.0) <= 0.0) hi = 0.0;
    else if (slope(1.0) >= 0.0) lo = 1.0;
    else
      for (int it = 0; it < 100; ++it) {
        const double mid = 0.5 * (lo + hi);
        (slope(mid) > 0.0 ? lo : hi) = mid;
      }
    const double s = 0.5 * (lo + hi);
    lambda = {1.0 - s, s};
  } else if (m > 2) {
    double scale = 0.0;
    for (const auto& row : jac)
      scale += std::inner_product(row.begin(), row.end(), row.begin(), 0.0);
    if (scale > 0.0) {
      const double step = 1.0 / scale;
      for (int it = 0; it < 2000; ++it) {
        const auto d = d_of(lambda);
        std::vector<double> next(m);
        for (std::size_t j = 0; j < m; ++j)
          next[j] = lambda[j] +
                    step * std::inner_product(jac[j].begin(), jac[j].end(), d.begin(), 0.0);
        next = project_simplex(std::move(next));
        double delta = 0.0;
        for (std::size_t j = 0; j < m; ++j) delta = std::max(delta, std::abs(next[j] - lambda[j]));
        lambda = std::move(next);
        if (delta <= 1e-14) break;
      }
    }
  }

  // Keep the candidate with the best primal value; the zero direction caps
  // theta at 0 so a poorly conditioned dual can only make us stop early.
  DescentDirection out;
  out.multipliers = lambda;
  out.direction = d_of(lambda);
  out.theta = primal(out.direction);
  for (std::size_t j = 0; j < m; ++j) {
    std::vector<double> corner(m, 0.0);
    corner[j] = 1.0;
    auto d = d_of(corner);
    const double value = primal(d);
    if (value < out.theta) {
      out.theta = value;
      out.direction = std::move(d);
      out.multipliers = std::move(corner);
    }
  }
  if (out.theta >= 0.0) {
    out.theta = 0.0;
    out.direction.assign(n, 0.0);
  }
  return out;
}

namespace detail {

ArmijoOutcome armijo_backtrack_full(const MopProblem& problem, const DecisionVector& y,
                                    const ObjectiveVector& fy, const std::vector<double>& d,
                                    double theta, double c1, double beta0) {
  if (!(theta < 0.0)) throw std::invalid_argument("armijo_backtrack requires theta < 0");
  double dn = 0.0;
  for (double v : d) dn += v * v;
  if (!(dn > 0.0)) throw std::invalid_argument("armijo_backtrack requires a nonzero direction");

  double step = beta0;
  for (int k = 0; k <= kArmijoMaxBacktracks; ++k, step *= kArmijoRho) {
    DecisionVector z(y.size());
    for (std::size_t i = 0; i < y.size(); ++i) z[i] = y[i] + step * d[i];
    z = project_to_box(z, problem.box);
    ObjectiveVector fz = problem.evaluate(z);
    bool ok = true;
    for (std::size_t j = 0; j < fz.size() && ok; ++j)
      ok = fz[j] <= fy[j] + c1 * step * theta;
    if (ok) return {step, std::move(z), std::move(fz)};
  }
  return {};
}

}  // namespace detail

std::optional<double> armijo_backtrack(const MopProblem& problem, const DecisionVector& y,
                                       const std::vector<double>& d, double theta, double c1,
                                       double beta0) {
  const ObjectiveVector fy = problem.evaluate(y);
  auto out = detail::armijo_backtrack_full(problem, y, fy, d, theta, c1, beta0);
  if (out.z.empty()) return std::nullopt;
  return out.step;
}

namespace {

// Weak-efficiency polish: freeze one objective and descend the remaining ones
// over the coordinates its gradient does not touch, accepting a step only if
// the frozen value does not increase at all. Dominated slack along separable
// tail variables (the ZDT/P4/P5/P6 family) drains here without paying for it
// in the frozen objective, which the simultaneous-descent subproblem cannot
// do. No-op on problems without such coordinates.
bool weak_refine(const MopProblem& problem, const SolverConfig& cfg, DecisionVector& y,
                 ObjectiveVector& fy) {
  const int m = problem.m;
  if (m < 2) return false;
  bool any_move = false;
  for (int pass = 0; pass < 100; ++pass) {
    if (problem.evals() >= cfg.eval_budget) break;
    bool moved = false;
    const Jacobian jac = problem.jacobian_or_fd(y);
    for (int frozen = 0; frozen < m; ++frozen) {
      std::vector<std::size_t> coords;
      for (std::size_t i = 0; i < y.size(); ++i)
        if (std::abs(jac[frozen][i]) <= 1e-12) coords.push_back(i);
      if (coords.empty()) continue;

      // Objectives that cannot move over these coordinates join the frozen
      // set: either their reduced gradient vanishes, or every nonzero entry
      // is one-way blocked at a bound (then those coordinates get pinned and
      // the scan repeats). A blocked row would otherwise cap the max-based
      // subproblem at zero.
      std::vector<char> is_active(m, 0);
      for (int j = 0; j < m; ++j) is_active[j] = j != frozen;
      auto pinned_entry = [&](int j, std::size_t i) {
        const double g = jac[j][i];
        const double tol_lo = problem.box.lower[i] + 1e-12 * problem.box.range(i);
        const double tol_hi = problem.box.upper[i] - 1e-12 * problem.box.range(i);
        return (y[i] <= tol_lo && g > 0.0) || (y[i] >= tol_hi && g < 0.0);
      };
      for (int round = 0; round < m; ++round) {
        bool changed = false;
        for (int j = 0; j < m && !coords.empty(); ++j) {
          if (!is_active[j]) continue;
          double norm = 0.0;
          bool all_blocked = true;
          for (std::size_t c : coords) {
            norm += jac[j][c] * jac[j][c];
            if (std::abs(jac[j][c]) > 1e-12 && !pinned_entry(j, c)) all_blocked = false;
          }
          if (std::sqrt(norm) <= 1e-12) {
            is_active[j] = 0;
            changed = true;
          } else if (all_blocked) {
            is_active[j] = 0;
            changed = true;
            std::vector<std::size_t> kept;
            for (std::size_t c : coords)
              if (!(std::abs(jac[j][c]) > 1e-12 && pinned_entry(j, c))) kept.push_back(c);
            coords = std::move(kept);
          }
        }
        if (!changed) break;
      }
      Jacobian reduced;
      for (int j = 0; j < m; ++j) {
        if (!is_active[j]) continue;
        std::vector<double> row(coords.size());
        for (std::size_t c = 0; c < coords.size(); ++c) row[c] = jac[j][coords[c]];
        reduced.push_back(std::move(row));
      }
      if (reduced.empty() || coords.empty()) continue;

      Box sub;
      DecisionVector ys(coords.size());
      for (std::size_t c = 0; c < coords.size(); ++c) {
        sub.lower.push_back(problem.box.lower[coords[c]]);
        sub.upper.push_back(problem.box.upper[coords[c]]);
        ys[c] = y[coords[c]];
      }
      const auto dir = constrained_descent_direction(reduced, ys, sub);
      if (!(dir.theta < -1e-14)) continue;

      double beta = 1.0;
      for (int bt = 0; bt <= kArmijoMaxBacktracks; ++bt, beta *= kArmijoRho) {
        DecisionVector z = y;
        for (std::size_t c = 0; c < coords.size(); ++c)
          z[coords[c]] =
              std::clamp(ys[c] + beta * dir.direction[c], sub.lower[c], sub.upper[c]);
        const ObjectiveVector fz = problem.evaluate(z);
        bool ok = true;
        for (int j = 0; j < m && ok; ++j)
          ok = is_active[j] ? fz[j] <= fy[j] + kArmijoC1 * beta * dir.theta
                            : fz[j] <= fy[j];
        if (ok) {
          y = std::move(z);
          fy = fz;
          moved = true;
          any_move = true;
          break;
        }
      }
    }
    if (!moved) break;
  }
  return any_move;
}

}  // namespace

LocalDescentResult local_weak_efficient(const MopProblem& problem, const DecisionVector& y0,
                                        const SolverConfig& cfg0,
                                        std::vector<LocalStep>* trace) {
  if (!problem.box.contains(y0))
    throw std::domain_error(problem.name + ": local descent start outside the box");
  const SolverConfig cfg = cfg0.resolved(problem.n);
  const double crit_tol = criticality_tolerance(problem.n);
  const long long evals0 = problem.evals();

  DecisionVector y = y0;
  ObjectiveVector fy = problem.evaluate(y);
  LocalDescentResult res;
  res.iterations = 0;

  weak_refine(problem, cfg, y, fy);

  // Steps follow the box-aware subproblem on row-normalized gradients: the
  // normalization keeps one steep objective from monopolizing the direction,
  // and bound awareness keeps the search from jamming against active faces.
  // The exact unconstrained subproblem issues the final certificate.
  constexpr double kScaledStepTol = 1e-7;
  auto scaled_rows = [](Jacobian rows) {
    for (auto& row : rows) {
      double nrm = 0.0;
      for (double v : row) nrm += v * v;
      nrm = std::sqrt(nrm);
      if (nrm >= 1e-12)
        for (auto& v : row) v /= nrm;
    }
    return rows;
  };
  Jacobian jac = problem.jacobian_or_fd(y);
  while (true) {
    const auto dir = constrained_descent_direction(scaled_rows(jac), y, problem.box);
    double dnorm = 0.0;
    for (double v : dir.direction) dnorm += v * v;
    dnorm = std::sqrt(dnorm);
    if (std::abs(dir.theta) < crit_tol && dnorm <= kScaledStepTol) break;
    if (res.iterations >= cfg.max_local_iters) break;
    if (problem.evals() >= cfg.eval_budget) break;
    if (!(dir.theta < 0.0)) break;
    auto am = detail::armijo_backtrack_full(problem, y, fy, dir.direction, dir.theta);
    if (am.z.empty()) break;  // no acceptable step: treat y as locally converged
    if (trace) trace->push_back({dir.theta, am.step, fy, am.fz});
    y = std::move(am.z);
    fy = std::move(am.fz);
    ++res.iterations;
    jac = problem.jacobian_or_fd(y);
  }

  if (weak_refine(problem, cfg, y, fy)) jac = problem.jacobian_or_fd(y);

  const auto certificate = steepest_descent_direction(jac);
  double resid = 0.0;
  for (double v : certificate.direction) resid += v * v;
  res.converged =
      std::abs(certificate.theta) < crit_tol && std::sqrt(resid) <= kLocalResidualTol;
  res.point = std::move(y);
  res.objectives = std::move(fy);
  res.multipliers = certificate.multipliers;
  res.criticality = certificate.theta;
  res.evals = problem.evals() - evals0;
  return res;
}

}  // namespace omffm
