#pragma once

#include <cmath>
#include <functional>
#include <vector>

#include "omffm/problem.hpp"
#include "omffm/rng.hpp"

namespace testutil {

using omffm::DecisionVector;
using omffm::Jacobian;
using omffm::MopProblem;
using omffm::ObjectiveVector;

// Independent O(k^2) reference for the non-dominated filter. Deliberately
// avoids the library's dominance helpers.
inline std::vector<ObjectiveVector> brute_force_front(const std::vector<ObjectiveVector>& pts) {
  std::vector<ObjectiveVector> out;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    bool dominated = false;
    for (std::size_t j = 0; j < pts.size() && !dominated; ++j) {
      if (j == i) continue;
      bool leq = true, neq = false;
      for (std::size_t k = 0; k < pts[i].size(); ++k) {
        if (pts[j][k] > pts[i][k]) leq = false;
        if (pts[j][k] != pts[i][k]) neq = true;
      }
      dominated = leq && neq;
    }
    if (dominated) continue;
    bool duplicate = false;
    for (const auto& kept : out) {
      bool same = true;
      for (std::size_t k = 0; k < pts[i].size() && same; ++k)
        same = std::abs(kept[k] - pts[i][k]) <= 1e-10;
      if (same) {
        duplicate = true;
        break;
      }
    }
    if (!duplicate) out.push_back(pts[i]);
  }
  return out;
}

inline MopProblem make_custom(std::string name, int n, int m, omffm::Box box,
                              std::function<ObjectiveVector(const DecisionVector&)> f,
                              std::function<Jacobian(const DecisionVector&)> jac = nullptr) {
  MopProblem p;
  p.name = std::move(name);
  p.n = n;
  p.m = m;
  p.box = std::move(box);
  p.objectives = std::move(f);
  p.jacobian = std::move(jac);
  return p;
}

inline DecisionVector random_interior_point(const omffm::Box& box, omffm::Rng& rng,
                                            double margin_frac = 0.02) {
  DecisionVector y(box.dim());
  for (std::size_t i = 0; i < y.size(); ++i) {
    const double margin = margin_frac * box.range(i);
    y[i] = rng.uniform(box.lower[i] + margin, box.upper[i] - margin);
  }
  return y;
}

inline double frobenius(const Jacobian& a) {
  double s = 0.0;
  for (const auto& row : a)
    for (double v : row) s += v * v;
  return std::sqrt(s);
}

inline double jacobian_rel_error(const Jacobian& a, const Jacobian& b) {
  double diff = 0.0;
  for (std::size_t j = 0; j < a.size(); ++j)
    for (std::size_t i = 0; i < a[j].size(); ++i) {
      const double d = a[j][i] - b[j][i];
      diff += d * d;
    }
  return std::sqrt(diff) / std::max(1.0, frobenius(a));
}

// Least-squares slope of log|v| against log h.
inline double loglog_slope(const std::vector<double>& hs, const std::vector<double>& vs) {
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  const double n = static_cast<double>(hs.size());
  for (std::size_t i = 0; i < hs.size(); ++i) {
    const double x = std::log(hs[i]);
    const double y = std::log(std::abs(vs[i]));
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

}  // namespace testutil
