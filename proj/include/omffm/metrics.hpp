#pragma once

#include <string>
#include <vector>

#include "omffm/core.hpp"

namespace omffm {

// Degenerate fronts (< 2 points) report spreads as +infinity, serialized as
// the string "inf".
struct MetricsReport {
  double purity = 0.0;
  double delta_spread = 0.0;
  double gamma_spread = 0.0;
  double hypervolume = 0.0;
  long long evals = 0;
};

// Fraction of `front` surviving in the non-dominated filtration of the union
// of all fronts (membership up to ParetoArchive::dedup_tol). 0 for an empty
// front.
double purity(const std::vector<ObjectiveVector>& front,
              const std::vector<std::vector<ObjectiveVector>>& all_fronts);

// Largest hole in the front. m = 2: max consecutive Euclidean gap after
// sorting by f1. m = 3: for each objective axis, sort by that coordinate and
// take the max consecutive Euclidean gap; return the max over the three axes.
double gamma_spread(const std::vector<ObjectiveVector>& front);

// Bi-objective spread Delta = (d0 + dN + sum_i |di - dbar|) /
// (d0 + dN + (N-1) dbar), with di the consecutive gaps of the f1-sorted
// front, dbar their mean, and d0/dN the distances from the reference
// extremes to the first/last point.
double delta_spread(const std::vector<ObjectiveVector>& front,
                    const std::pair<ObjectiveVector, ObjectiveVector>& extremes);

// Exact hypervolume for m in {2, 3}. Points not componentwise <= reference
// are clipped out (with a warning); dominated points contribute nothing.
double hypervolume(const std::vector<ObjectiveVector>& front, const ObjectiveVector& reference);

struct ProfileCurve {
  std::string solver;
  std::vector<double> taus;  // >= 1, sorted
  std::vector<double> rhos;  // in [0, 1], non-decreasing
};

// Dolan-More profiles. values[p][s] > 0 where failure_mask[p][s] is false;
// lower is better. Rows with every solver failed are dropped with a warning.
std::vector<ProfileCurve> performance_profile(const std::vector<std::vector<double>>& values,
                                              const std::vector<std::vector<bool>>& failure_mask,
                                              const std::vector<std::string>& solver_names);

}  // namespace omffm
