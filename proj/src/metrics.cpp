#include "omffm/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "omffm/log.hpp"

namespace omffm {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double euclid(const ObjectiveVector& a, const ObjectiveVector& b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double d = a[i] - b[i];
    s += d * d;
  }
  return std::sqrt(s);
}

bool matches(const ObjectiveVector& a, const ObjectiveVector& b) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i)
    if (std::abs(a[i] - b[i]) > ParetoArchive::dedup_tol) return false;
  return true;
}

// Area dominated by 2-D points (already clipped to <= ref) up to ref.
double sweep_area_2d(std::vector<ObjectiveVector> pts, double ref1, double ref2) {
  pts = nondominated_filter(pts);
  std::sort(pts.begin(), pts.end(),
            [](const ObjectiveVector& a, const ObjectiveVector& b) { return a[0] < b[0]; });
  double area = 0.0;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    const double right = (i + 1 < pts.size()) ? pts[i + 1][0] : ref1;
    area += (right - pts[i][0]) * (ref2 - pts[i][1]);
  }
  return area;
}

}  // namespace

double purity(const std::vector<ObjectiveVector>& front,
              const std::vector<std::vector<ObjectiveVector>>& all_fronts) {
  if (front.empty()) return 0.0;
  std::vector<ObjectiveVector> pool;
  for (const auto& f : all_fronts) pool.insert(pool.end(), f.begin(), f.end());
  const auto reference = nondominated_filter(pool);
  std::size_t surviving = 0;
  for (const auto& p : front) {
    for (const auto& r : reference) {
      if (matches(p, r)) {
        ++surviving;
        break;
      }
    }
  }
  return static_cast<double>(surviving) / static_cast<double>(front.size());
}

double gamma_spread(const std::vector<ObjectiveVector>& front) {
  if (front.size() < 2) return kInf;
  const std::size_t m = front.front().size();
  if (m != 2 && m != 3)
    throw std::invalid_argument("gamma_spread is defined for 2 or 3 objectives");
  double gamma = 0.0;
  const std::size_t axes = (m == 2) ? 1 : 3;  // m = 2: sorting by f1 fixes the order
  for (std::size_t axis = 0; axis < axes; ++axis) {
    std::vector<ObjectiveVector> pts = front;
    std::sort(pts.begin(), pts.end(), [axis](const ObjectiveVector& a, const ObjectiveVector& b) {
      return a[axis] < b[axis];
    });
    for (std::size_t i = 1; i < pts.size(); ++i)
      gamma = std::max(gamma, euclid(pts[i - 1], pts[i]));
  }
  return gamma;
}

double delta_spread(const std::vector<ObjectiveVector>& front,
                    const std::pair<ObjectiveVector, ObjectiveVector>& extremes) {
  if (front.size() < 2) return kInf;
  if (front.front().size() != 2)
    throw std::invalid_argument("delta_spread is defined for 2 objectives");
  std::vector<ObjectiveVector> pts = front;
  std::sort(pts.begin(), pts.end(),
            [](const ObjectiveVector& a, const ObjectiveVector& b) { return a[0] < b[0]; });
  const ObjectiveVector& lo = (extremes.first[0] <= extremes.second[0]) ? extremes.first
                                                                        : extremes.second;
  const ObjectiveVector& hi = (extremes.first[0] <= extremes.second[0]) ? extremes.second
                                                                        : extremes.first;

  const double d0 = euclid(lo, pts.front());
  const double dN = euclid(hi, pts.back());
  std::vector<double> gaps;
  gaps.reserve(pts.size() - 1);
  for (std::size_t i = 1; i < pts.size(); ++i) gaps.push_back(euclid(pts[i - 1], pts[i]));
  const double mean = std::accumulate(gaps.begin(), gaps.end(), 0.0) / gaps.size();
  double dev = 0.0;
  for (double g : gaps) dev += std::abs(g - mean);
  const double denom = d0 + dN + static_cast<double>(gaps.size()) * mean;
  if (denom == 0.0) return 0.0;  // all points and extremes coincide
  return (d0 + dN + dev) / denom;
}

double hypervolume(const std::vector<ObjectiveVector>& front, const ObjectiveVector& reference) {
  const std::size_t m = reference.size();
  if (m != 2 && m != 3)
    throw std::invalid_argument("hypervolume is implemented for 2 or 3 objectives");
  std::vector<ObjectiveVector> pts;
  for (const auto& p : front) {
    if (p.size() != m) throw std::invalid_argument("hypervolume: arity mismatch");
    bool inside = true;
    for (std::size_t j = 0; j < m && inside; ++j) inside = p[j] <= reference[j];
    if (inside)
      pts.push_back(p);
    else
      OMFFM_LOG_WARN("hypervolume: clipping a point beyond the reference");
  }
  if (pts.empty()) return 0.0;

  if (m == 2) return sweep_area_2d(std::move(pts), reference[0], reference[1]);

  // m = 3: slice along sorted f3 levels and sweep each slab in 2-D.
  pts = nondominated_filter(pts);
  std::sort(pts.begin(), pts.end(),
            [](const ObjectiveVector& a, const ObjectiveVector& b) { return a[2] < b[2]; });
  std::vector<double> levels;
  for (const auto& p : pts)
    if (levels.empty() || p[2] > levels.back()) levels.push_back(p[2]);

  double volume = 0.0;
  for (std::size_t t = 0; t < levels.size(); ++t) {
    std::vector<ObjectiveVector> slab;
    for (const auto& p : pts)
      if (p[2] <= levels[t]) slab.push_back({p[0], p[1]});
    const double height = ((t + 1 < levels.size()) ? levels[t + 1] : reference[2]) - levels[t];
    volume += sweep_area_2d(std::move(slab), reference[0], reference[1]) * height;
  }
  return volume;
}

std::vector<ProfileCurve> performance_profile(const std::vector<std::vector<double>>& values,
                                              const std::vector<std::vector<bool>>& failure_mask,
                                              const std::vector<std::string>& solver_names) {
  const std::size_t solvers = solver_names.size();
  if (values.size() != failure_mask.size())
    throw std::invalid_argument("performance_profile: values/mask shape mismatch");

  std::vector<std::vector<double>> ratios;  // per kept problem
  for (std::size_t p = 0; p < values.size(); ++p) {
    if (values[p].size() != solvers || failure_mask[p].size() != solvers)
      throw std::invalid_argument("performance_profile: row width mismatch");
    double best = kInf;
    for (std::size_t s = 0; s < solvers; ++s) {
      if (failure_mask[p][s]) continue;
      if (!(values[p][s] > 0.0) || !std::isfinite(values[p][s]))
        throw std::invalid_argument("performance_profile: values must be positive and finite");
      best = std::min(best, values[p][s]);
    }
    if (!std::isfinite(best)) {
      OMFFM_LOG_WARN("performance_profile: dropping problem row %zu (all solvers failed)", p);
      continue;
    }
    std::vector<double> row(solvers);
    for (std::size_t s = 0; s < solvers; ++s)
      row[s] = failure_mask[p][s] ? kInf : values[p][s] / best;
    ratios.push_back(std::move(row));
  }

  std::vector<double> taus{1.0};
  for (const auto& row : ratios)
    for (double r : row)
      if (std::isfinite(r)) taus.push_back(r);
  std::sort(taus.begin(), taus.end());
  taus.erase(std::unique(taus.begin(), taus.end()), taus.end());

  std::vector<ProfileCurve> curves(solvers);
  const double denom = ratios.empty() ? 1.0 : static_cast<double>(ratios.size());
  for (std::size_t s = 0; s < solvers; ++s) {
    curves[s].solver = solver_names[s];
    curves[s].taus = taus;
    curves[s].rhos.reserve(taus.size());
    for (double tau : taus) {
      std::size_t within = 0;
      for (const auto& row : ratios)
        if (row[s] <= tau) ++within;
      curves[s].rhos.push_back(static_cast<double>(within) / denom);
    }
  }
  return curves;
}

}  // namespace omffm
