#include "omffm/core.hpp"

#include <algorithm>
#include <cmath>

namespace omffm {

namespace {

void require_same_size(const ObjectiveVector& a, const ObjectiveVector& b) {
  if (a.size() != b.size())
    throw std::invalid_argument("objective vectors have mismatched dimensions: " +
                                std::to_string(a.size()) + " vs " + std::to_string(b.size()));
}

bool near_duplicate(const ObjectiveVector& a, const ObjectiveVector& b, double tol) {
  if (a.size() != b.size()) return false;
  for (std::size_t j = 0; j < a.size(); ++j)
    if (std::abs(a[j] - b[j]) > tol) return false;
  return true;
}

}  // namespace

bool Box::contains(const DecisionVector& y) const {
  if (y.size() != dim()) return false;
  for (std::size_t i = 0; i < y.size(); ++i)
    if (!(y[i] >= lower[i] && y[i] <= upper[i])) return false;
  return true;
}

double Box::diagonal() const {
  double s = 0.0;
  for (std::size_t i = 0; i < dim(); ++i) s += range(i) * range(i);
  return std::sqrt(s);
}

DecisionVector Box::midpoint() const {
  DecisionVector mid(dim());
  for (std::size_t i = 0; i < dim(); ++i) mid[i] = 0.5 * (lower[i] + upper[i]);
  return mid;
}

void Box::validate() const {
  if (lower.size() != upper.size() || lower.empty())
    throw std::invalid_argument("box bounds have mismatched or empty dimensions");
  for (std::size_t i = 0; i < dim(); ++i) {
    if (!std::isfinite(lower[i]) || !std::isfinite(upper[i]))
      throw std::invalid_argument("box bounds must be finite");
    if (!(lower[i] < upper[i]))
      throw std::invalid_argument("box has empty interior at coordinate " + std::to_string(i));
  }
}

bool strictly_dominates(const ObjectiveVector& a, const ObjectiveVector& b) {
  require_same_size(a, b);
  for (std::size_t j = 0; j < a.size(); ++j)
    if (!(a[j] < b[j])) return false;
  return true;
}

bool dominates(const ObjectiveVector& a, const ObjectiveVector& b) {
  require_same_size(a, b);
  bool strict = false;
  for (std::size_t j = 0; j < a.size(); ++j) {
    if (a[j] > b[j]) return false;
    if (a[j] < b[j]) strict = true;
  }
  return strict;
}

void ParetoArchive::append(DecisionVector x, ObjectiveVector f) {
  for (const auto& e : entries)
    if (near_duplicate(e.f, f, dedup_tol)) return;
  entries.push_back({std::move(x), std::move(f)});
}

ParetoArchive nondominated_filter(const ParetoArchive& archive) {
  ParetoArchive out;
  out.filtered = true;
  const auto& in = archive.entries;
  for (std::size_t i = 0; i < in.size(); ++i) {
    bool dominated = false;
    for (std::size_t j = 0; j < in.size() && !dominated; ++j)
      dominated = (j != i) && dominates(in[j].f, in[i].f);
    if (!dominated) out.append(in[i].x, in[i].f);
  }
  return out;
}

std::vector<ObjectiveVector> nondominated_filter(const std::vector<ObjectiveVector>& points) {
  ParetoArchive tmp;
  tmp.entries.reserve(points.size());
  for (const auto& f : points) tmp.entries.push_back({{}, f});
  ParetoArchive filtered = nondominated_filter(tmp);
  std::vector<ObjectiveVector> out;
  out.reserve(filtered.size());
  for (auto& e : filtered.entries) out.push_back(std::move(e.f));
  return out;
}

DecisionVector project_to_box(const DecisionVector& y, const Box& box) {
  if (y.size() != box.dim())
    throw std::invalid_argument("point dimension does not match box dimension");
  DecisionVector out(y.size());
  for (std::size_t i = 0; i < y.size(); ++i) {
    if (!std::isfinite(y[i]))
      throw std::invalid_argument("cannot project a non-finite coordinate");
    out[i] = std::clamp(y[i], box.lower[i], box.upper[i]);
  }
  return out;
}

bool on_boundary(const DecisionVector& y, const Box& box, double tol) {
  for (std::size_t i = 0; i < box.dim(); ++i)
    if (y[i] - box.lower[i] <= tol || box.upper[i] - y[i] <= tol) return true;
  return false;
}

bool on_boundary(const DecisionVector& y, const Box& box) {
  for (std::size_t i = 0; i < box.dim(); ++i) {
    const double tol = 1e-8 * box.range(i);
    if (y[i] - box.lower[i] <= tol || box.upper[i] - y[i] <= tol) return true;
  }
  return false;
}

double squared_distance(const DecisionVector& a, const DecisionVector& b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double d = a[i] - b[i];
    s += d * d;
  }
  return s;
}

double distance(const DecisionVector& a, const DecisionVector& b) {
  return std::sqrt(squared_distance(a, b));
}

}  // namespace omffm
