#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace omffm {

// Decision and objective vectors are plain double vectors; lengths are fixed
// by the owning problem (n and m respectively).
using DecisionVector = std::vector<double>;
using ObjectiveVector = std::vector<double>;

// Jacobian rows are objective gradients: row j is the gradient of f_j, so the
// shape is m x n.
using Jacobian = std::vector<std::vector<double>>;

// An objective evaluation produced a non-finite value; carries the probe point.
class EvalError : public std::runtime_error {
 public:
  EvalError(const std::string& msg, DecisionVector point)
      : std::runtime_error(msg), point_(std::move(point)) {}
  const DecisionVector& point() const noexcept { return point_; }

 private:
  DecisionVector point_;
};

// The problem does not provide the requested capability (analytic jacobian,
// true-front sampler, ...). Callers are expected to fall back or skip.
class CapabilityError : public std::logic_error {
  using std::logic_error::logic_error;
};

struct Box {
  DecisionVector lower;
  DecisionVector upper;

  std::size_t dim() const { return lower.size(); }
  double range(std::size_t i) const { return upper[i] - lower[i]; }
  bool contains(const DecisionVector& y) const;
  double diagonal() const;
  DecisionVector midpoint() const;
  // Throws std::invalid_argument unless lower[i] < upper[i] for all i.
  void validate() const;
};

// a strictly better than b in every component.
bool strictly_dominates(const ObjectiveVector& a, const ObjectiveVector& b);
// a <= b componentwise and a != b.
bool dominates(const ObjectiveVector& a, const ObjectiveVector& b);

struct ArchiveEntry {
  DecisionVector x;
  ObjectiveVector f;
};

// Collection of (decision, objective) records. WPF/WPFF accumulate raw
// anchors; PF/PFF are filtered views with `filtered` set.
struct ParetoArchive {
  std::vector<ArchiveEntry> entries;
  bool filtered = false;

  // Objective vectors closer than this (inf-norm) count as duplicates.
  static constexpr double dedup_tol = 1e-10;

  std::size_t size() const { return entries.size(); }
  bool empty() const { return entries.empty(); }
  // Appends unless a near-duplicate objective vector is already present.
  void append(DecisionVector x, ObjectiveVector f);
};

// Entries not dominated by any other entry, in stable order, deduplicated.
ParetoArchive nondominated_filter(const ParetoArchive& archive);
std::vector<ObjectiveVector> nondominated_filter(const std::vector<ObjectiveVector>& points);

// Componentwise clamp into the box. Idempotent.
DecisionVector project_to_box(const DecisionVector& y, const Box& box);

// True when some coordinate is within tol of its bound. The default overload
// uses the scale-aware tolerance 1e-8 * (upper[i] - lower[i]) per coordinate.
bool on_boundary(const DecisionVector& y, const Box& box, double tol);
bool on_boundary(const DecisionVector& y, const Box& box);

double squared_distance(const DecisionVector& a, const DecisionVector& b);
double distance(const DecisionVector& a, const DecisionVector& b);

}  // namespace omffm
