#pragma once

#include <functional>
#include <limits>

#include "qcl/problem.hpp"
#include "qcl/spectrum.hpp"

namespace qcl {

using Objective = std::function<double(const VectorXd&)>;

/// Axis-aligned box in control space. Rectangle size is measured in the L1
/// metric (sum of half-widths) because that is the metric of the certified
/// Lipschitz bound.
struct Rectangle {
  VectorXd center;
  VectorXd half_widths;
  double value = 0.0;      // objective at the center, as minimized
  double l1_radius = 0.0;
  int id = 0;
};

struct PrunedRecord {
  Rectangle rect;
  double incumbent_at_prune = 0.0;  // as minimized
  double margin = 0.0;              // value - k_bar r - (incumbent - eps); >= 0 when pruned
};

struct OptimizerTrace {
  std::vector<VectorXd> points;          // evaluation order
  std::vector<double> values;            // original objective scale
  std::vector<double> incumbent_history; // internal (minimized) scale, non-increasing
  std::vector<PrunedRecord> pruned;
  bool maximize = false;
  double eps_prune = 0.0;
  double k_bar = std::numeric_limits<double>::infinity();
  int iterations = 0;
};

struct DirectConfig {
  int budget = 1000;
  bool maximize = false;
  bool prune = true;
  /// Certified Lipschitz constant; infinity disables pruning regardless of
  /// the prune flag.
  double k_bar = std::numeric_limits<double>::infinity();
  /// Pruning slack; negative means the 1e-4 * DeltaO default when built from
  /// a problem, or 1e-4 for raw objectives.
  double eps_prune = -1.0;
};

struct OptimizeResult {
  VectorXd best_point;
  double best_value = 0.0;  // original scale
  OptimizerTrace trace;
};

/// DIRECT over [-u_max, u_max]^n_dims: trisection along the longest side
/// (ties to the lowest index), hull selection on (l1_radius, value) pairs,
/// and certified Lipschitz pruning applied after hull selection.
OptimizeResult direct_optimize(const Objective& objective, int n_dims, double u_max,
                               const DirectConfig& config);

/// Landscape wrapper; k_bar defaults to the problem's Lipschitz bound and
/// eps_prune to 1e-4 * DeltaO.
OptimizeResult direct_optimize(const LandscapeProblem& problem, DirectConfig config);

struct PruneDecision {
  bool prunable = false;
  double margin = 0.0;
};

/// True iff no point of the rectangle can improve on incumbent - eps_prune
/// under |J(x) - J(center)| <= k_bar |x - center|_1 (minimization scale).
PruneDecision pruning_certificate(const Rectangle& rect, double incumbent, double k_bar,
                                  double eps_prune);

/// Exhaustive evaluation of every pruned rectangle on a per-dimension grid;
/// returns the number of points violating the certificate.
int audit_pruned_rectangles(const Objective& objective, const OptimizerTrace& trace,
                            int grid_per_dim, double tol = 1e-9);

struct GridSearchResult {
  VectorXd best_point;
  double best_value = 0.0;
  std::size_t evaluations = 0;
};

/// Regular grid including the box corners (resolution >= 2), plain argmin /
/// argmax oracle.
GridSearchResult grid_search(const Objective& objective, int n_dims, double u_max, int resolution,
                             bool maximize = false,
                             std::size_t element_budget = kDefaultElementBudget);
GridSearchResult grid_search(const LandscapeProblem& problem, int resolution, bool maximize = false,
                             std::size_t element_budget = kDefaultElementBudget);

}  // namespace qcl
