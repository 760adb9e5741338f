#include "qcl/direct.hpp"

#include <algorithm>
#include <cmath>
#include <map>

namespace qcl {

PruneDecision pruning_certificate(const Rectangle& rect, double incumbent, double k_bar,
                                  double eps_prune) {
  PruneDecision d;
  if (std::isinf(k_bar)) return d;  // no certificate without a finite constant
  double floor_in_rect = rect.value - k_bar * rect.l1_radius;
  d.margin = floor_in_rect - (incumbent - eps_prune);
  d.prunable = d.margin >= 0.0;
  return d;
}

namespace {

struct SizeGroup {
  double size;
  double best_value;
  std::vector<int> members;  // rect indices attaining best_value
};

// Potentially-optimal rectangles: vertices of the lower convex hull of
// (size, best value) from the global-minimum size outward, collinear points
// kept. Ties at a size within a tiny absolute+relative band all qualify.
std::vector<int> potentially_optimal(const std::vector<Rectangle>& rects,
                                     const std::vector<char>& active) {
  std::vector<int> order;
  for (std::size_t i = 0; i < rects.size(); ++i)
    if (active[i]) order.push_back(static_cast<int>(i));
  if (order.empty()) return {};

  std::sort(order.begin(), order.end(), [&](int a, int b) {
    if (rects[a].l1_radius != rects[b].l1_radius) return rects[a].l1_radius < rects[b].l1_radius;
    return rects[a].id < rects[b].id;
  });

  std::vector<SizeGroup> groups;
  for (int idx : order) {
    double size = rects[idx].l1_radius;
    if (!groups.empty() && size <= groups.back().size * (1.0 + 1e-12) + 1e-300) {
      SizeGroup& g = groups.back();
      double v = rects[idx].value;
      double tol = 1e-13 * (1.0 + std::abs(g.best_value));
      if (v < g.best_value - tol) {
        g.best_value = v;
        g.members.assign(1, idx);
      } else if (v <= g.best_value + tol) {
        g.members.push_back(idx);
      }
    } else {
      groups.push_back({size, rects[idx].value, {idx}});
    }
  }

  // Lower convex hull over (size, best_value), sizes ascending.
  std::vector<int> hull;  // indices into groups
  for (int gi = 0; gi < static_cast<int>(groups.size()); ++gi) {
    while (hull.size() >= 2) {
      const SizeGroup& o = groups[hull[hull.size() - 2]];
      const SizeGroup& a = groups[hull.back()];
      const SizeGroup& b = groups[gi];
      double cross = (a.size - o.size) * (b.best_value - o.best_value) -
                     (a.best_value - o.best_value) * (b.size - o.size);
      if (cross < 0.0) hull.pop_back();
      else break;
    }
    hull.push_back(gi);
  }

  // Drop hull vertices left of the global minimum (they lose for every K > 0).
  double fmin = groups[hull[0]].best_value;
  std::size_t min_pos = 0;
  for (std::size_t h = 0; h < hull.size(); ++h)
    if (groups[hull[h]].best_value <= fmin) {
      fmin = groups[hull[h]].best_value;
      min_pos = h;
    }

  std::vector<int> selected;
  for (std::size_t h = min_pos; h < hull.size(); ++h)
    for (int idx : groups[hull[h]].members) selected.push_back(idx);
  return selected;
}

}  // namespace

OptimizeResult direct_optimize(const Objective& objective, int n_dims, double u_max,
                               const DirectConfig& config) {
  if (n_dims < 1) throw std::invalid_argument("direct_optimize: need at least one dimension");
  if (!(u_max > 0.0)) throw std::invalid_argument("direct_optimize: zero-volume box");
  if (config.budget < 1) throw std::invalid_argument("direct_optimize: budget must be >= 1");

  const double sign = config.maximize ? -1.0 : 1.0;
  const double eps_prune = config.eps_prune >= 0.0 ? config.eps_prune : 1e-4;

  OptimizeResult result;
  OptimizerTrace& trace = result.trace;
  trace.maximize = config.maximize;
  trace.eps_prune = eps_prune;
  trace.k_bar = config.k_bar;

  std::vector<Rectangle> rects;
  std::vector<char> active;
  double incumbent = std::numeric_limits<double>::infinity();
  VectorXd incumbent_point = VectorXd::Zero(n_dims);
  int evals = 0;
  int next_id = 0;

  auto evaluate = [&](const VectorXd& u) {
    double raw = objective(u);
    double v = sign * raw;
    ++evals;
    trace.points.push_back(u);
    trace.values.push_back(raw);
    if (v < incumbent) {
      incumbent = v;
      incumbent_point = u;
    }
    trace.incumbent_history.push_back(incumbent);
    return v;
  };

  Rectangle root;
  root.center = VectorXd::Zero(n_dims);
  root.half_widths = VectorXd::Constant(n_dims, u_max);
  root.value = evaluate(root.center);
  root.l1_radius = root.half_widths.sum();
  root.id = next_id++;
  rects.push_back(root);
  active.push_back(1);

  const bool pruning = config.prune && std::isfinite(config.k_bar);
  const double min_width = 1e-12 * u_max;

  while (evals < config.budget) {
    std::vector<int> selected = potentially_optimal(rects, active);
    if (selected.empty()) break;

    std::vector<int> to_split;
    for (int idx : selected) {
      if (pruning) {
        PruneDecision d = pruning_certificate(rects[idx], incumbent, config.k_bar, eps_prune);
        if (d.prunable) {
          trace.pruned.push_back({rects[idx], incumbent, d.margin});
          active[idx] = 0;
          continue;
        }
      }
      if (rects[idx].half_widths.maxCoeff() <= min_width) {
        active[idx] = 0;  // too small to subdivide further
        continue;
      }
      to_split.push_back(idx);
    }

    ++trace.iterations;
    if (to_split.empty()) {
      bool any_active = std::any_of(active.begin(), active.end(), [](char c) { return c != 0; });
      if (!any_active) break;
      continue;
    }

    for (int idx : to_split) {
      if (evals >= config.budget) break;
      int axis = 0;
      for (int d = 1; d < n_dims; ++d)
        if (rects[idx].half_widths(d) > rects[idx].half_widths(axis)) axis = d;
      double offset = 2.0 * rects[idx].half_widths(axis) / 3.0;

      rects[idx].half_widths(axis) /= 3.0;
      rects[idx].l1_radius = rects[idx].half_widths.sum();

      for (double s : {-1.0, 1.0}) {
        if (evals >= config.budget) break;
        Rectangle child;
        child.center = rects[idx].center;
        child.center(axis) += s * offset;
        child.half_widths = rects[idx].half_widths;
        child.value = evaluate(child.center);
        child.l1_radius = child.half_widths.sum();
        child.id = next_id++;
        rects.push_back(std::move(child));
        active.push_back(1);
      }
    }
  }

  result.best_point = incumbent_point;
  result.best_value = sign * incumbent;
  return result;
}

OptimizeResult direct_optimize(const LandscapeProblem& problem, DirectConfig config) {
  if (std::isinf(config.k_bar) && config.prune) config.k_bar = problem.lipschitz_constant();
  if (config.eps_prune < 0.0) config.eps_prune = 1e-4 * problem.observable_span;
  Objective f = [&problem](const VectorXd& u) { return evaluate_landscape(problem, u); };
  return direct_optimize(f, problem.grid.n_steps, problem.grid.u_max, config);
}

int audit_pruned_rectangles(const Objective& objective, const OptimizerTrace& trace,
                            int grid_per_dim, double tol) {
  if (grid_per_dim < 2) throw std::invalid_argument("audit_pruned_rectangles: grid too coarse");
  const double sign = trace.maximize ? -1.0 : 1.0;
  int violations = 0;
  for (const PrunedRecord& rec : trace.pruned) {
    const int n_dims = static_cast<int>(rec.rect.center.size());
    std::size_t total = 1;
    for (int d = 0; d < n_dims; ++d) total *= static_cast<std::size_t>(grid_per_dim);
    VectorXd u(n_dims);
    for (std::size_t flat = 0; flat < total; ++flat) {
      std::size_t rem = flat;
      for (int d = 0; d < n_dims; ++d) {
        int g = static_cast<int>(rem % grid_per_dim);
        rem /= grid_per_dim;
        u(d) = rec.rect.center(d) +
               rec.rect.half_widths(d) * (2.0 * g / (grid_per_dim - 1) - 1.0);
      }
      double v = sign * objective(u);
      if (v < rec.incumbent_at_prune - trace.eps_prune - tol) ++violations;
    }
  }
  return violations;
}

GridSearchResult grid_search(const Objective& objective, int n_dims, double u_max, int resolution,
                             bool maximize, std::size_t element_budget) {
  if (resolution < 2) throw std::invalid_argument("grid_search: resolution must be >= 2");
  std::size_t total = 1;
  for (int d = 0; d < n_dims; ++d) {
    if (total > element_budget / static_cast<std::size_t>(resolution))
      throw CapacityError("grid_search: resolution^N exceeds the element budget");
    total *= static_cast<std::size_t>(resolution);
  }
  const double sign = maximize ? -1.0 : 1.0;
  GridSearchResult best;
  best.best_value = std::numeric_limits<double>::infinity();
  best.evaluations = total;
  VectorXd u(n_dims);
  for (std::size_t flat = 0; flat < total; ++flat) {
    std::size_t rem = flat;
    for (int d = 0; d < n_dims; ++d) {
      int g = static_cast<int>(rem % resolution);
      rem /= resolution;
      u(d) = u_max * (2.0 * g / (resolution - 1) - 1.0);
    }
    double v = sign * objective(u);
    if (v < best.best_value) {
      best.best_value = v;
      best.best_point = u;
    }
  }
  best.best_value *= sign;
  return best;
}

GridSearchResult grid_search(const LandscapeProblem& problem, int resolution, bool maximize,
                             std::size_t element_budget) {
  Objective f = [&problem](const VectorXd& u) { return evaluate_landscape(problem, u); };
  return grid_search(f, problem.grid.n_steps, problem.grid.u_max, resolution, maximize,
                     element_budget);
}

}  // namespace qcl
