#pragma once

#include <optional>

#include "qcl/problem.hpp"

namespace qcl {

/// (omega_max dt)^P DeltaO / 2, the bound on any order-P mixed partial.
double derivative_bound(int order, double omega_max, double dt, double delta_o);

/// K = omega_max dt DeltaO / 2.
double lipschitz_bound(double omega_max, double dt, double delta_o);

/// K_c = (omega_max dt)^2 DeltaO / 2, valid around critical points.
double critical_point_bound(double omega_max, double dt, double delta_o);

/// Minimum L1 separation of two controls whose J values differ by delta_j.
double min_distance(double delta_j, double omega_max, double dt, double delta_o);

/// Lagrange remainder bound over the box: (u_max L)^{P+1} DeltaO / (2 (P+1)!),
/// evaluated in log space so large orders do not overflow.
double taylor_error_bound(int order, double u_max_l, double delta_o = 1.0);

/// Smallest P with taylor_error_bound(P) <= epsilon.
int min_taylor_order(double epsilon, double u_max_l, double delta_o = 1.0);

/// T >= 1 / (u_max omega_max), the time needed to reach two orthogonal
/// targets (hence a lower bound under full controllability).
double qsl_lower_bound(double u_max, double omega_max);

/// Taxicab ball certified around a depth-delta_j minimum and the resulting
/// density bound; the classifier sign of log(2 e beta / L) marks the
/// exponentially suppressed regime.
struct TrapBall {
  double beta = 0.0;
  double l_c = 0.0;
  double volume = 0.0;
  double density_bound = 0.0;
  double log_classifier = 0.0;
  bool exponentially_suppressed = false;
};
TrapBall trap_ball(double delta_j, int n_steps, double budget_l);

/// (omega_max dt)^2 DeltaO / 2, bounding the mean diagonal Hessian element.
double ruggedness_bound(double omega_max, double dt, double delta_o);

/// Mean over supplied minima and timesteps of the FD second derivative;
/// absent when no minima are supplied.
std::optional<double> ruggedness_estimate(const LandscapeProblem& problem,
                                          const std::vector<VectorXd>& minima,
                                          double fd_step = 0.0);

/// One audited bound: analytic value, optional empirical probe, and the
/// verdict empirical <= analytic * slack. Soft (informational) checks never
/// fail a run.
struct BoundReport {
  std::string name;
  double analytic = 0.0;
  std::optional<double> empirical;
  double slack = 1.0;
  bool satisfied = true;
  bool hard = true;
  std::string note;
  int samples = 0;
  std::uint64_t seed = 0;

  static BoundReport check(std::string name, double analytic, double empirical, double slack,
                           bool hard, int samples, std::uint64_t seed, std::string note = {});
  static BoundReport value_only(std::string name, double analytic, std::string note = {});
};

}  // namespace qcl
