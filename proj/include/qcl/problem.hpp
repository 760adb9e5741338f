#pragma once

#include <optional>

#include "qcl/hamiltonian.hpp"

namespace qcl {

/// Uniform time grid plus the control box. T is always n_steps * dt and is
/// never stored independently.
struct ControlGrid {
  int n_steps = 1;
  double dt = 1.0;
  double u_max = 1.0;

  static ControlGrid from_dt(int n_steps, double dt, double u_max);
  static ControlGrid from_total_time(int n_steps, double total_time, double u_max);

  double total_time() const { return n_steps * dt; }
  /// Dimensionless time-energy budget L = omega_max * T.
  double budget(const HamiltonianModel& model) const { return model.omega_max * total_time(); }
};

/// Model + grid + initial state + observable. For fidelity problems the
/// target is kept so J can be evaluated as |<chi|psi(T)>|^2; the observable
/// span and sup-norm are computed once at construction (needed by every
/// derivative/Lipschitz bound without re-diagonalizing).
struct LandscapeProblem {
  HamiltonianModel model;
  ControlGrid grid;
  VectorXcd initial;
  MatrixXcd observable;
  std::optional<VectorXcd> target;   // set for fidelity problems
  double observable_span = 0.0;      // Delta O
  double observable_norm = 0.0;      // ||O||_inf

  static LandscapeProblem fidelity(HamiltonianModel model, ControlGrid grid, VectorXcd psi,
                                   VectorXcd chi);
  static LandscapeProblem with_observable(HamiltonianModel model, ControlGrid grid, VectorXcd psi,
                                          MatrixXcd observable);

  double lipschitz_constant() const;        // omega_max dt DeltaO / 2
  double derivative_bound(int order) const; // (omega_max dt)^P DeltaO / 2
};

/// Final state U(u_N)...U(u_1) psi(0); each step exponential is computed by
/// Hermitian eigendecomposition of H_d + u H_c, exact to roundoff.
VectorXcd propagate(const LandscapeProblem& problem, const VectorXd& u);

/// J(u) = <psi(T)| O |psi(T)>.
double evaluate_landscape(const LandscapeProblem& problem, const VectorXd& u);

struct FdResult {
  double value = 0.0;
  double step = 0.0;
  int order = 0;
  bool cancellation_warning = false;
};

/// Central finite-difference estimate of a mixed partial derivative of J.
/// multi_index lists timestep indices with repetition (e.g. {2,2} for the
/// second derivative along step 2); order P = multi_index.size() <= 4.
/// Truncation error is O(step^2); step <= 0 selects the default
/// 1e-3*max(1,|u|_inf) for P <= 2 and 1e-2*max(1,|u|_inf) for P in {3,4}.
FdResult fd_derivative(const LandscapeProblem& problem, const VectorXd& u,
                       const std::vector<int>& multi_index, double step = 0.0);

/// Control parametrization u = R v with columns normalized to unit L1 norm,
/// so the landscape bounds transfer verbatim to the reduced landscape.
struct LinearParametrization {
  MatrixXd matrix;  // N x N_c, columns L1-normalized

  explicit LinearParametrization(MatrixXd r);
  int n_params() const { return static_cast<int>(matrix.cols()); }
  VectorXd apply(const VectorXd& v) const;
};

}  // namespace qcl
