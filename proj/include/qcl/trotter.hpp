#pragma once

#include "qcl/problem.hpp"

namespace qcl {

/// Order of the Lie-Trotter product splitting of each timestep exponential.
struct TrotterConfig {
  int order = 1;  // n >= 1
};

/// Single-timestep approximant U_n(u) = (e^{-i dt/n H_d} e^{-i dt/n u H_c})^n
/// in the lab frame.
MatrixXcd trotter_step(const HamiltonianModel& model, TrotterConfig cfg, double dt, double u);

/// J_n(u) = <psi| U_n^dagger(u) O U_n(u) |psi>.
double evaluate_Jn(const LandscapeProblem& problem, TrotterConfig cfg, const VectorXd& u);

/// Precomputed control-eigenbasis machinery for J_n. Everything is cached in
/// the frame rotated by V, where the control factor is diagonal and the step
/// approximant is (W E(u))^n with W = V e^{-i dt/n H_d} V^dagger. Evaluating
/// J_n for one control value then costs one diagonal scaling, one dense
/// matrix product and an O(log n) matrix power.
class TrotterEvaluator {
 public:
  TrotterEvaluator(const LandscapeProblem& problem, TrotterConfig cfg);

  /// (W E(u))^n, the step approximant in the V frame.
  MatrixXcd step_matrix(double u) const;

  /// J_n at an arbitrary control vector (one step_matrix per entry).
  double evaluate(const VectorXd& u) const;

  /// J_n using caller-supplied cached step matrices, one per timestep.
  double evaluate_cached(const std::vector<const MatrixXcd*>& steps) const;

  double observed(const VectorXcd& frame_state) const;
  const VectorXcd& psi_frame() const { return psi_frame_; }

  int dim() const { return dim_; }
  int n_steps() const { return n_steps_; }
  const VectorXd& eigvals() const { return eigvals_; }

 private:
  int dim_;
  int n_steps_;
  int order_;
  double dt_;
  VectorXd eigvals_;
  MatrixXcd w_;             // V e^{-i dt/n H_d} V^dagger
  VectorXcd psi_frame_;     // V psi
  MatrixXcd obs_frame_;     // V O V^dagger (empty for fidelity problems)
  VectorXcd target_frame_;  // V chi for fidelity problems
  bool fidelity_;
};

/// m^k by binary powering; unitary inputs keep this stable for any k.
MatrixXcd matrix_power(MatrixXcd m, int k);

}  // namespace qcl
