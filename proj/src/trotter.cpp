#include "qcl/trotter.hpp"

#include <cmath>

namespace qcl {

MatrixXcd matrix_power(MatrixXcd m, int k) {
  const int dim = static_cast<int>(m.rows());
  MatrixXcd result = MatrixXcd::Identity(dim, dim);
  while (k > 0) {
    if (k & 1) result = result * m;
    k >>= 1;
    if (k) m = m * m;
  }
  return result;
}

TrotterEvaluator::TrotterEvaluator(const LandscapeProblem& problem, TrotterConfig cfg)
    : dim_(problem.model.dim),
      n_steps_(problem.grid.n_steps),
      order_(cfg.order),
      dt_(problem.grid.dt),
      eigvals_(problem.model.eigvals),
      fidelity_(problem.target.has_value()) {
  if (order_ < 1) throw std::invalid_argument("TrotterConfig: order must be >= 1");
  const MatrixXcd& v = problem.model.eigvecs;
  const Complex mi_frac(0.0, -dt_ / order_);

  Eigen::SelfAdjointEigenSolver<MatrixXcd> es(problem.model.drift);
  if (es.info() != Eigen::Success) throw std::runtime_error("drift eigendecomposition failed");
  MatrixXcd exp_drift = es.eigenvectors() *
                        (mi_frac * es.eigenvalues().cast<Complex>().array()).exp().matrix().asDiagonal() *
                        es.eigenvectors().adjoint();
  w_ = v * exp_drift * v.adjoint();

  psi_frame_ = v * problem.initial;
  if (fidelity_) {
    target_frame_ = v * *problem.target;
  } else {
    obs_frame_ = v * problem.observable * v.adjoint();
  }
}

MatrixXcd TrotterEvaluator::step_matrix(double u) const {
  const Complex mi_frac(0.0, -dt_ / order_);
  VectorXcd phases = (mi_frac * u * eigvals_.cast<Complex>().array()).exp();
  MatrixXcd m = w_ * phases.asDiagonal();
  return matrix_power(std::move(m), order_);
}

double TrotterEvaluator::observed(const VectorXcd& frame_state) const {
  if (fidelity_) {
    Complex amp = target_frame_.adjoint() * frame_state;
    return std::norm(amp);
  }
  return (frame_state.adjoint() * (obs_frame_ * frame_state))(0).real();
}

double TrotterEvaluator::evaluate(const VectorXd& u) const {
  if (u.size() != n_steps_)
    throw std::invalid_argument("evaluate_Jn: control vector must have one entry per timestep");
  VectorXcd state = psi_frame_;
  for (int nu = 0; nu < n_steps_; ++nu) state = step_matrix(u(nu)) * state;
  return observed(state);
}

double TrotterEvaluator::evaluate_cached(const std::vector<const MatrixXcd*>& steps) const {
  VectorXcd state = psi_frame_;
  for (const MatrixXcd* m : steps) state = (*m) * state;
  return observed(state);
}

MatrixXcd trotter_step(const HamiltonianModel& model, TrotterConfig cfg, double dt, double u) {
  if (cfg.order < 1) throw std::invalid_argument("TrotterConfig: order must be >= 1");
  if (!std::isfinite(u) || !std::isfinite(dt)) throw std::invalid_argument("trotter_step: non-finite input");
  const Complex mi_frac(0.0, -dt / cfg.order);

  Eigen::SelfAdjointEigenSolver<MatrixXcd> es(model.drift);
  if (es.info() != Eigen::Success) throw std::runtime_error("drift eigendecomposition failed");
  MatrixXcd exp_drift = es.eigenvectors() *
                        (mi_frac * es.eigenvalues().cast<Complex>().array()).exp().matrix().asDiagonal() *
                        es.eigenvectors().adjoint();

  VectorXcd phases = (mi_frac * u * model.eigvals.cast<Complex>().array()).exp();
  MatrixXcd step = exp_drift * model.eigvecs.adjoint() * phases.asDiagonal() * model.eigvecs;
  return matrix_power(std::move(step), cfg.order);
}

double evaluate_Jn(const LandscapeProblem& problem, TrotterConfig cfg, const VectorXd& u) {
  return TrotterEvaluator(problem, cfg).evaluate(u);
}

}  // namespace qcl
