#include "qcl/problem.hpp"

#include <cmath>

namespace qcl {

ControlGrid ControlGrid::from_dt(int n_steps, double dt, double u_max) {
  if (n_steps < 1) throw std::invalid_argument("ControlGrid: n_steps must be positive");
  if (!(dt > 0.0)) throw std::invalid_argument("ControlGrid: dt must be positive");
  if (!(u_max > 0.0)) throw std::invalid_argument("ControlGrid: u_max must be positive");
  return ControlGrid{n_steps, dt, u_max};
}

ControlGrid ControlGrid::from_total_time(int n_steps, double total_time, double u_max) {
  if (n_steps < 1) throw std::invalid_argument("ControlGrid: n_steps must be positive");
  if (!(total_time > 0.0)) throw std::invalid_argument("ControlGrid: total_time must be positive");
  return from_dt(n_steps, total_time / n_steps, u_max);
}

LandscapeProblem LandscapeProblem::fidelity(HamiltonianModel model, ControlGrid grid, VectorXcd psi,
                                            VectorXcd chi) {
  if (psi.size() != model.dim || chi.size() != model.dim)
    throw std::invalid_argument("fidelity problem: state dimension mismatch");
  if (std::abs(psi.norm() - 1.0) > 1e-12 || std::abs(chi.norm() - 1.0) > 1e-12)
    throw std::invalid_argument("fidelity problem: states must be normalized");
  LandscapeProblem p;
  p.model = std::move(model);
  p.grid = grid;
  p.initial = std::move(psi);
  p.observable = chi * chi.adjoint();
  p.target = std::move(chi);
  p.observable_span = 1.0;
  p.observable_norm = 1.0;
  return p;
}

LandscapeProblem LandscapeProblem::with_observable(HamiltonianModel model, ControlGrid grid,
                                                   VectorXcd psi, MatrixXcd observable) {
  if (psi.size() != model.dim || observable.rows() != model.dim || observable.cols() != model.dim)
    throw std::invalid_argument("landscape problem: dimension mismatch");
  if (std::abs(psi.norm() - 1.0) > 1e-12)
    throw std::invalid_argument("landscape problem: initial state must be normalized");
  double scale = observable.norm();
  if ((observable - observable.adjoint()).norm() > 1e-12 * std::max(1.0, scale))
    throw std::invalid_argument("landscape problem: observable must be Hermitian");
  LandscapeProblem p;
  p.model = std::move(model);
  p.grid = grid;
  p.initial = std::move(psi);
  p.observable = std::move(observable);
  Eigen::SelfAdjointEigenSolver<MatrixXcd> es(p.observable, Eigen::EigenvaluesOnly);
  double lo = es.eigenvalues()(0), hi = es.eigenvalues()(p.model.dim - 1);
  p.observable_span = hi - lo;
  p.observable_norm = std::max(std::abs(lo), std::abs(hi));
  return p;
}

double LandscapeProblem::lipschitz_constant() const {
  return model.omega_max * grid.dt * observable_span / 2.0;
}

double LandscapeProblem::derivative_bound(int order) const {
  return std::pow(model.omega_max * grid.dt, order) * observable_span / 2.0;
}

VectorXcd propagate(const LandscapeProblem& problem, const VectorXd& u) {
  if (u.size() != problem.grid.n_steps)
    throw std::invalid_argument("propagate: control vector must have one entry per timestep");
  if (!u.allFinite()) throw std::invalid_argument("propagate: non-finite control entry");

  VectorXcd state = problem.initial;
  const Complex mi_dt(0.0, -problem.grid.dt);
  for (int nu = 0; nu < problem.grid.n_steps; ++nu) {
    MatrixXcd h = problem.model.drift + u(nu) * problem.model.control;
    Eigen::SelfAdjointEigenSolver<MatrixXcd> es(h);
    if (es.info() != Eigen::Success) throw std::runtime_error("propagate: eigendecomposition failed");
    VectorXcd coeffs = es.eigenvectors().adjoint() * state;
    coeffs.array() *= (mi_dt * es.eigenvalues().cast<Complex>().array()).exp();
    state = es.eigenvectors() * coeffs;
  }
  return state;
}

double evaluate_landscape(const LandscapeProblem& problem, const VectorXd& u) {
  VectorXcd final_state = propagate(problem, u);
  if (problem.target) {
    Complex amp = problem.target->adjoint() * final_state;
    return std::norm(amp);
  }
  return (final_state.adjoint() * (problem.observable * final_state))(0).real();
}

namespace {

double fd_recursive(const LandscapeProblem& problem, VectorXd& u, const std::vector<int>& idx,
                    std::size_t depth, double h) {
  if (depth == idx.size()) return evaluate_landscape(problem, u);
  int nu = idx[depth];
  u(nu) += h;
  double plus = fd_recursive(problem, u, idx, depth + 1, h);
  u(nu) -= 2.0 * h;
  double minus = fd_recursive(problem, u, idx, depth + 1, h);
  u(nu) += h;
  return (plus - minus) / (2.0 * h);
}

}  // namespace

FdResult fd_derivative(const LandscapeProblem& problem, const VectorXd& u,
                       const std::vector<int>& multi_index, double step) {
  const int order = static_cast<int>(multi_index.size());
  if (order < 1 || order > 4)
    throw std::invalid_argument("fd_derivative: order must be between 1 and 4");
  for (int nu : multi_index)
    if (nu < 0 || nu >= problem.grid.n_steps)
      throw std::invalid_argument("fd_derivative: timestep index out of range");

  double scale = std::max(1.0, u.size() ? u.lpNorm<Eigen::Infinity>() : 0.0);
  double h = step > 0.0 ? step : (order <= 2 ? 1e-3 : 1e-2) * scale;

  FdResult r;
  r.order = order;
  r.step = h;
  VectorXd work = u;
  r.value = fd_recursive(problem, work, multi_index, 0, h);
  // Roundoff in the 2^P-point stencil grows like eps / (2h)^P.
  r.cancellation_warning = std::pow(2.0 * h, order) < 1e4 * 2.2e-16;
  return r;
}

LinearParametrization::LinearParametrization(MatrixXd r) : matrix(std::move(r)) {
  if (matrix.rows() < 1 || matrix.cols() < 1)
    throw std::invalid_argument("LinearParametrization: empty matrix");
  for (int i = 0; i < matrix.cols(); ++i) {
    double l1 = matrix.col(i).lpNorm<1>();
    if (l1 <= 0.0) throw std::invalid_argument("LinearParametrization: zero column");
    matrix.col(i) /= l1;
  }
}

VectorXd LinearParametrization::apply(const VectorXd& v) const {
  if (v.size() != matrix.cols())
    throw std::invalid_argument("LinearParametrization: parameter dimension mismatch");
  return matrix * v;
}

}  // namespace qcl
