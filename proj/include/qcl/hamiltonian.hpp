#pragma once

#include "qcl/common.hpp"

namespace qcl {

/// Drift + control pair with the control's eigendecomposition attached.
/// The eigenbasis convention is H_c = V^dagger Lambda V with eigenvalues
/// sorted ascending, so omega_max = eigvals(D-1) - eigvals(0) is the
/// maximum transition frequency of the control.
struct HamiltonianModel {
  int dim = 0;
  MatrixXcd drift;    // H_d, angular-frequency units
  MatrixXcd control;  // H_c
  MatrixXcd eigvecs;  // V, rows are eigenvectors of H_c
  VectorXd eigvals;   // ascending
  double omega_max = 0.0;

  /// Validates Hermiticity of both generators and diagonalizes the control.
  static HamiltonianModel make(MatrixXcd drift, MatrixXcd control);
};

/// Periodic transverse-field Ising chain on Q qubits, little-endian site
/// order (site i is bit i of the basis index, site Q == site 0):
///   H_d = sum_i alpha_d (sz_i sz_{i+1} + h_z sz_i),  H_c = sum_i sx_i.
/// The control spectrum is {-Q, -Q+2, ..., Q} with binomial multiplicities.
HamiltonianModel build_ising(int q_qubits, double alpha_d, double h_z);

/// Computational-basis product states used throughout the Ising runs.
VectorXcd ising_state(int q_qubits, std::string_view selector, std::uint64_t seed = 0);

/// Parity operator prod_i sx_i, the symmetry behind the Ising selection rules.
MatrixXcd ising_sigma_x_string(int q_qubits);

/// Unit vector with real/imaginary parts of every component drawn uniform
/// on [-1, 1], then normalized.
VectorXcd sample_random_state(int dim, std::uint64_t seed);

}  // namespace qcl
