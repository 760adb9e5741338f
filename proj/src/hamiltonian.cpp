#include "qcl/hamiltonian.hpp"

#include <cmath>

namespace qcl {

namespace {

void require_hermitian(const MatrixXcd& m, const char* name) {
  double scale = m.norm();
  double dev = (m - m.adjoint()).norm();
  if (dev > 1e-12 * std::max(1.0, scale)) {
    throw std::invalid_argument(std::string(name) + " is not Hermitian (relative deviation " +
                                format_double(dev / std::max(1.0, scale)) + ")");
  }
}

}  // namespace

HamiltonianModel HamiltonianModel::make(MatrixXcd drift, MatrixXcd control) {
  if (drift.rows() != drift.cols() || control.rows() != control.cols() ||
      drift.rows() != control.rows() || drift.rows() < 1) {
    throw std::invalid_argument("drift and control must be square matrices of equal dimension");
  }
  require_hermitian(drift, "drift");
  require_hermitian(control, "control");

  HamiltonianModel m;
  m.dim = static_cast<int>(drift.rows());
  m.drift = std::move(drift);
  m.control = std::move(control);

  Eigen::SelfAdjointEigenSolver<MatrixXcd> es(m.control);
  if (es.info() != Eigen::Success) throw std::runtime_error("control eigendecomposition failed");
  m.eigvals = es.eigenvalues();                // ascending
  m.eigvecs = es.eigenvectors().adjoint();     // V with H_c = V^dagger Lambda V
  m.omega_max = m.eigvals(m.dim - 1) - m.eigvals(0);
  return m;
}

HamiltonianModel build_ising(int q, double alpha_d, double h_z) {
  if (q <= 1) throw std::invalid_argument("build_ising: need at least 2 qubits (periodic bond degenerates)");
  if (q > 12) throw CapacityError("build_ising: Q > 12 exceeds the dense-matrix capacity of this artifact");

  const int dim = 1 << q;
  VectorXd diag = VectorXd::Zero(dim);
  for (int b = 0; b < dim; ++b) {
    double zz = 0.0, z = 0.0;
    for (int i = 0; i < q; ++i) {
      int zi = (b >> i) & 1 ? -1 : 1;
      int zj = (b >> ((i + 1) % q)) & 1 ? -1 : 1;
      zz += zi * zj;
      z += zi;
    }
    diag(b) = alpha_d * (zz + h_z * z);
  }
  MatrixXcd drift = diag.cast<Complex>().asDiagonal();

  MatrixXcd control = MatrixXcd::Zero(dim, dim);
  for (int b = 0; b < dim; ++b)
    for (int i = 0; i < q; ++i) control(b ^ (1 << i), b) += 1.0;

  return HamiltonianModel::make(std::move(drift), std::move(control));
}

VectorXcd ising_state(int q, std::string_view selector, std::uint64_t seed) {
  const int dim = 1 << q;
  VectorXcd v = VectorXcd::Zero(dim);
  if (selector == "0_Q") {
    v(0) = 1.0;
  } else if (selector == "1_Q") {
    v(dim - 1) = 1.0;
  } else if (selector == "+_Q" || selector == "-_Q") {
    // (|0> +- |1>)^{tensor Q} / 2^{Q/2}; the sign of |b> is (-1)^{popcount}.
    double amp = std::pow(2.0, -0.5 * q);
    for (int b = 0; b < dim; ++b) {
      int sign = (selector == "-_Q" && (__builtin_popcount(static_cast<unsigned>(b)) & 1)) ? -1 : 1;
      v(b) = sign * amp;
    }
  } else if (selector == "random") {
    v = sample_random_state(dim, seed);
  } else {
    throw UsageError("unknown state selector '" + std::string(selector) +
                     "' (expected 0_Q, 1_Q, +_Q, -_Q or random)");
  }
  return v;
}

MatrixXcd ising_sigma_x_string(int q) {
  const int dim = 1 << q;
  MatrixXcd s = MatrixXcd::Zero(dim, dim);
  for (int b = 0; b < dim; ++b) s(dim - 1 - b, b) = 1.0;  // flips every bit
  return s;
}

VectorXcd sample_random_state(int dim, std::uint64_t seed) {
  if (dim < 1) throw std::invalid_argument("sample_random_state: dim must be positive");
  Rng rng(seed);
  VectorXcd v(dim);
  for (int i = 0; i < dim; ++i) {
    double re = rng.uniform(-1.0, 1.0);
    double im = rng.uniform(-1.0, 1.0);
    v(i) = Complex(re, im);
  }
  v.normalize();
  return v;
}

}  // namespace qcl
