#pragma once

#include <string>

#include "qcl/trotter.hpp"

namespace qcl {

/// Equally spaced frequency grid carrying the Fourier spectrum of J_n.
/// Frequencies are omega_k = omega_max * k / k_max for k in
/// [-k_max, k_max]; k_max = n * m_max where m_max is the control spectrum
/// width in units of its base spacing (k_max = Q n for the Ising family).
/// Construction fails unless every control eigenvalue difference is an
/// integer multiple of the base spacing.
struct FrequencyGrid {
  int k_max = 0;
  int n = 0;            // Trotter order the grid was built for
  int m_max = 0;        // spectrum width in base-spacing units
  double omega_max = 0.0;
  double base_spacing = 0.0;  // eigenvalue quantum of the control spectrum

  int n_delta() const { return 2 * k_max + 1; }
  double spacing() const { return omega_max / k_max; }
  double omega(int k) const { return omega_max * static_cast<double>(k) / k_max; }

  /// Integer coordinates m_i with lambda_i = lambda_min + m_i * base_spacing.
  std::vector<int> eigenvalue_units(const VectorXd& eigvals) const;

  static FrequencyGrid for_model(const HamiltonianModel& model, int trotter_order);
};

/// Lie-Fourier coefficients c_omega of J_n on the N-fold frequency grid,
/// stored row-major with shape [n_delta]^N; flat index position i along an
/// axis holds frequency index k = i - k_max.
struct CoefficientTensor {
  FrequencyGrid grid;
  int n_steps = 0;
  double dt = 0.0;
  std::vector<Complex> data;

  std::size_t size() const { return data.size(); }
  /// Flat offset of a frequency-index vector (entries in [-k_max, k_max]).
  std::size_t offset(const std::vector<int>& k) const;
  Complex coeff(const std::vector<int>& k) const { return data[offset(k)]; }
  /// Inverse of offset: frequency indices of a flat position.
  std::vector<int> indices(std::size_t flat) const;
};

/// Default cap on n_delta^N; the DFT sample grows exponentially in N.
inline constexpr std::size_t kDefaultElementBudget = std::size_t(1) << 27;

/// Extracts the Lie-Fourier coefficients by sampling J_n on the square
/// hyperlattice u_j = 2 pi j k_max / (dt omega_max n_delta), removing the
/// phase factor e^{-i dt omega_max (u . 1)} and applying the inverse
/// multidimensional DFT. The resummed tensor reproduces J_n exactly
/// (to roundoff) at every lattice point and, because J_n is band-limited to
/// the grid, at arbitrary controls as well.
CoefficientTensor dft_extract(const LandscapeProblem& problem, TrotterConfig cfg,
                              const FrequencyGrid& grid,
                              std::size_t element_budget = kDefaultElementBudget);

/// Partial Fourier sum at an arbitrary control vector.
double resum(const CoefficientTensor& tensor, const VectorXd& u);

/// sum |c_omega|; diagnostic only (the L1 bound exists but is loose).
double l1_coefficient_sum(const CoefficientTensor& tensor);

/// sum |c_omega|^2; bounded by ||O||_inf^2.
double l2_coefficient_sum(const CoefficientTensor& tensor);

/// CSV export, columns k1..kN, omega1..omegaN, re_c, im_c.
void export_tensor_csv(const CoefficientTensor& tensor, const std::string& path);

/// Single-file binary export: u64 header length, JSON header
/// {shape, k_max, omega_max, n, dt}, then raw complex<double> data.
void export_tensor_binary(const CoefficientTensor& tensor, const std::string& path);
CoefficientTensor import_tensor_binary(const std::string& path);

}  // namespace qcl
