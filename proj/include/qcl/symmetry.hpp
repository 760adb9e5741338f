#pragma once

#include "qcl/spectrum.hpp"

namespace qcl {

/// Symmetry sectors of an operator Gamma commuting with both generators,
/// resolved in a simultaneous eigenbasis of Gamma and H_c. Sector ids are
/// assigned per distinct Gamma eigenvalue; active sectors are those with
/// nonzero projection of both the initial and the target state.
struct SymmetrySectors {
  std::vector<int> sector_of_index;        // g(i), aligned with eigvals
  VectorXd eigvals;                        // control eigenvalues, ascending
  std::vector<double> sector_eigenvalues;  // gamma_g
  std::vector<int> active_sectors;

  int n_sectors() const { return static_cast<int>(sector_eigenvalues.size()); }
  std::vector<double> sector_levels(int g) const;  // control eigenvalues in sector g
};

/// Fails with the measured commutator norm when Gamma does not commute with
/// both generators. The active-sector overlap threshold defaults to 1e-10
/// (numerical eigenbasis rotation noise).
SymmetrySectors build_sectors(const HamiltonianModel& model, const MatrixXcd& gamma,
                              const VectorXcd& psi, const VectorXcd& chi,
                              double overlap_threshold = 1e-10);

/// Selection-rule mask over the N-fold frequency grid: entry true iff the
/// frequency vector can carry a nonzero coefficient, i.e. it is a difference
/// of two frequency vectors whose per-timestep entries are n-fold averages
/// drawn from a single active sector each.
std::vector<std::uint8_t> allowed_frequency_mask(const SymmetrySectors& sectors,
                                                 const FrequencyGrid& grid, int n_steps);

}  // namespace qcl
