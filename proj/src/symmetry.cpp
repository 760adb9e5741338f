#include "qcl/symmetry.hpp"

#include <algorithm>
#include <cmath>

namespace qcl {

std::vector<double> SymmetrySectors::sector_levels(int g) const {
  std::vector<double> levels;
  for (std::size_t i = 0; i < sector_of_index.size(); ++i)
    if (sector_of_index[i] == g) levels.push_back(eigvals(static_cast<Eigen::Index>(i)));
  return levels;
}

SymmetrySectors build_sectors(const HamiltonianModel& model, const MatrixXcd& gamma,
                              const VectorXcd& psi, const VectorXcd& chi,
                              double overlap_threshold) {
  const int dim = model.dim;
  if (gamma.rows() != dim || gamma.cols() != dim)
    throw std::invalid_argument("build_sectors: symmetry operator dimension mismatch");

  double scale = std::max(1.0, gamma.norm());
  double comm_c = (gamma * model.control - model.control * gamma).norm() / scale;
  double comm_d = (gamma * model.drift - model.drift * gamma).norm() / scale;
  if (comm_c > 1e-10 || comm_d > 1e-10)
    throw std::invalid_argument("build_sectors: operator does not commute with the generators "
                                "(commutator norms " + format_double(comm_c) + ", " +
                                format_double(comm_d) + ")");

  // Simultaneous eigenbasis: rotate each degenerate H_c eigenspace so that
  // the restriction of Gamma is diagonal there.
  MatrixXcd basis = model.eigvecs.adjoint();  // columns are H_c eigenvectors
  VectorXd gamma_value(dim);
  double eig_tol = 1e-9 * std::max(1.0, model.omega_max);
  int lo = 0;
  while (lo < dim) {
    int hi = lo + 1;
    while (hi < dim && model.eigvals(hi) - model.eigvals(lo) <= eig_tol) ++hi;
    int width = hi - lo;
    MatrixXcd block = basis.middleCols(lo, width);
    MatrixXcd restricted = block.adjoint() * gamma * block;
    Eigen::SelfAdjointEigenSolver<MatrixXcd> es(restricted);
    if (es.info() != Eigen::Success) throw std::runtime_error("sector eigendecomposition failed");
    basis.middleCols(lo, width) = block * es.eigenvectors();
    gamma_value.segment(lo, width) = es.eigenvalues();
    lo = hi;
  }

  SymmetrySectors s;
  s.eigvals = model.eigvals;
  s.sector_of_index.resize(dim);

  double gamma_tol = 1e-8 * std::max(1.0, gamma_value.cwiseAbs().maxCoeff());
  for (int i = 0; i < dim; ++i) {
    int g = -1;
    for (std::size_t k = 0; k < s.sector_eigenvalues.size(); ++k)
      if (std::abs(gamma_value(i) - s.sector_eigenvalues[k]) <= gamma_tol) {
        g = static_cast<int>(k);
        break;
      }
    if (g < 0) {
      g = static_cast<int>(s.sector_eigenvalues.size());
      s.sector_eigenvalues.push_back(gamma_value(i));
    }
    s.sector_of_index[i] = g;
  }

  for (int g = 0; g < s.n_sectors(); ++g) {
    double wpsi = 0.0, wchi = 0.0;
    for (int i = 0; i < dim; ++i) {
      if (s.sector_of_index[i] != g) continue;
      wpsi += std::norm(basis.col(i).dot(psi));
      wchi += std::norm(basis.col(i).dot(chi));
    }
    if (std::sqrt(wpsi) > overlap_threshold && std::sqrt(wchi) > overlap_threshold)
      s.active_sectors.push_back(g);
  }
  return s;
}

namespace {

// Integer sums reachable with n draws from the unit coordinates of one sector.
std::vector<std::uint8_t> nfold_sums(const std::vector<int>& units, int n, int s_max) {
  std::vector<std::uint8_t> reach(static_cast<std::size_t>(s_max) + 1, 0);
  reach[0] = 1;
  for (int step = 0; step < n; ++step) {
    std::vector<std::uint8_t> next(reach.size(), 0);
    for (int s = 0; s <= s_max; ++s) {
      if (!reach[s]) continue;
      for (int m : units)
        if (s + m <= s_max) next[s + m] = 1;
    }
    reach = std::move(next);
  }
  return reach;
}

}  // namespace

std::vector<std::uint8_t> allowed_frequency_mask(const SymmetrySectors& sectors,
                                                 const FrequencyGrid& grid, int n_steps) {
  const int k_max = grid.k_max;
  const int nd = grid.n_delta();
  std::vector<int> units = grid.eigenvalue_units(sectors.eigvals);

  // Per-sector reachable sums, active sectors only.
  std::vector<std::vector<std::uint8_t>> sums;
  for (int g : sectors.active_sectors) {
    std::vector<int> sector_units;
    for (std::size_t i = 0; i < sectors.sector_of_index.size(); ++i)
      if (sectors.sector_of_index[i] == g) sector_units.push_back(units[i]);
    std::sort(sector_units.begin(), sector_units.end());
    sector_units.erase(std::unique(sector_units.begin(), sector_units.end()), sector_units.end());
    sums.push_back(nfold_sums(sector_units, grid.n, k_max));
  }

  // Per-axis allowed difference sets, one per ordered sector pair (ket, bra).
  std::vector<std::vector<std::uint8_t>> diff_sets;
  for (const auto& a : sums)
    for (const auto& b : sums) {
      std::vector<std::uint8_t> diff(static_cast<std::size_t>(nd), 0);
      for (int sa = 0; sa <= k_max; ++sa) {
        if (!a[sa]) continue;
        for (int sb = 0; sb <= k_max; ++sb)
          if (b[sb]) diff[sa - sb + k_max] = 1;
      }
      diff_sets.push_back(std::move(diff));
    }

  std::size_t total = 1;
  for (int axis = 0; axis < n_steps; ++axis) total *= static_cast<std::size_t>(nd);

  std::vector<std::uint8_t> mask(total, 0);
  std::vector<int> idx(n_steps);
  for (std::size_t flat = 0; flat < total; ++flat) {
    std::size_t rem = flat;
    for (int axis = n_steps - 1; axis >= 0; --axis) {
      idx[axis] = static_cast<int>(rem % nd);
      rem /= nd;
    }
    for (const auto& diff : diff_sets) {
      bool ok = true;
      for (int axis = 0; axis < n_steps && ok; ++axis) ok = diff[idx[axis]] != 0;
      if (ok) {
        mask[flat] = 1;
        break;
      }
    }
  }
  return mask;
}

}  // namespace qcl
