#pragma once

#include <functional>

#include "qcl/spectrum.hpp"

namespace qcl {

/// Which derivative-variance to evaluate: indices nu_1..nu_P (P = 0 means
/// the landscape itself) over the bounded box or over unbounded controls.
struct VarianceSpec {
  std::vector<int> derivative_indices;
  bool bounded = true;
  double u_max = 1.0;
};

/// Exact variance of (prod_p d/du_{nu_p}) J_n over the uniform box, as the
/// quadratic form of the coefficient tensor with kernel factors
/// kappa~(w - w') - kappa~(w) kappa~(w'), zero-frequency terms excluded.
/// Semi-positive by construction up to roundoff.
double variance_quadratic_form(const CoefficientTensor& tensor, const std::vector<int>& indices,
                               double u_max);

/// Variance over unbounded controls: dt^{2P} sum_{w != 0} |c_w|^2 prod w^2.
double variance_unbounded(const CoefficientTensor& tensor, const std::vector<int>& indices);

/// Lower bound on the variance summed over all index tuples of order P:
///   DeltaJ^2 dt^{2P} / (4 sum_{w != 0} |w|_2^{-2P}),
/// plus the looser closed form using the smallest grid frequency, which
/// makes the exponential suppression in circuit depth explicit.
struct VarianceLowerBound {
  double value = 0.0;
  double simplified = 0.0;
};
VarianceLowerBound variance_lower_bound(const CoefficientTensor& tensor, double delta_j, int order);

/// Sample moments of f over the uniform box, with standard errors for the
/// mean and for the variance (via the fourth central moment) so audits can
/// run 3-sigma comparisons.
struct McStats {
  double mean = 0.0;
  double variance = 0.0;
  double stderr_mean = 0.0;
  double stderr_variance = 0.0;
  int samples = 0;
};
McStats mc_estimator(const std::function<double(const VectorXd&)>& f, int n_dims, double u_max,
                     int samples, std::uint64_t seed);

/// MC over J itself (P = 0) or its central-FD derivative along the spec's
/// indices.
McStats mc_estimator(const LandscapeProblem& problem, const VarianceSpec& spec, int samples,
                     std::uint64_t seed, double fd_step = 0.0);

}  // namespace qcl
