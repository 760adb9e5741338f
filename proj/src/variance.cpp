#include "qcl/variance.hpp"

#include <cmath>

namespace qcl {

namespace {

// c_w scaled by the derivative frequency factors prod_p w_{nu_p}, with the
// zero-frequency vector removed (its kernel contribution vanishes).
std::vector<Complex> derivative_weighted(const CoefficientTensor& tensor,
                                         const std::vector<int>& indices) {
  for (int nu : indices)
    if (nu < 0 || nu >= tensor.n_steps)
      throw std::invalid_argument("variance: derivative index out of range");
  const int nd = tensor.grid.n_delta();
  std::vector<Complex> a(tensor.data.begin(), tensor.data.end());
  std::vector<int> k(tensor.n_steps);
  for (std::size_t flat = 0; flat < a.size(); ++flat) {
    std::size_t rem = flat;
    bool all_zero = true;
    for (int axis = tensor.n_steps - 1; axis >= 0; --axis) {
      k[axis] = static_cast<int>(rem % nd) - tensor.grid.k_max;
      rem /= nd;
      all_zero = all_zero && k[axis] == 0;
    }
    if (all_zero) {
      a[flat] = 0.0;
      continue;
    }
    double factor = 1.0;
    for (int nu : indices) factor *= tensor.grid.omega(k[nu]);
    a[flat] *= factor;
  }
  return a;
}

// B <- (S applied along `axis`) B for the row-major [nd]^N layout. S must be
// symmetric so its contiguous columns double as rows.
void apply_axis(std::vector<Complex>& b, const MatrixXd& s, int n_steps, int axis, int nd) {
  std::size_t inner = 1;
  for (int ax = axis + 1; ax < n_steps; ++ax) inner *= static_cast<std::size_t>(nd);
  std::size_t outer = b.size() / (inner * static_cast<std::size_t>(nd));
  std::vector<Complex> slice(static_cast<std::size_t>(nd));
  for (std::size_t o = 0; o < outer; ++o) {
    for (std::size_t in = 0; in < inner; ++in) {
      std::size_t base = o * inner * static_cast<std::size_t>(nd) + in;
      for (int i = 0; i < nd; ++i) {
        Complex acc(0.0, 0.0);
        const double* srow = s.col(i).data();
        for (int jj = 0; jj < nd; ++jj)
          acc += srow[jj] * b[base + static_cast<std::size_t>(jj) * inner];
        slice[static_cast<std::size_t>(i)] = acc;
      }
      for (int i = 0; i < nd; ++i)
        b[base + static_cast<std::size_t>(i) * inner] = slice[static_cast<std::size_t>(i)];
    }
  }
}

}  // namespace

double variance_quadratic_form(const CoefficientTensor& tensor, const std::vector<int>& indices,
                               double u_max) {
  if (!(u_max > 0.0)) throw std::invalid_argument("variance_quadratic_form: u_max must be positive");
  const int nd = tensor.grid.n_delta();
  const double dt = tensor.dt;
  std::vector<Complex> a = derivative_weighted(tensor, indices);

  // Second moment: <A, (S x ... x S) A> with S_{kk'} = sinc((w_k - w_k') dt u_max).
  MatrixXd s(nd, nd);
  for (int i = 0; i < nd; ++i)
    for (int j = 0; j < nd; ++j)
      s(i, j) = sinc((tensor.grid.omega(i - tensor.grid.k_max) -
                      tensor.grid.omega(j - tensor.grid.k_max)) *
                     dt * u_max);

  std::vector<Complex> sa = a;
  for (int axis = 0; axis < tensor.n_steps; ++axis)
    apply_axis(sa, s, tensor.n_steps, axis, nd);
  Complex second(0.0, 0.0);
  for (std::size_t i = 0; i < a.size(); ++i) second += std::conj(a[i]) * sa[i];

  // First moment: sum_w A_w kappa~(w), kappa~ separable over axes.
  VectorXd kappa(nd);
  for (int i = 0; i < nd; ++i) kappa(i) = sinc(tensor.grid.omega(i - tensor.grid.k_max) * dt * u_max);
  Complex first(0.0, 0.0);
  std::vector<int> k(tensor.n_steps);
  for (std::size_t flat = 0; flat < a.size(); ++flat) {
    if (a[flat] == Complex(0.0, 0.0)) continue;
    std::size_t rem = flat;
    double prod = 1.0;
    for (int axis = tensor.n_steps - 1; axis >= 0; --axis) {
      prod *= kappa(static_cast<int>(rem % nd));
      rem /= nd;
    }
    first += a[flat] * prod;
  }

  const int order = static_cast<int>(indices.size());
  double dt2p = std::pow(dt, 2 * order);
  return dt2p * (second.real() - std::norm(first));
}

double variance_unbounded(const CoefficientTensor& tensor, const std::vector<int>& indices) {
  std::vector<Complex> a = derivative_weighted(tensor, indices);
  double sum = 0.0;
  for (const Complex& v : a) sum += std::norm(v);
  return std::pow(tensor.dt, 2 * static_cast<int>(indices.size())) * sum;
}

VarianceLowerBound variance_lower_bound(const CoefficientTensor& tensor, double delta_j,
                                        int order) {
  if (order < 0) throw std::invalid_argument("variance_lower_bound: negative order");
  const int nd = tensor.grid.n_delta();
  double inv_sum = 0.0;
  std::vector<int> k(tensor.n_steps);
  for (std::size_t flat = 0; flat < tensor.size(); ++flat) {
    std::size_t rem = flat;
    double norm2 = 0.0;
    for (int axis = tensor.n_steps - 1; axis >= 0; --axis) {
      double w = tensor.grid.omega(static_cast<int>(rem % nd) - tensor.grid.k_max);
      rem /= nd;
      norm2 += w * w;
    }
    if (norm2 == 0.0) continue;
    inv_sum += std::pow(norm2, -order);
  }
  VarianceLowerBound out;
  double dt2p = std::pow(tensor.dt, 2 * order);
  out.value = delta_j * delta_j * dt2p / (4.0 * inv_sum);
  double omega_min = tensor.grid.spacing();
  double count = static_cast<double>(tensor.size()) - 1.0;
  out.simplified = delta_j * delta_j * dt2p * std::pow(omega_min * omega_min, order) / (4.0 * count);
  return out;
}

McStats mc_estimator(const std::function<double(const VectorXd&)>& f, int n_dims, double u_max,
                     int samples, std::uint64_t seed) {
  if (samples < 100) throw std::invalid_argument("mc_estimator: need at least 100 samples");
  Rng rng(seed);
  std::vector<double> vals(static_cast<std::size_t>(samples));
  VectorXd u(n_dims);
  for (int i = 0; i < samples; ++i) {
    for (int nu = 0; nu < n_dims; ++nu) u(nu) = rng.uniform(-u_max, u_max);
    vals[static_cast<std::size_t>(i)] = f(u);
  }
  McStats st;
  st.samples = samples;
  double mean = 0.0;
  for (double v : vals) mean += v;
  mean /= samples;
  double m2 = 0.0, m4 = 0.0;
  for (double v : vals) {
    double d = v - mean;
    m2 += d * d;
    m4 += d * d * d * d;
  }
  double n = samples;
  st.mean = mean;
  st.variance = m2 / (n - 1.0);
  st.stderr_mean = std::sqrt(st.variance / n);
  m2 /= n;
  m4 /= n;
  double var_of_var = (m4 - (n - 3.0) / (n - 1.0) * m2 * m2) / n;
  st.stderr_variance = std::sqrt(std::max(0.0, var_of_var));
  return st;
}

McStats mc_estimator(const LandscapeProblem& problem, const VarianceSpec& spec, int samples,
                     std::uint64_t seed, double fd_step) {
  auto f = [&](const VectorXd& u) {
    if (spec.derivative_indices.empty()) return evaluate_landscape(problem, u);
    return fd_derivative(problem, u, spec.derivative_indices, fd_step).value;
  };
  double u_max = spec.bounded ? spec.u_max : problem.grid.u_max;
  return mc_estimator(f, problem.grid.n_steps, u_max, samples, seed);
}

}  // namespace qcl
