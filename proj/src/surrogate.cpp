#include "qcl/surrogate.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace qcl {

Dataset Dataset::subset(const std::vector<int>& rows) const {
  Dataset out;
  out.controls.resize(static_cast<Eigen::Index>(rows.size()), controls.cols());
  out.values.resize(static_cast<Eigen::Index>(rows.size()));
  for (std::size_t i = 0; i < rows.size(); ++i) {
    out.controls.row(static_cast<Eigen::Index>(i)) = controls.row(rows[i]);
    out.values(static_cast<Eigen::Index>(i)) = values(rows[i]);
  }
  out.u_max = u_max;
  out.seed = seed;
  return out;
}

Dataset sample_dataset(const LandscapeProblem& problem, int count, std::uint64_t seed) {
  if (count < 1) throw std::invalid_argument("sample_dataset: count must be >= 1");
  Dataset d;
  d.u_max = problem.grid.u_max;
  d.seed = seed;
  d.controls.resize(count, problem.grid.n_steps);
  d.values.resize(count);
  Rng rng(seed);
  for (int i = 0; i < count; ++i)
    for (int nu = 0; nu < problem.grid.n_steps; ++nu)
      d.controls(i, nu) = rng.uniform(-d.u_max, d.u_max);
  for (int i = 0; i < count; ++i) d.values(i) = evaluate_landscape(problem, d.controls.row(i));
  return d;
}

int feature_count(const FeatureMap& features) {
  if (const auto* f = std::get_if<RandomFourierFeatures>(&features)) {
    int count = 0;
    for (int r = 0; r < f->frequencies.rows(); ++r)
      count += f->frequencies.row(r).isZero(0.0) ? 1 : 2;
    return count;
  }
  return static_cast<int>(std::get<PolynomialFeatures>(features).multi_indices.size());
}

VectorXd eval_features(const FeatureMap& features, const VectorXd& u) {
  if (const auto* f = std::get_if<RandomFourierFeatures>(&features)) {
    VectorXd phi(feature_count(features));
    int out = 0;
    for (int r = 0; r < f->frequencies.rows(); ++r) {
      double scale = f->scales.size() ? f->scales(r) : 1.0;
      if (f->frequencies.row(r).isZero(0.0)) {
        phi(out++) = scale;
        continue;
      }
      double arg = f->dt * f->frequencies.row(r).dot(u);
      phi(out++) = scale * std::cos(arg);
      phi(out++) = scale * std::sin(arg);
    }
    return phi;
  }
  const auto& p = std::get<PolynomialFeatures>(features);
  VectorXd shifted = p.reference.size() ? VectorXd(u - p.reference) : u;
  VectorXd phi(static_cast<Eigen::Index>(p.multi_indices.size()));
  for (std::size_t i = 0; i < p.multi_indices.size(); ++i) {
    double v = 1.0;
    for (std::size_t nu = 0; nu < p.multi_indices[i].size(); ++nu)
      for (int rep = 0; rep < p.multi_indices[i][nu]; ++rep) v *= shifted(static_cast<Eigen::Index>(nu));
    phi(static_cast<Eigen::Index>(i)) = v;
  }
  return phi;
}

RandomFourierFeatures random_fourier(int n_freq, int n_dims, double omega_max, double dt,
                                     std::uint64_t seed, bool include_zero) {
  if (n_freq < 0) throw std::invalid_argument("random_fourier: negative count");
  RandomFourierFeatures f;
  f.dt = dt;
  int rows = n_freq + (include_zero ? 1 : 0);
  f.frequencies = MatrixXd::Zero(rows, n_dims);
  Rng rng(seed);
  for (int r = include_zero ? 1 : 0; r < rows; ++r)
    for (int c = 0; c < n_dims; ++c) f.frequencies(r, c) = rng.uniform(-omega_max, omega_max);
  return f;
}

RandomFourierFeatures fourier_grid(int k_max, double omega_max, double dt) {
  if (k_max < 1) throw std::invalid_argument("fourier_grid: k_max must be >= 1");
  RandomFourierFeatures f;
  f.dt = dt;
  int n_delta = 2 * k_max + 1;
  f.frequencies = MatrixXd::Zero(k_max + 1, 1);
  f.scales = VectorXd::Zero(k_max + 1);
  f.scales(0) = std::sqrt(1.0 / n_delta);
  for (int k = 1; k <= k_max; ++k) {
    f.frequencies(k, 0) = omega_max * static_cast<double>(k) / k_max;
    f.scales(k) = std::sqrt(2.0 / n_delta);
  }
  return f;
}

namespace {

void enumerate_degree(int n_dims, int degree, std::vector<int>& current, int axis,
                      std::vector<std::vector<int>>& out) {
  if (axis == n_dims - 1) {
    current[axis] = degree;
    out.push_back(current);
    return;
  }
  for (int p = 0; p <= degree; ++p) {
    current[axis] = p;
    enumerate_degree(n_dims, degree - p, current, axis + 1, out);
  }
}

}  // namespace

PolynomialFeatures polynomial_features(int n_dims, int max_degree, VectorXd reference) {
  if (n_dims < 1 || max_degree < 0) throw std::invalid_argument("polynomial_features: bad arguments");
  PolynomialFeatures p;
  p.reference = std::move(reference);
  std::vector<int> current(n_dims, 0);
  for (int degree = 0; degree <= max_degree; ++degree)
    enumerate_degree(n_dims, degree, current, 0, p.multi_indices);
  return p;
}

double sinc_kernel(const VectorXd& du, double omega_ker, double dt) {
  double v = 1.0;
  for (int nu = 0; nu < du.size(); ++nu) v *= sinc(omega_ker * dt * du(nu));
  return v;
}

double frequency_kernel(const VectorXd& omega, double dt, double u_max) {
  double v = 1.0;
  for (int nu = 0; nu < omega.size(); ++nu) v *= sinc(omega(nu) * dt * u_max);
  return v;
}

namespace {

MatrixXd feature_matrix(const FeatureMap& features, const MatrixXd& controls) {
  int m = feature_count(features);
  MatrixXd phi(controls.rows(), m);
  for (Eigen::Index i = 0; i < controls.rows(); ++i)
    phi.row(i) = eval_features(features, controls.row(i)).transpose();
  return phi;
}

}  // namespace

Surrogate train_primal(const FeatureMap& features, const Dataset& data, double lambda_r) {
  int m = feature_count(features);
  if (m < 1) throw std::invalid_argument("train_primal: empty feature map");
  if (data.size() < 1) throw std::invalid_argument("train_primal: empty dataset");
  if (lambda_r < 0.0) throw std::invalid_argument("train_primal: negative ridge");

  MatrixXd phi = feature_matrix(features, data.controls);
  MatrixXd gram = phi.transpose() * phi;
  gram.diagonal().array() += lambda_r;
  VectorXd rhs = phi.transpose() * data.values;

  Surrogate s;
  s.kind = Surrogate::Kind::primal;
  s.features = features;
  s.ridge = lambda_r;
  s.n_weights = m;

  Eigen::LLT<MatrixXd> llt(gram);
  if (llt.info() == Eigen::Success) {
    s.weights = llt.solve(rhs);
  } else {
    // Indefinite normal equations (lambda_r = 0 with collinear features):
    // rank-revealing least squares on the stacked system.
    s.fallback_solver = true;
    MatrixXd stacked(phi.rows() + m, m);
    stacked.topRows(phi.rows()) = phi;
    stacked.bottomRows(m) = std::sqrt(lambda_r) * MatrixXd::Identity(m, m);
    VectorXd target = VectorXd::Zero(stacked.rows());
    target.head(phi.rows()) = data.values;
    s.weights = stacked.colPivHouseholderQr().solve(target);
  }
  if (!s.weights.allFinite())
    throw ConditioningError("train_primal: solver produced non-finite weights");
  s.training_rmse = std::sqrt((phi * s.weights - data.values).squaredNorm() / data.size());
  return s;
}

Surrogate train_kernel(const Dataset& data, double lambda_r, double omega_ker, double dt) {
  if (data.size() < 1) throw std::invalid_argument("train_kernel: empty dataset");
  if (lambda_r < 0.0) throw std::invalid_argument("train_kernel: negative ridge");
  if (!(omega_ker > 0.0)) throw std::invalid_argument("train_kernel: omega_ker must be positive");

  const int n = data.size();
  MatrixXd k(n, n);
  for (int i = 0; i < n; ++i) {
    k(i, i) = 1.0;
    for (int j = i + 1; j < n; ++j) {
      double v = sinc_kernel(data.controls.row(i) - data.controls.row(j), omega_ker, dt);
      k(i, j) = v;
      k(j, i) = v;
    }
  }
  k.diagonal().array() += lambda_r;

  Eigen::LDLT<MatrixXd> ldlt(k);
  VectorXd a = ldlt.solve(data.values);
  double residual = (k * a - data.values).lpNorm<Eigen::Infinity>();
  if (!a.allFinite() || residual > 1e-8 * std::max(1.0, data.values.lpNorm<Eigen::Infinity>())) {
    throw ConditioningError(
        "train_kernel: kernel system is numerically singular (residual " + format_double(residual) +
        "); use lambda_r >= 1e-12");
  }

  Surrogate s;
  s.kind = Surrogate::Kind::dual;
  s.train_inputs = data.controls;
  s.dual_coeffs = std::move(a);
  s.omega_ker = omega_ker;
  s.dt = dt;
  s.ridge = lambda_r;
  s.n_weights = n;
  double sq = 0.0;
  for (int i = 0; i < n; ++i) {
    double p = predict(s, data.controls.row(i));
    sq += (p - data.values(i)) * (p - data.values(i));
  }
  s.training_rmse = std::sqrt(sq / n);
  return s;
}

double predict(const Surrogate& model, const VectorXd& u) {
  if (model.kind == Surrogate::Kind::primal) {
    if (model.weights.size() == 0) throw std::invalid_argument("predict: untrained model");
    return model.weights.dot(eval_features(model.features, u));
  }
  double v = 0.0;
  for (Eigen::Index i = 0; i < model.train_inputs.rows(); ++i)
    v += model.dual_coeffs(i) *
         sinc_kernel(model.train_inputs.row(i).transpose() - u, model.omega_ker, model.dt);
  return v;
}

double rmse(const Surrogate& model, const Dataset& test) {
  if (test.size() < 1) throw std::invalid_argument("rmse: empty test set");
  double sq = 0.0;
  for (int i = 0; i < test.size(); ++i) {
    double p = predict(model, test.controls.row(i));
    sq += (p - test.values(i)) * (p - test.values(i));
  }
  return std::sqrt(sq / test.size());
}

FeatureMap make_features(const FeatureFamily& family, int candidate, int n_dims,
                         std::uint64_t seed) {
  if (family.kind == FeatureFamily::Kind::fourier)
    return random_fourier(candidate, n_dims, family.omega_max, family.dt, seed, true);
  VectorXd ref = family.reference.size() ? family.reference : VectorXd(VectorXd::Zero(n_dims));
  return polynomial_features(n_dims, candidate, ref);
}

int candidate_feature_count(const FeatureFamily& family, int candidate, int n_dims) {
  if (family.kind == FeatureFamily::Kind::fourier) return 2 * candidate + 1;
  // C(n_dims + candidate, n_dims)
  double log_count = std::lgamma(n_dims + candidate + 1.0) - std::lgamma(n_dims + 1.0) -
                     std::lgamma(candidate + 1.0);
  if (log_count > 24.0 * std::numbers::ln2) return 1 << 24;
  return static_cast<int>(std::lround(std::exp(log_count)));
}

SelectionTrace select_n_weights(const FeatureFamily& family, const Dataset& data, double lambda_r,
                                const std::vector<int>& candidates, std::uint64_t split_seed,
                                double split_fraction, bool allow_overcomplete) {
  if (candidates.empty()) throw std::invalid_argument("select_n_weights: no candidates");
  int n = data.size();
  int n_fit = std::max(1, std::min(n - 1, static_cast<int>(std::lround(split_fraction * n))));

  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  Rng rng(split_seed);
  for (int i = n - 1; i > 0; --i) std::swap(order[i], order[static_cast<int>(rng.next() % (i + 1))]);
  Dataset fit = data.subset({order.begin(), order.begin() + n_fit});
  Dataset validation = data.subset({order.begin() + n_fit, order.end()});

  SelectionTrace trace;
  trace.split_seed = split_seed;
  bool any = false;
  for (int cand : candidates) {
    int m = candidate_feature_count(family, cand, data.n_dims());
    if (!allow_overcomplete && m >= n_fit) continue;
    std::uint64_t feature_seed = derive_seed(split_seed, "features/" + std::to_string(cand));
    try {
      FeatureMap features = make_features(family, cand, data.n_dims(), feature_seed);
      Surrogate model = train_primal(features, fit, lambda_r);
      double err = rmse(model, validation);
      trace.entries.push_back({cand, model.n_weights, err});
      if (!any || err < trace.best_rmse ||
          (err == trace.best_rmse && m < candidate_feature_count(family, trace.best_candidate,
                                                                 data.n_dims()))) {
        any = true;
        trace.best_candidate = cand;
        trace.best_rmse = err;
      }
    } catch (const ConditioningError&) {
      // Recorded as absent from the trace; scan continues.
    }
  }
  if (!any) throw ConditioningError("select_n_weights: every candidate failed to train");
  return trace;
}

ConstantModelBound constant_model_bound(const CoefficientTensor& tensor, double u_max) {
  ConstantModelBound out;
  Complex w0(0.0, 0.0);
  for (const Complex& c : tensor.data) w0 += c;
  out.w0 = w0.real();
  double budget_l = tensor.grid.omega_max * tensor.dt * tensor.n_steps;
  out.loss_bound = (u_max * budget_l) * (u_max * budget_l) / (3.0 * tensor.n_steps);
  return out;
}

}  // namespace qcl
