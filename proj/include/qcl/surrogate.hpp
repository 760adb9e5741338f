#pragma once

#include <variant>

#include "qcl/spectrum.hpp"

namespace qcl {

/// Supervised sample of the landscape: rows of controls inside the box and
/// the corresponding J values, plus seed provenance.
struct Dataset {
  MatrixXd controls;  // N_train x N
  VectorXd values;
  double u_max = 0.0;
  std::uint64_t seed = 0;

  int size() const { return static_cast<int>(values.size()); }
  int n_dims() const { return static_cast<int>(controls.cols()); }
  Dataset subset(const std::vector<int>& rows) const;
};

/// I.i.d. uniform controls in the hypercube, values from evaluate_landscape.
Dataset sample_dataset(const LandscapeProblem& problem, int count, std::uint64_t seed);

/// Real-valued random Fourier features: each frequency row omega gives
/// cos(dt omega.u) and, when the row is nonzero, sin(dt omega.u) (the
/// conjugate pair realized over the reals). Optional per-row scales support
/// the normalized full-grid variant whose Gram matrix converges to the sinc
/// kernel.
struct RandomFourierFeatures {
  MatrixXd frequencies;  // n_rows x N
  double dt = 1.0;
  VectorXd scales;       // per-row factor, defaults to 1
};

/// Polynomial features prod_nu (u - u0)^p_nu with unique multi-indices in
/// graded lexicographic order.
struct PolynomialFeatures {
  std::vector<std::vector<int>> multi_indices;
  VectorXd reference;  // u0
};

using FeatureMap = std::variant<RandomFourierFeatures, PolynomialFeatures>;

int feature_count(const FeatureMap& features);
VectorXd eval_features(const FeatureMap& features, const VectorXd& u);

/// n_freq random rows uniform on [-omega_max, omega_max]^N; include_zero
/// prepends the zero row (the constant feature).
RandomFourierFeatures random_fourier(int n_freq, int n_dims, double omega_max, double dt,
                                     std::uint64_t seed, bool include_zero = true);

/// N=1 full symmetric frequency grid omega_k = omega_max k / k_max,
/// normalized so that phi(u).phi(u') is the Dirichlet kernel that converges
/// to sinc(omega_max dt (u-u')) as k_max grows.
RandomFourierFeatures fourier_grid(int k_max, double omega_max, double dt);

/// All multi-indices with total degree <= max_degree, graded-lex order.
PolynomialFeatures polynomial_features(int n_dims, int max_degree, VectorXd reference);

/// Product sinc kernel kappa(du) = prod_nu sinc(omega_ker dt du_nu).
double sinc_kernel(const VectorXd& du, double omega_ker, double dt);

/// Frequency-space kernel kappa~(omega) = prod_nu sinc(omega_nu dt u_max).
double frequency_kernel(const VectorXd& omega, double dt, double u_max);

/// Trained surrogate: primal (explicit weights over features) or dual
/// (coefficients over training points with the sinc kernel).
struct Surrogate {
  enum class Kind { primal, dual };
  Kind kind = Kind::primal;

  // primal
  FeatureMap features;
  VectorXd weights;

  // dual
  MatrixXd train_inputs;
  VectorXd dual_coeffs;
  double omega_ker = 0.0;
  double dt = 0.0;

  // training metadata
  double ridge = 0.0;
  int n_weights = 0;
  double training_rmse = 0.0;
  bool fallback_solver = false;
};

/// Ridge-regularized least squares (Phi^T Phi + lambda I) w = Phi^T J via an
/// SPD factorization, with a rank-revealing least-squares fallback when the
/// normal equations are not positive definite (recorded in the model).
Surrogate train_primal(const FeatureMap& features, const Dataset& data, double lambda_r);

/// Kernel ridge regression (K + lambda I) a = J with the product sinc
/// kernel. A singular solve with lambda_r = 0 raises ConditioningError
/// suggesting lambda_r >= 1e-12.
Surrogate train_kernel(const Dataset& data, double lambda_r, double omega_ker, double dt);

double predict(const Surrogate& model, const VectorXd& u);
double rmse(const Surrogate& model, const Dataset& test);

/// Feature family descriptor used by the candidate scan and the benchmark.
/// For Fourier the candidate is the number of random nonzero frequency rows
/// (n_weights = 2 candidate + 1 with the constant row); for Taylor it is the
/// total-degree cap (n_weights = C(N + P, N)).
struct FeatureFamily {
  enum class Kind { fourier, taylor };
  Kind kind = Kind::fourier;
  double omega_max = 0.0;
  double dt = 1.0;
  VectorXd reference;  // Taylor expansion point; empty means origin
};

FeatureMap make_features(const FeatureFamily& family, int candidate, int n_dims,
                         std::uint64_t seed);
int candidate_feature_count(const FeatureFamily& family, int candidate, int n_dims);

struct SelectionTrace {
  struct Entry {
    int candidate;
    int n_weights;
    double validation_rmse;
  };
  std::vector<Entry> entries;
  int best_candidate = -1;
  double best_rmse = 0.0;
  std::uint64_t split_seed = 0;
};

/// 75/25 train/validation scan over candidates; returns the argmin
/// validation-RMSE candidate with ties broken toward fewer weights.
/// Candidates whose feature count would reach n_train are skipped unless
/// allow_overcomplete is set.
SelectionTrace select_n_weights(const FeatureFamily& family, const Dataset& data, double lambda_r,
                                const std::vector<int>& candidates, std::uint64_t split_seed,
                                double split_fraction = 0.75, bool allow_overcomplete = false);

/// Constant (zero-frequency) model of a landscape tensor: the optimal flat
/// value w0 = J_n(0) and the asymptotic mean-square loss bound
/// (u_max L)^2 / (3N) it satisfies over the box.
struct ConstantModelBound {
  double w0 = 0.0;
  double loss_bound = 0.0;
};
ConstantModelBound constant_model_bound(const CoefficientTensor& tensor, double u_max);

}  // namespace qcl
