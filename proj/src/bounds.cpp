#include "qcl/bounds.hpp"

#include <cmath>

namespace qcl {

double derivative_bound(int order, double omega_max, double dt, double delta_o) {
  if (order < 0) throw std::invalid_argument("derivative_bound: negative order");
  return std::pow(omega_max * dt, order) * delta_o / 2.0;
}

double lipschitz_bound(double omega_max, double dt, double delta_o) {
  return omega_max * dt * delta_o / 2.0;
}

double critical_point_bound(double omega_max, double dt, double delta_o) {
  return omega_max * dt * omega_max * dt * delta_o / 2.0;
}

double min_distance(double delta_j, double omega_max, double dt, double delta_o) {
  if (delta_j == 0.0) return 0.0;
  return 2.0 * delta_j / (omega_max * dt * delta_o);
}

double taylor_error_bound(int order, double u_max_l, double delta_o) {
  if (order < 0) throw std::invalid_argument("taylor_error_bound: negative order");
  if (u_max_l <= 0.0) return 0.0;
  double log_eps = (order + 1) * std::log(u_max_l) - std::log(2.0) - std::lgamma(order + 2.0) +
                   std::log(delta_o > 0.0 ? delta_o : 0.0);
  if (delta_o == 0.0) return 0.0;
  return std::exp(log_eps);
}

int min_taylor_order(double epsilon, double u_max_l, double delta_o) {
  if (!(epsilon > 0.0)) throw std::invalid_argument("min_taylor_order: epsilon must be positive");
  if (u_max_l <= 0.0 || delta_o == 0.0) return 0;
  double log_target = std::log(epsilon);
  for (int p = 0; p < 1000000; ++p) {
    double log_eps = (p + 1) * std::log(u_max_l) - std::log(2.0) - std::lgamma(p + 2.0) +
                     std::log(delta_o);
    if (log_eps <= log_target) return p;
  }
  throw std::runtime_error("min_taylor_order: no order below 1e6 satisfies the tolerance");
}

double qsl_lower_bound(double u_max, double omega_max) {
  if (!(u_max > 0.0) || !(omega_max > 0.0))
    throw std::invalid_argument("qsl_lower_bound: u_max and omega_max must be positive");
  return 1.0 / (u_max * omega_max);
}

TrapBall trap_ball(double delta_j, int n_steps, double budget_l) {
  if (!(delta_j > 0.0)) throw std::invalid_argument("trap_ball: delta_j must be positive");
  if (n_steps < 1 || !(budget_l > 0.0)) throw std::invalid_argument("trap_ball: bad arguments");
  TrapBall t;
  t.beta = std::max(std::sqrt(2.0 * delta_j), 2.0 * delta_j);
  t.l_c = t.beta * n_steps / budget_l;
  double log_volume = n_steps * std::log(2.0 * t.l_c) - std::lgamma(n_steps + 1.0);
  t.volume = std::exp(log_volume);
  t.density_bound = std::exp(-log_volume);
  t.log_classifier = std::log(2.0 * std::numbers::e * t.beta / budget_l);
  t.exponentially_suppressed = t.log_classifier > 0.0;
  return t;
}

double ruggedness_bound(double omega_max, double dt, double delta_o) {
  return critical_point_bound(omega_max, dt, delta_o);
}

std::optional<double> ruggedness_estimate(const LandscapeProblem& problem,
                                          const std::vector<VectorXd>& minima, double fd_step) {
  if (minima.empty()) return std::nullopt;
  double sum = 0.0;
  int count = 0;
  for (const VectorXd& u : minima) {
    for (int nu = 0; nu < problem.grid.n_steps; ++nu) {
      sum += fd_derivative(problem, u, {nu, nu}, fd_step).value;
      ++count;
    }
  }
  return sum / count;
}

BoundReport BoundReport::check(std::string name, double analytic, double empirical, double slack,
                               bool hard, int samples, std::uint64_t seed, std::string note) {
  BoundReport r;
  r.name = std::move(name);
  r.analytic = analytic;
  r.empirical = empirical;
  r.slack = slack;
  r.satisfied = empirical <= analytic * slack;
  r.hard = hard;
  r.samples = samples;
  r.seed = seed;
  r.note = std::move(note);
  return r;
}

BoundReport BoundReport::value_only(std::string name, double analytic, std::string note) {
  BoundReport r;
  r.name = std::move(name);
  r.analytic = analytic;
  r.satisfied = true;
  r.hard = false;
  r.note = std::move(note);
  return r;
}

}  // namespace qcl
