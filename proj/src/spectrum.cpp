#include "qcl/spectrum.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <numbers>

#include <fftw3.h>
#include <nlohmann/json.hpp>

namespace qcl {

namespace {

// Tolerant real GCD over the sorted distinct eigenvalue differences.
double spectrum_quantum(const VectorXd& eigvals, double tol) {
  std::vector<double> gaps;
  for (int i = 0; i < eigvals.size(); ++i)
    for (int j = i + 1; j < eigvals.size(); ++j) {
      double d = std::abs(eigvals(j) - eigvals(i));
      if (d > tol) gaps.push_back(d);
    }
  if (gaps.empty()) return 0.0;  // fully degenerate control
  double g = gaps[0];
  for (double d : gaps) {
    double a = std::max(g, d), b = std::min(g, d);
    while (b > tol) {
      double r = std::fmod(a, b);
      if (r > b - tol) r = 0.0;  // fmod landed just under b
      a = b;
      b = r;
    }
    g = a;
  }
  return g;
}

}  // namespace

std::vector<int> FrequencyGrid::eigenvalue_units(const VectorXd& eigvals) const {
  std::vector<int> units(eigvals.size());
  double tol = 1e-9 * std::max(1.0, omega_max);
  for (int i = 0; i < eigvals.size(); ++i) {
    double ratio = (eigvals(i) - eigvals(0)) / base_spacing;
    int m = static_cast<int>(std::lround(ratio));
    if (std::abs(ratio - m) * base_spacing > tol)
      throw std::invalid_argument("frequency grid: eigenvalue off the equally spaced grid");
    units[i] = m;
  }
  return units;
}

FrequencyGrid FrequencyGrid::for_model(const HamiltonianModel& model, int trotter_order) {
  if (trotter_order < 1) throw std::invalid_argument("frequency grid: trotter order must be >= 1");
  FrequencyGrid g;
  g.n = trotter_order;
  g.omega_max = model.omega_max;
  double tol = 1e-9 * std::max(1.0, model.omega_max);
  if (!(model.omega_max > tol))
    throw std::invalid_argument("frequency grid: control spectrum is degenerate (omega_max = 0)");
  g.base_spacing = spectrum_quantum(model.eigvals, tol);
  if (g.base_spacing <= tol)
    throw std::invalid_argument("frequency grid: control spectrum is not equally spaced");
  double m_real = model.omega_max / g.base_spacing;
  if (m_real > 1e7)
    throw CapacityError("frequency grid: spectrum quantum too fine (m_max > 1e7)");
  g.m_max = static_cast<int>(std::lround(m_real));
  if (std::abs(m_real - g.m_max) * g.base_spacing > tol)
    throw std::invalid_argument("frequency grid: control spectrum is not equally spaced");
  g.eigenvalue_units(model.eigvals);  // validates every level
  g.k_max = g.m_max * trotter_order;
  return g;
}

std::size_t CoefficientTensor::offset(const std::vector<int>& k) const {
  if (static_cast<int>(k.size()) != n_steps)
    throw std::invalid_argument("coefficient tensor: index rank mismatch");
  const int nd = grid.n_delta();
  std::size_t flat = 0;
  for (int v : k) {
    if (v < -grid.k_max || v > grid.k_max)
      throw std::out_of_range("coefficient tensor: frequency index out of range");
    flat = flat * nd + static_cast<std::size_t>(v + grid.k_max);
  }
  return flat;
}

std::vector<int> CoefficientTensor::indices(std::size_t flat) const {
  const int nd = grid.n_delta();
  std::vector<int> k(n_steps);
  for (int axis = n_steps - 1; axis >= 0; --axis) {
    k[axis] = static_cast<int>(flat % nd) - grid.k_max;
    flat /= nd;
  }
  return k;
}

CoefficientTensor dft_extract(const LandscapeProblem& problem, TrotterConfig cfg,
                              const FrequencyGrid& grid, std::size_t element_budget) {
  if (grid.n != cfg.order)
    throw std::invalid_argument("dft_extract: frequency grid was built for a different trotter order");
  const int n_steps = problem.grid.n_steps;
  const std::size_t nd = static_cast<std::size_t>(grid.n_delta());

  std::size_t total = 1;
  for (int axis = 0; axis < n_steps; ++axis) {
    if (total > element_budget / nd)
      throw CapacityError("dft_extract: n_delta^N = " + std::to_string(nd) + "^" +
                          std::to_string(n_steps) + " exceeds the element budget");
    total *= nd;
  }

  const double dt = problem.grid.dt;
  // One lattice of control values serves every timestep.
  const double u_step = 2.0 * std::numbers::pi * grid.k_max / (dt * grid.omega_max * static_cast<double>(nd));

  TrotterEvaluator eval(problem, cfg);
  std::vector<MatrixXcd> step_cache(nd);
  std::vector<Complex> phase(nd);  // e^{-i dt omega_max u_j}, one factor per axis
  parallel_for(nd, 4, [&](std::size_t j) {
    double u = u_step * static_cast<double>(j);
    step_cache[j] = eval.step_matrix(u);
    phase[j] = std::exp(Complex(0.0, -dt * grid.omega_max * u));
  });

  CoefficientTensor tensor;
  tensor.grid = grid;
  tensor.n_steps = n_steps;
  tensor.dt = dt;
  tensor.data.assign(total, Complex(0.0, 0.0));

  // Walk the lattice in row-major order (axis 0 = first timestep, slowest;
  // the flat layout matches the tensor), reusing partial state products:
  // states[a] is psi after timesteps 0..a of the current multi-index.
  std::vector<std::size_t> j(n_steps, 0);
  std::vector<std::size_t> jj(n_steps, 0);
  std::vector<VectorXcd> states(n_steps);
  for (std::size_t flat = 0; flat < total; ++flat) {
    int start = 0;
    if (flat > 0) {
      std::size_t rem = flat;
      for (int axis = n_steps - 1; axis >= 0; --axis) {
        jj[axis] = rem % nd;
        rem /= nd;
      }
      while (jj[start] == j[start]) ++start;  // first axis whose index moved
      j = jj;
    }
    for (int axis = start; axis < n_steps; ++axis) {
      const VectorXcd& prev = axis == 0 ? eval.psi_frame() : states[axis - 1];
      states[axis] = step_cache[j[axis]] * prev;
    }
    Complex ph(1.0, 0.0);
    for (int axis = 0; axis < n_steps; ++axis) ph *= phase[j[axis]];
    tensor.data[flat] = ph * eval.observed(states[n_steps - 1]);
  }

  // Inverse DFT: c_{k - k_max} = n_delta^{-N} sum_j g_j e^{+2 pi i k.j / n_delta},
  // which is FFTW's unnormalized backward transform.
  std::vector<int> dims(n_steps, static_cast<int>(nd));
  fftw_plan plan = fftw_plan_dft(n_steps, dims.data(),
                                 reinterpret_cast<fftw_complex*>(tensor.data.data()),
                                 reinterpret_cast<fftw_complex*>(tensor.data.data()),
                                 FFTW_BACKWARD, FFTW_ESTIMATE);
  if (!plan) throw std::runtime_error("dft_extract: FFTW plan creation failed");
  fftw_execute(plan);
  fftw_destroy_plan(plan);
  const double norm = 1.0 / static_cast<double>(total);
  for (Complex& c : tensor.data) c *= norm;
  return tensor;
}

double resum(const CoefficientTensor& tensor, const VectorXd& u) {
  if (u.size() != tensor.n_steps)
    throw std::invalid_argument("resum: control vector must have one entry per timestep");
  const int nd = tensor.grid.n_delta();
  const double dt = tensor.dt;

  // Contract one axis at a time with the per-axis phase vector
  // e^{-i dt omega(k) u_axis}; O(total) work overall.
  std::vector<Complex> work(tensor.data.begin(), tensor.data.end());
  std::size_t block = work.size() / nd;  // elements per leading-index slice
  for (int axis = 0; axis < tensor.n_steps; ++axis) {
    VectorXcd ph(nd);
    for (int i = 0; i < nd; ++i)
      ph(i) = std::exp(Complex(0.0, -dt * tensor.grid.omega(i - tensor.grid.k_max) * u(axis)));
    std::vector<Complex> next(block, Complex(0.0, 0.0));
    for (int i = 0; i < nd; ++i) {
      const Complex f = ph(i);
      const Complex* src = work.data() + static_cast<std::size_t>(i) * block;
      for (std::size_t s = 0; s < block; ++s) next[s] += f * src[s];
    }
    work = std::move(next);
    block = block >= static_cast<std::size_t>(nd) ? block / nd : 1;
  }
  return work[0].real();
}

double l1_coefficient_sum(const CoefficientTensor& tensor) {
  double s = 0.0;
  for (const Complex& c : tensor.data) s += std::abs(c);
  return s;
}

double l2_coefficient_sum(const CoefficientTensor& tensor) {
  double s = 0.0;
  for (const Complex& c : tensor.data) s += std::norm(c);
  return s;
}

void export_tensor_csv(const CoefficientTensor& tensor, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open " + path);
  for (int axis = 1; axis <= tensor.n_steps; ++axis) out << "k" << axis << ",";
  for (int axis = 1; axis <= tensor.n_steps; ++axis) out << "omega" << axis << ",";
  out << "re_c,im_c\n";
  for (std::size_t flat = 0; flat < tensor.size(); ++flat) {
    std::vector<int> k = tensor.indices(flat);
    for (int v : k) out << v << ",";
    for (int v : k) out << format_double(tensor.grid.omega(v)) << ",";
    out << format_double(tensor.data[flat].real()) << "," << format_double(tensor.data[flat].imag())
        << "\n";
  }
}

void export_tensor_binary(const CoefficientTensor& tensor, const std::string& path) {
  nlohmann::json header;
  header["shape"] = std::vector<int>(tensor.n_steps, tensor.grid.n_delta());
  header["k_max"] = tensor.grid.k_max;
  header["m_max"] = tensor.grid.m_max;
  header["omega_max"] = tensor.grid.omega_max;
  header["base_spacing"] = tensor.grid.base_spacing;
  header["n"] = tensor.grid.n;
  header["dt"] = tensor.dt;
  std::string head = header.dump();

  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open " + path);
  std::uint64_t len = head.size();
  out.write(reinterpret_cast<const char*>(&len), sizeof(len));
  out.write(head.data(), static_cast<std::streamsize>(head.size()));
  out.write(reinterpret_cast<const char*>(tensor.data.data()),
            static_cast<std::streamsize>(tensor.data.size() * sizeof(Complex)));
}

CoefficientTensor import_tensor_binary(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::uint64_t len = 0;
  in.read(reinterpret_cast<char*>(&len), sizeof(len));
  std::string head(len, '\0');
  in.read(head.data(), static_cast<std::streamsize>(len));
  nlohmann::json header = nlohmann::json::parse(head);

  CoefficientTensor tensor;
  tensor.grid.k_max = header.at("k_max").get<int>();
  tensor.grid.m_max = header.at("m_max").get<int>();
  tensor.grid.omega_max = header.at("omega_max").get<double>();
  tensor.grid.base_spacing = header.at("base_spacing").get<double>();
  tensor.grid.n = header.at("n").get<int>();
  tensor.dt = header.at("dt").get<double>();
  auto shape = header.at("shape").get<std::vector<int>>();
  tensor.n_steps = static_cast<int>(shape.size());
  std::size_t total = 1;
  for (int s : shape) total *= static_cast<std::size_t>(s);
  tensor.data.resize(total);
  in.read(reinterpret_cast<char*>(tensor.data.data()),
          static_cast<std::streamsize>(total * sizeof(Complex)));
  if (!in) throw std::runtime_error("truncated tensor file " + path);
  return tensor;
}

}  // namespace qcl
