#pragma once

#include <complex>
#include <cstdint>
#include <functional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

namespace qcl {

using Complex = std::complex<double>;
using Eigen::MatrixXcd;
using Eigen::MatrixXd;
using Eigen::VectorXcd;
using Eigen::VectorXd;

// Exit-code taxonomy used by the CLI: usage -> 1, capacity -> 2, audit -> 3.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct CapacityError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct ConditioningError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct AuditFailure : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Deterministic RNG. Uniform doubles are produced from the raw 64-bit
/// stream directly so that sequences are identical across standard
/// libraries (std::uniform_real_distribution is implementation-defined).
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : state_(seed ? seed : 0x9e3779b97f4a7c15ull) {}

  std::uint64_t next() {
    // splitmix64: tiny, well-mixed, and fully specified.
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ull);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
  }

  /// Uniform on [0, 1).
  double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  /// Uniform on [a, b).
  double uniform(double a, double b) { return a + (b - a) * uniform(); }

 private:
  std::uint64_t state_;
};

/// FNV-1a hash of a byte string, used to derive per-cell seeds and to
/// fingerprint configurations.
inline std::uint64_t fnv1a(std::string_view s, std::uint64_t h = 0xcbf29ce484222325ull) {
  for (unsigned char c : s) {
    h ^= c;
    h *= 0x100000001b3ull;
  }
  return h;
}

/// Seed for an experiment cell: mixes the global seed with a textual key.
inline std::uint64_t derive_seed(std::uint64_t global_seed, std::string_view key) {
  std::uint64_t h = fnv1a(key);
  h ^= global_seed + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
  return h ? h : 1;
}

/// Shortest-round-trip-ish decimal formatting ("%.17g") so tables are
/// byte-reproducible for fixed inputs.
std::string format_double(double x);

/// Runs fn(i) for i in [0, count) on up to n_threads workers. Work items
/// must be independent; results should be written to pre-sized slots so
/// the outcome does not depend on scheduling.
void parallel_for(std::size_t count, int n_threads, const std::function<void(std::size_t)>& fn);

/// sin(x)/x with the removable singularity handled by its Taylor series.
double sinc(double x);

}  // namespace qcl
