#pragma once

#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

namespace lpc {

// Deterministic random source. The engine (mt19937_64) is fully specified by
// the standard; uniforms and normals are derived with explicit formulas
// instead of std:: distributions, whose output is implementation-defined.
// Identical seeds therefore give identical streams on every platform.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next_u64() { return engine_(); }

  // Uniform in [0, 1), 53-bit resolution.
  double uniform() {
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
  }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  // Uniform integer in [0, bound).
  std::uint64_t below(std::uint64_t bound) {
    // multiply-shift; bias is negligible for bound << 2^64 and the result
    // is deterministic, which is what matters here
    unsigned __int128 wide = static_cast<unsigned __int128>(engine_()) * bound;
    return static_cast<std::uint64_t>(wide >> 64);
  }

  // Standard normal via Box-Muller, one spare cached.
  double normal() {
    if (have_spare_) {
      have_spare_ = false;
      return spare_;
    }
    double u1 = 1.0 - uniform();  // (0, 1]
    double u2 = uniform();
    double radius = std::sqrt(-2.0 * std::log(u1));
    double angle = 6.283185307179586476925286766559 * u2;
    spare_ = radius * std::sin(angle);
    have_spare_ = true;
    return radius * std::cos(angle);
  }

  // Exponential(1), used for simplex-uniform sampling.
  double exponential() { return -std::log(1.0 - uniform()); }

 private:
  std::mt19937_64 engine_;
  bool have_spare_ = false;
  double spare_ = 0.0;
};

// Fisher-Yates; std::shuffle is implementation-defined, this is not.
template <class T>
void shuffle(std::vector<T>& v, Rng& rng) {
  for (std::size_t i = v.size(); i > 1; --i) {
    std::size_t j = static_cast<std::size_t>(rng.below(i));
    std::swap(v[i - 1], v[j]);
  }
}

// Random probability vector (normalized exponentials = uniform on the simplex).
inline std::vector<double> random_distribution(std::size_t n, Rng& rng) {
  std::vector<double> w(n);
  double total = 0.0;
  for (auto& x : w) {
    x = rng.exponential();
    total += x;
  }
  for (auto& x : w) x /= total;
  return w;
}

}  // namespace lpc
