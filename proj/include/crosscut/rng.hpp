#pragma once

#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

namespace crosscut {

// Deterministic RNG wrapper. mt19937_64 output is pinned by the standard and
// the derived draws below avoid std:: distributions, whose streams differ
// across standard libraries.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : eng_(seed) {}

  std::uint64_t bits() { return eng_(); }

  // Uniform on [0, 1).
  double uniform01() { return (bits() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

  // Uniform on {0, ..., n-1} via multiply-shift.
  std::uint64_t below(std::uint64_t n) {
    return static_cast<std::uint64_t>(
        (static_cast<unsigned __int128>(bits()) * n) >> 64);
  }

  long uniform_int(long lo, long hi) {  // inclusive bounds
    return lo + static_cast<long>(below(static_cast<std::uint64_t>(hi - lo + 1)));
  }

  bool coin() { return (bits() & 1u) != 0; }

  // Uniform point of the standard simplex (exponential spacings).
  std::vector<double> simplex(int n) {
    std::vector<double> g(n);
    double total = 0.0;
    for (int i = 0; i < n; ++i) {
      g[i] = -std::log(1.0 - uniform01());
      total += g[i];
    }
    for (int i = 0; i < n; ++i) g[i] /= total;
    return g;
  }

  // First k of 0..n-1 after a partial Fisher-Yates shuffle. Requires k <= n.
  std::vector<int> sample_without_replacement(int n, int k) {
    if (k > n) k = n;
    std::vector<int> idx(n);
    for (int i = 0; i < n; ++i) idx[i] = i;
    for (int i = 0; i < k; ++i) {
      int j = i + static_cast<int>(below(static_cast<std::uint64_t>(n - i)));
      std::swap(idx[i], idx[j]);
    }
    idx.resize(k);
    return idx;
  }

 private:
  std::mt19937_64 eng_;
};

// Decorrelated sub-seed (splitmix64 step), used to key per-instance streams.
inline std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index) {
  std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (index + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

}  // namespace crosscut
