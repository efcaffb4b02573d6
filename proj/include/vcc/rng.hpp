#pragma once

#include <cstdint>
#include <random>
#include <vector>

namespace vcc {

// Seeded RNG with self-contained draw helpers. std::mt19937_64 output is
// specified bit-for-bit by the standard; the distribution helpers here avoid
// std::uniform_int_distribution, whose mapping is implementation-defined,
// so sequences are identical across platforms and standard libraries.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : gen_(seed) {}

  std::uint64_t next() { return gen_(); }

  // Uniform integer in [0, n). Rejection sampling, bias-free.
  std::uint64_t below(std::uint64_t n) {
    if (n == 0) return 0;
    std::uint64_t limit = UINT64_MAX - UINT64_MAX % n;
    std::uint64_t x;
    do {
      x = gen_();
    } while (x >= limit);
    return x % n;
  }

  bool chance(double p) {
    // 53-bit mantissa draw in [0,1)
    double u = static_cast<double>(gen_() >> 11) * 0x1.0p-53;
    return u < p;
  }

  template <typename T>
  const T& pick(const std::vector<T>& v) {
    return v[static_cast<std::size_t>(below(v.size()))];
  }

  // Fisher-Yates with fixed draw order.
  template <typename T>
  void shuffle(std::vector<T>& v) {
    for (std::size_t i = v.size(); i > 1; --i) {
      std::size_t j = static_cast<std::size_t>(below(i));
      std::swap(v[i - 1], v[j]);
    }
  }

  // Derive an independent stream for a named subtask. Keeps per-item
  // generation independent of iteration order.
  static std::uint64_t derive(std::uint64_t seed, std::uint64_t salt) {
    // splitmix64 finalizer over (seed ^ rotated salt)
    std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (salt + 1);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

 private:
  std::mt19937_64 gen_;
};

}  // namespace vcc
