#pragma once

#include <cmath>
#include <cstdint>
#include <string_view>

namespace netcap {

// Self-contained PRNG (xoshiro256** seeded via splitmix64). The standard
// library distributions are implementation-defined, which would break
// byte-identical reports across toolchains, so everything random in this
// project flows through this class.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : key_(seed) {
    std::uint64_t s = seed;
    for (auto& word : state_) word = splitmix(s);
  }

  // Named substream: depends only on (seed, name), never on draw order.
  Rng stream(std::string_view name) const { return Rng(mix(key_, fnv1a(name))); }
  Rng stream(std::uint64_t salt) const { return Rng(mix(key_, salt)); }

  std::uint64_t bits() {
    const std::uint64_t result = rotl(state_[1] * 5, 7) * 9;
    const std::uint64_t t = state_[1] << 17;
    state_[2] ^= state_[0];
    state_[3] ^= state_[1];
    state_[1] ^= state_[2];
    state_[0] ^= state_[3];
    state_[2] ^= t;
    state_[3] = rotl(state_[3], 45);
    return result;
  }

  // Uniform in [0, 1), 53-bit resolution.
  double uniform() { return static_cast<double>(bits() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  // Standard normal via Box-Muller; one value per call so the consumed
  // stream length is independent of caller pairing.
  double normal() {
    double u1 = uniform();
    while (u1 <= 0.0) u1 = uniform();
    const double u2 = uniform();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(6.283185307179586476925286766559 * u2);
  }

  // Inclusive range.
  int uniform_int(int lo, int hi) {
    const std::uint64_t span = static_cast<std::uint64_t>(hi - lo) + 1;
    return lo + static_cast<int>(bits() % span);
  }

  bool coin(double p_true = 0.5) { return uniform() < p_true; }

  int sign() { return coin() ? 1 : -1; }

 private:
  static std::uint64_t splitmix(std::uint64_t& s) {
    std::uint64_t z = (s += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  static std::uint64_t fnv1a(std::string_view s) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (const char c : s) {
      h ^= static_cast<unsigned char>(c);
      h *= 0x100000001b3ULL;
    }
    return h;
  }

  static std::uint64_t mix(std::uint64_t a, std::uint64_t b) {
    std::uint64_t s = a ^ (b + 0x9e3779b97f4a7c15ULL + (a << 6) + (a >> 2));
    return splitmix(s);
  }

  static std::uint64_t rotl(std::uint64_t x, int k) { return (x << k) | (x >> (64 - k)); }

  std::uint64_t key_;
  std::uint64_t state_[4];
};

}  // namespace netcap
