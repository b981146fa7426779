#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <numbers>
#include <string_view>

namespace berezin {

/// Counter-splittable 64-bit generator (splitmix64). All randomness in the
/// toolkit flows through this type so that sequences are identical across
/// platforms and standard-library versions; std:: distributions are
/// deliberately avoided for that reason.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next_u64() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ull);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
  }

  /// Uniform in [0, 1).
  double uniform01() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

  int uniform_int(int lo, int hi) {  // inclusive bounds
    return lo + static_cast<int>(next_u64() % static_cast<std::uint64_t>(hi - lo + 1));
  }

  /// Standard real Gaussian via Box-Muller; second deviate cached.
  double gaussian() {
    if (have_spare_) {
      have_spare_ = false;
      return spare_;
    }
    const double u1 = static_cast<double>((next_u64() >> 11) + 1) * 0x1.0p-53;  // (0, 1]
    const double u2 = uniform01();
    const double radius = std::sqrt(-2.0 * std::log(u1));
    const double angle = 2.0 * std::numbers::pi * u2;
    spare_ = radius * std::sin(angle);
    have_spare_ = true;
    return radius * std::cos(angle);
  }

  /// Standard complex Gaussian (E|z|^2 = 1).
  std::complex<double> cgaussian() {
    const double re = gaussian();
    const double im = gaussian();
    return {re * std::numbers::sqrt2 / 2.0, im * std::numbers::sqrt2 / 2.0};
  }

  /// Uniform phase on the unit circle.
  std::complex<double> phase() {
    const double t = uniform(0.0, 2.0 * std::numbers::pi);
    return {std::cos(t), std::sin(t)};
  }

 private:
  std::uint64_t state_;
  double spare_ = 0.0;
  bool have_spare_ = false;
};

/// FNV-1a over a tag string; used to split one master seed into independent
/// per-(check, trial) streams.
constexpr std::uint64_t hash_tag(std::string_view tag) {
  std::uint64_t h = 0xcbf29ce484222325ull;
  for (char c : tag) {
    h ^= static_cast<unsigned char>(c);
    h *= 0x100000001b3ull;
  }
  return h;
}

/// Derive the seed of trial `counter` of the stream named `tag`. Each trial
/// is reproducible in isolation from (master, tag, counter).
inline std::uint64_t derive_seed(std::uint64_t master, std::string_view tag,
                                 std::uint64_t counter) {
  Rng mix(master ^ hash_tag(tag) ^ (0x9e3779b97f4a7c15ull * (counter + 1)));
  return mix.next_u64();
}

}  // namespace berezin
