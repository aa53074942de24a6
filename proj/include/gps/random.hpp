#pragma once

#include <cstdint>
#include <random>

namespace gps {

// SplitMix64 mixer; used to derive well-separated per-trial seeds.
inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

// Maps a draw x in [0,1) onto (0,1]; an underlying 0.0 becomes 1.0.
inline double open_closed_from(double x) { return 1.0 - x; }

// Deterministic random source. std::uniform_*_distribution is implementation
// defined, so draws are derived from raw mt19937_64 output directly and
// reproduce bit-for-bit across standard libraries.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : gen_(seed) {}

  // Uniform on [0,1) with 53-bit resolution.
  double uniform01() { return static_cast<double>(gen_() >> 11) * kInv53; }

  // Uniform on (0,1]; never returns zero.
  double uniform_open_closed() { return open_closed_from(uniform01()); }

  // Uniform integer in [0, bound); unbiased via rejection. bound > 0.
  std::uint64_t below(std::uint64_t bound) {
    const std::uint64_t limit = UINT64_MAX - UINT64_MAX % bound;
    std::uint64_t x = gen_();
    while (x >= limit) x = gen_();
    return x % bound;
  }

  std::uint64_t raw() { return gen_(); }

 private:
  static constexpr double kInv53 = 1.0 / 9007199254740992.0;  // 2^-53

  std::mt19937_64 gen_;
};

}  // namespace gps
