#ifndef MUFRAC_RNG_HPP
#define MUFRAC_RNG_HPP

#include <cstdint>
#include <random>

namespace mufrac {

/// Seeded generator with a portable uniform mapping. std::mt19937_64 output
/// is fixed by the standard; the distributions in <random> are not, so the
/// conversion to [0,1) is done here.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(mix(seed)) {}

  /// Independent stream for (seed, a, b), e.g. (seed, beta index) or
  /// (seed, scale).
  static Rng substream(std::uint64_t seed, std::uint64_t a, std::uint64_t b = 0) {
    return Rng(mix(seed ^ mix(a + 0x9e3779b97f4a7c15ULL) ^ mix(b + 0xbf58476d1ce4e5b9ULL)));
  }

  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

 private:
  static std::uint64_t mix(std::uint64_t z) {
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  std::mt19937_64 engine_;
};

}  // namespace mufrac

#endif  // MUFRAC_RNG_HPP
