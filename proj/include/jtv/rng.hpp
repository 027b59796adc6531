#ifndef JTV_RNG_HPP
#define JTV_RNG_HPP

#include <cmath>
#include <cstdint>
#include <random>

namespace jtv {

/// Seeded random source. All randomness in the library flows through an
/// explicit Rng passed by value; there is no global generator. Gaussian
/// variates use a hand-rolled Box-Muller on top of mt19937_64 so that a
/// given seed produces the same stream on every platform (the standard
/// leaves std::normal_distribution's algorithm unspecified).
class Rng {
  public:
    explicit Rng(std::uint64_t seed) : seed_(seed), engine_(mix(seed)) {}

    std::uint64_t next_u64() { return engine_(); }

    /// Uniform double in [0, 1).
    double uniform() {
        return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
    }

    /// Uniform integer in [lo, hi] inclusive.
    int uniform_int(int lo, int hi) {
        const std::uint64_t span = static_cast<std::uint64_t>(hi - lo) + 1;
        return lo + static_cast<int>(engine_() % span);
    }

    /// Standard normal variate (Box-Muller, one variate per pair of draws).
    double gaussian() {
        const double u1 =
            (static_cast<double>(engine_() >> 11) + 1.0) * 0x1.0p-53;  // (0,1]
        const double u2 = static_cast<double>(engine_() >> 11) * 0x1.0p-53;
        return std::sqrt(-2.0 * std::log(u1)) *
               std::cos(2.0 * 3.14159265358979323846 * u2);
    }

    /// Independent stream derived from the original seed and a stream id.
    /// Forking does not depend on how much of this generator was consumed,
    /// so parallel consumers get reproducible streams.
    Rng fork(std::uint64_t stream) const { return Rng(mix(seed_ ^ mix(stream + 0x9e3779b97f4a7c15ULL))); }

    std::uint64_t seed() const { return seed_; }

  private:
    static std::uint64_t mix(std::uint64_t z) {
        // splitmix64 finalizer
        z += 0x9e3779b97f4a7c15ULL;
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    std::uint64_t seed_;
    std::mt19937_64 engine_;
};

}  // namespace jtv

#endif
