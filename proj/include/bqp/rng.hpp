#pragma once

#include <cstdint>
#include <random>

namespace bqp {

/// SplitMix64 step. Used to derive independent engine seeds from a
/// (seed, stream) pair.
inline std::uint64_t splitmix64(std::uint64_t& state) {
  std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

/// Seeded random stream.
///
/// Stream k of seed s is a std::mt19937_64 seeded with the second SplitMix64
/// output of state (s XOR k * 0xd1b54a32d192ed03). Uniforms take the top 53
/// bits of one engine draw. Normals use the Box-Muller transform on two
/// uniforms, u1 in (0,1] and u2 in [0,1), returning r*cos(2 pi u2) first and
/// caching r*sin(2 pi u2) for the next call. Coin flips take the top bit of
/// one engine draw. All of this is fixed so a (seed, stream) pair yields the
/// same values on every platform with IEEE doubles and a conforming libm.
class RandomStream {
 public:
  RandomStream(std::uint64_t seed, std::uint64_t stream)
      : engine_(DeriveSeed(seed, stream)) {}

  double Uniform() {
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
  }

  double Normal();

  bool Coin() { return (engine_() >> 63) != 0; }

  std::uint64_t Bits() { return engine_(); }

 private:
  static std::uint64_t DeriveSeed(std::uint64_t seed, std::uint64_t stream) {
    std::uint64_t state = seed ^ (stream * 0xd1b54a32d192ed03ULL);
    splitmix64(state);
    return splitmix64(state);
  }

  std::mt19937_64 engine_;
  bool has_spare_ = false;
  double spare_ = 0.0;
};

}  // namespace bqp
