#pragma once

#include <cmath>
#include <cstdint>
#include <random>

namespace nomamec {

/// Deterministic random stream owned by a single caller.
///
/// The engine is std::mt19937_64, whose output sequence is fixed by the
/// standard, and uniforms are formed from the raw 64-bit words (the
/// standard distributions are implementation-defined), so a given seed
/// yields identical draws on every conforming platform.
class RandomStream {
public:
  explicit RandomStream(std::uint64_t seed) : engine_(seed) {}

  /// Sub-stream `index` of a master seed. Seeds go through std::seed_seq,
  /// which is also fully specified.
  static RandomStream substream(std::uint64_t seed, std::uint64_t index) {
    std::seed_seq seq{static_cast<std::uint32_t>(seed),
                      static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(index),
                      static_cast<std::uint32_t>(index >> 32),
                      0x9e3779b9u};
    return RandomStream(seq);
  }

  /// Uniform on (0, 1], 53-bit resolution.
  double uniform() {
    return static_cast<double>((engine_() >> 11) + 1) * 0x1.0p-53;
  }

  /// Unit-mean exponential variate by inversion.
  double exponential() { return -std::log(uniform()); }

private:
  explicit RandomStream(std::seed_seq& seq) : engine_(seq) {}

  std::mt19937_64 engine_;
};

}  // namespace nomamec
