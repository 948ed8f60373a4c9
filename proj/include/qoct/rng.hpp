#ifndef QOCT_RNG_HPP
#define QOCT_RNG_HPP

#include <cstdint>
#include <random>

namespace qoct {

// Uniform doubles built from raw mt19937_64 output. std::uniform_real_
// distribution is implementation-defined, which would break the
// byte-identical determinism contract across standard libraries.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  double uniform() {  // [0, 1)
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
  }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  std::uint64_t next() { return engine_(); }

 private:
  std::mt19937_64 engine_;
};

}  // namespace qoct

#endif
