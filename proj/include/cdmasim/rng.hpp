#pragma once

#include <complex>
#include <cstdint>
#include <random>

namespace cdmasim {

// Deterministic random stream. The uniform/Gaussian mappings are implemented
// here (rather than with std:: distributions) so a given seed produces the
// same draw sequence on every standard library implementation.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next_u64() { return engine_(); }

  // Uniform on [0, 1) with 53-bit resolution.
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  // Uniform integer in [0, n), n >= 1.
  std::uint64_t uniform_int(std::uint64_t n) {
    return static_cast<std::uint64_t>(
        (static_cast<unsigned __int128>(engine_()) * n) >> 64);
  }

  // Circularly symmetric complex Gaussian with E|z|^2 = variance.
  std::complex<double> complex_gaussian(double variance);

 private:
  std::mt19937_64 engine_;
};

// Mixes a master seed with two stream coordinates (e.g. sweep index and trial
// index) into an independent per-packet seed.
std::uint64_t derive_seed(std::uint64_t master, std::uint64_t a, std::uint64_t b);

}  // namespace cdmasim
