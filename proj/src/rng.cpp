#include "cdmasim/rng.hpp"

#include <cmath>
#include <numbers>

namespace cdmasim {

std::complex<double> Rng::complex_gaussian(double variance) {
  // Box-Muller; the pair feeds the real and imaginary parts so one call
  // consumes exactly two engine draws.
  const double u1 = uniform();
  const double u2 = uniform();
  const double radius = std::sqrt(-variance * std::log(1.0 - u1));
  const double angle = 2.0 * std::numbers::pi * u2;
  return {radius * std::cos(angle), radius * std::sin(angle)};
}

namespace {
std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}
}  // namespace

std::uint64_t derive_seed(std::uint64_t master, std::uint64_t a, std::uint64_t b) {
  std::uint64_t s = splitmix64(master ^ 0x8f1bbcdcbfa53e0bULL);
  s = splitmix64(s ^ splitmix64(a));
  s = splitmix64(s ^ splitmix64(b));
  return s;
}

}  // namespace cdmasim
