#include "cdmasim/channel.hpp"

#include <cmath>
#include <complex>
#include <numbers>

namespace cdmasim {

std::vector<double> profile_amplitudes(const std::vector<double>& profile_db) {
  std::vector<double> amps(profile_db.size());
  for (std::size_t i = 0; i < profile_db.size(); ++i)
    amps[i] = std::pow(10.0, profile_db[i] / 20.0);
  return amps;
}

Eigen::VectorXcd sample_raw_taps(const std::vector<double>& profile_db, Rng& rng) {
  const auto amps = profile_amplitudes(profile_db);
  Eigen::VectorXcd taps(static_cast<Eigen::Index>(amps.size()));
  for (std::size_t i = 0; i < amps.size(); ++i) {
    const double magnitude = rng.uniform();
    const double phase = 2.0 * std::numbers::pi * rng.uniform();
    taps[static_cast<Eigen::Index>(i)] =
        amps[i] * magnitude * std::complex<double>(std::cos(phase), std::sin(phase));
  }
  return taps;
}

Eigen::VectorXcd sample_multipath_channel(const std::vector<double>& profile_db,
                                          Rng& rng) {
  for (;;) {
    Eigen::VectorXcd taps = sample_raw_taps(profile_db, rng);
    const double norm = taps.norm();
    if (norm > 1e-30) return taps / norm;
    // All-zero draw (vanishing probability): redraw.
  }
}

}  // namespace cdmasim
