#include "cdmasim/constellation.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace cdmasim {

std::string to_string(Modulation m) {
  switch (m) {
    case Modulation::BPSK: return "bpsk";
    case Modulation::QPSK: return "qpsk";
    case Modulation::QAM16: return "16qam";
  }
  return "?";
}

namespace {

// Midpoints between adjacent distinct coordinate levels.
std::vector<double> axis_boundaries(std::vector<double> levels) {
  std::sort(levels.begin(), levels.end());
  levels.erase(std::unique(levels.begin(), levels.end()), levels.end());
  std::vector<double> mids;
  for (std::size_t i = 0; i + 1 < levels.size(); ++i)
    mids.push_back(0.5 * (levels[i] + levels[i + 1]));
  return mids;
}

// 2-bit Gray code along an amplitude axis ordered [+3, +1, -1, -3].
constexpr unsigned kGray4[4] = {0b10u, 0b11u, 0b01u, 0b00u};

}  // namespace

Constellation Constellation::make(Modulation kind) {
  Constellation c;
  c.kind_ = kind;
  switch (kind) {
    case Modulation::BPSK:
      c.points_ = {{1.0, 0.0}, {-1.0, 0.0}};
      c.labels_ = {0u, 1u};
      c.bits_per_symbol_ = 1;
      break;
    case Modulation::QPSK: {
      const double s = 1.0 / std::sqrt(2.0);
      for (int re = 0; re < 2; ++re)
        for (int im = 0; im < 2; ++im) {
          c.points_.emplace_back(re ? -s : s, im ? -s : s);
          c.labels_.push_back(static_cast<unsigned>((re << 1) | im));
        }
      c.bits_per_symbol_ = 2;
      break;
    }
    case Modulation::QAM16: {
      const double s = 1.0 / std::sqrt(10.0);
      const double levels[4] = {3.0, 1.0, -1.0, -3.0};
      for (int re = 0; re < 4; ++re)
        for (int im = 0; im < 4; ++im) {
          c.points_.emplace_back(levels[re] * s, levels[im] * s);
          c.labels_.push_back((kGray4[re] << 2) | kGray4[im]);
        }
      c.bits_per_symbol_ = 4;
      break;
    }
  }

  std::vector<double> re_levels, im_levels;
  for (const auto& p : c.points_) {
    re_levels.push_back(p.real());
    im_levels.push_back(p.imag());
  }
  c.re_boundaries_ = axis_boundaries(re_levels);
  c.im_boundaries_ = axis_boundaries(im_levels);

  double dmin = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < c.points_.size(); ++i)
    for (std::size_t j = i + 1; j < c.points_.size(); ++j)
      dmin = std::min(dmin, std::abs(c.points_[i] - c.points_[j]));
  c.min_distance_ = dmin;
  return c;
}

const Constellation& Constellation::get(Modulation kind) {
  static const Constellation bpsk = make(Modulation::BPSK);
  static const Constellation qpsk = make(Modulation::QPSK);
  static const Constellation qam16 = make(Modulation::QAM16);
  switch (kind) {
    case Modulation::QPSK: return qpsk;
    case Modulation::QAM16: return qam16;
    default: return bpsk;
  }
}

int Constellation::slice_index(std::complex<double> u) const {
  int best = 0;
  double best_d2 = std::numeric_limits<double>::infinity();
  for (int i = 0; i < size(); ++i) {
    const double d2 = std::norm(u - points_[i]);
    if (d2 < best_d2) {
      best_d2 = d2;
      best = i;
    }
  }
  return best;
}

int Constellation::index_of(std::complex<double> value) const {
  for (int i = 0; i < size(); ++i)
    if (points_[i] == value) return i;
  return -1;
}

double Constellation::nearest_point_distance(std::complex<double> u) const {
  return std::abs(u - points_[slice_index(u)]);
}

double Constellation::boundary_distance(std::complex<double> u) const {
  double d = std::numeric_limits<double>::infinity();
  for (double b : re_boundaries_) d = std::min(d, std::abs(u.real() - b));
  for (double b : im_boundaries_) d = std::min(d, std::abs(u.imag() - b));
  return d;
}

}  // namespace cdmasim
