#pragma once

#include <complex>
#include <string>
#include <vector>

namespace cdmasim {

enum class Modulation { BPSK, QPSK, QAM16 };

std::string to_string(Modulation m);

// Unit-average-energy symbol alphabet. Points are held in a fixed canonical
// order (descending real part, then descending imaginary part); slicer and
// candidate-list tie-breaks refer to this order.
class Constellation {
 public:
  static Constellation make(Modulation kind);
  // Shared immutable instance per modulation.
  static const Constellation& get(Modulation kind);

  Modulation kind() const { return kind_; }
  int size() const { return static_cast<int>(points_.size()); }
  const std::vector<std::complex<double>>& points() const { return points_; }
  std::complex<double> point(int index) const { return points_[index]; }

  // Minimum pairwise distance between points.
  double min_distance() const { return min_distance_; }

  int bits_per_symbol() const { return bits_per_symbol_; }
  // Gray bit label of a point; used for bit-error counting.
  unsigned bit_label(int index) const { return labels_[index]; }

  // Nearest point; ties go to the lower canonical index.
  int slice_index(std::complex<double> u) const;
  std::complex<double> slice(std::complex<double> u) const {
    return points_[slice_index(u)];
  }
  // Exact lookup of a value produced by point()/slice(); -1 if absent.
  int index_of(std::complex<double> value) const;

  double nearest_point_distance(std::complex<double> u) const;

  // Distance from u to the closest slicer decision boundary. Boundaries are
  // the per-axis midlines between adjacent amplitude levels; the band around
  // each runs unbounded along the other axis.
  double boundary_distance(std::complex<double> u) const;

 private:
  Constellation() = default;

  Modulation kind_ = Modulation::BPSK;
  std::vector<std::complex<double>> points_;
  std::vector<unsigned> labels_;
  std::vector<double> re_boundaries_;
  std::vector<double> im_boundaries_;
  double min_distance_ = 0.0;
  int bits_per_symbol_ = 1;
};

}  // namespace cdmasim
