#pragma once

#include <Eigen/Dense>
#include <string>
#include <vector>

#include "cdmasim/constellation.hpp"

namespace cdmasim {

// Which soft estimates count as unreliable. BoundaryBand (the default) marks
// an estimate unreliable when it falls within the threshold of any slicer
// decision boundary, a band that runs unbounded along the boundary direction.
// NearestPoint instead marks estimates whose distance to the closest
// constellation point exceeds the threshold.
enum class ReliabilityRule { BoundaryBand, NearestPoint };

struct DetectorConfig {
  double reliability_threshold = 0.25;  // half-width of the boundary band
  int n_reexamined = 2;                 // most-unreliable users searched exhaustively
  int pic_iterations = 3;
  Modulation modulation = Modulation::BPSK;
  ReliabilityRule rule = ReliabilityRule::BoundaryBand;
  int list_size_cap = 4096;

  // Throws std::invalid_argument naming the offending field.
  void validate() const;
};

// Per-packet receiver state: effective signature columns plus the Gram
// products every per-symbol detection reuses.
struct ReceiverContext {
  Eigen::MatrixXcd columns;    // M (or 2M) x K effective signatures
  Eigen::MatrixXcd gram;       // columns^H * columns
  Eigen::VectorXd col_energy;  // squared column norms

  explicit ReceiverContext(Eigen::MatrixXcd cols);
  int users() const { return static_cast<int>(columns.cols()); }
};

// Normalized matched-filter outputs. A zero-energy column (inactive user)
// yields value 0 and is flagged so classification treats it as unreliable.
struct SoftEstimates {
  Eigen::VectorXcd values;
  Eigen::VectorXd point_distance;  // distance to nearest constellation point
  std::vector<bool> inactive;
};

// Index sets partitioning the users by estimate quality. `unreliable` is
// ordered by descending distance to the nearest constellation point;
// `reexamine` holds its first n_q entries and `slice_direct` the rest.
struct ReliabilityPartition {
  std::vector<int> reliable;
  std::vector<int> unreliable;
  std::vector<int> reexamine;
  std::vector<int> slice_direct;
};

// Matched filter bank scaled so a noiseless, interference-free input returns
// the transmitted symbol exactly.
SoftEstimates rake_front_end(const Eigen::VectorXcd& y, const ReceiverContext& rc,
                             const Constellation& constellation);

ReliabilityPartition classify_reliability(const SoftEstimates& soft,
                                          const Constellation& constellation,
                                          const DetectorConfig& config);

// All tentative decision vectors (as constellation point indices): equal to
// `sliced` outside the re-examined users, which sweep the full alphabet in
// lexicographic order of the canonical point ordering.
std::vector<std::vector<int>> enumerate_candidates(
    const ReliabilityPartition& partition, const std::vector<int>& sliced,
    const Constellation& constellation);

// Candidate with the smallest residual ||y - H b||^2; ties keep the earliest.
std::vector<int> ml_select(const std::vector<std::vector<int>>& candidates,
                           const Eigen::VectorXcd& y, const ReceiverContext& rc,
                           const Constellation& constellation);

// Multi-iteration parallel interference cancellation. Every user's decision
// is refreshed simultaneously from the previous iteration's decisions.
std::vector<int> pic_stage(const std::vector<int>& previous,
                           const Eigen::VectorXcd& y, const ReceiverContext& rc,
                           const Constellation& constellation, int iterations);

// Full pipeline: RAKE soft estimates -> reliability partition -> candidate
// lists -> ML selection -> PIC refinement.
std::vector<int> gl_pic_detect(const Eigen::VectorXcd& y, const ReceiverContext& rc,
                               const DetectorConfig& config);

// Baselines.
std::vector<int> rake_detect(const Eigen::VectorXcd& y, const ReceiverContext& rc,
                             const Constellation& constellation);
std::vector<int> conventional_pic(const Eigen::VectorXcd& y,
                                  const ReceiverContext& rc,
                                  const Constellation& constellation,
                                  int iterations);
// Successive cancellation in descending column-norm order.
std::vector<int> conventional_sic(const Eigen::VectorXcd& y,
                                  const ReceiverContext& rc,
                                  const Constellation& constellation);

enum class DetectorKind { Rake, Sic, Pic, GlPic };

std::string to_string(DetectorKind kind);

std::vector<int> detect(DetectorKind kind, const Eigen::VectorXcd& y,
                        const ReceiverContext& rc, const DetectorConfig& config);

// Point values for a decision vector of constellation indices.
Eigen::VectorXcd to_symbols(const std::vector<int>& indices,
                            const Constellation& constellation);

}  // namespace cdmasim
