#include "cdmasim/detectors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

namespace cdmasim {

void DetectorConfig::validate() const {
  if (reliability_threshold < 0.0)
    throw std::invalid_argument("dth: must be >= 0");
  if (n_reexamined < 0) throw std::invalid_argument("nq: must be >= 0");
  if (pic_iterations < 1) throw std::invalid_argument("iters: must be >= 1");
  const int n_points = Constellation::get(modulation).size();
  double list_size = 1.0;
  for (int i = 0; i < n_reexamined; ++i) list_size *= n_points;
  if (list_size > static_cast<double>(list_size_cap))
    throw std::invalid_argument("nq: candidate list size exceeds cap of " +
                                std::to_string(list_size_cap));
}

ReceiverContext::ReceiverContext(Eigen::MatrixXcd cols)
    : columns(std::move(cols)),
      gram(columns.adjoint() * columns),
      col_energy(gram.diagonal().real()) {}

SoftEstimates rake_front_end(const Eigen::VectorXcd& y, const ReceiverContext& rc,
                             const Constellation& constellation) {
  if (y.size() != rc.columns.rows())
    throw std::invalid_argument("rake_front_end: observation length mismatch");
  const int k_users = rc.users();
  SoftEstimates soft;
  soft.values = Eigen::VectorXcd::Zero(k_users);
  soft.point_distance = Eigen::VectorXd::Zero(k_users);
  soft.inactive.assign(k_users, false);
  for (int k = 0; k < k_users; ++k) {
    if (rc.col_energy[k] > 0.0) {
      soft.values[k] = rc.columns.col(k).dot(y) / rc.col_energy[k];
    } else {
      soft.inactive[k] = true;
    }
    soft.point_distance[k] = constellation.nearest_point_distance(soft.values[k]);
  }
  return soft;
}

ReliabilityPartition classify_reliability(const SoftEstimates& soft,
                                          const Constellation& constellation,
                                          const DetectorConfig& config) {
  const int k_users = static_cast<int>(soft.values.size());
  ReliabilityPartition part;
  for (int k = 0; k < k_users; ++k) {
    bool unreliable;
    if (soft.inactive[k]) {
      unreliable = true;
    } else if (config.rule == ReliabilityRule::BoundaryBand) {
      unreliable = constellation.boundary_distance(soft.values[k]) <
                   config.reliability_threshold;
    } else {
      unreliable = soft.point_distance[k] > config.reliability_threshold;
    }
    (unreliable ? part.unreliable : part.reliable).push_back(k);
  }
  // Most unreliable first: farthest from its reference point. Stable, so
  // equal distances keep ascending user order.
  std::stable_sort(part.unreliable.begin(), part.unreliable.end(),
                   [&](int a, int b) {
                     return soft.point_distance[a] > soft.point_distance[b];
                   });
  const int n_q = std::min<int>(config.n_reexamined,
                                static_cast<int>(part.unreliable.size()));
  part.reexamine.assign(part.unreliable.begin(), part.unreliable.begin() + n_q);
  part.slice_direct.assign(part.unreliable.begin() + n_q, part.unreliable.end());
  return part;
}

std::vector<std::vector<int>> enumerate_candidates(
    const ReliabilityPartition& partition, const std::vector<int>& sliced,
    const Constellation& constellation) {
  const int n_points = constellation.size();
  const int n_q = static_cast<int>(partition.reexamine.size());
  std::size_t total = 1;
  for (int i = 0; i < n_q; ++i) total *= static_cast<std::size_t>(n_points);

  std::vector<std::vector<int>> candidates;
  candidates.reserve(total);
  for (std::size_t j = 0; j < total; ++j) {
    std::vector<int> candidate = sliced;
    std::size_t rem = j;
    // Most significant digit on the most unreliable user.
    for (int pos = n_q - 1; pos >= 0; --pos) {
      candidate[partition.reexamine[pos]] = static_cast<int>(rem % n_points);
      rem /= n_points;
    }
    candidates.push_back(std::move(candidate));
  }
  return candidates;
}

std::vector<int> ml_select(const std::vector<std::vector<int>>& candidates,
                           const Eigen::VectorXcd& y, const ReceiverContext& rc,
                           const Constellation& constellation) {
  if (candidates.empty())
    throw std::invalid_argument("ml_select: empty candidate list");
  const int k_users = rc.users();
  const Eigen::VectorXcd matched = rc.columns.adjoint() * y;

  // ||y - H b||^2 = ||y||^2 - 2 Re(b^H z) + b^H G b, constant ||y||^2 dropped.
  double best_metric = std::numeric_limits<double>::infinity();
  std::size_t best = 0;
  Eigen::VectorXcd b(k_users);
  for (std::size_t j = 0; j < candidates.size(); ++j) {
    for (int k = 0; k < k_users; ++k)
      b[k] = constellation.point(candidates[j][k]);
    const double metric = (b.adjoint() * rc.gram * b).value().real() -
                          2.0 * b.dot(matched).real();
    if (metric < best_metric) {
      best_metric = metric;
      best = j;
    }
  }
  return candidates[best];
}

std::vector<int> pic_stage(const std::vector<int>& previous,
                           const Eigen::VectorXcd& y, const ReceiverContext& rc,
                           const Constellation& constellation, int iterations) {
  if (iterations < 1) throw std::invalid_argument("pic_stage: iterations >= 1");
  const int k_users = rc.users();
  const Eigen::VectorXcd matched = rc.columns.adjoint() * y;

  std::vector<int> current = previous;
  std::vector<int> next(k_users);
  Eigen::VectorXcd b(k_users);
  for (int it = 0; it < iterations; ++it) {
    for (int k = 0; k < k_users; ++k)
      b[k] = constellation.point(current[k]);
    for (int k = 0; k < k_users; ++k) {
      if (rc.col_energy[k] <= 0.0) {
        next[k] = constellation.slice_index(0.0);
        continue;
      }
      std::complex<double> interference = 0.0;
      for (int j = 0; j < k_users; ++j)
        if (j != k) interference += rc.gram(k, j) * b[j];
      next[k] = constellation.slice_index((matched[k] - interference) /
                                          rc.col_energy[k]);
    }
    current = next;
  }
  return current;
}

std::vector<int> gl_pic_detect(const Eigen::VectorXcd& y, const ReceiverContext& rc,
                               const DetectorConfig& config) {
  const Constellation& constellation = Constellation::get(config.modulation);
  const SoftEstimates soft = rake_front_end(y, rc, constellation);
  const ReliabilityPartition partition =
      classify_reliability(soft, constellation, config);

  std::vector<int> sliced(rc.users());
  for (int k = 0; k < rc.users(); ++k)
    sliced[k] = constellation.slice_index(soft.values[k]);

  const auto candidates = enumerate_candidates(partition, sliced, constellation);
  const auto best = ml_select(candidates, y, rc, constellation);
  return pic_stage(best, y, rc, constellation, config.pic_iterations);
}

std::vector<int> rake_detect(const Eigen::VectorXcd& y, const ReceiverContext& rc,
                             const Constellation& constellation) {
  const SoftEstimates soft = rake_front_end(y, rc, constellation);
  std::vector<int> decisions(rc.users());
  for (int k = 0; k < rc.users(); ++k)
    decisions[k] = constellation.slice_index(soft.values[k]);
  return decisions;
}

std::vector<int> conventional_pic(const Eigen::VectorXcd& y,
                                  const ReceiverContext& rc,
                                  const Constellation& constellation,
                                  int iterations) {
  return pic_stage(rake_detect(y, rc, constellation), y, rc, constellation,
                   iterations);
}

std::vector<int> conventional_sic(const Eigen::VectorXcd& y,
                                  const ReceiverContext& rc,
                                  const Constellation& constellation) {
  const int k_users = rc.users();
  std::vector<int> order(k_users);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
    return rc.col_energy[a] > rc.col_energy[b];
  });

  std::vector<int> decisions(k_users, 0);
  Eigen::VectorXcd residual = y;
  for (int k : order) {
    if (rc.col_energy[k] <= 0.0) {
      decisions[k] = constellation.slice_index(0.0);
      continue;
    }
    const std::complex<double> u =
        rc.columns.col(k).dot(residual) / rc.col_energy[k];
    decisions[k] = constellation.slice_index(u);
    residual -= rc.columns.col(k) * constellation.point(decisions[k]);
  }
  return decisions;
}

std::string to_string(DetectorKind kind) {
  switch (kind) {
    case DetectorKind::Rake: return "rake";
    case DetectorKind::Sic: return "sic";
    case DetectorKind::Pic: return "pic";
    case DetectorKind::GlPic: return "glpic";
  }
  return "?";
}

std::vector<int> detect(DetectorKind kind, const Eigen::VectorXcd& y,
                        const ReceiverContext& rc, const DetectorConfig& config) {
  const Constellation& constellation = Constellation::get(config.modulation);
  switch (kind) {
    case DetectorKind::Rake: return rake_detect(y, rc, constellation);
    case DetectorKind::Sic: return conventional_sic(y, rc, constellation);
    case DetectorKind::Pic:
      return conventional_pic(y, rc, constellation, config.pic_iterations);
    case DetectorKind::GlPic: return gl_pic_detect(y, rc, config);
  }
  throw std::invalid_argument("detect: unknown detector");
}

Eigen::VectorXcd to_symbols(const std::vector<int>& indices,
                            const Constellation& constellation) {
  Eigen::VectorXcd symbols(static_cast<Eigen::Index>(indices.size()));
  for (std::size_t k = 0; k < indices.size(); ++k)
    symbols[static_cast<Eigen::Index>(k)] = constellation.point(indices[k]);
  return symbols;
}

}  // namespace cdmasim
