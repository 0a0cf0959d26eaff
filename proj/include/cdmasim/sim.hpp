#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <vector>

#include "cdmasim/detectors.hpp"
#include "cdmasim/relay_selection.hpp"
#include "cdmasim/rng.hpp"
#include "cdmasim/spreading.hpp"

namespace cdmasim {

enum class SweepAxis { SnrDb, Users };

struct DetectorStrategy {
  DetectorKind detector = DetectorKind::GlPic;
  Strategy strategy = Strategy::Proposed;
};

struct ExperimentConfig {
  int users = 10;
  int relays = 6;
  int chips = 16;
  int paths = 3;
  int symbols_per_packet = 200;
  int trials = 40;

  SweepAxis sweep_axis = SweepAxis::SnrDb;
  std::vector<double> sweep_values{0.0, 4.0, 8.0, 12.0, 16.0};
  double fixed_snr_db = 15.0;  // used when sweeping the user count

  std::vector<DetectorKind> detectors{DetectorKind::GlPic};
  std::vector<Strategy> strategies{Strategy::Proposed};

  DetectorConfig detector;  // shared by relays and destination
  std::vector<double> power_profile_db{0.0, -3.0, -6.0};
  std::uint64_t master_seed = 12345;
  int threads = 0;  // 0 = hardware concurrency

  // Throws std::invalid_argument naming the offending field.
  void validate() const;
};

struct BerRecord {
  double sweep = 0.0;
  DetectorKind detector = DetectorKind::GlPic;
  Strategy strategy = Strategy::Proposed;
  std::uint64_t bit_errors = 0;
  std::uint64_t bits = 0;
  double ber = 0.0;
  std::uint64_t sinr_evaluations = 0;
};

// One packet's channel state: codes and per-link unit-norm channels, redrawn
// each packet and held constant for its symbols.
struct PacketInstance {
  int users = 0;
  int relays = 0;
  int chips = 0;
  int paths = 0;
  double noise_variance = 0.0;

  std::vector<SpreadingCode> codes;                           // per user
  std::vector<Eigen::MatrixXd> spreading;                     // per user, M x Lp
  std::vector<Eigen::VectorXcd> h_source_dest;                // [user]
  std::vector<std::vector<Eigen::VectorXcd>> h_source_relay;  // [relay][user]
  std::vector<Eigen::VectorXcd> h_relay_dest;                 // [relay]: one
                                                              // channel per
                                                              // relay-destination
                                                              // node pair
};

PacketInstance draw_packet_instance(int users, int relays, int chips, int paths,
                                    const std::vector<double>& profile_db,
                                    double noise_variance, Rng& rng);

// Destination-side selection context for an instance (unscaled signatures).
SinrContext make_sinr_context(const PacketInstance& instance);

// Squared relay-destination channel norms, the standard greedy's pruning
// metric.
std::vector<double> relay_link_powers(const PacketInstance& instance);

// DF detection at one relay: all users from the relay's own observation.
std::vector<int> relay_decode_forward(const Eigen::VectorXcd& y_source_relay,
                                      const ReceiverContext& relay_rc,
                                      DetectorKind detector,
                                      const DetectorConfig& config);

struct ComboCount {
  std::uint64_t bit_errors = 0;
  std::uint64_t bits = 0;
  std::uint64_t sinr_evaluations = 0;
};

// Simulates one packet for every (detector, strategy) combination over shared
// channel, symbol and noise draws, so combinations are compared on identical
// realizations and results do not depend on which combinations run together.
std::vector<ComboCount> simulate_packet(const PacketInstance& instance,
                                        const std::vector<DetectorStrategy>& combos,
                                        int symbols, const DetectorConfig& dconf,
                                        Rng& rng);

// Full Monte-Carlo sweep: per sweep point and trial, an independently seeded
// packet; counts reduce across trials into one record per (sweep point,
// detector, strategy).
std::vector<BerRecord> run_experiment(const ExperimentConfig& cfg);

double snr_db_to_noise_variance(double snr_db);

}  // namespace cdmasim
