#include "cdmasim/sim.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <map>
#include <set>
#include <stdexcept>
#include <thread>

#include "cdmasim/channel.hpp"
#include "cdmasim/signal.hpp"

namespace cdmasim {

void ExperimentConfig::validate() const {
  if (users < 1) throw std::invalid_argument("users: must be >= 1");
  if (relays < 1) throw std::invalid_argument("relays: must be >= 1");
  if (chips < 2) throw std::invalid_argument("chips: must be >= 2");
  if (paths < 1) throw std::invalid_argument("paths: must be >= 1");
  if (paths >= chips)
    throw std::invalid_argument("paths: must satisfy paths < chips (got paths=" +
                                std::to_string(paths) + ", chips=" +
                                std::to_string(chips) + ")");
  if (symbols_per_packet < 1) throw std::invalid_argument("symbols: must be >= 1");
  if (trials < 1) throw std::invalid_argument("trials: must be >= 1");
  if (sweep_values.empty()) throw std::invalid_argument("snr: sweep must be nonempty");
  if (static_cast<int>(power_profile_db.size()) != paths)
    throw std::invalid_argument("profile: must list one dB value per path");
  if (detectors.empty()) throw std::invalid_argument("detector: none selected");
  if (strategies.empty()) throw std::invalid_argument("strategy: none selected");
  detector.validate();
  if (sweep_axis == SweepAxis::SnrDb && detector.n_reexamined > users)
    throw std::invalid_argument("nq: exceeds user count");
  if (sweep_axis == SweepAxis::Users)
    for (double k : sweep_values) {
      if (k < 1 || k != std::floor(k))
        throw std::invalid_argument("users: sweep values must be positive integers");
      if (detector.n_reexamined > static_cast<int>(k))
        throw std::invalid_argument("nq: exceeds user count");
    }
  const bool wants_exhaustive =
      std::find(strategies.begin(), strategies.end(), Strategy::Exhaustive) !=
      strategies.end();
  if (wants_exhaustive && relays > 12)
    throw std::invalid_argument("relays: exhaustive strategy capped at 12");
}

double snr_db_to_noise_variance(double snr_db) {
  // Unit per-user symbol energy on the destination-bound budget; SNR is
  // E_s / sigma^2 with sigma^2 per complex sample.
  return std::pow(10.0, -snr_db / 10.0);
}

PacketInstance draw_packet_instance(int users, int relays, int chips, int paths,
                                    const std::vector<double>& profile_db,
                                    double noise_variance, Rng& rng) {
  PacketInstance inst;
  inst.users = users;
  inst.relays = relays;
  inst.chips = chips;
  inst.paths = paths;
  inst.noise_variance = noise_variance;

  // Fixed draw order: codes, source-destination channels, then per relay its
  // K source-relay channels followed by its single relay-destination channel.
  // Consumers rely on this order for reproducibility.
  inst.codes = random_code_set(users, chips, rng);
  inst.spreading.reserve(users);
  for (int k = 0; k < users; ++k)
    inst.spreading.push_back(build_spreading_matrix(inst.codes[k], paths));

  inst.h_source_dest.reserve(users);
  for (int k = 0; k < users; ++k)
    inst.h_source_dest.push_back(sample_multipath_channel(profile_db, rng));

  inst.h_source_relay.resize(relays);
  inst.h_relay_dest.reserve(relays);
  for (int l = 0; l < relays; ++l) {
    for (int k = 0; k < users; ++k)
      inst.h_source_relay[l].push_back(sample_multipath_channel(profile_db, rng));
    inst.h_relay_dest.push_back(sample_multipath_channel(profile_db, rng));
  }
  return inst;
}

SinrContext make_sinr_context(const PacketInstance& inst) {
  SinrContext ctx;
  ctx.noise_variance = inst.noise_variance;
  ctx.source_dest.reserve(inst.users);
  for (int k = 0; k < inst.users; ++k)
    ctx.source_dest.push_back(
        effective_signature(inst.spreading[k], inst.h_source_dest[k], 1.0));
  ctx.relay_dest.resize(inst.relays);
  for (int l = 0; l < inst.relays; ++l)
    for (int k = 0; k < inst.users; ++k)
      ctx.relay_dest[l].push_back(
          effective_signature(inst.spreading[k], inst.h_relay_dest[l], 1.0));
  return ctx;
}

std::vector<double> relay_link_powers(const PacketInstance& inst) {
  std::vector<double> powers(inst.relays, 0.0);
  for (int l = 0; l < inst.relays; ++l)
    powers[l] = inst.h_relay_dest[l].squaredNorm();
  return powers;
}

std::vector<int> relay_decode_forward(const Eigen::VectorXcd& y_source_relay,
                                      const ReceiverContext& relay_rc,
                                      DetectorKind detector,
                                      const DetectorConfig& config) {
  return detect(detector, y_source_relay, relay_rc, config);
}

std::vector<ComboCount> simulate_packet(const PacketInstance& inst,
                                        const std::vector<DetectorStrategy>& combos,
                                        int symbols, const DetectorConfig& dconf,
                                        Rng& rng) {
  const Constellation& constellation = Constellation::get(dconf.modulation);
  const int k_users = inst.users;
  const int n_relays = inst.relays;
  const Eigen::Index m = inst.spreading.front().rows();
  const double sigma2 = inst.noise_variance;

  // Selection once per packet per strategy.
  const SinrContext ctx = make_sinr_context(inst);
  const std::vector<double> link_powers = relay_link_powers(inst);
  std::map<Strategy, RelaySet> selection;
  for (const auto& combo : combos)
    if (!selection.contains(combo.strategy))
      selection.emplace(combo.strategy,
                        select_relays(combo.strategy, ctx, link_powers));

  // Relay receivers (unit amplitude) for every relay any strategy selected.
  std::set<int> active_relays;
  for (const auto& [strategy, set] : selection)
    active_relays.insert(set.members.begin(), set.members.end());
  std::map<int, ReceiverContext> relay_rc;
  for (int l : active_relays) {
    Eigen::MatrixXcd cols(m, k_users);
    for (int k = 0; k < k_users; ++k)
      cols.col(k) = effective_signature(inst.spreading[k], inst.h_source_relay[l][k], 1.0);
    relay_rc.emplace(l, ReceiverContext(std::move(cols)));
  }

  // Destination receivers per strategy.
  std::map<Strategy, ReceiverContext> dest_rc;
  for (const auto& [strategy, set] : selection)
    dest_rc.emplace(strategy, ReceiverContext(stacked_columns(ctx, set.members)));

  std::vector<ComboCount> counts(combos.size());
  for (std::size_t c = 0; c < combos.size(); ++c)
    counts[c].sinr_evaluations = selection.at(combos[c].strategy).evaluations;

  // Unscaled per-symbol direct-phase sum is shared by all combinations.
  Eigen::VectorXcd direct_sum(m);
  Eigen::VectorXcd noise_sd(m), noise_rd(m);
  std::vector<Eigen::VectorXcd> y_source_relay(n_relays);
  std::vector<int> tx(k_users);

  for (int s = 0; s < symbols; ++s) {
    // Fixed draw order per symbol: transmitted points, direct-phase noise,
    // per-relay noise (all relays, selected or not), relay-phase noise.
    for (int k = 0; k < k_users; ++k)
      tx[k] = static_cast<int>(rng.uniform_int(constellation.size()));
    for (Eigen::Index i = 0; i < m; ++i) noise_sd[i] = rng.complex_gaussian(sigma2);
    std::vector<Eigen::VectorXcd> noise_sr(n_relays);
    for (int l = 0; l < n_relays; ++l) {
      noise_sr[l].resize(m);
      for (Eigen::Index i = 0; i < m; ++i)
        noise_sr[l][i] = rng.complex_gaussian(sigma2);
    }
    for (Eigen::Index i = 0; i < m; ++i) noise_rd[i] = rng.complex_gaussian(sigma2);

    direct_sum.setZero();
    for (int k = 0; k < k_users; ++k)
      direct_sum += ctx.source_dest[k] * constellation.point(tx[k]);

    for (int l : active_relays) {
      y_source_relay[l].resize(m);
      y_source_relay[l].setZero();
      for (int k = 0; k < k_users; ++k)
        y_source_relay[l] +=
            relay_rc.at(l).columns.col(k) * constellation.point(tx[k]);
      y_source_relay[l] += noise_sr[l];
    }

    // Per-relay decisions depend only on the detector, so cache across combos.
    std::map<std::pair<int, int>, std::vector<int>> relay_decisions;
    for (std::size_t c = 0; c < combos.size(); ++c) {
      const auto& set = selection.at(combos[c].strategy);
      const double amplitude = link_amplitude(static_cast<int>(set.members.size()));

      Eigen::VectorXcd relayed_sum = Eigen::VectorXcd::Zero(m);
      for (int l : set.members) {
        const auto key = std::make_pair(static_cast<int>(combos[c].detector), l);
        auto it = relay_decisions.find(key);
        if (it == relay_decisions.end())
          it = relay_decisions
                   .emplace(key, relay_decode_forward(y_source_relay[l],
                                                      relay_rc.at(l),
                                                      combos[c].detector, dconf))
                   .first;
        const auto& forwarded = it->second;
        for (int k = 0; k < k_users; ++k)
          relayed_sum += ctx.relay_dest[l][k] * constellation.point(forwarded[k]);
      }

      const Eigen::VectorXcd y =
          stack_received(amplitude * direct_sum + noise_sd,
                         amplitude * relayed_sum + noise_rd);
      const auto decisions =
          detect(combos[c].detector, y, dest_rc.at(combos[c].strategy), dconf);

      for (int k = 0; k < k_users; ++k) {
        const unsigned diff = constellation.bit_label(tx[k]) ^
                              constellation.bit_label(decisions[k]);
        counts[c].bit_errors += std::popcount(diff);
        counts[c].bits += constellation.bits_per_symbol();
      }
    }
  }
  return counts;
}

namespace {

struct Job {
  std::size_t sweep_index;
  int trial;
};

ExperimentConfig config_for_sweep_point(const ExperimentConfig& cfg,
                                        std::size_t sweep_index) {
  ExperimentConfig point = cfg;
  if (cfg.sweep_axis == SweepAxis::Users)
    point.users = static_cast<int>(cfg.sweep_values[sweep_index]);
  return point;
}

double sweep_noise_variance(const ExperimentConfig& cfg, std::size_t sweep_index) {
  const double snr_db = cfg.sweep_axis == SweepAxis::SnrDb
                            ? cfg.sweep_values[sweep_index]
                            : cfg.fixed_snr_db;
  return snr_db_to_noise_variance(snr_db);
}

}  // namespace

std::vector<BerRecord> run_experiment(const ExperimentConfig& cfg) {
  cfg.validate();

  std::vector<DetectorStrategy> combos;
  for (DetectorKind d : cfg.detectors)
    for (Strategy s : cfg.strategies) combos.push_back({d, s});

  std::vector<Job> jobs;
  for (std::size_t si = 0; si < cfg.sweep_values.size(); ++si)
    for (int t = 0; t < cfg.trials; ++t) jobs.push_back({si, t});

  // One result slot per job: threads never share accumulators, and the final
  // reduction is an order-independent integer sum.
  std::vector<std::vector<ComboCount>> job_counts(jobs.size());

  auto run_job = [&](std::size_t j) {
    const Job& job = jobs[j];
    const ExperimentConfig point = config_for_sweep_point(cfg, job.sweep_index);
    const double sigma2 = sweep_noise_variance(cfg, job.sweep_index);
    Rng rng(derive_seed(cfg.master_seed, job.sweep_index,
                        static_cast<std::uint64_t>(job.trial)));
    const PacketInstance inst =
        draw_packet_instance(point.users, point.relays, point.chips, point.paths,
                             point.power_profile_db, sigma2, rng);
    job_counts[j] = simulate_packet(inst, combos, point.symbols_per_packet,
                                    point.detector, rng);
  };

  unsigned n_threads = cfg.threads > 0
                           ? static_cast<unsigned>(cfg.threads)
                           : std::max(1u, std::thread::hardware_concurrency());
  n_threads = std::min<unsigned>(n_threads, jobs.size());
  if (n_threads <= 1) {
    for (std::size_t j = 0; j < jobs.size(); ++j) run_job(j);
  } else {
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < n_threads; ++t)
      pool.emplace_back([&, t] {
        for (std::size_t j = t; j < jobs.size(); j += n_threads) run_job(j);
      });
    for (auto& th : pool) th.join();
  }

  std::vector<BerRecord> records;
  for (std::size_t si = 0; si < cfg.sweep_values.size(); ++si) {
    for (std::size_t c = 0; c < combos.size(); ++c) {
      BerRecord rec;
      rec.sweep = cfg.sweep_values[si];
      rec.detector = combos[c].detector;
      rec.strategy = combos[c].strategy;
      for (std::size_t j = 0; j < jobs.size(); ++j) {
        if (jobs[j].sweep_index != si) continue;
        rec.bit_errors += job_counts[j][c].bit_errors;
        rec.bits += job_counts[j][c].bits;
        rec.sinr_evaluations += job_counts[j][c].sinr_evaluations;
      }
      rec.ber = rec.bits ? static_cast<double>(rec.bit_errors) /
                               static_cast<double>(rec.bits)
                         : 0.0;
      records.push_back(rec);
    }
  }
  return records;
}

}  // namespace cdmasim
