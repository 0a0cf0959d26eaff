#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>
#include <complex>
#include <vector>

#include "cdmasim/signal.hpp"
#include "cdmasim/sim.hpp"
#include "doctest.h"

using namespace cdmasim;
using cplx = std::complex<double>;

namespace {

// Hand-built packet: orthogonal length-4 codes, single-path unit channels.
// Every receiver then sees orthogonal effective signatures.
PacketInstance orthogonal_instance(double noise_variance) {
  const int users = 4, relays = 2;
  const double h4[4][4] = {{1, 1, 1, 1}, {1, -1, 1, -1}, {1, 1, -1, -1},
                           {1, -1, -1, 1}};
  PacketInstance inst;
  inst.users = users;
  inst.relays = relays;
  inst.chips = 4;
  inst.paths = 1;
  inst.noise_variance = noise_variance;
  for (int k = 0; k < users; ++k) {
    SpreadingCode code;
    code.chips = Eigen::VectorXd(4);
    for (int i = 0; i < 4; ++i) code.chips[i] = 0.5 * h4[k][i];
    code.user_id = k;
    inst.codes.push_back(code);
    inst.spreading.push_back(build_spreading_matrix(inst.codes[k], 1));
  }
  Eigen::VectorXcd unit(1);
  unit[0] = cplx(1.0, 0.0);
  inst.h_source_dest.assign(users, unit);
  inst.h_source_relay.assign(relays, std::vector<Eigen::VectorXcd>(users, unit));
  inst.h_relay_dest.assign(relays, unit);
  return inst;
}

std::vector<DetectorStrategy> all_combos() {
  std::vector<DetectorStrategy> combos;
  for (auto d : {DetectorKind::Rake, DetectorKind::Sic, DetectorKind::Pic,
                 DetectorKind::GlPic})
    for (auto s : {Strategy::None, Strategy::Standard, Strategy::Proposed,
                   Strategy::Exhaustive})
      combos.push_back({d, s});
  return combos;
}

}  // namespace

TEST_CASE("noiseless orthogonal packet decodes without errors everywhere") {
  for (auto mod : {Modulation::BPSK, Modulation::QPSK}) {
    DetectorConfig dconf;
    dconf.modulation = mod;
    dconf.n_reexamined = 2;
    const PacketInstance inst = orthogonal_instance(1e-12);
    Rng rng(99);
    const auto counts = simulate_packet(inst, all_combos(), 50, dconf, rng);
    for (const auto& c : counts) {
      CHECK(c.bit_errors == 0);
      CHECK(c.bits > 0);
    }
  }
}

TEST_CASE("packet simulation is deterministic under a fixed seed") {
  DetectorConfig dconf;
  const PacketInstance inst = orthogonal_instance(0.5);
  Rng rng_a(42), rng_b(42);
  const auto a = simulate_packet(inst, all_combos(), 30, dconf, rng_a);
  const auto b = simulate_packet(inst, all_combos(), 30, dconf, rng_b);
  REQUIRE(a.size() == b.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    CHECK(a[i].bit_errors == b[i].bit_errors);
    CHECK(a[i].bits == b[i].bits);
    CHECK(a[i].sinr_evaluations == b[i].sinr_evaluations);
  }
}

TEST_CASE("per-combination results do not depend on the combination list") {
  DetectorConfig dconf;
  const PacketInstance inst = orthogonal_instance(0.8);
  const DetectorStrategy solo{DetectorKind::GlPic, Strategy::Proposed};
  Rng rng_a(7), rng_b(7);
  const auto alone = simulate_packet(inst, {solo}, 40, dconf, rng_a);
  const auto joint = simulate_packet(inst, all_combos(), 40, dconf, rng_b);
  // GlPic/Proposed sits at a fixed position in the full combo grid.
  std::size_t pos = 0;
  const auto combos = all_combos();
  for (std::size_t i = 0; i < combos.size(); ++i)
    if (combos[i].detector == solo.detector && combos[i].strategy == solo.strategy)
      pos = i;
  CHECK(alone[0].bit_errors == joint[pos].bit_errors);
  CHECK(alone[0].bits == joint[pos].bits);
}

TEST_CASE("relay decode-forward delegates to the configured detector") {
  Rng rng(5);
  const PacketInstance inst =
      draw_packet_instance(3, 2, 8, 2, {0.0, -3.0}, 0.3, rng);
  Eigen::MatrixXcd cols(inst.spreading[0].rows(), 3);
  for (int k = 0; k < 3; ++k)
    cols.col(k) = effective_signature(inst.spreading[k],
                                      inst.h_source_relay[0][k], 1.0);
  const ReceiverContext rc(std::move(cols));
  Eigen::VectorXcd y(rc.columns.rows());
  for (Eigen::Index i = 0; i < y.size(); ++i)
    y[i] = rng.complex_gaussian(1.0);
  DetectorConfig dconf;
  CHECK(relay_decode_forward(y, rc, DetectorKind::GlPic, dconf) ==
        gl_pic_detect(y, rc, dconf));
  CHECK(relay_decode_forward(y, rc, DetectorKind::Sic, dconf) ==
        conventional_sic(y, rc, Constellation::get(dconf.modulation)));
}

TEST_CASE("a relay mistake is outvoted by a dominant direct copy") {
  // One user, noiseless. The relay forwards the wrong symbol, but the direct
  // link holds 90% of the power, so the stacked matched filter keeps the
  // correct sign.
  Rng rng(11);
  Eigen::VectorXcd v(4), w(4);
  for (int i = 0; i < 4; ++i) {
    v[i] = rng.complex_gaussian(1.0);
    w[i] = rng.complex_gaussian(1.0);
  }
  v.normalize();
  w.normalize();
  const double a_direct = std::sqrt(0.9), a_relay = std::sqrt(0.1);

  Eigen::MatrixXcd h(8, 1);
  h.col(0) << a_direct * v, a_relay * w;
  const ReceiverContext rc(std::move(h));

  const cplx b(1.0, 0.0);
  Eigen::VectorXcd y(8);
  y << a_direct * v * b, a_relay * w * (-b);  // relay got it wrong

  DetectorConfig dconf;
  CHECK(gl_pic_detect(y, rc, dconf) == std::vector<int>{0});
  CHECK(rake_detect(y, rc, Constellation::get(dconf.modulation)) ==
        std::vector<int>{0});
}

TEST_CASE("single bit experiment yields BER zero or one") {
  ExperimentConfig cfg;
  cfg.users = 1;
  cfg.relays = 1;
  cfg.chips = 8;
  cfg.paths = 2;
  cfg.power_profile_db = {0.0, -3.0};
  cfg.symbols_per_packet = 1;
  cfg.trials = 1;
  cfg.sweep_values = {10.0};
  cfg.detector.n_reexamined = 1;
  cfg.detectors = {DetectorKind::GlPic};
  cfg.strategies = {Strategy::Proposed};
  const auto records = run_experiment(cfg);
  REQUIRE(records.size() == 1);
  CHECK(records[0].bits == 1);
  CHECK((records[0].ber == 0.0 || records[0].ber == 1.0));
}

TEST_CASE("experiment records are reproducible and thread-count independent") {
  ExperimentConfig cfg;
  cfg.users = 3;
  cfg.relays = 2;
  cfg.chips = 8;
  cfg.paths = 2;
  cfg.power_profile_db = {0.0, -3.0};
  cfg.symbols_per_packet = 20;
  cfg.trials = 6;
  cfg.sweep_values = {4.0, 8.0};
  cfg.detectors = {DetectorKind::GlPic, DetectorKind::Pic};
  cfg.strategies = {Strategy::Proposed, Strategy::Exhaustive};
  cfg.master_seed = 321;

  cfg.threads = 1;
  const auto a = run_experiment(cfg);
  cfg.threads = 3;
  const auto b = run_experiment(cfg);
  REQUIRE(a.size() == b.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    CHECK(a[i].bit_errors == b[i].bit_errors);
    CHECK(a[i].bits == b[i].bits);
    CHECK(a[i].sinr_evaluations == b[i].sinr_evaluations);
    CHECK(a[i].ber == static_cast<double>(a[i].bit_errors) /
                          static_cast<double>(a[i].bits));
  }

  // Exhaustive selection burns exactly 2^L - 1 evaluations per packet.
  for (const auto& r : a)
    if (r.strategy == Strategy::Exhaustive)
      CHECK(r.sinr_evaluations ==
            static_cast<std::uint64_t>(cfg.trials) * ((1u << cfg.relays) - 1));
}

TEST_CASE("error count is consistent with independent replications") {
  ExperimentConfig cfg;
  cfg.users = 2;
  cfg.relays = 2;
  cfg.chips = 8;
  cfg.paths = 2;
  cfg.power_profile_db = {0.0, -3.0};
  cfg.symbols_per_packet = 100;
  cfg.trials = 1;
  cfg.sweep_values = {10.0};
  cfg.detectors = {DetectorKind::GlPic};
  cfg.strategies = {Strategy::Proposed};

  cfg.master_seed = 1000;
  const auto probe = run_experiment(cfg);
  const double count = static_cast<double>(probe[0].bit_errors);

  double sum = 0.0;
  const int reps = 10;
  for (int r = 0; r < reps; ++r) {
    cfg.master_seed = 2000 + static_cast<std::uint64_t>(r);
    sum += static_cast<double>(run_experiment(cfg)[0].bit_errors);
  }
  const double mean = sum / reps;
  const double bits = static_cast<double>(probe[0].bits);
  const double p = std::max(mean / bits, 1.0 / bits);
  const double sigma = std::sqrt(bits * p * (1.0 - p));
  CHECK(std::abs(count - mean) <= 3.0 * sigma + 1.0);
}

TEST_CASE("BER does not grow with SNR beyond binomial noise") {
  ExperimentConfig cfg;
  cfg.users = 4;
  cfg.relays = 2;
  cfg.chips = 16;
  cfg.paths = 3;
  cfg.symbols_per_packet = 100;
  cfg.trials = 20;
  cfg.sweep_values = {0.0, 6.0, 12.0};
  cfg.detectors = {DetectorKind::GlPic};
  cfg.strategies = {Strategy::Proposed};
  cfg.master_seed = 77;
  const auto records = run_experiment(cfg);
  REQUIRE(records.size() == 3);
  int inversions = 0;
  for (std::size_t i = 1; i < records.size(); ++i) {
    const auto& hi = records[i];
    const auto& lo = records[i - 1];
    if (hi.ber > lo.ber) {
      const double p = std::max(lo.ber, 1.0 / static_cast<double>(lo.bits));
      const double sigma =
          std::sqrt(p * (1.0 - p) / static_cast<double>(hi.bits));
      CHECK(hi.ber - lo.ber <= 2.0 * sigma);
      ++inversions;
    }
  }
  CHECK(inversions <= 1);
}

TEST_CASE("destination-bound power budget holds for every selected set size") {
  Rng rng(13);
  const PacketInstance inst =
      draw_packet_instance(3, 4, 16, 3, {0.0, -3.0, -6.0}, 0.1, rng);
  const SinrContext ctx = make_sinr_context(inst);
  const auto powers = relay_link_powers(inst);
  for (auto strategy : {Strategy::None, Strategy::Standard, Strategy::Proposed,
                        Strategy::Exhaustive}) {
    const RelaySet set = select_relays(strategy, ctx, powers);
    const int active = static_cast<int>(set.members.size());
    const double a = link_amplitude(active);
    CHECK(std::abs(a * a + active * a * a - 1.0) < 1e-12);
  }
  // Unit-norm relay-destination channels: every link power is exactly 1.
  for (double p : powers) CHECK(p == doctest::Approx(1.0).epsilon(1e-12));
}
