#include <doctest.h>

#include <cmath>
#include <vector>

#include "mcpqe/engine.hpp"
#include "mcpqe/errors.hpp"
#include "mcpqe/fcidump.hpp"
#include "mcpqe/statevector.hpp"

#include "../support/fixtures.hpp"

using namespace mcpqe;
using mcpqe::testing::fcidump_path;
using mcpqe::testing::reference_entry;

namespace {

MolecularSystem h2_system() {
  return build_system(parse_fcidump(fcidump_path("h2/0.7414A")), 0);
}

MolecularSystem h3plus_system() {
  return build_system(parse_fcidump(fcidump_path("h3plus/2.0000A")), 0);
}

AnsatzState pool_with_thetas(const MolecularSystem& sys,
                             const std::vector<double>& thetas) {
  AnsatzState a = enumerate_uccsd(sys.ints, sys.reference);
  REQUIRE(a.excitations.size() == thetas.size());
  for (std::size_t i = 0; i < thetas.size(); ++i) {
    a.excitations[i].theta = thetas[i];
  }
  return a;
}

/// Brute-force r_i = <phi_i|(H - s_eff)|Psi> for the operator measured by the
/// group estimator, i.e. the full Hamiltonian with its identity folded into
/// the shift argument.
std::vector<double> brute_residuals(const MolecularSystem& sys,
                                    const AnsatzState& state, double shift) {
  const Statevector psi = prepare_state(state);
  const Statevector w = psi.apply_operator(sys.h_corr);
  const double id_coeff = sys.h_corr.coefficient(0, 0).real();
  std::vector<double> r;
  auto push = [&](uint64_t mask, double sign) {
    const double overlap = sign * psi.amplitude(mask).real();
    r.push_back(sign * w.amplitude(mask).real() - id_coeff * overlap -
                shift * overlap);
  };
  push(state.reference, 1.0);
  for (const auto& ex : state.excitations) push(ex.target_mask, ex.sign);
  return r;
}

}  // namespace

TEST_CASE("shift update follows damped log population growth") {
  // Unchanged population leaves the shift alone.
  CHECK(update_shift(-0.3, 120.0, 120.0, 0.5, 5, 0.2) == doctest::Approx(-0.3));
  // Growth by e with zeta = 1 and interval * delta_beta = 1 lowers it by 1.
  CHECK(update_shift(0.0, 100.0 * std::exp(1.0), 100.0, 1.0, 5, 0.2) ==
        doctest::Approx(-1.0));
  // Damping scales linearly.
  CHECK(update_shift(0.0, 100.0 * std::exp(1.0), 100.0, 0.1, 5, 0.2) ==
        doctest::Approx(-0.1));
  // Shrinking population raises the shift.
  CHECK(update_shift(0.0, 50.0, 100.0, 1.0, 1, 1.0) ==
        doctest::Approx(std::log(2.0)));
  CHECK_THROWS_AS(update_shift(0.0, 0.0, 1.0, 1.0, 1, 1.0), NumericalError);
}

TEST_CASE("projected energy identity") {
  CHECK(projected_energy(0.0, 1.0, -0.5) == doctest::Approx(-0.5));
  CHECK(projected_energy(-0.2, 0.8, -0.5) ==
        doctest::Approx((-0.2 + -0.5 * 0.8) / 0.8));
}

TEST_CASE("exact residual estimates match the statevector oracle") {
  const MolecularSystem sys = h3plus_system();
  const AnsatzState state = pool_with_thetas(
      sys, {0.02, -0.01, 0.03, 0.015, -0.12, 0.05, -0.04, 0.08});

  RngStream rng(401);
  const auto draws = sample_groups(sys.groups, 0, rng);
  const double shift = -0.07;
  const ResidualSample res = estimate_residuals(state, sys.groups, draws,
                                                shift, NoiseModel{}, 11);

  const std::vector<double> expect = brute_residuals(sys, state, shift);
  const Statevector psi = prepare_state(state);
  REQUIRE(res.r.size() == expect.size());
  CHECK(res.s[0] == doctest::Approx(psi.amplitude(sys.reference).real()));
  for (std::size_t i = 0; i < expect.size(); ++i) {
    CAPTURE(i);
    CHECK(std::abs(res.r[i] - expect[i]) < 1e-10);
  }
  CHECK(res.shots == 0);

  // At theta = 0 the overlaps collapse onto the reference slot.
  const AnsatzState bare = pool_with_thetas(sys, std::vector<double>(8, 0.0));
  const ResidualSample res0 =
      estimate_residuals(bare, sys.groups, draws, 0.0, NoiseModel{}, 11);
  CHECK(res0.s[0] == doctest::Approx(1.0));
  for (std::size_t i = 1; i < res0.s.size(); ++i) {
    CHECK(res0.s[i] == doctest::Approx(0.0));
  }
}

TEST_CASE("group-sampled residuals are unbiased") {
  const MolecularSystem sys = h3plus_system();
  const AnsatzState state = pool_with_thetas(
      sys, {0.02, -0.01, 0.03, 0.015, -0.12, 0.05, -0.04, 0.08});
  RngStream rng(409);
  const auto all = sample_groups(sys.groups, 0, rng);
  const ResidualSample full =
      estimate_residuals(state, sys.groups, all, 0.0, NoiseModel{}, 1);

  const int n_rep = 4000;
  std::vector<double> acc(full.r.size(), 0.0);
  std::vector<double> acc2(full.r.size(), 0.0);
  for (int rep = 0; rep < n_rep; ++rep) {
    const auto draws = sample_groups(sys.groups, 4, rng);
    const ResidualSample res =
        estimate_residuals(state, sys.groups, draws, 0.0, NoiseModel{}, 1);
    for (std::size_t i = 0; i < acc.size(); ++i) {
      acc[i] += res.r[i];
      acc2[i] += res.r[i] * res.r[i];
    }
  }
  for (std::size_t i = 0; i < acc.size(); ++i) {
    CAPTURE(i);
    const double m = acc[i] / n_rep;
    const double sem =
        std::sqrt((acc2[i] / n_rep - m * m) / (n_rep - 1));
    CHECK(std::abs(m - full.r[i]) < 5.0 * sem + 1e-12);
  }
}

TEST_CASE("shot-noise readout is unbiased and scales as one over sqrt(N)") {
  const MolecularSystem sys = h2_system();
  const AnsatzState state = pool_with_thetas(sys, {0.02, 0.02, -0.11});
  RngStream rng(419);
  const auto draws = sample_groups(sys.groups, 0, rng);

  const ResidualSample exact =
      estimate_residuals(state, sys.groups, draws, 0.0, NoiseModel{}, 1);

  auto havest = [&](long long shots, int n_rep, uint64_t seed0, double& m,
                    double& sd) {
    NoiseModel noise;
    noise.mode = NoiseMode::kShots;
    noise.n_shots = shots;
    noise.n_shots_reference = shots;
    double a = 0.0;
    double a2 = 0.0;
    for (int rep = 0; rep < n_rep; ++rep) {
      const ResidualSample res = estimate_residuals(
          state, sys.groups, draws, 0.0, noise, seed0 + rep, 1);
      a += res.r[3];
      a2 += res.r[3] * res.r[3];
    }
    m = a / n_rep;
    sd = std::sqrt(a2 / n_rep - m * m);
  };

  double m100, sd100, m400, sd400;
  havest(100, 1500, 50000, m100, sd100);
  havest(400, 1500, 90000, m400, sd400);

  CHECK(std::abs(m100 - exact.r[3]) < 5.0 * sd100 / std::sqrt(1500.0));
  CHECK(std::abs(m400 - exact.r[3]) < 5.0 * sd400 / std::sqrt(1500.0));
  const double ratio = sd100 / sd400;
  CHECK(ratio > 1.6);
  CHECK(ratio < 2.4);

  // Shot accounting: overlap plus every string of every drawn group, per
  // target, per step.
  NoiseModel noise;
  noise.mode = NoiseMode::kShots;
  noise.n_shots = 100;
  noise.n_shots_reference = 300;
  const ResidualSample res =
      estimate_residuals(state, sys.groups, draws, 0.0, noise, 7, 1);
  long long strings = 0;
  for (const auto& g : sys.groups) strings += g.members.size();
  const long long per_target = 100 * strings;
  CHECK(res.shots == (300 + per_target) + 3 * (100 + per_target));
}

TEST_CASE("gaussian readout perturbs each string independently") {
  const MolecularSystem sys = h2_system();
  const AnsatzState state = pool_with_thetas(sys, {0.0, 0.0, -0.1});
  RngStream rng(431);
  const auto draws = sample_groups(sys.groups, 0, rng);

  NoiseModel noise;
  noise.mode = NoiseMode::kGaussian;
  noise.sigma = 0.0;
  const ResidualSample clean =
      estimate_residuals(state, sys.groups, draws, 0.0, noise, 77, 1);
  const ResidualSample exact =
      estimate_residuals(state, sys.groups, draws, 0.0, NoiseModel{}, 77, 1);
  for (std::size_t i = 0; i < clean.r.size(); ++i) {
    // sigma = 0 reduces to the interference readout, which must agree with
    // the sparse exact path up to arithmetic noise.
    CHECK(std::abs(clean.r[i] - exact.r[i]) < 1e-10);
  }
  CHECK(clean.shots == 0);

  noise.sigma = 0.05;
  const ResidualSample noisy =
      estimate_residuals(state, sys.groups, draws, 0.0, noise, 77, 1);
  bool moved = false;
  for (std::size_t i = 0; i < noisy.r.size(); ++i) {
    if (std::abs(noisy.r[i] - exact.r[i]) > 1e-6) moved = true;
  }
  CHECK(moved);
}

TEST_CASE("residual measurement is independent of the thread count") {
  const MolecularSystem sys = h3plus_system();
  const AnsatzState state = pool_with_thetas(
      sys, {0.02, -0.01, 0.03, 0.015, -0.12, 0.05, -0.04, 0.08});
  RngStream rng(433);
  const auto draws = sample_groups(sys.groups, 6, rng);
  NoiseModel noise;
  noise.mode = NoiseMode::kShots;
  noise.n_shots = 200;
  noise.n_shots_reference = 500;

  const ResidualSample a =
      estimate_residuals(state, sys.groups, draws, -0.1, noise, 991, 1);
  const ResidualSample b =
      estimate_residuals(state, sys.groups, draws, -0.1, noise, 991, 4);
  REQUIRE(a.r.size() == b.r.size());
  for (std::size_t i = 0; i < a.r.size(); ++i) {
    CHECK(a.r[i] == b.r[i]);
    CHECK(a.s[i] == b.s[i]);
  }
  CHECK(a.shots == b.shots);
}

TEST_CASE("interference residuals agree with the direct projection") {
  const MolecularSystem sys = h3plus_system();
  const AnsatzState state = pool_with_thetas(
      sys, {0.04, -0.02, 0.01, 0.03, -0.09, 0.06, -0.02, 0.05});
  const std::vector<double> a = residuals_identity(state, sys.h_corr);
  const std::vector<double> b = residuals_direct(state, sys.h_corr);
  REQUIRE(a.size() == b.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    CAPTURE(i);
    CHECK(std::abs(a[i] - b[i]) < 1e-10);
  }
}

TEST_CASE("amplitude iteration solves H2 to the exact ground state") {
  const MolecularSystem sys = h2_system();
  const PqeResult pqe = deterministic_pqe(sys);
  CHECK(pqe.converged);
  CHECK(pqe.iterations > 1);
  CHECK(pqe.residual_norm < 1e-10);
  const double e_fci = reference_entry("h2/0.7414A").e_fci;
  CHECK(pqe.energy == doctest::Approx(e_fci).epsilon(1e-9));

  // The converged amplitudes zero the residuals of the stochastic estimator
  // too (same state, different measurement route).
  RngStream rng(439);
  const auto draws = sample_groups(sys.groups, 0, rng);
  const double id_coeff = sys.h_corr.coefficient(0, 0).real();
  const double e_corr = pqe.energy - sys.e_ref;
  const ResidualSample res = estimate_residuals(
      pqe.state, sys.groups, draws, e_corr - id_coeff, NoiseModel{}, 1);
  for (std::size_t i = 1; i < res.r.size(); ++i) {
    CHECK(std::abs(res.r[i]) < 1e-8);
  }
  CHECK(std::abs(res.r[0]) < 1e-8);
}

TEST_CASE("exact propagation drives H2 to the FCI energy") {
  const MolecularSystem sys = h2_system();
  PropagationConfig cfg;
  cfg.n_steps = 1200;
  cfg.seed = 2024;
  const RunResult run = run_ground(sys, cfg);

  CHECK(run.trajectory.size() == 1200);
  CHECK(run.total_shots == 0);
  CHECK(run.diverged_steps == 0);

  const double e_fci = reference_entry("h2/0.7414A").e_fci;
  CHECK(run.eproj_estimate.mean + run.e_ref ==
        doctest::Approx(e_fci).epsilon(1e-8));
  CHECK(run.shift_estimate.mean + run.e_ref ==
        doctest::Approx(e_fci).epsilon(1e-6));

  // Population control engages and stays engaged.
  const TrajectoryRecord& last = run.trajectory.back();
  CHECK((last.flags & kFlagVariableShift) != 0);
  CHECK(last.n_tot > 100.0);
  CHECK(last.active_params >= 1);  // symmetry can zero the single amplitudes
  CHECK(last.active_params <= 3);
  CHECK(last.groups_measured == static_cast<int>(sys.groups.size()));

  // Late-trajectory projected energy is flat at the fixed point.
  const TrajectoryRecord& mid = run.trajectory[800];
  CHECK(std::abs(mid.e_proj - last.e_proj) < 1e-9);

  // Shift updates happen on the configured cadence once variable.
  int updates = 0;
  for (const auto& rec : run.trajectory) {
    updates += (rec.flags & kFlagShiftUpdated) ? 1 : 0;
  }
  CHECK(updates > 100);
}

TEST_CASE("single-determinant trial estimator reproduces the projection") {
  const MolecularSystem sys = h2_system();
  PropagationConfig cfg;
  cfg.n_steps = 60;
  cfg.trial = {{sys.reference, 1.0}};
  const RunResult run = run_ground(sys, cfg);
  CHECK(run.has_trial);
  for (const auto& rec : run.trajectory) {
    if (rec.flags & (kFlagS0Diverged | kFlagTrialDiverged)) continue;
    CHECK(rec.e_trial == doctest::Approx(rec.e_proj).epsilon(1e-12));
  }
  CHECK(run.etrial_estimate.mean ==
        doctest::Approx(run.eproj_estimate.mean).epsilon(1e-10));
}

TEST_CASE("multi-determinant trial weights shift the estimator") {
  const MolecularSystem sys = h2_system();
  AnsatzState pool = enumerate_uccsd(sys.ints, sys.reference);
  PropagationConfig cfg;
  cfg.n_steps = 400;
  cfg.trial = {{sys.reference, 0.98},
               {pool.excitations[2].target_mask, -0.2}};
  const RunResult run = run_ground(sys, cfg);
  CHECK(run.has_trial);
  // With both estimators converged onto the eigenstate the energies agree.
  CHECK(run.etrial_estimate.mean ==
        doctest::Approx(run.eproj_estimate.mean).epsilon(1e-7));

  // Unknown determinants are rejected up front.
  PropagationConfig bad = cfg;
  bad.trial = {{0b1010, 1.0}};  // not reachable from this pool
  CHECK_THROWS_AS(run_ground(sys, bad), ConfigError);
}

TEST_CASE("propagation configs are validated") {
  const MolecularSystem sys = h2_system();
  PropagationConfig cfg;
  cfg.n_steps = 5;

  PropagationConfig bad = cfg;
  bad.delta_beta = 0.0;
  CHECK_THROWS_AS(run_ground(sys, bad), ConfigError);
  bad = cfg;
  bad.zeta = 0.0;
  CHECK_THROWS_AS(run_ground(sys, bad), ConfigError);
  bad = cfg;
  bad.zeta = 1.5;
  CHECK_THROWS_AS(run_ground(sys, bad), ConfigError);
  bad = cfg;
  bad.shift_interval = 0;
  CHECK_THROWS_AS(run_ground(sys, bad), ConfigError);
  bad = cfg;
  bad.n0 = 0.0;
  CHECK_THROWS_AS(run_ground(sys, bad), ConfigError);
  bad = cfg;
  bad.noise.n_shots = 0;
  CHECK_THROWS_AS(run_ground(sys, bad), ConfigError);
  bad = cfg;
  bad.noise.sigma = -1.0;
  CHECK_THROWS_AS(run_ground(sys, bad), ConfigError);
}

TEST_CASE("short runs fall back to plain averaging") {
  const MolecularSystem sys = h2_system();
  PropagationConfig cfg;
  cfg.n_steps = 10;
  const RunResult run = run_ground(sys, cfg);
  CHECK(run.eproj_estimate.level == -1);
  CHECK(run.eproj_estimate.n_used == 8);  // 10 minus the 25% discard
}

TEST_CASE("stochastic compression runs inside the loop") {
  const MolecularSystem sys = h3plus_system();
  PropagationConfig cfg;
  cfg.n_steps = 120;
  cfg.rounding = true;
  cfg.seed = 5150;
  const RunResult run = run_ground(sys, cfg);
  int min_active = 999;
  int max_active = 0;
  for (const auto& rec : run.trajectory) {
    min_active = std::min(min_active, rec.active_params);
    max_active = std::max(max_active, rec.active_params);
  }
  CHECK(max_active <= 8);
  CHECK(min_active < 8);  // compression actually dropped something
  // The populations themselves never get rounded, so the run still moves
  // toward the ground state.
  CHECK(run.trajectory.back().n_tot > 100.0);
}

TEST_CASE("folded propagation recovers the H2 ground state from a fold") {
  const MolecularSystem sys = h2_system();
  const double e_fci_corr = reference_entry("h2/0.7414A").e_fci - sys.e_ref;

  PropagationConfig cfg;
  cfg.n_steps = 1500;
  FoldedSpectrumOptions fs;
  fs.omega = e_fci_corr + 0.08;  // closest eigenvalue is the ground state
  fs.h_record_interval = 100;

  const FoldedResult folded = run_folded_spectrum(sys, cfg, fs);
  CHECK(std::abs(folded.energy_from_eproj - e_fci_corr) < 1e-6);
  CHECK(std::abs(folded.h_expectation - e_fci_corr) < 1e-7);
  REQUIRE(!folded.h_checkpoints.empty());
  CHECK(folded.h_checkpoints.back().first == 1500);
  CHECK(std::abs(folded.h_checkpoints.back().second - e_fci_corr) < 1e-7);
}

TEST_CASE("spawning analysis is self-consistent and beats a flat guess") {
  const MolecularSystem sys = h3plus_system();
  const AnsatzState state = pool_with_thetas(
      sys, {0.01, -0.02, 0.015, 0.02, -0.10, 0.04, -0.03, 0.06});
  const SpawnAnalysis sp = analyze_spawning(sys, state, -0.1, 40000, 4242);

  CHECK(sp.n_kept + sp.n_dead == 40000);
  long long total = 0;
  for (long long c : sp.counts) total += c;
  CHECK(total == sp.n_kept);
  CHECK(sp.n_dead > 0);  // stretched H3+ has plenty of blocked moves

  CHECK(sp.kl_model < sp.kl_uniform);
  CHECK(sp.chi2_dof >= 2);
  CHECK(sp.chi2_pvalue > 1e-4);  // the histogram follows its own model
}
