#include "mcpqe/engine.hpp"

#include <algorithm>
#include <cmath>
#include <future>
#include <limits>
#include <map>

#include "mcpqe/circuit.hpp"
#include "mcpqe/errors.hpp"
#include "mcpqe/statevector.hpp"

namespace mcpqe {

namespace {

constexpr double kNan = std::numeric_limits<double>::quiet_NaN();

struct Target {
  uint64_t mask = 0;
  double sign = 1.0;
};

std::vector<Target> collect_targets(const AnsatzState& ansatz) {
  std::vector<Target> targets;
  targets.reserve(ansatz.excitations.size() + 1);
  targets.push_back({ansatz.reference, 1.0});
  for (const auto& ex : ansatz.excitations) {
    targets.push_back({ex.target_mask, ex.sign});
  }
  return targets;
}

void check_finite(const ResidualSample& res) {
  for (double v : res.r) {
    if (!std::isfinite(v)) throw NumericalError("residual is not finite");
  }
  for (double v : res.s) {
    if (!std::isfinite(v)) throw NumericalError("overlap is not finite");
  }
}

/// Exact-mode estimator: sparse <mask|P|Psi> on the system register only.
void residuals_exact(const Statevector& psi,
                     const std::vector<Target>& targets,
                     const std::vector<CommutingGroup>& groups,
                     const std::vector<GroupDraw>& draws, double shift,
                     ResidualSample& out) {
  for (std::size_t i = 0; i < targets.size(); ++i) {
    const Target& t = targets[i];
    out.s[i] = t.sign * psi.amplitude(t.mask).real();
    double rh = 0.0;
    for (const GroupDraw& d : draws) {
      double g = 0.0;
      for (const PauliTerm& p : groups[d.index].members) {
        g += psi.bra_pauli(t.mask, p).real();
      }
      rh += d.multiplier * g;
    }
    out.r[i] = t.sign * rh - shift * out.s[i];
  }
}

/// Noisy estimator for one target: interference circuit plus per-string
/// readout through the noise channel. Measurement order is fixed (overlap
/// first, then draws in index order) so a stream fully determines the result.
void residual_noisy_one(const std::vector<PauliGadget>& circuit, int n_sys,
                        uint64_t reference, const Target& target,
                        bool is_reference_slot,
                        const std::vector<CommutingGroup>& groups,
                        const std::vector<GroupDraw>& draws, double shift,
                        const NoiseModel& noise, uint64_t stream_seed,
                        double& r_out, double& s_out, long long& shots_out) {
  RngStream rng(stream_seed);
  const Statevector phi =
      hadamard_test_state(circuit, n_sys, reference, target.mask);
  const int anc = n_sys;

  const long long s_shots =
      is_reference_slot ? noise.n_shots_reference : noise.n_shots;
  const PauliTerm identity{0, 0, cplx{1.0, 0.0}};
  const double s_meas =
      noise.apply(ancilla_z_expectation(phi, anc, identity), s_shots, rng);
  s_out = target.sign * s_meas;
  shots_out = (noise.mode == NoiseMode::kShots) ? s_shots : 0;

  double rh = 0.0;
  for (const GroupDraw& d : draws) {
    double g = 0.0;
    for (const PauliTerm& p : groups[d.index].members) {
      const PauliTerm bare{p.x, p.z, cplx{1.0, 0.0}};
      const double exact = ancilla_z_expectation(phi, anc, bare);
      g += p.coeff.real() * noise.apply(exact, noise.n_shots, rng);
      if (noise.mode == NoiseMode::kShots) shots_out += noise.n_shots;
    }
    rh += d.multiplier * g;
  }
  r_out = target.sign * rh - shift * s_out;
}

SeriesEstimate make_estimate(const std::vector<double>& series,
                             double discard_fraction) {
  SeriesEstimate est;
  if (series.empty()) return est;
  const std::size_t discard =
      static_cast<std::size_t>(discard_fraction * series.size());
  const std::size_t n = series.size() - discard;
  if (n < 16) {
    const std::span<const double> tail(series.data() + discard, n);
    est.mean = mean(tail);
    est.std_error =
        n >= 2 ? std::sqrt(sample_variance(tail) / static_cast<double>(n))
               : 0.0;
    est.level = -1;
    est.n_used = static_cast<long long>(n);
    return est;
  }
  est.detail = reblock(series, discard_fraction);
  est.mean = est.detail.mean;
  est.std_error = est.detail.std_error;
  est.level = est.detail.chosen_level;
  est.plateau = est.detail.plateau_found;
  est.n_used = est.detail.n_used;
  return est;
}

struct EngineSetup {
  const QubitOperator* h = nullptr;  ///< operator being propagated
  const std::vector<CommutingGroup>* groups = nullptr;
  AnsatzState ansatz;
  /// Optional exact-diagnostic operator recorded every checkpoint_interval.
  const QubitOperator* checkpoint_op = nullptr;
  int checkpoint_interval = 0;
  std::vector<std::pair<int, double>>* checkpoints = nullptr;
};

long long trial_index(const AnsatzState& ansatz, uint64_t mask) {
  if (mask == ansatz.reference) return 0;
  for (std::size_t i = 0; i < ansatz.excitations.size(); ++i) {
    if (ansatz.excitations[i].target_mask == mask) {
      return static_cast<long long>(i + 1);
    }
  }
  throw ConfigError("trial determinant is not the reference or an "
                    "excitation target");
}

RunResult propagate(EngineSetup setup, const PropagationConfig& cfg) {
  if (cfg.delta_beta <= 0.0) throw ConfigError("delta_beta must be positive");
  if (cfg.zeta <= 0.0 || cfg.zeta > 1.0) {
    throw ConfigError("zeta must lie in (0, 1]");
  }
  if (cfg.shift_interval < 1) throw ConfigError("shift_interval must be >= 1");
  if (cfg.n_steps < 1) throw ConfigError("n_steps must be >= 1");
  if (cfg.n0 <= 0.0) throw ConfigError("initial population must be positive");
  if (cfg.noise.n_shots < 1 || cfg.noise.n_shots_reference < 1) {
    throw ConfigError("shot counts must be >= 1");
  }
  if (cfg.noise.sigma < 0.0) throw ConfigError("sigma must be >= 0");

  AnsatzState& ansatz = setup.ansatz;
  const std::size_t n_exc = ansatz.excitations.size();
  const double target_pop =
      cfg.target_population > 0.0 ? cfg.target_population : 1.1 * cfg.n0;

  // Measurement groups exclude the identity string; its known coefficient
  // folds into the shift so the residuals refer to the full operator.
  const double id_coeff = setup.h->coefficient(0, 0).real();

  // Trial-estimator bookkeeping: indices into the residual vectors plus
  // normalized coefficients.
  std::vector<std::pair<long long, double>> trial;
  if (!cfg.trial.empty()) {
    double norm2 = 0.0;
    for (const auto& [mask, c] : cfg.trial) norm2 += c * c;
    if (norm2 <= 0.0) throw ConfigError("trial wavefunction is null");
    for (const auto& [mask, c] : cfg.trial) {
      trial.emplace_back(trial_index(ansatz, mask), c / std::sqrt(norm2));
    }
  }

  // Walker populations, slot 0 = reference; warm-started amplitudes scale
  // into initial populations.
  std::vector<double> pop(n_exc + 1, 0.0);
  pop[0] = cfg.n0;
  for (std::size_t i = 0; i < n_exc; ++i) {
    pop[i + 1] = ansatz.excitations[i].theta * cfg.n0;
  }

  RunResult result;
  result.has_trial = !trial.empty();
  result.trajectory.reserve(cfg.n_steps);

  double shift = 0.0;
  bool variable_shift = false;
  double ntot_at_update = 0.0;
  int step_at_update = 0;

  for (int step = 1; step <= cfg.n_steps; ++step) {
    for (std::size_t i = 0; i < n_exc; ++i) {
      ansatz.excitations[i].theta = pop[i + 1] / pop[0];
    }

    AnsatzState encoded = ansatz;
    if (cfg.rounding) {
      RngStream round_rng(RngStream::derive(cfg.seed, 8ull * step + 0));
      encoded = stochastic_round(ansatz, round_rng, cfg.rounding_inclusive);
    }

    RngStream group_rng(RngStream::derive(cfg.seed, 8ull * step + 1));
    const std::vector<GroupDraw> draws = sample_groups(
        *setup.groups, cfg.n_hamil, group_rng, cfg.sample_diagonal_exact);

    const ResidualSample res = estimate_residuals(
        encoded, *setup.groups, draws, shift - id_coeff, cfg.noise,
        RngStream::derive(cfg.seed, 8ull * step + 2), cfg.threads);
    check_finite(res);
    result.total_shots += res.shots;

    const double scale = pop[0] * cfg.delta_beta;
    for (std::size_t i = 0; i < pop.size(); ++i) pop[i] -= scale * res.r[i];
    if (!(pop[0] > 0.0)) {
      throw NumericalError("reference population collapsed at step " +
                           std::to_string(step));
    }

    double n_tot = 0.0;
    for (double n : pop) n_tot += std::abs(n);

    TrajectoryRecord rec;
    rec.step = step;
    rec.beta = step * cfg.delta_beta;
    rec.e_num = res.r[0] + shift * res.s[0];
    rec.s0 = res.s[0];
    const bool diverged = std::abs(res.s[0]) < cfg.s0_floor;
    rec.e_proj = diverged ? kNan : rec.e_num / res.s[0];
    if (diverged) {
      rec.flags |= kFlagS0Diverged;
      ++result.diverged_steps;
    }

    rec.e_trial = kNan;
    if (!trial.empty()) {
      double num = 0.0;
      double den = 0.0;
      for (const auto& [idx, c] : trial) {
        num += c * (res.r[idx] + shift * res.s[idx]);
        den += c * res.s[idx];
      }
      if (std::abs(den) < cfg.s0_floor) {
        rec.flags |= kFlagTrialDiverged;
      } else {
        rec.e_trial = num / den;
      }
    }

    // Population control: track the instantaneous projected energy until the
    // total population reaches its target, then damped log-growth feedback
    // every shift_interval steps.
    if (!variable_shift) {
      if (!diverged) shift = rec.e_proj;
      if (n_tot >= target_pop) {
        variable_shift = true;
        ntot_at_update = n_tot;
        step_at_update = step;
      }
    } else if (step - step_at_update >= cfg.shift_interval) {
      shift = update_shift(shift, n_tot, ntot_at_update, cfg.zeta,
                           cfg.shift_interval, cfg.delta_beta);
      ntot_at_update = n_tot;
      step_at_update = step;
      rec.flags |= kFlagShiftUpdated;
    }
    if (variable_shift) rec.flags |= kFlagVariableShift;

    rec.shift = shift;
    rec.n_tot = n_tot;
    rec.n0 = pop[0];
    rec.groups_measured = res.groups_measured;
    rec.shots = res.shots;
    rec.active_params = count_active(encoded);
    result.trajectory.push_back(rec);

    if (setup.checkpoint_op && setup.checkpoint_interval > 0 &&
        step % setup.checkpoint_interval == 0) {
      for (std::size_t i = 0; i < n_exc; ++i) {
        ansatz.excitations[i].theta = pop[i + 1] / pop[0];
      }
      const Statevector sv = prepare_state(ansatz);
      const cplx h = sv.expectation(*setup.checkpoint_op);
      setup.checkpoints->emplace_back(step,
                                      h.real() / (sv.norm() * sv.norm()));
    }
  }

  for (std::size_t i = 0; i < n_exc; ++i) {
    ansatz.excitations[i].theta = pop[i + 1] / pop[0];
  }
  result.final_ansatz = ansatz;

  std::vector<double> shift_series, eproj_series, etrial_series;
  for (const auto& rec : result.trajectory) {
    shift_series.push_back(rec.shift);
    if (!(rec.flags & kFlagS0Diverged)) eproj_series.push_back(rec.e_proj);
    if (result.has_trial && !(rec.flags & kFlagTrialDiverged)) {
      etrial_series.push_back(rec.e_trial);
    }
  }
  result.shift_estimate = make_estimate(shift_series, cfg.discard_fraction);
  result.eproj_estimate = make_estimate(eproj_series, cfg.discard_fraction);
  if (result.has_trial) {
    result.etrial_estimate = make_estimate(etrial_series, cfg.discard_fraction);
  }
  return result;
}

}  // namespace

ResidualSample estimate_residuals(const AnsatzState& encoded,
                                  const std::vector<CommutingGroup>& groups,
                                  const std::vector<GroupDraw>& draws,
                                  double shift, const NoiseModel& noise,
                                  uint64_t stream_seed, int threads) {
  const std::vector<Target> targets = collect_targets(encoded);
  ResidualSample out;
  out.r.assign(targets.size(), 0.0);
  out.s.assign(targets.size(), 0.0);
  out.groups_measured = static_cast<int>(draws.size());

  if (noise.is_exact()) {
    const Statevector psi = prepare_state(encoded);
    residuals_exact(psi, targets, groups, draws, shift, out);
    return out;
  }

  const std::vector<PauliGadget> circuit = build_circuit(encoded);
  const int n_sys = encoded.n_qubits;
  std::vector<long long> shots(targets.size(), 0);

  auto work = [&](std::size_t begin, std::size_t stride) {
    for (std::size_t i = begin; i < targets.size(); i += stride) {
      residual_noisy_one(circuit, n_sys, encoded.reference, targets[i], i == 0,
                         groups, draws, shift, noise,
                         RngStream::derive(stream_seed, i), out.r[i], out.s[i],
                         shots[i]);
    }
  };

  const std::size_t n_workers = std::min<std::size_t>(
      std::max(threads, 1), targets.size());
  if (n_workers <= 1) {
    work(0, 1);
  } else {
    std::vector<std::future<void>> futures;
    for (std::size_t w = 1; w < n_workers; ++w) {
      futures.push_back(std::async(std::launch::async, work, w, n_workers));
    }
    work(0, n_workers);
    for (auto& f : futures) f.get();
  }
  for (long long s : shots) out.shots += s;
  return out;
}

double projected_energy(double r0, double s0, double shift) {
  return (r0 + shift * s0) / s0;
}

double update_shift(double shift, double n_tot, double n_tot_prev, double zeta,
                    int interval, double delta_beta) {
  if (!(n_tot > 0.0) || !(n_tot_prev > 0.0)) {
    throw NumericalError("population vanished during shift update");
  }
  return shift -
         zeta / (interval * delta_beta) * std::log(n_tot / n_tot_prev);
}

RunResult run_ground(const MolecularSystem& sys, const PropagationConfig& cfg) {
  EngineSetup setup;
  setup.h = &sys.h_corr;
  setup.groups = &sys.groups;
  setup.ansatz = enumerate_uccsd(sys.ints, sys.reference);
  if (cfg.warm_from) warm_start(setup.ansatz, *cfg.warm_from);
  RunResult result = propagate(std::move(setup), cfg);
  result.e_ref = sys.e_ref;
  return result;
}

FoldedResult run_folded_spectrum(const MolecularSystem& sys,
                                 const PropagationConfig& cfg,
                                 const FoldedSpectrumOptions& fs) {
  const QubitOperator h_fs =
      square_shifted(sys.h_corr, fs.omega, fs.square_prune);
  const std::vector<CommutingGroup> groups_fs = group_qubitwise(h_fs);

  FoldedResult folded;
  folded.omega = fs.omega;

  EngineSetup setup;
  setup.h = &h_fs;
  setup.groups = &groups_fs;
  const uint64_t ref = fs.reference ? fs.reference : sys.reference;
  setup.ansatz = enumerate_uccsd(sys.ints, ref);
  if (fs.warm_from) warm_start(setup.ansatz, *fs.warm_from);
  setup.checkpoint_op = &sys.h_corr;
  setup.checkpoint_interval = fs.h_record_interval;
  setup.checkpoints = &folded.h_checkpoints;

  folded.run = propagate(std::move(setup), cfg);
  folded.run.e_ref = sys.e_ref;

  const Statevector sv = prepare_state(folded.run.final_ansatz);
  const double norm2 = sv.norm() * sv.norm();
  folded.h_expectation = sv.expectation(sys.h_corr).real() / norm2;

  const double sign = folded.h_expectation >= fs.omega ? 1.0 : -1.0;
  folded.energy_from_shift =
      fs.omega + sign * std::sqrt(std::max(folded.run.shift_estimate.mean, 0.0));
  folded.energy_from_eproj =
      fs.omega + sign * std::sqrt(std::max(folded.run.eproj_estimate.mean, 0.0));
  return folded;
}

std::vector<double> residuals_identity(const AnsatzState& ansatz,
                                       const QubitOperator& h) {
  const std::vector<PauliGadget> circuit = build_circuit(ansatz);
  const int n = ansatz.n_qubits;

  auto energy_from = [&](Statevector sv) {
    apply_circuit(sv, circuit);
    return sv.expectation(h).real();
  };

  const double e0 = energy_from(Statevector::basis_state(n, ansatz.reference));
  std::vector<double> r(ansatz.excitations.size(), 0.0);
  for (std::size_t i = 0; i < ansatz.excitations.size(); ++i) {
    const Excitation& ex = ansatz.excitations[i];
    const double e_ii =
        energy_from(Statevector::basis_state(n, ex.target_mask));

    // Omega_i(pi/4) = (|phi_0> + |phi_i>)/sqrt(2) via the generator's own
    // gadgets at amplitude pi/4.
    Statevector omega = Statevector::basis_state(n, ansatz.reference);
    for (const PauliTerm& t : ex.generator) {
      omega.apply_gadget_direct(PauliTerm{t.x, t.z, cplx{1.0, 0.0}},
                                -2.0 * (M_PI / 4.0) * t.coeff.imag());
    }
    const double e_omega = energy_from(std::move(omega));
    r[i] = e_omega - 0.5 * e0 - 0.5 * e_ii;
  }
  return r;
}

std::vector<double> residuals_direct(const AnsatzState& ansatz,
                                     const QubitOperator& h) {
  const std::vector<PauliGadget> circuit = build_circuit(ansatz);
  Statevector sv = Statevector::basis_state(ansatz.n_qubits, ansatz.reference);
  apply_circuit(sv, circuit);
  Statevector w = sv.apply_operator(h);
  for (auto it = circuit.rbegin(); it != circuit.rend(); ++it) {
    w.apply_gadget_direct(it->op, -it->angle);
  }
  std::vector<double> r(ansatz.excitations.size(), 0.0);
  for (std::size_t i = 0; i < ansatz.excitations.size(); ++i) {
    const Excitation& ex = ansatz.excitations[i];
    r[i] = ex.sign * w.amplitude(ex.target_mask).real();
  }
  return r;
}

PqeResult deterministic_pqe(const MolecularSystem& sys, PqeOptions opt) {
  PqeResult result;
  const uint64_t ref = opt.reference ? opt.reference : sys.reference;
  result.state = enumerate_uccsd(sys.ints, ref);

  for (int it = 1; it <= opt.max_iterations; ++it) {
    const std::vector<double> r = residuals_identity(result.state, sys.h_corr);
    double rmax = 0.0;
    for (double v : r) rmax = std::max(rmax, std::abs(v));
    result.iterations = it;
    result.residual_norm = rmax;
    if (rmax < opt.residual_tol) {
      result.converged = true;
      break;
    }
    for (std::size_t i = 0; i < r.size(); ++i) {
      Excitation& ex = result.state.excitations[i];
      if (ex.delta == 0.0) {
        throw NumericalError("vanishing quasi-Newton denominator");
      }
      ex.theta += opt.mixing * r[i] / ex.delta;
    }
  }
  if (!result.converged) {
    throw ConvergenceError("amplitude iteration did not reach tolerance in " +
                           std::to_string(opt.max_iterations) + " sweeps");
  }
  const Statevector sv = prepare_state(result.state);
  result.energy = sys.e_ref + sv.expectation(sys.h_corr).real();
  return result;
}

SpawnAnalysis analyze_spawning(const MolecularSystem& sys,
                               const AnsatzState& state, double shift,
                               long long n_samples, uint64_t seed) {
  SpawnAnalysis out;
  out.basis = make_sector_basis(sys.ints.n_spin_orbitals(),
                                sys.ints.n_electrons, sys.ints.ms2);
  const std::size_t dim = out.basis.masks.size();
  const std::vector<double> c = exact_state(state, out.basis);

  // Off-diagonal second-quantized terms; every term's strings share one
  // X mask, so a term moves determinant j to j ^ x_mask when it acts at all.
  struct Move {
    uint64_t x_mask = 0;
    uint64_t ann = 0;
    uint64_t cre = 0;
    double weight = 0.0;
  };
  std::vector<Move> moves;
  double total_weight = 0.0;
  for (const FermionTerm& t : sys.h_fermi.terms()) {
    if (t.cre == t.ann) continue;
    Move mv;
    for (int p : t.ann) mv.ann |= uint64_t{1} << p;
    for (int p : t.cre) mv.cre |= uint64_t{1} << p;
    mv.x_mask = mv.ann ^ mv.cre;
    if (mv.x_mask == 0) continue;
    mv.weight = std::abs(t.coeff);
    if (mv.weight <= 0.0) continue;
    moves.push_back(mv);
    total_weight += mv.weight;
  }
  if (moves.empty()) throw NumericalError("no off-diagonal moves to sample");

  // A term acts on j iff its annihilated orbitals are occupied and its fresh
  // creations are unoccupied.
  auto valid = [](const Move& mv, uint64_t j) {
    if ((j & mv.ann) != mv.ann) return false;
    const uint64_t fresh = mv.cre & ~mv.ann;
    return (j & fresh) == 0;
  };

  // Analytic sampler distribution: p(i) ~ sum_k |h_k| |c_{i ^ x_k}|^2 over
  // valid moves, i.e. the term-weighted image of the walker distribution.
  out.p_model.assign(dim, 0.0);
  for (const Move& mv : moves) {
    for (std::size_t j = 0; j < dim; ++j) {
      if (!valid(mv, out.basis.masks[j])) continue;
      const long long i = out.basis.index_of(out.basis.masks[j] ^ mv.x_mask);
      if (i < 0) throw NumericalError("spawned determinant left the sector");
      out.p_model[i] += mv.weight * c[j] * c[j];
    }
  }

  // Sampler: term by |h|, source by |c|^2, rejection on invalid moves.
  std::vector<double> move_cdf(moves.size());
  double acc = 0.0;
  for (std::size_t k = 0; k < moves.size(); ++k) {
    acc += moves[k].weight / total_weight;
    move_cdf[k] = acc;
  }
  std::vector<double> det_cdf(dim);
  acc = 0.0;
  for (std::size_t j = 0; j < dim; ++j) {
    acc += c[j] * c[j];
    det_cdf[j] = acc;
  }

  RngStream rng(seed);
  out.counts.assign(dim, 0);
  for (long long s = 0; s < n_samples; ++s) {
    const Move& mv = moves[rng.discrete_cdf(move_cdf)];
    const std::size_t j = rng.discrete_cdf(det_cdf);
    if (!valid(mv, out.basis.masks[j])) {
      ++out.n_dead;
      continue;
    }
    const long long i = out.basis.index_of(out.basis.masks[j] ^ mv.x_mask);
    ++out.counts[i];
    ++out.n_kept;
  }
  if (out.n_kept == 0) throw NumericalError("all spawn samples rejected");

  // Ideal generation target: |<phi_i|(H - S)|Psi>| over the sector.
  QubitOperator h_shifted = sys.h_corr;
  h_shifted.add(0, 0, cplx{-shift, 0.0});
  const Statevector psi = prepare_state(state);
  const Statevector w = psi.apply_operator(h_shifted);
  out.p_exact.assign(dim, 0.0);
  for (std::size_t i = 0; i < dim; ++i) {
    out.p_exact[i] = std::abs(w.amplitude(out.basis.masks[i]));
  }

  const std::vector<double> uniform(dim, 1.0);
  out.kl_model = kl_divergence(out.p_model, out.p_exact);
  out.kl_uniform = kl_divergence(uniform, out.p_exact);

  // Pearson test of the histogram against the sampler's own distribution,
  // pooling low-expectation bins.
  double model_total = 0.0;
  for (double p : out.p_model) model_total += p;
  double chi2 = 0.0;
  double pooled_expected = 0.0;
  long long pooled_count = 0;
  int bins = 0;
  for (std::size_t i = 0; i < dim; ++i) {
    const double expected =
        static_cast<double>(out.n_kept) * out.p_model[i] / model_total;
    if (expected < 5.0) {
      pooled_expected += expected;
      pooled_count += out.counts[i];
      continue;
    }
    const double d = static_cast<double>(out.counts[i]) - expected;
    chi2 += d * d / expected;
    ++bins;
  }
  if (pooled_expected > 0.0) {
    const double d = static_cast<double>(pooled_count) - pooled_expected;
    chi2 += d * d / pooled_expected;
    ++bins;
  }
  if (bins < 2) throw NumericalError("too few occupied bins for chi-squared");
  out.chi2 = chi2;
  out.chi2_dof = bins - 1;
  out.chi2_pvalue = chi_squared_survival(chi2, out.chi2_dof);
  return out;
}

}  // namespace mcpqe
