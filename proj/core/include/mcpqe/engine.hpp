#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "mcpqe/ansatz.hpp"
#include "mcpqe/grouping.hpp"
#include "mcpqe/noise.hpp"
#include "mcpqe/oracle.hpp"
#include "mcpqe/stats.hpp"
#include "mcpqe/system.hpp"

namespace mcpqe {

/// Knobs of the stochastic imaginary-time loop. Energies are in correlation
/// units (reference energy subtracted) throughout.
struct PropagationConfig {
  int n_steps = 2000;
  double delta_beta = 0.2;
  double zeta = 1.0;          ///< shift damping, in (0, 1]
  int shift_interval = 5;     ///< steps between variable-shift updates
  double n0 = 100.0;          ///< initial reference population
  double target_population = 0.0;  ///< variable-shift threshold; 0 -> 1.1 n0
  double s0_floor = 1e-6;     ///< |s_0| below this flags a diverged estimate
  double discard_fraction = 0.25;
  uint64_t seed = 1234;
  int threads = 1;
  NoiseModel noise;
  int n_hamil = 0;  ///< off-diagonal groups sampled per step; 0 = all
  bool sample_diagonal_exact = true;
  bool rounding = false;
  bool rounding_inclusive = false;
  /// Optional multi-determinant trial estimator: (mask, coefficient) pairs;
  /// masks must be the reference or an excitation target.
  std::vector<std::pair<uint64_t, double>> trial;
  /// Amplitudes copied onto matching excitations before propagation starts,
  /// e.g. the converged ansatz of a neighboring scan point.
  const AnsatzState* warm_from = nullptr;
};

enum RecordFlags : int {
  kFlagS0Diverged = 1,     ///< |s_0| under the floor; energy excluded
  kFlagShiftUpdated = 2,   ///< variable-shift update happened this step
  kFlagVariableShift = 4,  ///< population control active
  kFlagTrialDiverged = 8,
};

struct TrajectoryRecord {
  int step = 0;
  double beta = 0.0;
  double shift = 0.0;    ///< after this step's update
  double e_proj = 0.0;   ///< (r_0 + S s_0) / s_0
  double e_num = 0.0;    ///< undivided numerator r_0 + S s_0
  double e_trial = 0.0;  ///< NaN when no trial configured
  double n_tot = 0.0;    ///< sum_i |N_i|
  double n0 = 0.0;
  double s0 = 0.0;
  int flags = 0;
  int groups_measured = 0;
  long long shots = 0;
  int active_params = 0;  ///< nonzero amplitudes after rounding
};

struct SeriesEstimate {
  double mean = 0.0;
  double std_error = 0.0;
  int level = 0;
  bool plateau = false;
  long long n_used = 0;
  ReblockResult detail;
};

struct RunResult {
  std::vector<TrajectoryRecord> trajectory;
  AnsatzState final_ansatz;
  double e_ref = 0.0;  ///< add to correlation estimates for totals
  SeriesEstimate shift_estimate;
  SeriesEstimate eproj_estimate;
  SeriesEstimate etrial_estimate;
  bool has_trial = false;
  long long total_shots = 0;
  long long diverged_steps = 0;
};

/// Residuals r_i = <phi_i|(H - S)|Psi> and overlaps s_i = <phi_i|Psi>,
/// slot 0 = reference, slot i = excitation i-1.
struct ResidualSample {
  std::vector<double> r;
  std::vector<double> s;
  long long shots = 0;
  int groups_measured = 0;
};

/**
 * @brief Measure residuals and overlaps of the encoded state.
 *
 * Exact mode evaluates <phi_i|P U|phi_0> directly on the system register;
 * noisy modes run the one-ancilla interference circuit per target and
 * per-string readout through the noise channel, with one derived RNG stream
 * per target so concurrency cannot change results. Groups never carry the
 * identity string, so a caller propagating an operator with a constant part
 * must fold that coefficient into `shift` (the engine does this internally).
 */
ResidualSample estimate_residuals(const AnsatzState& encoded,
                                  const std::vector<CommutingGroup>& groups,
                                  const std::vector<GroupDraw>& draws,
                                  double shift, const NoiseModel& noise,
                                  uint64_t stream_seed, int threads = 1);

/// (r_0 + shift * s_0) / s_0.
double projected_energy(double r0, double s0, double shift);

/// S <- S - zeta/(interval * delta_beta) * ln(n_tot / n_tot_prev).
double update_shift(double shift, double n_tot, double n_tot_prev, double zeta,
                    int interval, double delta_beta);

/// Ground-state propagation of the system's correlation Hamiltonian.
RunResult run_ground(const MolecularSystem& sys, const PropagationConfig& cfg);

struct FoldedSpectrumOptions {
  double omega = 0.0;       ///< spectral target, correlation units
  uint64_t reference = 0;   ///< starting determinant; 0 -> aufbau reference
  double square_prune = 1e-12;
  int h_record_interval = 50;  ///< steps between exact <H> checkpoints
  const AnsatzState* warm_from = nullptr;
};

struct FoldedResult {
  RunResult run;          ///< estimates are of <(H - omega)^2>
  double omega = 0.0;
  double h_expectation = 0.0;  ///< exact <H_corr> on the final state
  std::vector<std::pair<int, double>> h_checkpoints;
  /// omega + sign(<H> - omega) sqrt(max(estimate, 0)), correlation units.
  double energy_from_shift = 0.0;
  double energy_from_eproj = 0.0;
};

/**
 * @brief Excited states: propagate (H - omega)^2 so the eigenstate closest
 *        to omega becomes the effective ground state, then undo the fold
 *        using the exact <H> sign.
 */
FoldedResult run_folded_spectrum(const MolecularSystem& sys,
                                 const PropagationConfig& cfg,
                                 const FoldedSpectrumOptions& fs);

struct PqeOptions {
  double residual_tol = 1e-10;
  int max_iterations = 200;
  double mixing = 1.0;
  uint64_t reference = 0;  ///< 0 -> aufbau reference
};

struct PqeResult {
  AnsatzState state;
  bool converged = false;
  int iterations = 0;
  double energy = 0.0;  ///< total energy <U ref|H|U ref>
  double residual_norm = 0.0;
};

/**
 * @brief Deterministic quasi-Newton amplitude solver on exact residuals,
 *        theta_i += r_i / delta_i until the residual norm vanishes.
 *
 * Residuals come from the three-expectation identity with the pi/4
 * interference states (see residuals_identity); iteration stops at
 * residual_tol in the max norm or fails with ConvergenceError.
 */
PqeResult deterministic_pqe(const MolecularSystem& sys, PqeOptions opt = {});

/// r_i = <phi_i|Udag H U|phi_0> from three diagonal expectations per
/// excitation: E(Omega_i(pi/4)) - E(phi_0)/2 - E(phi_i)/2.
std::vector<double> residuals_identity(const AnsatzState& ansatz,
                                       const QubitOperator& h);

/// Same residuals evaluated directly as <phi_i|Udag H U phi_0>.
std::vector<double> residuals_direct(const AnsatzState& ansatz,
                                     const QubitOperator& h);

struct SpawnAnalysis {
  DeterminantBasis basis;
  std::vector<double> p_model;  ///< analytic sampler distribution
  std::vector<double> p_exact;  ///< |<phi_i|(H - S)|Psi>| normalized
  std::vector<long long> counts;
  long long n_kept = 0;     ///< samples landing inside the sector
  long long n_dead = 0;     ///< moves annihilating outside the sector
  double kl_model = 0.0;    ///< KL(p_model || p_exact)
  double kl_uniform = 0.0;  ///< KL(uniform || p_exact)
  double chi2 = 0.0;
  int chi2_dof = 0;
  double chi2_pvalue = 1.0;
};

/**
 * @brief Heat-bath style spawning study: draw an off-diagonal second-quantized
 *        term with probability |h_k| / sum |h|, draw a source determinant from
 *        |Psi|^2, and emit source ^ x_mask(term).
 *
 * The analytic model p(i) ~ sum_k P(k) |c_{i ^ x_k}|^2 matches the sampler
 * exactly, so the chi-squared test is a self-consistency check, while the
 * KL numbers compare the model against the ideal residual-weighted target.
 */
SpawnAnalysis analyze_spawning(const MolecularSystem& sys,
                               const AnsatzState& state, double shift,
                               long long n_samples, uint64_t seed);

}  // namespace mcpqe
