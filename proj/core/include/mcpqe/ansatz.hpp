#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "mcpqe/circuit.hpp"
#include "mcpqe/integrals.hpp"
#include "mcpqe/pauli.hpp"
#include "mcpqe/rng.hpp"

namespace mcpqe {

/**
 * @brief One anti-Hermitian excitation generator A = a+_to... a_from... minus
 *        its adjoint, with its amplitude.
 *
 * sign relates the generator image of the reference to the canonical
 * occupation mask: A |ref> = sign |target_mask>. delta is the Moller-Plesset
 * style denominator used by the quasi-Newton amplitude update.
 */
struct Excitation {
  std::vector<int> from;  ///< occupied spin orbitals, ascending
  std::vector<int> to;    ///< virtual spin orbitals, ascending
  double theta = 0.0;
  double delta = 0.0;
  double sign = 1.0;
  uint64_t target_mask = 0;
  std::vector<PauliTerm> generator;  ///< Pauli image of A, coefficients i*g_k

  std::string label() const;
};

/// Reference determinant plus an ordered excitation pool with amplitudes.
struct AnsatzState {
  int n_qubits = 0;
  uint64_t reference = 0;
  std::vector<Excitation> excitations;
};

/**
 * @brief Enumerate the full singles-and-doubles pool out of a reference
 *        determinant, keeping only Sz-conserving moves.
 *
 * Singles are ordered lexicographically by (from, to), then doubles by
 * (from pair, to pair). Orbital energies feed the quasi-Newton denominators
 * delta = sum(eps_occ) - sum(eps_virt).
 */
AnsatzState enumerate_uccsd(const SpinOrbitalIntegrals& ints,
                            uint64_t reference);

/**
 * @brief Disentangled product circuit: for each excitation, in pool order,
 *        exp(theta A) factorized over its mutually commuting Pauli strings,
 *        each realized as a rotation gadget of angle -2 theta g_k.
 */
std::vector<PauliGadget> build_circuit(const AnsatzState& ansatz);

/// U|ref> on the system register via the closed-form gadgets.
Statevector prepare_state(const AnsatzState& ansatz);

/**
 * @brief Stochastic amplitude compression with a single uniform draw.
 *
 * Excitations are ranked by decreasing |theta| (ties by pool position) and
 * excitation r survives when the cumulative amplitude fraction strictly
 * before it is <= p, so the largest amplitude always survives and the
 * expected kept fraction tracks p. The inclusive variant compares the
 * fraction including the candidate itself. Dropped amplitudes are zeroed.
 */
AnsatzState stochastic_round(const AnsatzState& ansatz, RngStream& rng,
                             bool inclusive = false);

/// Number of nonzero amplitudes.
int count_active(const AnsatzState& ansatz);

/// Serialize amplitudes as "label theta delta" lines.
std::string dump_amplitudes(const AnsatzState& ansatz);

/// Copy amplitudes from a previous state with the same pool labels.
void warm_start(AnsatzState& fresh, const AnsatzState& previous);

}  // namespace mcpqe
