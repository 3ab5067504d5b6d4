#pragma once

#include <cstdint>
#include <vector>

#include "mcpqe/pauli.hpp"
#include "mcpqe/statevector.hpp"

namespace mcpqe {

/// One first-order Trotter factor exp(-i angle/2 P).
struct PauliGadget {
  PauliTerm op;  ///< bare string; coefficient ignored
  double angle = 0.0;
};

struct GateCounts {
  long long cnot = 0;
  long long single_qubit = 0;
  long long rotation = 0;             ///< uncontrolled Rz
  long long controlled_rotation = 0;  ///< CRz (counts as two-qubit)
  long long two_qubit() const { return cnot + controlled_rotation; }
};

/// Two-qubit gates of the standard decomposition: 2(w-1) CNOTs per gadget
/// plus one controlled rotation each when the circuit is ancilla-controlled.
GateCounts count_gates(const std::vector<PauliGadget>& circuit,
                       bool controlled);

/// Apply every gadget via the closed-form rotation (fast path).
void apply_circuit(Statevector& sv, const std::vector<PauliGadget>& circuit,
                   int control = -1);

/**
 * @brief Apply one gadget as explicit gates: basis changes (H for X,
 *        x-rotations for Y), a CNOT parity ladder onto the highest support
 *        qubit, Rz or CRz, and the mirrored unwinding.
 */
GateCounts apply_gadget_circuit(Statevector& sv, const PauliGadget& g,
                                int control = -1);

/// Gate-level application of a whole circuit; returns the accumulated counts.
GateCounts apply_circuit_gates(Statevector& sv,
                               const std::vector<PauliGadget>& circuit,
                               int control = -1);

/**
 * @brief Prepare the one-ancilla interference state for overlap readout.
 *
 * Register layout: system on qubits [0, n_sys), ancilla = qubit n_sys.
 * Circuit: H on the ancilla, X-prep of |ref>, the ansatz controlled on the
 * ancilla, an anti-controlled X string mapping ref -> target on the idle
 * branch, and a closing ancilla H. Then <Z_anc (x) P> = Re <target|P U|ref>
 * and <Y_anc (x) P> = -Im <target|P U|ref>.
 */
Statevector hadamard_test_state(const std::vector<PauliGadget>& circuit,
                                int n_sys, uint64_t ref_mask,
                                uint64_t target_mask);

/// <Z_anc (x) P> with P acting on the system qubits.
double ancilla_z_expectation(const Statevector& sv, int ancilla,
                             const PauliTerm& p);

/// <Y_anc (x) P>.
double ancilla_y_expectation(const Statevector& sv, int ancilla,
                             const PauliTerm& p);

}  // namespace mcpqe
