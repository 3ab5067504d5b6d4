#pragma once

#include "mcpqe/fermion.hpp"
#include "mcpqe/pauli.hpp"

namespace mcpqe {

/**
 * @brief Jordan-Wigner image of a fermionic operator.
 *
 * Convention: adag_p = (X_p - iY_p)/2 * prod_{q<p} Z_q, so qubit q's
 * occupation is bit q of the basis-state index and determinant phases match
 * the ascending-ordered creation convention used by the determinant oracle.
 */
QubitOperator jordan_wigner(const FermionOperator& op, int n_qubits,
                            double prune_tol = 1e-12);

/**
 * @brief Anti-Hermitian excitation generator A - Adag at unit amplitude,
 * where A = adag_{to...} a_{from...} in canonical normal order.
 *
 * All Pauli strings in the image mutually commute (2 for singles, 8 for
 * doubles) and carry purely imaginary coefficients.
 */
QubitOperator jw_excitation_generator(const std::vector<int>& from,
                                      const std::vector<int>& to,
                                      int n_qubits);

}  // namespace mcpqe
