#pragma once

#include <cstdint>
#include <vector>

#include "mcpqe/fermion.hpp"
#include "mcpqe/grouping.hpp"
#include "mcpqe/integrals.hpp"
#include "mcpqe/pauli.hpp"

namespace mcpqe {

/**
 * @brief A molecular Hamiltonian prepared for propagation.
 *
 * The stored operator acts in correlation space: h_corr = H - e_ref, where
 * e_ref = <ref|H|ref> for the aufbau reference determinant, so the shift
 * and projected energies are correlation energies and e_ref restores totals.
 */
struct MolecularSystem {
  SpinOrbitalIntegrals ints;  ///< active-space integrals (core folded in)
  int n_qubits = 0;
  uint64_t reference = 0;
  double e_ref = 0.0;
  FermionOperator h_fermi;           ///< full H, second-quantized
  QubitOperator h_corr;              ///< H - e_ref after the qubit mapping
  std::vector<CommutingGroup> groups;  ///< single-basis classes of h_corr
};

/**
 * @brief Map integrals to the propagation representation: fold the core,
 *        build the second-quantized Hamiltonian, apply the fermion-to-qubit
 *        encoding, subtract <ref|H|ref> and partition into groups.
 */
MolecularSystem build_system(const SpinOrbitalIntegrals& raw_ints,
                             int frozen_core = 0);

}  // namespace mcpqe
