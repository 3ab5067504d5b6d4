#pragma once

#include <cstdint>
#include <vector>

#include "mcpqe/ansatz.hpp"
#include "mcpqe/integrals.hpp"
#include "mcpqe/pauli.hpp"

namespace mcpqe {

/// All determinants of a fixed (n_electrons, 2*Sz) sector, ascending masks.
struct DeterminantBasis {
  int n_spin_orbitals = 0;
  std::vector<uint64_t> masks;

  /// Index of a mask, or -1 when outside the sector.
  long long index_of(uint64_t mask) const;
};

DeterminantBasis make_sector_basis(int n_spin_orbitals, int n_electrons,
                                   int ms2);

/// <bra| H |ket> from the integrals via the Slater-Condon rules.
double slater_condon(const SpinOrbitalIntegrals& ints, uint64_t bra,
                     uint64_t ket);

/// Dense sector Hamiltonian (row-major) built determinant-by-determinant.
std::vector<double> sector_matrix(const SpinOrbitalIntegrals& ints,
                                  const DeterminantBasis& basis);

/**
 * @brief Dense sector matrix of a qubit operator, accumulated by applying
 *        each Pauli string to sector kets; never materializes the full
 *        2^n-dimensional operator.
 */
std::vector<double> sector_matrix_from_qubit(const QubitOperator& op,
                                             const DeterminantBasis& basis);

struct Spectrum {
  std::vector<double> eigenvalues;           ///< ascending
  std::vector<std::vector<double>> vectors;  ///< vectors[k] over basis.masks
};

/// Full diagonalization of the sector Hamiltonian (dimension capped at 4096).
Spectrum fci_spectrum(const SpinOrbitalIntegrals& ints,
                      const DeterminantBasis& basis, int n_states = -1);

/// Eigen-decomposition of an explicit dense symmetric matrix.
Spectrum diagonalize(const std::vector<double>& matrix, std::size_t dim,
                     int n_states = -1);

/**
 * @brief Sector amplitudes of U|ref> for an exact ansatz state, verifying
 *        that no amplitude leaked outside the sector.
 */
std::vector<double> exact_state(const AnsatzState& ansatz,
                                const DeterminantBasis& basis,
                                double leak_tol = 1e-10);

}  // namespace mcpqe
