#pragma once

#include "mcpqe/integrals.hpp"

namespace mcpqe {

/**
 * @brief STO-3G integrals for a linear chain of hydrogen atoms, in the
 * canonical RHF molecular-orbital basis.
 *
 * Spacing is in bohr.  Closed-shell only: n_atoms - charge must be even and
 * positive.  The SCF uses damped fixed-point iteration (mixing 0.5) to an
 * energy tolerance of 1e-10 within 200 cycles; ConvergenceError otherwise.
 * Returned orbital_energies are the converged canonical eigenvalues.
 */
SpinOrbitalIntegrals hydrogen_chain_integrals(int n_atoms, double spacing_bohr,
                                              int charge = 0);

}  // namespace mcpqe
