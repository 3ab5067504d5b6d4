#include "mcpqe/system.hpp"

#include "mcpqe/errors.hpp"
#include "mcpqe/jordan_wigner.hpp"
#include "mcpqe/oracle.hpp"

namespace mcpqe {

MolecularSystem build_system(const SpinOrbitalIntegrals& raw_ints,
                             int frozen_core) {
  MolecularSystem sys;
  sys.ints = frozen_core > 0 ? freeze_core(raw_ints, frozen_core) : raw_ints;
  sys.n_qubits = sys.ints.n_spin_orbitals();
  if (sys.n_qubits > 28) {
    throw ConfigError("active space too large for a dense statevector");
  }
  sys.reference = reference_determinant(sys.ints);
  sys.e_ref = slater_condon(sys.ints, sys.reference, sys.reference);

  sys.h_fermi = to_fermion_operator(sys.ints);
  sys.h_corr = jordan_wigner(sys.h_fermi, sys.n_qubits);
  sys.h_corr.add(0, 0, cplx{-sys.e_ref, 0.0});
  sys.h_corr.prune();
  sys.groups = group_qubitwise(sys.h_corr);
  return sys;
}

}  // namespace mcpqe
