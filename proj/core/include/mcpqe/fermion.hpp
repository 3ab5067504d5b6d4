#pragma once

#include <complex>
#include <map>
#include <utility>
#include <vector>

#include "mcpqe/integrals.hpp"

namespace mcpqe {

/**
 * @brief One normal-ordered particle-conserving term:
 *   coeff * adag_{cre[0]} adag_{cre[1]} ... a_{ann[k-1]} ... a_{ann[0]}
 * with both index lists strictly ascending (annihilators thus apply in
 * ascending index order when acting rightward on a ket).
 */
struct FermionTerm {
  std::vector<int> cre;
  std::vector<int> ann;
  std::complex<double> coeff;
};

/// Sum of normal-ordered fermionic terms; accumulation merges duplicates.
class FermionOperator {
 public:
  void add(std::vector<int> cre, std::vector<int> ann,
           std::complex<double> coeff);
  std::vector<FermionTerm> terms() const;
  std::size_t size() const { return terms_.size(); }
  void prune(double tol = 1e-12);

 private:
  std::map<std::pair<std::vector<int>, std::vector<int>>,
           std::complex<double>> terms_;
};

/**
 * @brief Second-quantized Hamiltonian over interleaved spin orbitals.
 *
 * Converts stored chemists' integrals to physicists' ordering here, at the
 * single conversion point.  frozen_core > 0 folds that many lowest spatial
 * orbitals first.
 */
FermionOperator to_fermion_operator(const SpinOrbitalIntegrals& ints,
                                    int frozen_core = 0);

}  // namespace mcpqe
