#pragma once

#include <cstdint>
#include <vector>

#include "mcpqe/pauli.hpp"
#include "mcpqe/rng.hpp"

namespace mcpqe {

/**
 * @brief Dense n-qubit statevector.
 *
 * Basis index bit q is qubit q's value, so a determinant occupation mask is
 * directly a basis index (display convention reads qubit 0 leftmost).
 */
class Statevector {
 public:
  explicit Statevector(int n_qubits);
  static Statevector basis_state(int n_qubits, uint64_t mask);

  int n_qubits() const { return n_qubits_; }
  std::size_t dim() const { return a_.size(); }
  cplx amplitude(uint64_t idx) const { return a_[idx]; }
  cplx& amplitude(uint64_t idx) { return a_[idx]; }
  const std::vector<cplx>& amplitudes() const { return a_; }

  void apply_x(int q);
  void apply_h(int q);
  void apply_rx(int q, double theta);
  void apply_rz(int q, double theta);
  void apply_cnot(int control, int target);
  void apply_crz(int control, int target, double theta);

  /// X^mask on the branch where `control` is |1> (anti = false) or |0>.
  void apply_controlled_xmask(int control, uint64_t mask, bool anti);

  /// |psi> <- coeff * P |psi> (sparse, exact).
  void apply_pauli(const PauliTerm& p);

  /// <mask| P |psi>.
  cplx bra_pauli(uint64_t mask, const PauliTerm& p) const;

  cplx expectation(const PauliTerm& p) const;
  cplx expectation(const QubitOperator& op) const;

  /// |out> = op |psi> (dense accumulation over terms).
  Statevector apply_operator(const QubitOperator& op) const;

  /**
   * @brief exp(-i theta/2 P) via the closed form cos(t/2) - i sin(t/2) P.
   *
   * The term's coefficient is ignored; the angle carries the full weight.
   * With control >= 0 the rotation acts on the control=|1> branch only
   * (control must be outside P's support).
   */
  void apply_gadget_direct(const PauliTerm& p, double theta, int control = -1);

  /// Born-rule sample of the full register.
  uint64_t sample(RngStream& rng) const;

  /// Cumulative |amplitude|^2 table for repeated sampling.
  std::vector<double> cumulative_probabilities() const;

  double norm() const;

 private:
  int n_qubits_;
  std::vector<cplx> a_;
};

}  // namespace mcpqe
