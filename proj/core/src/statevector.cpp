#include "mcpqe/statevector.hpp"

#include <cmath>
#include <stdexcept>

#include "mcpqe/errors.hpp"

namespace mcpqe {

namespace {
constexpr cplx kImag{0.0, 1.0};
}  // namespace

Statevector::Statevector(int n_qubits) : n_qubits_(n_qubits) {
  if (n_qubits < 1 || n_qubits > 28) {
    throw ConfigError("statevector qubit count out of range: " +
                      std::to_string(n_qubits));
  }
  a_.assign(std::size_t{1} << n_qubits, cplx{0.0, 0.0});
  a_[0] = 1.0;
}

Statevector Statevector::basis_state(int n_qubits, uint64_t mask) {
  Statevector sv(n_qubits);
  if (mask >> n_qubits) {
    throw ConfigError("basis state outside register");
  }
  sv.a_[0] = 0.0;
  sv.a_[mask] = 1.0;
  return sv;
}

void Statevector::apply_x(int q) {
  const uint64_t bit = uint64_t{1} << q;
  for (uint64_t i = 0; i < a_.size(); ++i) {
    if (!(i & bit)) std::swap(a_[i], a_[i | bit]);
  }
}

void Statevector::apply_h(int q) {
  const uint64_t bit = uint64_t{1} << q;
  const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
  for (uint64_t i = 0; i < a_.size(); ++i) {
    if (i & bit) continue;
    const cplx a0 = a_[i];
    const cplx a1 = a_[i | bit];
    a_[i] = inv_sqrt2 * (a0 + a1);
    a_[i | bit] = inv_sqrt2 * (a0 - a1);
  }
}

void Statevector::apply_rx(int q, double theta) {
  const uint64_t bit = uint64_t{1} << q;
  const double c = std::cos(0.5 * theta);
  const cplx ms = -kImag * std::sin(0.5 * theta);
  for (uint64_t i = 0; i < a_.size(); ++i) {
    if (i & bit) continue;
    const cplx a0 = a_[i];
    const cplx a1 = a_[i | bit];
    a_[i] = c * a0 + ms * a1;
    a_[i | bit] = ms * a0 + c * a1;
  }
}

void Statevector::apply_rz(int q, double theta) {
  const uint64_t bit = uint64_t{1} << q;
  const cplx e0 = std::exp(-kImag * (0.5 * theta));
  const cplx e1 = std::exp(kImag * (0.5 * theta));
  for (uint64_t i = 0; i < a_.size(); ++i) {
    a_[i] *= (i & bit) ? e1 : e0;
  }
}

void Statevector::apply_cnot(int control, int target) {
  const uint64_t cbit = uint64_t{1} << control;
  const uint64_t tbit = uint64_t{1} << target;
  for (uint64_t i = 0; i < a_.size(); ++i) {
    if ((i & cbit) && !(i & tbit)) std::swap(a_[i], a_[i | tbit]);
  }
}

void Statevector::apply_crz(int control, int target, double theta) {
  const uint64_t cbit = uint64_t{1} << control;
  const uint64_t tbit = uint64_t{1} << target;
  const cplx e0 = std::exp(-kImag * (0.5 * theta));
  const cplx e1 = std::exp(kImag * (0.5 * theta));
  for (uint64_t i = 0; i < a_.size(); ++i) {
    if (i & cbit) a_[i] *= (i & tbit) ? e1 : e0;
  }
}

void Statevector::apply_controlled_xmask(int control, uint64_t mask,
                                         bool anti) {
  const uint64_t cbit = uint64_t{1} << control;
  if (mask & cbit) {
    throw NumericalError("controlled X-mask touches its own control");
  }
  if (mask == 0) return;
  const uint64_t low = mask & (~mask + 1);  // lowest set bit: pair selector
  for (uint64_t i = 0; i < a_.size(); ++i) {
    const bool active = ((i & cbit) != 0) != anti;
    if (active && !(i & low)) std::swap(a_[i], a_[i ^ mask]);
  }
}

void Statevector::apply_pauli(const PauliTerm& p) {
  if (p.x == 0) {
    for (uint64_t i = 0; i < a_.size(); ++i) a_[i] *= p.coeff * p.phase_on(i);
    return;
  }
  const uint64_t low = p.x & (~p.x + 1);
  for (uint64_t i = 0; i < a_.size(); ++i) {
    if (i & low) continue;
    const uint64_t j = i ^ p.x;
    const cplx ai = a_[i];
    const cplx aj = a_[j];
    // (P psi)[i] = phase_on(j) psi[j] since P|j> = phase_on(j) |i>.
    a_[i] = p.coeff * p.phase_on(j) * aj;
    a_[j] = p.coeff * p.phase_on(i) * ai;
  }
}

cplx Statevector::bra_pauli(uint64_t mask, const PauliTerm& p) const {
  const uint64_t j = mask ^ p.x;
  return p.coeff * p.phase_on(j) * a_[j];
}

cplx Statevector::expectation(const PauliTerm& p) const {
  cplx acc{0.0, 0.0};
  for (uint64_t i = 0; i < a_.size(); ++i) {
    const uint64_t j = i ^ p.x;
    acc += std::conj(a_[i]) * p.phase_on(j) * a_[j];
  }
  return p.coeff * acc;
}

cplx Statevector::expectation(const QubitOperator& op) const {
  cplx acc{0.0, 0.0};
  for (const auto& t : op.terms()) acc += expectation(t);
  return acc;
}

Statevector Statevector::apply_operator(const QubitOperator& op) const {
  Statevector out(n_qubits_);
  out.a_.assign(a_.size(), cplx{0.0, 0.0});
  for (const auto& t : op.terms()) {
    for (uint64_t i = 0; i < a_.size(); ++i) {
      const uint64_t j = i ^ t.x;
      out.a_[i] += t.coeff * t.phase_on(j) * a_[j];
    }
  }
  return out;
}

void Statevector::apply_gadget_direct(const PauliTerm& p, double theta,
                                      int control) {
  const double c = std::cos(0.5 * theta);
  const cplx ms = -kImag * std::sin(0.5 * theta);
  uint64_t cbit = 0;
  if (control >= 0) {
    cbit = uint64_t{1} << control;
    if ((p.x | p.z) & cbit) {
      throw NumericalError("gadget control inside rotation support");
    }
  }
  if (p.x == 0) {
    for (uint64_t i = 0; i < a_.size(); ++i) {
      if (cbit && !(i & cbit)) continue;
      a_[i] *= c + ms * p.phase_on(i);
    }
    return;
  }
  const uint64_t low = p.x & (~p.x + 1);
  for (uint64_t i = 0; i < a_.size(); ++i) {
    if (i & low) continue;
    if (cbit && !(i & cbit)) continue;
    const uint64_t j = i ^ p.x;
    const cplx ai = a_[i];
    const cplx aj = a_[j];
    a_[i] = c * ai + ms * p.phase_on(j) * aj;
    a_[j] = c * aj + ms * p.phase_on(i) * ai;
  }
}

uint64_t Statevector::sample(RngStream& rng) const {
  double u = rng.uniform();
  double cum = 0.0;
  for (uint64_t i = 0; i < a_.size(); ++i) {
    cum += std::norm(a_[i]);
    if (u < cum) return i;
  }
  return a_.size() - 1;
}

std::vector<double> Statevector::cumulative_probabilities() const {
  std::vector<double> cdf(a_.size());
  double cum = 0.0;
  for (uint64_t i = 0; i < a_.size(); ++i) {
    cum += std::norm(a_[i]);
    cdf[i] = cum;
  }
  return cdf;
}

double Statevector::norm() const {
  double s = 0.0;
  for (const cplx& a : a_) s += std::norm(a);
  return std::sqrt(s);
}

}  // namespace mcpqe
