#include "mcpqe/jordan_wigner.hpp"

namespace mcpqe {

namespace {

// Two-string image of a single ladder operator.
void ladder_strings(int p, bool dagger, PauliTerm out[2]) {
  const uint64_t bit = 1ULL << p;
  const uint64_t zs = bit - 1;
  out[0] = PauliTerm{bit, zs, {0.5, 0.0}};
  out[1] = PauliTerm{bit, zs | bit, {0.0, dagger ? -0.5 : 0.5}};
}

void accumulate_term(const FermionTerm& t, QubitOperator& acc) {
  // literal operator order: creators ascending, then annihilators descending
  std::vector<std::pair<int, bool>> ladder;
  for (const int p : t.cre) {
    ladder.emplace_back(p, true);
  }
  for (auto it = t.ann.rbegin(); it != t.ann.rend(); ++it) {
    ladder.emplace_back(*it, false);
  }
  std::vector<PauliTerm> expansion{PauliTerm{0, 0, t.coeff}};
  for (const auto& [p, dag] : ladder) {
    PauliTerm ops[2];
    ladder_strings(p, dag, ops);
    std::vector<PauliTerm> next;
    next.reserve(expansion.size() * 2);
    for (const auto& e : expansion) {
      next.push_back(product(e, ops[0]));
      next.push_back(product(e, ops[1]));
    }
    expansion = std::move(next);
  }
  for (const auto& e : expansion) {
    acc.add(e);
  }
}

}  // namespace

QubitOperator jordan_wigner(const FermionOperator& op, int n_qubits,
                            double prune_tol) {
  QubitOperator out(n_qubits);
  for (const auto& t : op.terms()) {
    accumulate_term(t, out);
  }
  out.prune(prune_tol);
  return out;
}

QubitOperator jw_excitation_generator(const std::vector<int>& from,
                                      const std::vector<int>& to,
                                      int n_qubits) {
  FermionOperator g;
  g.add(to, from, {1.0, 0.0});
  g.add(from, to, {-1.0, 0.0});
  return jordan_wigner(g, n_qubits);
}

}  // namespace mcpqe
