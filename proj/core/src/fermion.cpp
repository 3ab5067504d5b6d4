#include "mcpqe/fermion.hpp"

#include <algorithm>
#include <cmath>

namespace mcpqe {

void FermionOperator::add(std::vector<int> cre, std::vector<int> ann,
                          std::complex<double> coeff) {
  auto key = std::make_pair(std::move(cre), std::move(ann));
  auto [it, inserted] = terms_.try_emplace(std::move(key), coeff);
  if (!inserted) {
    it->second += coeff;
  }
}

std::vector<FermionTerm> FermionOperator::terms() const {
  std::vector<FermionTerm> out;
  out.reserve(terms_.size());
  for (const auto& [key, c] : terms_) {
    out.push_back(FermionTerm{key.first, key.second, c});
  }
  return out;
}

void FermionOperator::prune(double tol) {
  for (auto it = terms_.begin(); it != terms_.end();) {
    if (std::abs(it->second) <= tol) {
      it = terms_.erase(it);
    } else {
      ++it;
    }
  }
}

FermionOperator to_fermion_operator(const SpinOrbitalIntegrals& raw,
                                    int frozen_core) {
  const SpinOrbitalIntegrals ints =
      frozen_core > 0 ? freeze_core(raw, frozen_core) : raw;
  const int nso = ints.n_spin_orbitals();
  FermionOperator op;
  op.add({}, {}, ints.core_energy);
  for (int P = 0; P < nso; ++P) {
    for (int Q = 0; Q < nso; ++Q) {
      const double val = ints.so_one_body(P, Q);
      if (std::abs(val) > 1e-12) {
        op.add({P}, {Q}, val);
      }
    }
  }
  // 1/2 sum <PQ|RS> adag_P adag_Q a_S a_R, canonicalized to ascending lists.
  for (int P = 0; P < nso; ++P) {
    for (int Q = 0; Q < nso; ++Q) {
      if (P == Q) {
        continue;
      }
      for (int R = 0; R < nso; ++R) {
        for (int S = 0; S < nso; ++S) {
          if (R == S) {
            continue;
          }
          double val = 0.5 * ints.so_coulomb(P, Q, R, S);
          if (std::abs(val) <= 1e-12) {
            continue;
          }
          int p = P, q = Q;
          if (p > q) {
            std::swap(p, q);
            val = -val;
          }
          // literal order is a_S a_R; canonical form wants descending
          // left-to-right, i.e. list {min,max} applied as a_max a_min
          int s = S, r = R;
          if (s < r) {
            std::swap(s, r);
            val = -val;
          }
          op.add({p, q}, {r, s}, val);
        }
      }
    }
  }
  op.prune();
  return op;
}

}  // namespace mcpqe
