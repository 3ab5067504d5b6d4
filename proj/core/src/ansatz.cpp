#include "mcpqe/ansatz.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>
#include <numeric>
#include <sstream>

#include "mcpqe/errors.hpp"
#include "mcpqe/fermion.hpp"
#include "mcpqe/jordan_wigner.hpp"

namespace mcpqe {

namespace {

std::string join_indices(const std::vector<int>& v) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) s += ",";
    s += std::to_string(v[i]);
  }
  return s;
}

/// Parity sign and resulting mask of a+_{to...} a_{from...} |mask>.
/// Annihilators act in ascending index order, creators descending, matching
/// the canonical operator ordering.
double apply_excitation_to_mask(uint64_t& mask, const std::vector<int>& from,
                                const std::vector<int>& to) {
  double sign = 1.0;
  for (int p : from) {
    const uint64_t bit = uint64_t{1} << p;
    if (!(mask & bit)) return 0.0;
    if (__builtin_popcountll(mask & (bit - 1)) & 1) sign = -sign;
    mask ^= bit;
  }
  for (auto it = to.rbegin(); it != to.rend(); ++it) {
    const uint64_t bit = uint64_t{1} << *it;
    if (mask & bit) return 0.0;
    if (__builtin_popcountll(mask & (bit - 1)) & 1) sign = -sign;
    mask ^= bit;
  }
  return sign;
}

Excitation make_excitation(const SpinOrbitalIntegrals& ints,
                           uint64_t reference, std::vector<int> from,
                           std::vector<int> to, int n_qubits) {
  Excitation ex;
  ex.from = std::move(from);
  ex.to = std::move(to);
  ex.delta = 0.0;
  for (int p : ex.from) ex.delta += ints.orbital_energies[p / 2];
  for (int p : ex.to) ex.delta -= ints.orbital_energies[p / 2];

  uint64_t mask = reference;
  ex.sign = apply_excitation_to_mask(mask, ex.from, ex.to);
  ex.target_mask = mask;
  if (ex.sign == 0.0) {
    throw NumericalError("excitation does not act on the reference");
  }

  QubitOperator gen = jw_excitation_generator(ex.from, ex.to, n_qubits);
  ex.generator = gen.terms();
  for (const auto& t : ex.generator) {
    if (std::abs(t.coeff.real()) > 1e-12) {
      throw NumericalError("excitation generator is not anti-Hermitian");
    }
  }
  return ex;
}

}  // namespace

std::string Excitation::label() const {
  return join_indices(from) + "->" + join_indices(to);
}

AnsatzState enumerate_uccsd(const SpinOrbitalIntegrals& ints,
                            uint64_t reference) {
  const int n = ints.n_spin_orbitals();
  if (n > 63) throw ConfigError("too many spin orbitals");
  AnsatzState a;
  a.n_qubits = n;
  a.reference = reference;

  std::vector<int> occ, vir;
  for (int p = 0; p < n; ++p) {
    if (reference & (uint64_t{1} << p)) {
      occ.push_back(p);
    } else {
      vir.push_back(p);
    }
  }

  auto spin_count = [](const std::vector<int>& v) {
    int alpha = 0;
    for (int p : v) alpha += (p % 2 == 0);
    return alpha;
  };

  for (int i : occ) {
    for (int r : vir) {
      if (i % 2 != r % 2) continue;
      a.excitations.push_back(make_excitation(ints, reference, {i}, {r}, n));
    }
  }
  for (std::size_t ii = 0; ii < occ.size(); ++ii) {
    for (std::size_t jj = ii + 1; jj < occ.size(); ++jj) {
      const std::vector<int> from{occ[ii], occ[jj]};
      for (std::size_t rr = 0; rr < vir.size(); ++rr) {
        for (std::size_t ss = rr + 1; ss < vir.size(); ++ss) {
          const std::vector<int> to{vir[rr], vir[ss]};
          if (spin_count(from) != spin_count(to)) continue;
          a.excitations.push_back(
              make_excitation(ints, reference, from, to, n));
        }
      }
    }
  }
  return a;
}

std::vector<PauliGadget> build_circuit(const AnsatzState& ansatz) {
  std::vector<PauliGadget> circuit;
  for (const auto& ex : ansatz.excitations) {
    if (ex.theta == 0.0) continue;
    for (const auto& t : ex.generator) {
      // exp(theta * i g_k P_k) = exp(-i (-2 theta g_k)/2 P_k).
      PauliGadget g;
      g.op = PauliTerm{t.x, t.z, cplx{1.0, 0.0}};
      g.angle = -2.0 * ex.theta * t.coeff.imag();
      circuit.push_back(g);
    }
  }
  return circuit;
}

Statevector prepare_state(const AnsatzState& ansatz) {
  Statevector sv = Statevector::basis_state(ansatz.n_qubits, ansatz.reference);
  apply_circuit(sv, build_circuit(ansatz));
  return sv;
}

AnsatzState stochastic_round(const AnsatzState& ansatz, RngStream& rng,
                             bool inclusive) {
  AnsatzState out = ansatz;
  const std::size_t n = out.excitations.size();
  double l1 = 0.0;
  for (const auto& ex : out.excitations) l1 += std::abs(ex.theta);
  if (l1 == 0.0) return out;

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return std::abs(out.excitations[a].theta) >
           std::abs(out.excitations[b].theta);
  });

  const double p = rng.uniform();
  double before = 0.0;
  for (std::size_t rank = 0; rank < n; ++rank) {
    Excitation& ex = out.excitations[order[rank]];
    const double width = std::abs(ex.theta) / l1;
    const double frac = inclusive ? before + width : before;
    if (frac > p) ex.theta = 0.0;
    before += width;
  }
  return out;
}

int count_active(const AnsatzState& ansatz) {
  int n = 0;
  for (const auto& ex : ansatz.excitations) n += (ex.theta != 0.0);
  return n;
}

std::string dump_amplitudes(const AnsatzState& ansatz) {
  std::ostringstream os;
  char buf[80];
  for (const auto& ex : ansatz.excitations) {
    std::snprintf(buf, sizeof(buf), " %.17g %.17g", ex.theta, ex.delta);
    os << ex.label() << buf << "\n";
  }
  return os.str();
}

void warm_start(AnsatzState& fresh, const AnsatzState& previous) {
  std::map<std::string, double> thetas;
  for (const auto& ex : previous.excitations) thetas[ex.label()] = ex.theta;
  for (auto& ex : fresh.excitations) {
    const auto it = thetas.find(ex.label());
    if (it != thetas.end()) ex.theta = it->second;
  }
}

}  // namespace mcpqe
