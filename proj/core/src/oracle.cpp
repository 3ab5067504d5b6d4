#include "mcpqe/oracle.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <unordered_map>

#include "mcpqe/errors.hpp"
#include "mcpqe/statevector.hpp"

namespace mcpqe {

namespace {

constexpr std::size_t kMaxDim = 4096;

int popcount_below(uint64_t mask, int p) {
  return __builtin_popcountll(mask & ((uint64_t{1} << p) - 1));
}

/// Sign of bringing a+_p ... a_q into alignment between two determinants that
/// differ in the listed orbitals: parity of occupied orbitals strictly
/// between annihilated/created pairs.
double single_replacement_sign(uint64_t ket, int from, int to) {
  const uint64_t lo = std::min(from, to) >= 63
                          ? 0
                          : (uint64_t{1} << std::min(from, to));
  const uint64_t hi = uint64_t{1} << std::max(from, to);
  const uint64_t between = (hi - 1) & ~(2 * lo - 1);
  return (__builtin_popcountll(ket & between) & 1) ? -1.0 : 1.0;
}

std::vector<int> occupied_list(uint64_t mask) {
  std::vector<int> occ;
  while (mask) {
    occ.push_back(__builtin_ctzll(mask));
    mask &= mask - 1;
  }
  return occ;
}

}  // namespace

long long DeterminantBasis::index_of(uint64_t mask) const {
  const auto it = std::lower_bound(masks.begin(), masks.end(), mask);
  if (it == masks.end() || *it != mask) return -1;
  return it - masks.begin();
}

DeterminantBasis make_sector_basis(int n_spin_orbitals, int n_electrons,
                                   int ms2) {
  if (n_spin_orbitals < 1 || n_spin_orbitals > 30) {
    throw ConfigError("sector basis: spin orbital count out of range");
  }
  if (n_electrons < 0 || n_electrons > n_spin_orbitals) {
    throw ConfigError("sector basis: bad electron count");
  }
  DeterminantBasis basis;
  basis.n_spin_orbitals = n_spin_orbitals;
  const uint64_t limit = uint64_t{1} << n_spin_orbitals;
  for (uint64_t mask = 0; mask < limit; ++mask) {
    if (__builtin_popcountll(mask) != n_electrons) continue;
    const int n_alpha = __builtin_popcountll(mask & 0x5555555555555555ULL);
    const int n_beta = n_electrons - n_alpha;
    if (n_alpha - n_beta != ms2) continue;
    basis.masks.push_back(mask);
  }
  if (basis.masks.empty()) {
    throw ConfigError("sector basis: empty (n_electrons, ms2) sector");
  }
  return basis;
}

double slater_condon(const SpinOrbitalIntegrals& ints, uint64_t bra,
                     uint64_t ket) {
  const uint64_t diff = bra ^ ket;
  const int n_diff = __builtin_popcountll(diff);

  if (n_diff == 0) {
    double e = ints.core_energy;
    const std::vector<int> occ = occupied_list(ket);
    for (int p : occ) e += ints.so_one_body(p, p);
    for (std::size_t i = 0; i < occ.size(); ++i) {
      for (std::size_t j = i + 1; j < occ.size(); ++j) {
        e += ints.so_antisym(occ[i], occ[j], occ[i], occ[j]);
      }
    }
    return e;
  }

  if (n_diff == 2) {
    const int from = __builtin_ctzll(diff & ket);
    const int to = __builtin_ctzll(diff & bra);
    double e = ints.so_one_body(to, from);
    uint64_t common = ket & bra;
    while (common) {
      const int p = __builtin_ctzll(common);
      common &= common - 1;
      e += ints.so_antisym(to, p, from, p);
    }
    return single_replacement_sign(ket & bra, from, to) * e;
  }

  if (n_diff == 4) {
    const uint64_t ann = diff & ket;
    const uint64_t cre = diff & bra;
    const int i = __builtin_ctzll(ann);
    const int j = 63 - __builtin_clzll(ann);
    const int a = __builtin_ctzll(cre);
    const int b = 63 - __builtin_clzll(cre);
    // Parity of aligning a+_b a+_a a_j a_i between the determinants.
    int perm = popcount_below(ket, i) + popcount_below(ket ^ ann, j) +
               popcount_below(bra, a) + popcount_below(bra ^ cre, b);
    const double sign = (perm & 1) ? -1.0 : 1.0;
    return sign * (ints.so_antisym(a, b, i, j));
  }

  return 0.0;
}

std::vector<double> sector_matrix(const SpinOrbitalIntegrals& ints,
                                  const DeterminantBasis& basis) {
  const std::size_t dim = basis.masks.size();
  std::vector<double> h(dim * dim, 0.0);
  for (std::size_t col = 0; col < dim; ++col) {
    for (std::size_t row = 0; row <= col; ++row) {
      const double v = slater_condon(ints, basis.masks[row], basis.masks[col]);
      h[row * dim + col] = v;
      h[col * dim + row] = v;
    }
  }
  return h;
}

std::vector<double> sector_matrix_from_qubit(const QubitOperator& op,
                                             const DeterminantBasis& basis) {
  const std::size_t dim = basis.masks.size();
  std::vector<double> h(dim * dim, 0.0);
  std::unordered_map<uint64_t, long long> index;
  index.reserve(2 * dim);
  for (std::size_t k = 0; k < dim; ++k) index[basis.masks[k]] = k;

  for (const auto& t : op.terms()) {
    for (std::size_t col = 0; col < dim; ++col) {
      const uint64_t ket = basis.masks[col];
      const uint64_t out = ket ^ t.x;
      const auto it = index.find(out);
      if (it == index.end()) continue;
      const cplx amp = t.coeff * t.phase_on(ket);
      if (std::abs(amp.imag()) > 1e-10) {
        throw NumericalError("qubit sector matrix has imaginary entry");
      }
      h[it->second * dim + col] += amp.real();
    }
  }
  return h;
}

Spectrum diagonalize(const std::vector<double>& matrix, std::size_t dim,
                     int n_states) {
  if (dim > kMaxDim) {
    throw ConfigError("oracle diagonalization capped at dimension 4096");
  }
  if (matrix.size() != dim * dim) {
    throw ConfigError("oracle matrix size mismatch");
  }
  Eigen::MatrixXd m(dim, dim);
  for (std::size_t r = 0; r < dim; ++r) {
    for (std::size_t c = 0; c < dim; ++c) m(r, c) = matrix[r * dim + c];
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(m);
  if (solver.info() != Eigen::Success) {
    throw NumericalError("eigensolver failed");
  }
  const int total = static_cast<int>(dim);
  const int keep = (n_states < 0 || n_states > total) ? total : n_states;
  Spectrum s;
  s.eigenvalues.assign(solver.eigenvalues().data(),
                       solver.eigenvalues().data() + keep);
  s.vectors.resize(keep);
  for (int k = 0; k < keep; ++k) {
    s.vectors[k].assign(solver.eigenvectors().col(k).data(),
                        solver.eigenvectors().col(k).data() + dim);
  }
  return s;
}

Spectrum fci_spectrum(const SpinOrbitalIntegrals& ints,
                      const DeterminantBasis& basis, int n_states) {
  return diagonalize(sector_matrix(ints, basis), basis.masks.size(), n_states);
}

std::vector<double> exact_state(const AnsatzState& ansatz,
                                const DeterminantBasis& basis,
                                double leak_tol) {
  const Statevector sv = prepare_state(ansatz);
  std::vector<double> c(basis.masks.size(), 0.0);
  double in_sector = 0.0;
  for (std::size_t k = 0; k < basis.masks.size(); ++k) {
    const cplx a = sv.amplitude(basis.masks[k]);
    if (std::abs(a.imag()) > leak_tol) {
      throw NumericalError("ansatz state has imaginary amplitude");
    }
    c[k] = a.real();
    in_sector += std::norm(a);
  }
  const double total = sv.norm();
  if (std::abs(total * total - in_sector) > leak_tol) {
    throw NumericalError("ansatz state leaked outside the particle sector");
  }
  return c;
}

}  // namespace mcpqe
