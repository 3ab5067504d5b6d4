#pragma once

#include <complex>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

namespace mcpqe {

using cplx = std::complex<double>;

/**
 * @brief One Pauli string in symplectic form: coeff * prod_q sigma_q.
 *
 * Bit q of x/z selects the letter on qubit q: X for x-only, Z for z-only,
 * Y for both (the operator is defined as i^{|x&z|} X^x Z^z, which makes the
 * (1,1) letter exactly Y, so `coeff` carries no hidden phase).
 */
struct PauliTerm {
  uint64_t x = 0;
  uint64_t z = 0;
  cplx coeff = {1.0, 0.0};

  uint64_t support() const { return x | z; }
  int weight() const { return __builtin_popcountll(support()); }
  bool is_diagonal() const { return x == 0; }
  bool is_identity() const { return x == 0 && z == 0; }

  /// Letter on qubit q as one of 'I','X','Y','Z'.
  char letter(int q) const {
    const int xb = static_cast<int>((x >> q) & 1);
    const int zb = static_cast<int>((z >> q) & 1);
    return "IXZY"[xb + 2 * zb];
  }

  /// Measurement-basis word: every string maps to the full-register basis
  /// assignment that measures it, with untouched qubits read in Z.
  std::pair<uint64_t, uint64_t> basis_key() const { return {x, x & z}; }

  /// P|m> = phase_on(m) |m ^ x>.
  cplx phase_on(uint64_t mask) const;

  std::string word(int n_qubits) const;
};

/// Exact product of two Pauli strings (phase in {1, i, -1, -i} folded in).
PauliTerm product(const PauliTerm& a, const PauliTerm& b);

/**
 * @brief Sparse sum of Pauli strings with coefficient accumulation.
 *
 * Terms merge on (x, z); iteration through terms() is canonically ordered so
 * downstream grouping and serialization are deterministic.
 */
class QubitOperator {
 public:
  QubitOperator() = default;
  explicit QubitOperator(int n_qubits) : n_qubits_(n_qubits) {}

  int n_qubits() const { return n_qubits_; }
  std::size_t size() const { return terms_.size(); }

  void add(const PauliTerm& t);
  void add(uint64_t x, uint64_t z, cplx coeff) { add(PauliTerm{x, z, coeff}); }
  void add_scaled(const QubitOperator& other, cplx factor);

  cplx coefficient(uint64_t x, uint64_t z) const;

  /// Drops terms with |coeff| <= tol.
  void prune(double tol = 1e-12);

  /// Terms sorted by (x, z).
  std::vector<PauliTerm> terms() const;

  QubitOperator& operator*=(cplx factor);
  friend QubitOperator operator*(const QubitOperator& a, const QubitOperator& b);
  QubitOperator& operator+=(const QubitOperator& other);

  /// One term per line: "<coeff> <letter><qubit> ...", identity printed as
  /// bare coefficient.  Round-trips through parse_operator.
  std::string to_text() const;

 private:
  struct KeyHash {
    std::size_t operator()(const std::pair<uint64_t, uint64_t>& k) const {
      uint64_t h = k.first * 0x9e3779b97f4a7c15ULL;
      h ^= k.second + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
      return static_cast<std::size_t>(h);
    }
  };
  int n_qubits_ = 0;
  std::unordered_map<std::pair<uint64_t, uint64_t>, cplx, KeyHash> terms_;
};

/// Parses the to_text() format.  Throws ConfigError on malformed input.
QubitOperator parse_operator(const std::string& text, int n_qubits);

/// (h - omega)^2 expanded exactly in the Pauli basis, pruned at `tol`.
QubitOperator square_shifted(const QubitOperator& h, double omega,
                             double tol = 1e-12);

}  // namespace mcpqe
