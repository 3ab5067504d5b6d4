#pragma once

#include <cstdint>
#include <vector>

namespace mcpqe {

/// Bohr radius in Angstrom; single point of length-unit truth.
inline constexpr double kAngstromPerBohr = 0.52917721092;

/**
 * @brief Molecular integrals over spatial orbitals, chemists' notation.
 *
 * two_body(p,q,r,s) stores (pq|rs) = integral of p*(1) q(1) r12^-1 r*(2) s(2)
 * with real orbitals (8-fold permutation symmetry held explicitly).  Spin
 * orbitals are interleaved on top of this: alpha = 2p, beta = 2p + 1, and
 * orbitals are assumed ordered by increasing energy.
 */
struct SpinOrbitalIntegrals {
  int n_spatial = 0;
  int n_electrons = 0;
  int ms2 = 0;
  double core_energy = 0.0;
  std::vector<double> h;    // n^2
  std::vector<double> v;    // n^4, chemists'
  std::vector<double> orbital_energies;  // may be empty

  void resize(int n) {
    n_spatial = n;
    h.assign(static_cast<std::size_t>(n) * n, 0.0);
    v.assign(static_cast<std::size_t>(n) * n * n * n, 0.0);
  }

  double one_body(int p, int q) const { return h[p * n_spatial + q]; }
  double& one_body(int p, int q) { return h[p * n_spatial + q]; }

  double two_body(int p, int q, int r, int s) const {
    const int n = n_spatial;
    return v[((static_cast<std::size_t>(p) * n + q) * n + r) * n + s];
  }
  double& two_body(int p, int q, int r, int s) {
    const int n = n_spatial;
    return v[((static_cast<std::size_t>(p) * n + q) * n + r) * n + s];
  }

  /// Stores (pq|rs) into all eight permutation-equivalent slots.
  void set_two_body(int p, int q, int r, int s, double val);

  int n_spin_orbitals() const { return 2 * n_spatial; }
  int n_alpha() const { return (n_electrons + ms2) / 2; }
  int n_beta() const { return (n_electrons - ms2) / 2; }

  /// One-electron element between spin orbitals (zero across spin).
  double so_one_body(int P, int Q) const {
    return (P % 2) == (Q % 2) ? one_body(P / 2, Q / 2) : 0.0;
  }

  /// Physicists' <PQ|RS> between spin orbitals.
  double so_coulomb(int P, int Q, int R, int S) const {
    if ((P % 2) != (R % 2) || (Q % 2) != (S % 2)) {
      return 0.0;
    }
    return two_body(P / 2, R / 2, Q / 2, S / 2);
  }

  /// Antisymmetrized <PQ||RS>.
  double so_antisym(int P, int Q, int R, int S) const {
    return so_coulomb(P, Q, R, S) - so_coulomb(P, Q, S, R);
  }
};

/**
 * @brief Folds the lowest n_frozen spatial orbitals into an effective
 * Hamiltonian over the remaining active orbitals.
 *
 * The frozen orbitals must be doubly occupied in every configuration of
 * interest; their mean-field interaction moves into core_energy and the
 * one-body term.  Throws ConfigError if too many orbitals are frozen.
 */
SpinOrbitalIntegrals freeze_core(const SpinOrbitalIntegrals& ints, int n_frozen);

/// Aufbau reference determinant as a spin-orbital occupation mask.
uint64_t reference_determinant(const SpinOrbitalIntegrals& ints);

}  // namespace mcpqe
