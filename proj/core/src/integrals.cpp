#include "mcpqe/integrals.hpp"

#include <string>

#include "mcpqe/errors.hpp"

namespace mcpqe {

void SpinOrbitalIntegrals::set_two_body(int p, int q, int r, int s, double val) {
  two_body(p, q, r, s) = val;
  two_body(q, p, r, s) = val;
  two_body(p, q, s, r) = val;
  two_body(q, p, s, r) = val;
  two_body(r, s, p, q) = val;
  two_body(s, r, p, q) = val;
  two_body(r, s, q, p) = val;
  two_body(s, r, q, p) = val;
}

SpinOrbitalIntegrals freeze_core(const SpinOrbitalIntegrals& ints, int n_frozen) {
  if (n_frozen == 0) {
    return ints;
  }
  if (n_frozen < 0 || 2 * n_frozen > ints.n_electrons
      || n_frozen >= ints.n_spatial) {
    throw ConfigError("cannot freeze " + std::to_string(n_frozen)
                      + " orbitals of " + std::to_string(ints.n_spatial)
                      + " with " + std::to_string(ints.n_electrons)
                      + " electrons");
  }
  const int n_act = ints.n_spatial - n_frozen;
  SpinOrbitalIntegrals out;
  out.resize(n_act);
  out.n_electrons = ints.n_electrons - 2 * n_frozen;
  out.ms2 = ints.ms2;

  double ec = ints.core_energy;
  for (int i = 0; i < n_frozen; ++i) {
    ec += 2.0 * ints.one_body(i, i);
    for (int j = 0; j < n_frozen; ++j) {
      ec += 2.0 * ints.two_body(i, i, j, j) - ints.two_body(i, j, j, i);
    }
  }
  out.core_energy = ec;

  for (int p = 0; p < n_act; ++p) {
    for (int q = 0; q < n_act; ++q) {
      double val = ints.one_body(p + n_frozen, q + n_frozen);
      for (int i = 0; i < n_frozen; ++i) {
        val += 2.0 * ints.two_body(p + n_frozen, q + n_frozen, i, i)
               - ints.two_body(p + n_frozen, i, i, q + n_frozen);
      }
      out.one_body(p, q) = val;
    }
  }
  for (int p = 0; p < n_act; ++p) {
    for (int q = 0; q < n_act; ++q) {
      for (int r = 0; r < n_act; ++r) {
        for (int s = 0; s < n_act; ++s) {
          out.two_body(p, q, r, s) = ints.two_body(p + n_frozen, q + n_frozen,
                                                   r + n_frozen, s + n_frozen);
        }
      }
    }
  }
  if (!ints.orbital_energies.empty()) {
    out.orbital_energies.assign(ints.orbital_energies.begin() + n_frozen,
                                ints.orbital_energies.end());
  }
  return out;
}

uint64_t reference_determinant(const SpinOrbitalIntegrals& ints) {
  if (ints.n_electrons < 0 || (ints.n_electrons + ints.ms2) % 2 != 0
      || ints.n_alpha() > ints.n_spatial || ints.n_beta() > ints.n_spatial
      || ints.n_beta() < 0) {
    throw ConfigError("inconsistent electron count / ms2");
  }
  uint64_t mask = 0;
  for (int p = 0; p < ints.n_alpha(); ++p) {
    mask |= 1ULL << (2 * p);
  }
  for (int p = 0; p < ints.n_beta(); ++p) {
    mask |= 1ULL << (2 * p + 1);
  }
  return mask;
}

}  // namespace mcpqe
