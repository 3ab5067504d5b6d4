#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "mcpqe/engine.hpp"
#include "mcpqe/system.hpp"

namespace mcpqe {

/**
 * @brief Flat key = value experiment description.
 *
 * Unknown keys are rejected. '#' starts a comment. Lengths accept an "A" or
 * "a0"/"bohr" suffix (default angstrom where marked). Lists are
 * comma-separated; determinant lists name occupied spin orbitals separated
 * by spaces, with determinants split by ';'.
 */
struct ExperimentConfig {
  // System selection.
  std::string system;   ///< "hchain" or "fcidump"
  std::string fcidump;  ///< path, for system = fcidump
  int n_atoms = 0;
  int charge = 0;
  double spacing_bohr = 0.0;
  int frozen_core = 0;

  // Propagation (defaults mirror PropagationConfig).
  PropagationConfig prop;

  // Folded spectrum.
  bool fs_omega_set = false;
  double fs_omega = 0.0;  ///< correlation Hartree
  uint64_t fs_reference = 0;
  int fs_h_interval = 50;
  double fs_switch_window = 0.05;

  // Scans: list of spacings (hchain) or FCIDUMP paths.
  std::vector<double> scan_spacings_bohr;
  std::vector<std::string> scan_fcidumps;
  /// Folded-spectrum ladder: one reference determinant per state.
  std::vector<uint64_t> fs_references;
  /// Initial folding targets for the ladder, one per reference determinant.
  std::vector<double> fs_omegas;

  // Deterministic solver.
  double pqe_tol = 1e-10;
  int pqe_max_iter = 200;
  double pqe_mixing = 1.0;

  // Oracle.
  int fci_n_states = 6;

  // Spawn study.
  long long spawn_samples = 100000;

  static ExperimentConfig from_file(const std::string& path);

  /// Builds the molecular system this config describes.
  MolecularSystem build() const;

  /// System with integrals evaluated at an overridden hchain spacing.
  MolecularSystem build_at(double spacing_bohr_override) const;
};

/// Occupation mask from a spin-orbital list like "0 1 4".
uint64_t parse_determinant(const std::string& text);

}  // namespace mcpqe
