#pragma once

#include <string>

#include "mcpqe/integrals.hpp"

namespace mcpqe {

/**
 * @brief Reads a Molpro-convention FCIDUMP file.
 *
 * Header namelist must define NORB and NELEC (MS2 defaults to 0); ORBSYM and
 * ISYM are accepted and ignored.  Value lines are classified by their index
 * pattern: (i j k l) two-electron chemists' (ij|kl), (i j 0 0) one-electron,
 * (i 0 0 0) orbital energy, (0 0 0 0) core energy.  Indices are 1-based.
 * Throws ConfigError with a line number on malformed input.
 */
SpinOrbitalIntegrals parse_fcidump(const std::string& path);

/**
 * @brief Writes integrals in FCIDUMP form, one canonical representative per
 * permutation class (p>=q, r>=s, pq>=rs composite), values below 1e-12
 * omitted.  parse(write(x)) reproduces x exactly.
 */
void write_fcidump(const std::string& path, const SpinOrbitalIntegrals& ints);

}  // namespace mcpqe
