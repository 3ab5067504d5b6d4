#pragma once

#include <cstdint>
#include <vector>

#include "mcpqe/pauli.hpp"
#include "mcpqe/rng.hpp"

namespace mcpqe {

/**
 * @brief A set of qubitwise-commuting Pauli strings sharing one measurement
 *        basis.
 *
 * Every member measures X on the qubits in basis_x, Y on basis_y and Z
 * everywhere else, so a single basis rotation reads out the whole group.
 */
struct CommutingGroup {
  uint64_t basis_x = 0;
  uint64_t basis_y = 0;
  std::vector<PauliTerm> members;
  double weight = 0.0;  ///< sum of |coeff| over members
  bool diagonal = false;
};

/**
 * @brief Partition an operator into single-basis groups.
 *
 * Strings are grouped by their full measurement basis word (identities
 * completed to Z), i.e. by the key (x, x & z). All diagonal strings land in
 * one group, placed first; the remaining groups are ordered by decreasing
 * weight.
 */
std::vector<CommutingGroup> group_qubitwise(const QubitOperator& op);

/// One sampled group plus its unbiasing multiplier.
struct GroupDraw {
  int index = 0;
  double multiplier = 1.0;
};

/**
 * @brief Draw the groups measured in one propagation step.
 *
 * With keep_diagonal_exact (default) the leading diagonal group is always
 * included with multiplier 1 and n_draws groups are sampled with replacement
 * from the rest with probability weight_k / sum_offdiag, each aggregated draw
 * carrying multiplier m_k / (n_draws p_k). Otherwise all groups are sampled
 * on an equal footing with p_k over the full list. n_draws <= 0 returns every
 * group exactly.
 */
std::vector<GroupDraw> sample_groups(const std::vector<CommutingGroup>& groups,
                                     int n_draws, RngStream& rng,
                                     bool keep_diagonal_exact = true);

}  // namespace mcpqe
