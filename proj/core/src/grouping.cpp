#include "mcpqe/grouping.hpp"

#include <algorithm>
#include <map>
#include <utility>

#include "mcpqe/errors.hpp"

namespace mcpqe {

std::vector<CommutingGroup> group_qubitwise(const QubitOperator& op) {
  // Key = (X-basis qubits, Y-basis qubits); Z/I qubits are both read in Z.
  std::map<std::pair<uint64_t, uint64_t>, CommutingGroup> classes;
  for (const auto& t : op.terms()) {
    if (t.is_identity()) continue;
    const auto key = t.basis_key();
    CommutingGroup& g = classes[key];
    g.basis_x = key.first;
    g.basis_y = key.second;
    g.members.push_back(t);
    g.weight += std::abs(t.coeff);
  }

  std::vector<CommutingGroup> groups;
  groups.reserve(classes.size());
  for (auto& [key, g] : classes) {
    g.diagonal = (g.basis_x == 0 && g.basis_y == 0);
    groups.push_back(std::move(g));
  }
  std::stable_sort(groups.begin(), groups.end(),
                   [](const CommutingGroup& a, const CommutingGroup& b) {
                     if (a.diagonal != b.diagonal) return a.diagonal;
                     if (a.weight != b.weight) return a.weight > b.weight;
                     if (a.basis_x != b.basis_x) return a.basis_x < b.basis_x;
                     return a.basis_y < b.basis_y;
                   });
  return groups;
}

std::vector<GroupDraw> sample_groups(const std::vector<CommutingGroup>& groups,
                                     int n_draws, RngStream& rng,
                                     bool keep_diagonal_exact) {
  std::vector<GroupDraw> draws;
  if (groups.empty()) return draws;

  if (n_draws <= 0) {
    for (int k = 0; k < static_cast<int>(groups.size()); ++k) {
      draws.push_back({k, 1.0});
    }
    return draws;
  }

  const int first = (keep_diagonal_exact && groups.front().diagonal) ? 1 : 0;
  if (first == 1) draws.push_back({0, 1.0});

  const int n_pool = static_cast<int>(groups.size()) - first;
  if (n_pool <= 0) return draws;

  std::vector<double> cdf(n_pool);
  double total = 0.0;
  for (int k = 0; k < n_pool; ++k) {
    total += groups[first + k].weight;
    cdf[k] = total;
  }
  if (total <= 0.0) {
    throw NumericalError("group sampling over zero total weight");
  }
  for (double& c : cdf) c /= total;

  std::vector<int> multiplicity(n_pool, 0);
  for (int d = 0; d < n_draws; ++d) {
    multiplicity[static_cast<int>(rng.discrete_cdf(cdf))]++;
  }
  for (int k = 0; k < n_pool; ++k) {
    if (multiplicity[k] == 0) continue;
    const double pk = groups[first + k].weight / total;
    draws.push_back({first + k, multiplicity[k] / (n_draws * pk)});
  }
  return draws;
}

}  // namespace mcpqe
