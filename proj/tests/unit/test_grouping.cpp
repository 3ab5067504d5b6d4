#include <doctest.h>

#include <cmath>
#include <map>
#include <vector>

#include "mcpqe/fcidump.hpp"
#include "mcpqe/grouping.hpp"
#include "mcpqe/rng.hpp"
#include "mcpqe/system.hpp"

#include "../support/fixtures.hpp"

using namespace mcpqe;
using mcpqe::testing::fcidump_path;

namespace {

int group_count(const std::string& key, int frozen) {
  const MolecularSystem sys =
      build_system(parse_fcidump(fcidump_path(key)), frozen);
  return static_cast<int>(sys.groups.size());
}

}  // namespace

TEST_CASE("measurement-class counts for the benchmark molecules") {
  CHECK(group_count("h2/0.7414A", 0) == 5);
  CHECK(group_count("h3plus/2.0000A", 0) == 25);
  CHECK(group_count("lih/1.5950A", 1) == 125);
  CHECK(group_count("hf/0.9170A", 1) == 125);
  CHECK(group_count("h2o/0.9572A", 1) == 313);
  CHECK(group_count("beh2/1.3340A-110deg", 1) == 313);
}

TEST_CASE("groups are single-basis and ordered by weight") {
  const MolecularSystem sys =
      build_system(parse_fcidump(fcidump_path("h3plus/2.0000A")), 0);
  const auto& groups = sys.groups;
  REQUIRE(!groups.empty());

  // The diagonal class leads.
  CHECK(groups[0].diagonal);
  CHECK(groups[0].basis_x == 0);
  for (std::size_t g = 1; g < groups.size(); ++g) {
    CHECK(!groups[g].diagonal);
  }

  // Off-diagonal classes are sorted by decreasing total |coeff|.
  for (std::size_t g = 2; g < groups.size(); ++g) {
    CHECK(groups[g - 1].weight >= groups[g].weight);
  }

  std::size_t n_terms = 0;
  for (const auto& grp : groups) {
    REQUIRE(!grp.members.empty());
    CHECK(grp.basis_y == (grp.basis_x & grp.basis_y));
    double w = 0.0;
    for (const auto& t : grp.members) {
      // Each member's basis word matches the group's: X support identical,
      // Y support identical, and everything else diagonal.
      CHECK(t.x == grp.basis_x);
      CHECK((t.x & t.z) == grp.basis_y);
      CHECK(t.is_diagonal() == grp.diagonal);
      CHECK(!t.is_identity());
      w += std::abs(t.coeff);
    }
    CHECK(grp.weight == doctest::Approx(w).epsilon(1e-12));
    n_terms += grp.members.size();
  }

  // Every non-identity string of the operator appears in exactly one group.
  std::size_t op_terms = 0;
  for (const auto& t : sys.h_corr.terms()) {
    if (!t.is_identity()) ++op_terms;
  }
  CHECK(n_terms == op_terms);
}

TEST_CASE("qubitwise commutation holds inside every group") {
  const MolecularSystem sys =
      build_system(parse_fcidump(fcidump_path("h3plus/2.0000A")), 0);
  for (const auto& grp : sys.groups) {
    for (std::size_t a = 0; a < grp.members.size(); ++a) {
      for (std::size_t b = a + 1; b < grp.members.size(); ++b) {
        const PauliTerm& ta = grp.members[a];
        const PauliTerm& tb = grp.members[b];
        for (int q = 0; q < sys.n_qubits; ++q) {
          const char la = ta.letter(q);
          const char lb = tb.letter(q);
          const bool commute = la == 'I' || lb == 'I' || la == lb;
          CHECK(commute);
        }
      }
    }
  }
}

TEST_CASE("drawing zero or negative counts returns every group exactly") {
  const MolecularSystem sys =
      build_system(parse_fcidump(fcidump_path("h3plus/2.0000A")), 0);
  RngStream rng(101);
  const auto draws = sample_groups(sys.groups, 0, rng);
  REQUIRE(draws.size() == sys.groups.size());
  for (std::size_t k = 0; k < draws.size(); ++k) {
    CHECK(draws[k].index == static_cast<int>(k));
    CHECK(draws[k].multiplier == 1.0);
  }
}

TEST_CASE("sampled group estimates are unbiased") {
  // Toy operator with one diagonal group and three off-diagonal classes of
  // very different weights.
  QubitOperator op(3);
  op.add(0, 0b001, cplx{0.5, 0.0});   // Z0       -> diagonal class
  op.add(0, 0b110, cplx{-0.25, 0.0});  // Z1 Z2   -> same diagonal class
  op.add(0b001, 0, cplx{2.0, 0.0});   // X0
  op.add(0b010, 0, cplx{1.0, 0.0});   // X1
  op.add(0b100, 0b100, cplx{0.5, 0.0});  // Y2
  const auto groups = group_qubitwise(op);
  REQUIRE(groups.size() == 4);
  CHECK(groups[0].diagonal);

  // A "measurement" that just returns the group weight; the multiplier must
  // make the weighted sum match the deterministic total on average.
  double exact = 0.0;
  for (const auto& g : groups) exact += g.weight;

  RngStream rng(103);
  const int n_rep = 40000;
  double acc = 0.0;
  double acc2 = 0.0;
  for (int rep = 0; rep < n_rep; ++rep) {
    const auto draws = sample_groups(groups, 2, rng);
    double est = 0.0;
    for (const auto& d : draws) est += d.multiplier * groups[d.index].weight;
    acc += est;
    acc2 += est * est;
  }
  const double mean = acc / n_rep;
  const double se =
      std::sqrt((acc2 / n_rep - mean * mean) / (n_rep - 1));
  CHECK(std::abs(mean - exact) < 5.0 * se + 1e-9);

  // The diagonal group is present in every draw with multiplier one.
  const auto draws = sample_groups(groups, 2, rng);
  REQUIRE(!draws.empty());
  CHECK(draws[0].index == 0);
  CHECK(draws[0].multiplier == 1.0);
}

TEST_CASE("aggregated multiplicities preserve the estimator") {
  QubitOperator op(2);
  op.add(0, 0b01, cplx{1.0, 0.0});
  op.add(0b01, 0, cplx{3.0, 0.0});
  op.add(0b10, 0, cplx{1.0, 0.0});
  const auto groups = group_qubitwise(op);
  REQUIRE(groups.size() == 3);

  RngStream rng(107);
  // With many draws over two off-diagonal groups, repeats must aggregate:
  // every returned index is unique and multiplicity/(n p) stays finite.
  const auto draws = sample_groups(groups, 64, rng);
  std::map<int, int> seen;
  for (const auto& d : draws) seen[d.index]++;
  for (const auto& [idx, count] : seen) {
    CAPTURE(idx);
    CHECK(count == 1);
  }

  // Summed multiplier-weighted indicator over off-diagonal groups equals the
  // number of draws when weights are recovered exactly:
  // sum_k m_k / (n p_k) * p_k * n = sum_k m_k = n_draws.
  double total_multiplicity = 0.0;
  for (const auto& d : draws) {
    if (d.index == 0) continue;
    const double p =
        groups[d.index].weight / (groups[1].weight + groups[2].weight);
    total_multiplicity += d.multiplier * 64 * p;
  }
  CHECK(total_multiplicity == doctest::Approx(64.0).epsilon(1e-9));
}

TEST_CASE("sampling is reproducible for a fixed stream") {
  QubitOperator op(2);
  op.add(0, 0b01, cplx{1.0, 0.0});
  op.add(0b01, 0, cplx{3.0, 0.0});
  op.add(0b10, 0, cplx{1.0, 0.0});
  op.add(0b11, 0b01, cplx{0.5, 0.0});
  const auto groups = group_qubitwise(op);

  RngStream a(109);
  RngStream b(109);
  const auto da = sample_groups(groups, 3, a);
  const auto db = sample_groups(groups, 3, b);
  REQUIRE(da.size() == db.size());
  for (std::size_t i = 0; i < da.size(); ++i) {
    CHECK(da[i].index == db[i].index);
    CHECK(da[i].multiplier == db[i].multiplier);
  }
}
