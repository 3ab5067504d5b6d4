#include <doctest.h>

#include <cmath>
#include <complex>

#include "mcpqe/errors.hpp"
#include "mcpqe/pauli.hpp"
#include "mcpqe/rng.hpp"

#include "../support/dense.hpp"

using namespace mcpqe;
using mcpqe::testing::Dense;
using mcpqe::testing::matmul;
using mcpqe::testing::operator_matrix;
using mcpqe::testing::pauli_matrix;

namespace {

PauliTerm from_word(const std::string& word, cplx coeff = {1.0, 0.0}) {
  PauliTerm t;
  t.coeff = coeff;
  for (std::size_t q = 0; q < word.size(); ++q) {
    const uint64_t bit = uint64_t{1} << q;
    switch (word[q]) {
      case 'X':
        t.x |= bit;
        break;
      case 'Y':
        t.x |= bit;
        t.z |= bit;
        break;
      case 'Z':
        t.z |= bit;
        break;
      default:
        break;
    }
  }
  return t;
}

double dense_distance(const Dense& a, const Dense& b) {
  double d = 0.0;
  for (std::size_t i = 0; i < a.a.size(); ++i) {
    d = std::max(d, std::abs(a.a[i] - b.a[i]));
  }
  return d;
}

}  // namespace

TEST_CASE("single-qubit products carry the right phases") {
  const PauliTerm x = from_word("X"), y = from_word("Y"), z = from_word("Z");
  const cplx i{0.0, 1.0};

  PauliTerm xy = product(x, y);
  CHECK(xy.letter(0) == 'Z');
  CHECK(xy.coeff == i);

  PauliTerm yx = product(y, x);
  CHECK(yx.coeff == -i);

  PauliTerm zx = product(z, x);
  CHECK(zx.letter(0) == 'Y');
  CHECK(zx.coeff == i);

  PauliTerm yz = product(y, z);
  CHECK(yz.letter(0) == 'X');
  CHECK(yz.coeff == i);

  CHECK(product(x, x).is_identity());
  CHECK(product(y, y).coeff == cplx{1.0, 0.0});
}

TEST_CASE("products agree with the dense Kronecker oracle") {
  RngStream rng(3);
  const int n = 4;
  for (int trial = 0; trial < 200; ++trial) {
    PauliTerm a, b;
    a.x = rng.raw() & 0xF;
    a.z = rng.raw() & 0xF;
    b.x = rng.raw() & 0xF;
    b.z = rng.raw() & 0xF;
    a.coeff = cplx{rng.normal(), rng.normal()};
    b.coeff = cplx{rng.normal(), rng.normal()};
    const PauliTerm ab = product(a, b);
    const Dense expect = matmul(pauli_matrix(a, n), pauli_matrix(b, n));
    CHECK(dense_distance(pauli_matrix(ab, n), expect) < 1e-12);
  }
}

TEST_CASE("phase_on matches the dense matrix column") {
  RngStream rng(17);
  const int n = 3;
  for (int trial = 0; trial < 100; ++trial) {
    PauliTerm t;
    t.x = rng.raw() & 0x7;
    t.z = rng.raw() & 0x7;
    const Dense m = pauli_matrix(t, n);
    for (uint64_t col = 0; col < 8; ++col) {
      // P|col> = phase_on(col) |col ^ x>.
      CHECK(std::abs(m.at(col ^ t.x, col) - t.phase_on(col)) < 1e-15);
    }
  }
}

TEST_CASE("operator accumulation merges and prunes") {
  QubitOperator op(2);
  op.add(0b01, 0b00, cplx{0.5, 0.0});
  op.add(0b01, 0b00, cplx{0.25, 0.0});
  op.add(0b00, 0b11, cplx{1e-14, 0.0});
  CHECK(op.coefficient(0b01, 0b00) == cplx{0.75, 0.0});
  op.prune();
  CHECK(op.size() == 1);
}

TEST_CASE("operator product agrees with dense multiplication") {
  RngStream rng(23);
  const int n = 3;
  QubitOperator a(n), b(n);
  for (int k = 0; k < 5; ++k) {
    a.add(rng.raw() & 0x7, rng.raw() & 0x7, cplx{rng.normal(), 0.0});
    b.add(rng.raw() & 0x7, rng.raw() & 0x7, cplx{rng.normal(), 0.0});
  }
  const QubitOperator ab = a * b;
  const Dense expect = matmul(operator_matrix(a, n), operator_matrix(b, n));
  CHECK(dense_distance(operator_matrix(ab, n), expect) < 1e-12);
}

TEST_CASE("square_shifted equals the dense (H - w)^2") {
  RngStream rng(29);
  const int n = 3;
  QubitOperator h(n);
  for (int k = 0; k < 6; ++k) {
    h.add(rng.raw() & 0x7, rng.raw() & 0x7, cplx{rng.normal(), 0.0});
  }
  const double omega = 0.37;
  const QubitOperator sq = square_shifted(h, omega);

  Dense hm = operator_matrix(h, n);
  for (std::size_t i = 0; i < hm.dim; ++i) hm.at(i, i) -= omega;
  const Dense expect = matmul(hm, hm);
  CHECK(dense_distance(operator_matrix(sq, n), expect) < 1e-12);
}

TEST_CASE("text serialization round-trips") {
  QubitOperator op(3);
  op.add(0b011, 0b110, cplx{0.125, 0.0});
  op.add(0, 0, cplx{-2.5, 0.0});
  op.add(0b100, 0b100, cplx{1.0 / 3.0, 0.0});
  const QubitOperator back = parse_operator(op.to_text(), 3);
  CHECK(back.size() == op.size());
  for (const auto& t : op.terms()) {
    CHECK(back.coefficient(t.x, t.z) == t.coeff);
  }
}

TEST_CASE("malformed operator text is rejected") {
  CHECK_THROWS_AS(parse_operator("0.5 Q0", 2), ConfigError);
  CHECK_THROWS_AS(parse_operator("0.5 X9", 2), ConfigError);
  CHECK_THROWS_AS(parse_operator("0.5 X0 Y0", 2), ConfigError);
  CHECK_THROWS_AS(parse_operator("not_a_number X0", 2), ConfigError);
}

TEST_CASE("basis keys distinguish letters but not Z-vs-identity") {
  const PauliTerm zz = from_word("ZZ");
  const PauliTerm zi = from_word("ZI");
  const PauliTerm xx = from_word("XX");
  const PauliTerm xy = from_word("XY");
  CHECK(zz.basis_key() == zi.basis_key());
  CHECK(xx.basis_key() != xy.basis_key());
  CHECK(zz.is_diagonal());
  CHECK(!xy.is_diagonal());
}
