#include "mcpqe/pauli.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

#include "mcpqe/errors.hpp"

namespace mcpqe {

namespace {

const cplx kPhases[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};

int popcnt(uint64_t v) { return __builtin_popcountll(v); }

}  // namespace

cplx PauliTerm::phase_on(uint64_t mask) const {
  // i^{|x&z|} X^x Z^z |m> = i^{|x&z|} (-1)^{|m&z|} |m^x>
  int k = popcnt(x & z) % 4;
  if (popcnt(mask & z) & 1) {
    k = (k + 2) % 4;
  }
  return kPhases[k];
}

std::string PauliTerm::word(int n_qubits) const {
  std::string out;
  for (int q = 0; q < n_qubits; ++q) {
    const char l = letter(q);
    if (l == 'I') {
      continue;
    }
    if (!out.empty()) {
      out += ' ';
    }
    out += l;
    out += std::to_string(q);
  }
  return out.empty() ? "I" : out;
}

PauliTerm product(const PauliTerm& a, const PauliTerm& b) {
  PauliTerm r;
  r.x = a.x ^ b.x;
  r.z = a.z ^ b.z;
  int k = popcnt(a.x & a.z) + popcnt(b.x & b.z) + 2 * popcnt(a.z & b.x)
          - popcnt(r.x & r.z);
  k = ((k % 4) + 4) % 4;
  r.coeff = a.coeff * b.coeff * kPhases[k];
  return r;
}

void QubitOperator::add(const PauliTerm& t) {
  auto [it, inserted] = terms_.try_emplace({t.x, t.z}, t.coeff);
  if (!inserted) {
    it->second += t.coeff;
  }
}

void QubitOperator::add_scaled(const QubitOperator& other, cplx factor) {
  for (const auto& [key, c] : other.terms_) {
    add(PauliTerm{key.first, key.second, c * factor});
  }
}

cplx QubitOperator::coefficient(uint64_t x, uint64_t z) const {
  const auto it = terms_.find({x, z});
  return it == terms_.end() ? cplx{0, 0} : it->second;
}

void QubitOperator::prune(double tol) {
  for (auto it = terms_.begin(); it != terms_.end();) {
    if (std::abs(it->second) <= tol) {
      it = terms_.erase(it);
    } else {
      ++it;
    }
  }
}

std::vector<PauliTerm> QubitOperator::terms() const {
  std::vector<PauliTerm> out;
  out.reserve(terms_.size());
  for (const auto& [key, c] : terms_) {
    out.push_back(PauliTerm{key.first, key.second, c});
  }
  std::sort(out.begin(), out.end(), [](const PauliTerm& a, const PauliTerm& b) {
    return std::tie(a.x, a.z) < std::tie(b.x, b.z);
  });
  return out;
}

QubitOperator& QubitOperator::operator*=(cplx factor) {
  for (auto& [key, c] : terms_) {
    c *= factor;
  }
  return *this;
}

QubitOperator operator*(const QubitOperator& a, const QubitOperator& b) {
  QubitOperator out(std::max(a.n_qubits_, b.n_qubits_));
  for (const auto& [ka, ca] : a.terms_) {
    const PauliTerm ta{ka.first, ka.second, ca};
    for (const auto& [kb, cb] : b.terms_) {
      out.add(product(ta, PauliTerm{kb.first, kb.second, cb}));
    }
  }
  return out;
}

QubitOperator& QubitOperator::operator+=(const QubitOperator& other) {
  add_scaled(other, {1.0, 0.0});
  return *this;
}

std::string QubitOperator::to_text() const {
  std::string out;
  char buf[64];
  for (const auto& t : terms()) {
    if (std::abs(t.coeff.imag()) > 1e-12) {
      throw NumericalError("operator text format requires real coefficients");
    }
    std::snprintf(buf, sizeof(buf), "%.17g", t.coeff.real());
    out += buf;
    out += ' ';
    out += t.word(n_qubits_);
    out += '\n';
  }
  return out;
}

QubitOperator parse_operator(const std::string& text, int n_qubits) {
  QubitOperator op(n_qubits);
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::istringstream ls(line);
    double coeff;
    if (!(ls >> coeff)) {
      if (line.find_first_not_of(" \t\r") == std::string::npos) {
        continue;
      }
      throw ConfigError("operator parse error at line " + std::to_string(lineno));
    }
    PauliTerm t;
    t.coeff = coeff;
    std::string tok;
    while (ls >> tok) {
      if (tok == "I") {
        continue;
      }
      if (tok.size() < 2) {
        throw ConfigError("bad pauli token '" + tok + "' at line "
                          + std::to_string(lineno));
      }
      const char l = tok[0];
      int q = 0;
      try {
        q = std::stoi(tok.substr(1));
      } catch (const std::exception&) {
        throw ConfigError("bad qubit index in '" + tok + "' at line "
                          + std::to_string(lineno));
      }
      if (q < 0 || q >= n_qubits) {
        throw ConfigError("qubit index out of range at line "
                          + std::to_string(lineno));
      }
      const uint64_t bit = 1ULL << q;
      if ((t.x | t.z) & bit) {
        throw ConfigError("duplicate qubit in term at line "
                          + std::to_string(lineno));
      }
      switch (l) {
        case 'X': t.x |= bit; break;
        case 'Y': t.x |= bit; t.z |= bit; break;
        case 'Z': t.z |= bit; break;
        default:
          throw ConfigError("unknown pauli letter '" + std::string(1, l)
                            + "' at line " + std::to_string(lineno));
      }
    }
    op.add(t);
  }
  return op;
}

QubitOperator square_shifted(const QubitOperator& h, double omega, double tol) {
  QubitOperator shifted = h;
  shifted.add(0, 0, {-omega, 0.0});
  QubitOperator sq = shifted * shifted;
  sq.prune(tol);
  return sq;
}

}  // namespace mcpqe
