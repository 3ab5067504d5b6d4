#include "mcpqe/fcidump.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "mcpqe/errors.hpp"

namespace mcpqe {

namespace {

std::string upper(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(),
                 [](unsigned char c) { return std::toupper(c); });
  return s;
}

// Pulls "KEY=value" integer assignments out of the namelist header.
bool header_int(const std::string& header, const std::string& key, int& out) {
  const auto pos = header.find(key + "=");
  if (pos == std::string::npos) {
    return false;
  }
  // reject partial matches like NELEC inside e.g. XNELEC
  if (pos > 0 && (std::isalnum(static_cast<unsigned char>(header[pos - 1]))
                  || header[pos - 1] == '_')) {
    return header_int(header.substr(pos + 1), key, out);
  }
  out = std::atoi(header.c_str() + pos + key.size() + 1);
  return true;
}

}  // namespace

SpinOrbitalIntegrals parse_fcidump(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw ConfigError("cannot open FCIDUMP file: " + path);
  }
  std::string line;
  std::string header;
  int lineno = 0;
  bool header_done = false;
  while (std::getline(in, line)) {
    ++lineno;
    const std::string up = upper(line);
    header += up + " ";
    if (up.find("&END") != std::string::npos
        || up.find('/') != std::string::npos) {
      header_done = true;
      break;
    }
  }
  if (!header_done) {
    throw ConfigError(path + ": FCIDUMP header never terminated (&END or /)");
  }
  int norb = 0, nelec = -1, ms2 = 0;
  if (!header_int(header, "NORB", norb) || norb <= 0) {
    throw ConfigError(path + ": header missing valid NORB");
  }
  if (!header_int(header, "NELEC", nelec) || nelec < 0) {
    throw ConfigError(path + ": header missing valid NELEC");
  }
  header_int(header, "MS2", ms2);
  if (norb > 32) {
    throw ConfigError(path + ": NORB too large for this simulator");
  }

  SpinOrbitalIntegrals ints;
  ints.resize(norb);
  ints.n_electrons = nelec;
  ints.ms2 = ms2;
  ints.orbital_energies.assign(norb, 0.0);
  bool any_orbital_energy = false;

  while (std::getline(in, line)) {
    ++lineno;
    if (line.find_first_not_of(" \t\r") == std::string::npos) {
      continue;
    }
    std::istringstream ls(line);
    double val;
    int i, j, k, l;
    if (!(ls >> val >> i >> j >> k >> l)) {
      throw ConfigError(path + ":" + std::to_string(lineno)
                        + ": malformed integral line");
    }
    const auto check = [&](int idx) {
      if (idx < 0 || idx > norb) {
        throw ConfigError(path + ":" + std::to_string(lineno)
                          + ": orbital index out of range");
      }
    };
    check(i); check(j); check(k); check(l);
    if (i && j && k && l) {
      ints.set_two_body(i - 1, j - 1, k - 1, l - 1, val);
    } else if (i && j && !k && !l) {
      ints.one_body(i - 1, j - 1) = val;
      ints.one_body(j - 1, i - 1) = val;
    } else if (i && !j && !k && !l) {
      ints.orbital_energies[i - 1] = val;
      any_orbital_energy = true;
    } else if (!i && !j && !k && !l) {
      ints.core_energy = val;
    } else {
      throw ConfigError(path + ":" + std::to_string(lineno)
                        + ": unrecognized index pattern");
    }
  }
  if (!any_orbital_energy) {
    ints.orbital_energies.clear();
  }
  return ints;
}

void write_fcidump(const std::string& path, const SpinOrbitalIntegrals& ints) {
  std::ofstream out(path);
  if (!out) {
    throw ConfigError("cannot write FCIDUMP file: " + path);
  }
  const int n = ints.n_spatial;
  out << "&FCI NORB=" << n << ",NELEC=" << ints.n_electrons
      << ",MS2=" << ints.ms2 << ",\n ORBSYM=";
  for (int p = 0; p < n; ++p) {
    out << "1,";
  }
  out << "\n ISYM=1,\n&END\n";
  char buf[96];
  const auto emit = [&](double v, int i, int j, int k, int l) {
    std::snprintf(buf, sizeof(buf), "% .16E %3d %3d %3d %3d\n", v, i, j, k, l);
    out << buf;
  };
  for (int p = 0; p < n; ++p) {
    for (int q = 0; q <= p; ++q) {
      const int pq = p * (p + 1) / 2 + q;
      for (int r = 0; r <= p; ++r) {
        for (int s = 0; s <= r; ++s) {
          if (r * (r + 1) / 2 + s > pq) {
            continue;
          }
          const double v = ints.two_body(p, q, r, s);
          if (std::abs(v) > 1e-12) {
            emit(v, p + 1, q + 1, r + 1, s + 1);
          }
        }
      }
    }
  }
  for (int p = 0; p < n; ++p) {
    for (int q = 0; q <= p; ++q) {
      const double v = ints.one_body(p, q);
      if (std::abs(v) > 1e-12) {
        emit(v, p + 1, q + 1, 0, 0);
      }
    }
  }
  for (int p = 0; p < static_cast<int>(ints.orbital_energies.size()); ++p) {
    emit(ints.orbital_energies[p], p + 1, 0, 0, 0);
  }
  emit(ints.core_energy, 0, 0, 0, 0);
}

}  // namespace mcpqe
