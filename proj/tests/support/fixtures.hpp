#pragma once

#include <fstream>
#include <stdexcept>
#include <string>

#include <json.hpp>

namespace mcpqe::testing {

inline std::string fixture_path(const std::string& relative) {
  return std::string(MCPQE_FIXTURE_DIR) + "/" + relative;
}

struct ReferenceEntry {
  double e_scf = 0.0;
  double e_nuc = 0.0;
  double e_fci = 0.0;  ///< frozen-core FCI when n_frozen > 0
  int n_frozen = 0;
  int n_orb = 0;
  double correlation() const { return e_fci - e_scf; }
};

/// Entry of fixtures/reference_energies.json, e.g. "h3plus/2.0000A".
inline ReferenceEntry reference_entry(const std::string& key) {
  std::ifstream in(fixture_path("reference_energies.json"));
  if (!in) throw std::runtime_error("missing reference_energies.json");
  const nlohmann::json all = nlohmann::json::parse(in);
  if (!all.contains(key)) throw std::runtime_error("no reference: " + key);
  const nlohmann::json& j = all.at(key);
  ReferenceEntry e;
  e.e_scf = j.at("e_scf").get<double>();
  e.e_nuc = j.at("e_nuc").get<double>();
  e.n_orb = j.at("n_orb").get<int>();
  if (j.contains("n_frozen")) {
    e.n_frozen = j.at("n_frozen").get<int>();
    e.e_fci = j.at("e_fci_frozen").get<double>();
  } else {
    e.e_fci = j.at("e_fci").get<double>();
  }
  return e;
}

inline std::string fcidump_path(const std::string& key) {
  return fixture_path(key + ".fcidump");
}

}  // namespace mcpqe::testing
