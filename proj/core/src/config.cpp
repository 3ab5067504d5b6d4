#include "mcpqe/config.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <sstream>

#include "mcpqe/errors.hpp"
#include "mcpqe/fcidump.hpp"
#include "mcpqe/noise.hpp"
#include "mcpqe/scf.hpp"

namespace mcpqe {

namespace {

std::string trim(const std::string& s) {
  std::size_t a = s.find_first_not_of(" \t\r\n");
  if (a == std::string::npos) return "";
  std::size_t b = s.find_last_not_of(" \t\r\n");
  return s.substr(a, b - a + 1);
}

std::string lower(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(),
                 [](unsigned char c) { return std::tolower(c); });
  return s;
}

double to_double(const std::string& v, const std::string& key) {
  std::size_t pos = 0;
  double x = 0.0;
  try {
    x = std::stod(v, &pos);
  } catch (const std::exception&) {
    throw ConfigError("key '" + key + "': cannot parse number '" + v + "'");
  }
  if (trim(v.substr(pos)) != "") {
    throw ConfigError("key '" + key + "': trailing text in '" + v + "'");
  }
  return x;
}

long long to_int(const std::string& v, const std::string& key) {
  const double x = to_double(v, key);
  const long long i = static_cast<long long>(x);
  if (static_cast<double>(i) != x) {
    throw ConfigError("key '" + key + "': expected an integer, got '" + v +
                      "'");
  }
  return i;
}

bool to_bool(const std::string& v, const std::string& key) {
  const std::string s = lower(trim(v));
  if (s == "on" || s == "true" || s == "1" || s == "yes") return true;
  if (s == "off" || s == "false" || s == "0" || s == "no") return false;
  throw ConfigError("key '" + key + "': expected on/off, got '" + v + "'");
}

/// Length with optional unit suffix; bare numbers are angstrom.
double to_bohr(const std::string& v, const std::string& key) {
  std::string s = trim(v);
  double factor = 1.0 / kAngstromPerBohr;  // angstrom -> bohr
  auto ends_with = [&](const std::string& suffix) {
    return s.size() > suffix.size() &&
           lower(s.substr(s.size() - suffix.size())) == suffix;
  };
  if (ends_with("bohr")) {
    factor = 1.0;
    s = trim(s.substr(0, s.size() - 4));
  } else if (ends_with("a0")) {
    factor = 1.0;
    s = trim(s.substr(0, s.size() - 2));
  } else if (ends_with("a")) {
    s = trim(s.substr(0, s.size() - 1));
  }
  const double x = to_double(s, key);
  if (x <= 0.0) throw ConfigError("key '" + key + "': length must be > 0");
  return x * factor;
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> parts;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, sep)) {
    item = trim(item);
    if (!item.empty()) parts.push_back(item);
  }
  return parts;
}

}  // namespace

NoiseMode parse_noise_mode(const std::string& name) {
  const std::string s = lower(trim(name));
  if (s == "exact") return NoiseMode::kExact;
  if (s == "shots") return NoiseMode::kShots;
  if (s == "gaussian") return NoiseMode::kGaussian;
  throw ConfigError("unknown noise mode '" + name + "'");
}

uint64_t parse_determinant(const std::string& text) {
  uint64_t mask = 0;
  std::stringstream ss(text);
  std::string tok;
  int count = 0;
  while (ss >> tok) {
    long long p = 0;
    try {
      p = std::stoll(tok);
    } catch (const std::exception&) {
      throw ConfigError("determinant '" + text + "': bad orbital '" + tok +
                        "'");
    }
    if (p < 0 || p > 62) {
      throw ConfigError("determinant '" + text + "': orbital out of range");
    }
    const uint64_t bit = uint64_t{1} << p;
    if (mask & bit) {
      throw ConfigError("determinant '" + text + "': repeated orbital");
    }
    mask |= bit;
    ++count;
  }
  if (count == 0) throw ConfigError("empty determinant");
  return mask;
}

ExperimentConfig ExperimentConfig::from_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file: " + path);

  ExperimentConfig cfg;
  std::vector<std::string> trial_dets;
  std::vector<double> trial_coeffs;

  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const std::size_t hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    const std::size_t eq = line.find('=');
    if (eq == std::string::npos) {
      throw ConfigError(path + ":" + std::to_string(line_no) +
                        ": expected key = value");
    }
    const std::string key = lower(trim(line.substr(0, eq)));
    const std::string value = trim(line.substr(eq + 1));
    if (value.empty()) {
      throw ConfigError(path + ":" + std::to_string(line_no) +
                        ": empty value for '" + key + "'");
    }

    try {
      if (key == "system") {
        cfg.system = lower(value);
      } else if (key == "fcidump") {
        cfg.fcidump = value;
      } else if (key == "n_atoms") {
        cfg.n_atoms = static_cast<int>(to_int(value, key));
      } else if (key == "charge") {
        cfg.charge = static_cast<int>(to_int(value, key));
      } else if (key == "spacing") {
        cfg.spacing_bohr = to_bohr(value, key);
      } else if (key == "frozen_core") {
        cfg.frozen_core = static_cast<int>(to_int(value, key));
      } else if (key == "n_steps") {
        cfg.prop.n_steps = static_cast<int>(to_int(value, key));
      } else if (key == "delta_beta") {
        cfg.prop.delta_beta = to_double(value, key);
      } else if (key == "zeta") {
        cfg.prop.zeta = to_double(value, key);
      } else if (key == "shift_interval") {
        cfg.prop.shift_interval = static_cast<int>(to_int(value, key));
      } else if (key == "n0") {
        cfg.prop.n0 = to_double(value, key);
      } else if (key == "target_population") {
        cfg.prop.target_population = to_double(value, key);
      } else if (key == "s0_floor") {
        cfg.prop.s0_floor = to_double(value, key);
      } else if (key == "discard") {
        cfg.prop.discard_fraction = to_double(value, key);
      } else if (key == "seed") {
        cfg.prop.seed = static_cast<uint64_t>(to_int(value, key));
      } else if (key == "threads") {
        cfg.prop.threads = static_cast<int>(to_int(value, key));
      } else if (key == "noise") {
        cfg.prop.noise.mode = parse_noise_mode(value);
      } else if (key == "n_shots" || key == "n_shots_residual") {
        cfg.prop.noise.n_shots = to_int(value, key);
        cfg.prop.noise.n_shots_reference = cfg.prop.noise.n_shots;
      } else if (key == "n_shots_reference") {
        cfg.prop.noise.n_shots_reference = to_int(value, key);
      } else if (key == "sigma") {
        cfg.prop.noise.sigma = to_double(value, key);
      } else if (key == "n_hamil") {
        cfg.prop.n_hamil = static_cast<int>(to_int(value, key));
      } else if (key == "sample_g0") {
        const std::string s = lower(value);
        if (s == "always") {
          cfg.prop.sample_diagonal_exact = true;
        } else if (s == "weighted") {
          cfg.prop.sample_diagonal_exact = false;
        } else {
          throw ConfigError("sample_g0 must be always or weighted");
        }
      } else if (key == "rounding") {
        cfg.prop.rounding = to_bool(value, key);
      } else if (key == "rounding_rule") {
        const std::string s = lower(value);
        if (s == "exclusive") {
          cfg.prop.rounding_inclusive = false;
        } else if (s == "inclusive") {
          cfg.prop.rounding_inclusive = true;
        } else {
          throw ConfigError("rounding_rule must be exclusive or inclusive");
        }
      } else if (key == "trial_dets") {
        trial_dets = split(value, ';');
      } else if (key == "trial_coeffs") {
        for (const std::string& t : split(value, ',')) {
          trial_coeffs.push_back(to_double(t, key));
        }
      } else if (key == "fs_omega") {
        cfg.fs_omega = to_double(value, key);
        cfg.fs_omega_set = true;
      } else if (key == "fs_reference") {
        cfg.fs_reference = parse_determinant(value);
      } else if (key == "fs_references") {
        for (const std::string& d : split(value, ';')) {
          cfg.fs_references.push_back(parse_determinant(d));
        }
      } else if (key == "fs_omegas") {
        for (const std::string& t : split(value, ',')) {
          cfg.fs_omegas.push_back(to_double(t, key));
        }
      } else if (key == "fs_h_interval") {
        cfg.fs_h_interval = static_cast<int>(to_int(value, key));
      } else if (key == "fs_switch_window") {
        cfg.fs_switch_window = to_double(value, key);
      } else if (key == "scan_spacings") {
        for (const std::string& t : split(value, ',')) {
          cfg.scan_spacings_bohr.push_back(to_bohr(t, key));
        }
      } else if (key == "scan_fcidumps") {
        cfg.scan_fcidumps = split(value, ',');
      } else if (key == "pqe_tol") {
        cfg.pqe_tol = to_double(value, key);
      } else if (key == "pqe_max_iter") {
        cfg.pqe_max_iter = static_cast<int>(to_int(value, key));
      } else if (key == "pqe_mixing") {
        cfg.pqe_mixing = to_double(value, key);
      } else if (key == "fci_n_states") {
        cfg.fci_n_states = static_cast<int>(to_int(value, key));
      } else if (key == "spawn_samples") {
        cfg.spawn_samples = to_int(value, key);
      } else {
        throw ConfigError("unknown key '" + key + "'");
      }
    } catch (const ConfigError& e) {
      throw ConfigError(path + ":" + std::to_string(line_no) + ": " +
                        e.what());
    }
  }

  if (cfg.system != "hchain" && cfg.system != "fcidump") {
    throw ConfigError(path + ": system must be 'hchain' or 'fcidump'");
  }
  if (cfg.system == "hchain" && (cfg.n_atoms < 1 || cfg.spacing_bohr <= 0.0)) {
    throw ConfigError(path + ": hchain needs n_atoms and spacing");
  }
  if (cfg.system == "fcidump" && cfg.fcidump.empty()) {
    throw ConfigError(path + ": system fcidump needs a fcidump path");
  }

  if (trial_dets.size() != trial_coeffs.size()) {
    throw ConfigError(path + ": trial_dets and trial_coeffs differ in length");
  }
  for (std::size_t i = 0; i < trial_dets.size(); ++i) {
    cfg.prop.trial.emplace_back(parse_determinant(trial_dets[i]),
                                trial_coeffs[i]);
  }
  return cfg;
}

MolecularSystem ExperimentConfig::build() const {
  if (system == "hchain") {
    return build_at(spacing_bohr);
  }
  return build_system(parse_fcidump(fcidump), frozen_core);
}

MolecularSystem ExperimentConfig::build_at(double spacing) const {
  if (system != "hchain") {
    throw ConfigError("spacing scans require system = hchain");
  }
  return build_system(hydrogen_chain_integrals(n_atoms, spacing, charge),
                      frozen_core);
}

}  // namespace mcpqe
