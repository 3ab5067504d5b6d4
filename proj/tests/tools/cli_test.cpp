#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>
#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "mcpqe/config.hpp"
#include "mcpqe/oracle.hpp"

#include "../support/fixtures.hpp"

using namespace mcpqe;
namespace fs = std::filesystem;

namespace {

fs::path scratch(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / "mcpqe_cli_test" / name;
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

void write_file(const fs::path& path, const std::string& text) {
  std::ofstream out(path);
  REQUIRE(out.good());
  out << text;
}

std::string slurp(const fs::path& path) {
  std::ifstream in(path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

/// Runs the installed binary and returns its exit code; stdout+stderr land in
/// `log` when given.
int run_cli(const fs::path& dir, const std::string& args,
            std::string* log = nullptr) {
  const fs::path log_file = dir / "cli_log.txt";
  const std::string cmd = std::string(MCPQE_CLI_PATH) + " " + args + " > " +
                          log_file.string() + " 2>&1";
  const int rc = std::system(cmd.c_str());
  if (log) *log = slurp(log_file);
  return WIFEXITED(rc) ? WEXITSTATUS(rc) : -1;
}

nlohmann::json summary(const fs::path& dir) {
  return nlohmann::json::parse(slurp(dir / "summary.json"));
}

std::vector<std::string> split_csv_row(const std::string& row) {
  std::vector<std::string> cells;
  std::stringstream ss(row);
  std::string cell;
  while (std::getline(ss, cell, ',')) cells.push_back(cell);
  return cells;
}

std::vector<std::string> csv_lines(const fs::path& path) {
  std::ifstream in(path);
  std::vector<std::string> lines;
  std::string line;
  while (std::getline(in, line))
    if (!line.empty()) lines.push_back(line);
  return lines;
}

double lowest_hchain_energy(int n_atoms, int charge, double spacing) {
  ExperimentConfig cfg;
  cfg.system = "hchain";
  cfg.n_atoms = n_atoms;
  cfg.charge = charge;
  cfg.spacing_bohr = spacing;
  const MolecularSystem sys = cfg.build();
  const DeterminantBasis basis = make_sector_basis(
      sys.ints.n_spin_orbitals(), sys.ints.n_electrons, sys.ints.ms2);
  return fci_spectrum(sys.ints, basis, 1).eigenvalues.front();
}

}  // namespace

TEST_CASE("run on an exactly solvable system reproduces the oracle energy") {
  const fs::path dir = scratch("run_h2");
  const testing::ReferenceEntry ref = testing::reference_entry("h2/0.7414A");
  write_file(dir / "run.cfg", "system = fcidump\n"
                              "fcidump = " +
                                  testing::fcidump_path("h2/0.7414A") +
                                  "\n"
                                  "n_steps = 3000\n"
                                  "discard = 0.5\n"
                                  "seed = 90001\n");
  std::string log;
  const int rc = run_cli(
      dir, "run --config " + (dir / "run.cfg").string() + " --out " +
               (dir / "out").string(),
      &log);
  CAPTURE(log);
  REQUIRE(rc == 0);
  const nlohmann::json j = summary(dir / "out");
  CHECK(std::abs(j["e_proj"]["total"].get<double>() - ref.e_fci) < 1e-6);
  CHECK(std::abs(j["shift"]["total"].get<double>() - ref.e_fci) < 1e-6);
  CHECK(j["diverged_steps"].get<long long>() == 0);
  CHECK(fs::exists(dir / "out" / "trajectory.csv"));
  CHECK(fs::exists(dir / "out" / "reblock.csv"));
}

TEST_CASE("identical config and seed give byte-identical outputs") {
  const fs::path dir = scratch("determinism");
  write_file(dir / "run.cfg", "system = fcidump\n"
                              "fcidump = " +
                                  testing::fcidump_path("h3plus/2.0000A") +
                                  "\n"
                                  "n_steps = 400\n"
                                  "noise = shots\n"
                                  "n_shots = 200\n"
                                  "seed = 90002\n");
  const std::string cfg_arg = " --config " + (dir / "run.cfg").string();
  REQUIRE(run_cli(dir, "run" + cfg_arg + " --out " + (dir / "a").string()) ==
          0);
  REQUIRE(run_cli(dir, "run" + cfg_arg + " --out " + (dir / "b").string()) ==
          0);
  for (const char* name : {"trajectory.csv", "reblock.csv", "summary.json"}) {
    CHECK(slurp(dir / "a" / name) == slurp(dir / "b" / name));
  }
  // A different seed must change the sampled trajectory.
  REQUIRE(run_cli(dir, "run" + cfg_arg + " --seed 90003 --out " +
                           (dir / "c").string()) == 0);
  CHECK(slurp(dir / "a" / "trajectory.csv") !=
        slurp(dir / "c" / "trajectory.csv"));
}

TEST_CASE("config mistakes exit with the config code") {
  const fs::path dir = scratch("config_errors");
  write_file(dir / "missing.cfg",
             "system = fcidump\nfcidump = /nonexistent/FCIDUMP\n");
  std::string log;
  CHECK(run_cli(dir, "run --config " + (dir / "missing.cfg").string() +
                         " --out " + (dir / "out").string(),
                &log) == 2);

  write_file(dir / "badkey.cfg", "system = hchain\nn_atoms = 2\n"
                                 "spacing = 1.5 a0\nfrobnicate = 1\n");
  CHECK(run_cli(dir, "run --config " + (dir / "badkey.cfg").string() +
                         " --out " + (dir / "out").string()) == 2);

  CHECK(run_cli(dir, "run --config /nonexistent.cfg --out " +
                         (dir / "out").string()) == 2);
  CHECK(run_cli(dir, "frobnicate") == 2);
}

TEST_CASE("non-convergence exits with its own code") {
  const fs::path dir = scratch("pqe_cap");
  write_file(dir / "pqe.cfg", "system = fcidump\n"
                              "fcidump = " +
                                  testing::fcidump_path("h4/1.5000A") +
                                  "\n"
                                  "pqe_max_iter = 1\n");
  std::string log;
  CHECK(run_cli(dir, "pqe --config " + (dir / "pqe.cfg").string() + " --out " +
                         (dir / "out").string(),
                &log) == 4);
}

TEST_CASE("pqe solves H2 to the oracle energy") {
  const fs::path dir = scratch("pqe_h2");
  const testing::ReferenceEntry ref = testing::reference_entry("h2/0.7414A");
  write_file(dir / "pqe.cfg", "system = fcidump\n"
                              "fcidump = " +
                                  testing::fcidump_path("h2/0.7414A") + "\n");
  REQUIRE(run_cli(dir, "pqe --config " + (dir / "pqe.cfg").string() +
                           " --out " + (dir / "out").string()) == 0);
  const nlohmann::json j = summary(dir / "out");
  CHECK(j["converged"].get<bool>());
  CHECK(std::abs(j["energy_total"].get<double>() - ref.e_fci) < 1e-6);
  CHECK(fs::exists(dir / "out" / "amplitudes.csv"));
}

TEST_CASE("groups census matches the in-process partition") {
  const fs::path dir = scratch("groups_h2o");
  write_file(dir / "groups.cfg", "system = fcidump\n"
                                 "fcidump = " +
                                     testing::fcidump_path("h2o/0.9572A") +
                                     "\nfrozen_core = 1\n");
  REQUIRE(run_cli(dir, "groups --config " + (dir / "groups.cfg").string() +
                           " --out " + (dir / "out").string()) == 0);
  const nlohmann::json j = summary(dir / "out");

  ExperimentConfig cfg;
  cfg.system = "fcidump";
  cfg.fcidump = testing::fcidump_path("h2o/0.9572A");
  cfg.frozen_core = 1;
  const MolecularSystem sys = cfg.build();
  CHECK(j["n_groups"].get<std::size_t>() == sys.groups.size());
  REQUIRE(!sys.groups.empty());
  CHECK(sys.groups.front().diagonal);
  CHECK(j["diagonal_share"].get<double>() > 0.3);
  const auto lines = csv_lines(dir / "out" / "groups.csv");
  CHECK(lines.size() == sys.groups.size() + 1);
}

TEST_CASE("fci subcommand reports the sector spectrum") {
  const fs::path dir = scratch("fci_h3");
  const testing::ReferenceEntry ref = testing::reference_entry("h3plus/2.0000A");
  write_file(dir / "fci.cfg", "system = fcidump\n"
                              "fcidump = " +
                                  testing::fcidump_path("h3plus/2.0000A") +
                                  "\nfci_n_states = -1\n");
  REQUIRE(run_cli(dir, "fci --config " + (dir / "fci.cfg").string() +
                           " --out " + (dir / "out").string()) == 0);
  const nlohmann::json j = summary(dir / "out");
  CHECK(std::abs(j["e0_total"].get<double>() - ref.e_fci) < 1e-9);
  CHECK(j["sector_dimension"].get<int>() == 9);
  CHECK(csv_lines(dir / "out" / "fci.csv").size() == 10);
}

TEST_CASE("empty scan list is a no-op success") {
  const fs::path dir = scratch("scan_empty");
  write_file(dir / "scan.cfg",
             "system = hchain\nn_atoms = 3\ncharge = 1\nspacing = 2.0 a0\n");
  REQUIRE(run_cli(dir, "scan --config " + (dir / "scan.cfg").string() +
                           " --out " + (dir / "out").string()) == 0);
  CHECK(csv_lines(dir / "out" / "scan.csv").size() == 1);
}

TEST_CASE("exact ground scan tracks the oracle across geometries") {
  const fs::path dir = scratch("scan_h3");
  write_file(dir / "scan.cfg", "system = hchain\nn_atoms = 3\ncharge = 1\n"
                               "spacing = 2.0 a0\n"
                               "scan_spacings = 1.8 a0, 2.0 a0\n"
                               "n_steps = 3000\ndiscard = 0.5\nseed = 90005\n");
  std::string log;
  REQUIRE(run_cli(dir, "scan --config " + (dir / "scan.cfg").string() +
                           " --out " + (dir / "out").string(),
                  &log) == 0);
  CAPTURE(log);
  const auto lines = csv_lines(dir / "out" / "scan.csv");
  REQUIRE(lines.size() == 3);
  const double spacings[] = {1.8, 2.0};
  for (int i = 0; i < 2; ++i) {
    const auto cells = split_csv_row(lines[i + 1]);
    REQUIRE(cells.size() >= 11);
    CHECK(cells[10] == "ok");
    const double e = std::stod(cells[8]);
    const double e_fci = lowest_hchain_energy(3, 1, spacings[i]);
    CHECK(std::abs(e - e_fci) < 1e-6);
  }
}

TEST_CASE("folded-spectrum run pins the state nearest its omega") {
  const fs::path dir = scratch("fs_h3");
  ExperimentConfig probe;
  probe.system = "hchain";
  probe.n_atoms = 3;
  probe.charge = 1;
  probe.spacing_bohr = 2.0;
  const MolecularSystem sys = probe.build();
  const DeterminantBasis basis = make_sector_basis(
      sys.ints.n_spin_orbitals(), sys.ints.n_electrons, sys.ints.ms2);
  const Spectrum sp = fci_spectrum(sys.ints, basis, 2);
  const double lam1 = sp.eigenvalues[1] - sys.e_ref;
  // Dominant determinant of the first excited state seeds the run.
  std::size_t best = 1;
  for (std::size_t i = 1; i < basis.masks.size(); ++i)
    if (std::abs(sp.vectors[1][i]) > std::abs(sp.vectors[1][best])) best = i;
  std::ostringstream det;
  for (int b = 0; b < 64; ++b)
    if (basis.masks[best] >> b & 1) det << b << ' ';

  std::ostringstream cfg;
  cfg << "system = hchain\nn_atoms = 3\ncharge = 1\nspacing = 2.0 a0\n"
      << "n_steps = 4000\ndiscard = 0.5\ndelta_beta = 0.3\nseed = 90006\n"
      << "fs_omega = " << lam1 + 0.03 << "\nfs_reference = " << det.str()
      << "\n";
  write_file(dir / "fs.cfg", cfg.str());
  std::string log;
  REQUIRE(run_cli(dir, "fs --config " + (dir / "fs.cfg").string() + " --out " +
                           (dir / "out").string(),
                  &log) == 0);
  CAPTURE(log);
  const nlohmann::json j = summary(dir / "out");
  CHECK(std::abs(j["h_final"].get<double>() - lam1) < 1e-4);
  CHECK(std::abs(j["energy_from_eproj"].get<double>() - lam1) < 1e-4);
  CHECK(csv_lines(dir / "out" / "checkpoints.csv").size() > 40);
}

TEST_CASE("reblock subcommand analyzes a trajectory column") {
  const fs::path dir = scratch("reblock");
  write_file(dir / "run.cfg", "system = fcidump\n"
                              "fcidump = " +
                                  testing::fcidump_path("h3plus/2.0000A") +
                                  "\n"
                                  "n_steps = 600\n"
                                  "noise = shots\nn_shots = 500\n"
                                  "seed = 90007\n");
  REQUIRE(run_cli(dir, "run --config " + (dir / "run.cfg").string() +
                           " --out " + (dir / "out").string()) == 0);
  std::string log;
  REQUIRE(run_cli(dir, "reblock " + (dir / "out" / "trajectory.csv").string() +
                           " --column e_proj --out " + (dir / "rb").string(),
                  &log) == 0);
  CAPTURE(log);
  CHECK(csv_lines(dir / "rb" / "reblock.csv").size() > 3);
  CHECK(log.find("mean =") != std::string::npos);

  // A column that does not exist is a config error; a series too short to
  // block is a numerical failure. The codes stay distinct.
  CHECK(run_cli(dir, "reblock " + (dir / "out" / "trajectory.csv").string() +
                         " --column nonexistent --out " +
                         (dir / "rb2").string()) == 2);
  write_file(dir / "tiny.csv", "e_proj\n1.0\n");
  CHECK(run_cli(dir, "reblock " + (dir / "tiny.csv").string() + " --out " +
                         (dir / "rb3").string()) == 3);
}
