#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <limits>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "mcpqe/config.hpp"
#include "mcpqe/engine.hpp"
#include "mcpqe/errors.hpp"
#include "mcpqe/oracle.hpp"
#include "mcpqe/stats.hpp"

namespace {

using nlohmann::json;
using namespace mcpqe;

/// Shortest exact decimal form, so reruns with the same seed produce
/// byte-identical files.
std::string g17(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

/// CSV field quoting for free-text cells (labels, error messages).
std::string quoted(const std::string& s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += "\"\"";
    else if (c == '\n' || c == '\r') out += ' ';
    else out += c;
  }
  out += "\"";
  return out;
}

struct Common {
  std::string config_path;
  std::string out_dir = ".";
  std::optional<uint64_t> seed;
};

void add_common(CLI::App* sub, Common& c, bool needs_config = true) {
  auto* opt = sub->add_option("--config", c.config_path,
                              "experiment description (key = value file)");
  if (needs_config) opt->required();
  sub->add_option("--out", c.out_dir, "output directory (created if missing)");
  sub->add_option("--seed", c.seed, "override the RNG seed from the config");
}

ExperimentConfig load(const Common& c) {
  ExperimentConfig cfg = ExperimentConfig::from_file(c.config_path);
  if (c.seed) cfg.prop.seed = *c.seed;
  return cfg;
}

std::ofstream open_out(const Common& c, const std::string& name) {
  std::error_code ec;
  std::filesystem::create_directories(c.out_dir, ec);
  const std::filesystem::path p = std::filesystem::path(c.out_dir) / name;
  std::ofstream out(p);
  if (!out) throw ConfigError("cannot write " + p.string());
  return out;
}

std::string describe_system(const ExperimentConfig& cfg) {
  if (cfg.system == "hchain") {
    std::ostringstream s;
    s << "hchain n=" << cfg.n_atoms << " charge=" << cfg.charge
      << " spacing=" << g17(cfg.spacing_bohr) << " a0";
    return s.str();
  }
  return "fcidump " + cfg.fcidump;
}

void write_trajectory(const Common& c, const RunResult& run) {
  std::ofstream out = open_out(c, "trajectory.csv");
  out << "step,beta,shift,e_proj,e_num,e_trial,n_tot,n0,s0,flags,"
         "groups_measured,shots,active_params\n";
  for (const TrajectoryRecord& r : run.trajectory) {
    out << r.step << ',' << g17(r.beta) << ',' << g17(r.shift) << ','
        << g17(r.e_proj) << ',' << g17(r.e_num) << ',' << g17(r.e_trial)
        << ',' << g17(r.n_tot) << ',' << g17(r.n0) << ',' << g17(r.s0) << ','
        << r.flags << ',' << r.groups_measured << ',' << r.shots << ','
        << r.active_params << '\n';
  }
}

void write_reblock_series(std::ofstream& out, const std::string& name,
                          const SeriesEstimate& est) {
  for (const ReblockLevel& l : est.detail.levels) {
    out << name << ',' << l.level << ',' << l.block_size << ',' << l.n_blocks
        << ',' << g17(l.mean) << ',' << g17(l.std_error) << ','
        << g17(l.error_on_error) << ',' << (l.level == est.level ? 1 : 0)
        << '\n';
  }
}

void write_reblock(const Common& c, const RunResult& run) {
  std::ofstream out = open_out(c, "reblock.csv");
  out << "series,level,block_size,n_blocks,mean,std_error,error_on_error,"
         "chosen\n";
  write_reblock_series(out, "shift", run.shift_estimate);
  write_reblock_series(out, "e_proj", run.eproj_estimate);
  if (run.has_trial) write_reblock_series(out, "e_trial", run.etrial_estimate);
}

json estimate_json(const SeriesEstimate& est, double e_ref) {
  return json{{"mean", est.mean},          {"std_error", est.std_error},
              {"total", est.mean + e_ref}, {"reblock_level", est.level},
              {"plateau", est.plateau},    {"n_used", est.n_used}};
}

/// Measurement count per the "(settings per step) x steps x shots" ledger:
/// one interference circuit per parameter plus the reference, each read out
/// over the groups measured that step.
long long shots_accounting(const ExperimentConfig& cfg, const RunResult& run) {
  if (cfg.prop.noise.mode != NoiseMode::kShots) return 0;
  const long long n_param =
      static_cast<long long>(run.final_ansatz.excitations.size());
  const long long groups_per_step =
      run.trajectory.empty() ? 0 : run.trajectory.front().groups_measured;
  const long long n_iter = static_cast<long long>(run.trajectory.size());
  return (n_param + 1) * n_iter * groups_per_step * cfg.prop.noise.n_shots;
}

void write_summary(const Common& c, const json& j) {
  std::ofstream out = open_out(c, "summary.json");
  out << j.dump(2) << '\n';
}

long long count_flag(const RunResult& run, int flag) {
  long long n = 0;
  for (const TrajectoryRecord& r : run.trajectory)
    if (r.flags & flag) ++n;
  return n;
}

int cmd_run(const Common& c) {
  const ExperimentConfig cfg = load(c);
  const MolecularSystem sys = cfg.build();
  const RunResult run = run_ground(sys, cfg.prop);
  write_trajectory(c, run);
  write_reblock(c, run);

  json j{{"mode", "ground"},
         {"system", describe_system(cfg)},
         {"seed", cfg.prop.seed},
         {"n_steps", run.trajectory.size()},
         {"delta_beta", cfg.prop.delta_beta},
         {"e_ref", run.e_ref},
         {"shift", estimate_json(run.shift_estimate, run.e_ref)},
         {"e_proj", estimate_json(run.eproj_estimate, run.e_ref)},
         {"n_param", run.final_ansatz.excitations.size()},
         {"diverged_steps", run.diverged_steps},
         {"variable_shift_steps", count_flag(run, kFlagVariableShift)},
         {"total_shots", run.total_shots},
         {"shots_accounting", shots_accounting(cfg, run)}};
  if (run.has_trial)
    j["e_trial"] = estimate_json(run.etrial_estimate, run.e_ref);
  write_summary(c, j);

  std::printf(
      "run: S = %.8f +/- %.1e, E_proj = %.8f +/- %.1e (total %.8f), "
      "diverged %lld/%zu, shots %lld\n",
      run.shift_estimate.mean, run.shift_estimate.std_error,
      run.eproj_estimate.mean, run.eproj_estimate.std_error,
      run.eproj_estimate.mean + run.e_ref, run.diverged_steps,
      run.trajectory.size(), shots_accounting(cfg, run));
  return 0;
}

FoldedSpectrumOptions folded_options(const ExperimentConfig& cfg) {
  if (!cfg.fs_omega_set)
    throw ConfigError("folded-spectrum mode needs fs_omega");
  FoldedSpectrumOptions fs;
  fs.omega = cfg.fs_omega;
  fs.reference = cfg.fs_reference;
  fs.h_record_interval = cfg.fs_h_interval;
  return fs;
}

void write_checkpoints(const Common& c, const FoldedResult& res,
                       double e_ref) {
  std::ofstream out = open_out(c, "checkpoints.csv");
  out << "step,h_corr,h_total\n";
  for (const auto& [step, h] : res.h_checkpoints)
    out << step << ',' << g17(h) << ',' << g17(h + e_ref) << '\n';
}

int cmd_fs(const Common& c) {
  const ExperimentConfig cfg = load(c);
  const MolecularSystem sys = cfg.build();
  const FoldedResult res =
      run_folded_spectrum(sys, cfg.prop, folded_options(cfg));
  write_trajectory(c, res.run);
  write_reblock(c, res.run);
  write_checkpoints(c, res, res.run.e_ref);

  const json j{
      {"mode", "folded-spectrum"},
      {"system", describe_system(cfg)},
      {"seed", cfg.prop.seed},
      {"omega", res.omega},
      {"e_ref", res.run.e_ref},
      {"squared_shift", estimate_json(res.run.shift_estimate, 0.0)},
      {"squared_e_proj", estimate_json(res.run.eproj_estimate, 0.0)},
      {"h_final", res.h_expectation},
      {"h_final_total", res.h_expectation + res.run.e_ref},
      {"energy_from_shift", res.energy_from_shift},
      {"energy_from_eproj", res.energy_from_eproj},
      {"energy_from_eproj_total", res.energy_from_eproj + res.run.e_ref},
      {"diverged_steps", res.run.diverged_steps},
      {"total_shots", res.run.total_shots},
      {"shots_accounting", shots_accounting(cfg, res.run)}};
  write_summary(c, j);

  std::printf(
      "fs: omega = %.6f, E_unfolded = %.8f (total %.8f), <H>_final = %.8f, "
      "diverged %lld/%zu\n",
      res.omega, res.energy_from_eproj, res.energy_from_eproj + res.run.e_ref,
      res.h_expectation, res.run.diverged_steps, res.run.trajectory.size());
  return 0;
}

int cmd_pqe(const Common& c) {
  const ExperimentConfig cfg = load(c);
  const MolecularSystem sys = cfg.build();
  PqeOptions opt;
  opt.residual_tol = cfg.pqe_tol;
  opt.max_iterations = cfg.pqe_max_iter;
  opt.mixing = cfg.pqe_mixing;
  const PqeResult res = deterministic_pqe(sys, opt);

  std::ofstream out = open_out(c, "amplitudes.csv");
  out << "index,label,theta,delta,target_mask\n";
  for (std::size_t i = 0; i < res.state.excitations.size(); ++i) {
    const Excitation& e = res.state.excitations[i];
    out << i << ',' << quoted(e.label()) << ',' << g17(e.theta) << ','
        << g17(e.delta) << ','
        << static_cast<unsigned long long>(e.target_mask) << '\n';
  }

  write_summary(c, json{{"mode", "deterministic-pqe"},
                        {"system", describe_system(cfg)},
                        {"energy_total", res.energy},
                        {"energy_corr", res.energy - sys.e_ref},
                        {"iterations", res.iterations},
                        {"converged", res.converged},
                        {"residual_norm", res.residual_norm},
                        {"n_param", res.state.excitations.size()}});
  std::printf("pqe: E = %.10f (corr %.10f), %d iterations, |r| = %.2e\n",
              res.energy, res.energy - sys.e_ref, res.iterations,
              res.residual_norm);
  return 0;
}

int cmd_groups(const Common& c) {
  const ExperimentConfig cfg = load(c);
  const MolecularSystem sys = cfg.build();
  double total = 0.0;
  std::size_t strings = 0;
  for (const CommutingGroup& g : sys.groups) {
    total += g.weight;
    strings += g.members.size();
  }

  std::ofstream out = open_out(c, "groups.csv");
  out << "index,n_members,weight,share,cumulative_share,diagonal,basis_x,"
         "basis_y\n";
  double cum = 0.0;
  for (std::size_t i = 0; i < sys.groups.size(); ++i) {
    const CommutingGroup& g = sys.groups[i];
    const double share = total > 0.0 ? g.weight / total : 0.0;
    cum += share;
    out << i << ',' << g.members.size() << ',' << g17(g.weight) << ','
        << g17(share) << ',' << g17(cum) << ',' << (g.diagonal ? 1 : 0) << ','
        << static_cast<unsigned long long>(g.basis_x) << ','
        << static_cast<unsigned long long>(g.basis_y) << '\n';
  }

  const bool has_diag = !sys.groups.empty() && sys.groups.front().diagonal;
  const double diag_share =
      has_diag && total > 0.0 ? sys.groups.front().weight / total : 0.0;
  const double id_coeff = sys.h_corr.coefficient(0, 0).real();
  write_summary(c, json{{"mode", "groups"},
                        {"system", describe_system(cfg)},
                        {"n_groups", sys.groups.size()},
                        {"n_strings", strings},
                        {"total_weight", total},
                        {"diagonal_share", diag_share},
                        {"identity_coefficient", id_coeff}});
  std::printf(
      "groups: %zu groups over %zu strings, diagonal share %.4f, identity "
      "coefficient %.8f\n",
      sys.groups.size(), strings, diag_share, id_coeff);
  return 0;
}

int cmd_fci(const Common& c) {
  const ExperimentConfig cfg = load(c);
  const MolecularSystem sys = cfg.build();
  const DeterminantBasis basis = make_sector_basis(
      sys.ints.n_spin_orbitals(), sys.ints.n_electrons, sys.ints.ms2);
  int n = cfg.fci_n_states;
  const int dim = static_cast<int>(basis.masks.size());
  if (n < 0 || n > dim) n = dim;
  const Spectrum sp = fci_spectrum(sys.ints, basis, n);

  std::ofstream out = open_out(c, "fci.csv");
  out << "state,e_total,e_corr\n";
  for (std::size_t k = 0; k < sp.eigenvalues.size(); ++k) {
    out << k << ',' << g17(sp.eigenvalues[k]) << ','
        << g17(sp.eigenvalues[k] - sys.e_ref) << '\n';
  }
  write_summary(c, json{{"mode", "fci"},
                        {"system", describe_system(cfg)},
                        {"sector_dimension", dim},
                        {"n_states", sp.eigenvalues.size()},
                        {"e_ref", sys.e_ref},
                        {"e0_total", sp.eigenvalues.empty()
                                         ? 0.0
                                         : sp.eigenvalues.front()}});
  std::printf("fci: sector dimension %d, E0 = %.10f (corr %.10f)\n", dim,
              sp.eigenvalues.front(), sp.eigenvalues.front() - sys.e_ref);
  return 0;
}

/// One geometry of a scan: either an hchain spacing or a FCIDUMP path.
struct ScanPoint {
  std::string label;
  double spacing = 0.0;
  std::string fcidump;
};

std::vector<ScanPoint> scan_points(const ExperimentConfig& cfg) {
  std::vector<ScanPoint> pts;
  if (cfg.system == "hchain") {
    for (double s : cfg.scan_spacings_bohr)
      pts.push_back({g17(s), s, ""});
  } else {
    for (const std::string& f : cfg.scan_fcidumps) pts.push_back({f, 0.0, f});
  }
  return pts;
}

MolecularSystem build_point(const ExperimentConfig& cfg, const ScanPoint& p) {
  if (cfg.system == "hchain") return cfg.build_at(p.spacing);
  ExperimentConfig at = cfg;
  at.fcidump = p.fcidump;
  return at.build();
}

std::string error_cell(const std::exception& e) {
  return quoted(std::string("error: ") + e.what());
}

int scan_ground(const Common& c, const ExperimentConfig& cfg,
                const std::vector<ScanPoint>& pts) {
  std::ofstream out = open_out(c, "scan.csv");
  out << "point,geometry,e_ref,shift_mean,shift_err,e_shift_total,"
         "eproj_mean,eproj_err,e_proj_total,diverged_steps,status\n";
  AnsatzState warm;
  bool have_warm = false;
  int failures = 0;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    out << i << ',' << quoted(pts[i].label) << ',';
    try {
      const MolecularSystem sys = build_point(cfg, pts[i]);
      PropagationConfig prop = cfg.prop;
      prop.seed = cfg.prop.seed + i;
      if (have_warm) prop.warm_from = &warm;
      const RunResult run = run_ground(sys, prop);
      warm = run.final_ansatz;
      have_warm = true;
      out << g17(run.e_ref) << ',' << g17(run.shift_estimate.mean) << ','
          << g17(run.shift_estimate.std_error) << ','
          << g17(run.shift_estimate.mean + run.e_ref) << ','
          << g17(run.eproj_estimate.mean) << ','
          << g17(run.eproj_estimate.std_error) << ','
          << g17(run.eproj_estimate.mean + run.e_ref) << ','
          << run.diverged_steps << ",ok\n";
      std::printf("scan[%zu] %s: E = %.8f +/- %.1e\n", i, pts[i].label.c_str(),
                  run.eproj_estimate.mean + run.e_ref,
                  run.eproj_estimate.std_error);
    } catch (const std::exception& e) {
      out << ",,,,,,," << 0 << ',' << error_cell(e) << '\n';
      std::printf("scan[%zu] %s: failed (%s)\n", i, pts[i].label.c_str(),
                  e.what());
      ++failures;
    }
  }
  std::printf("scan: %zu points, %d failed\n", pts.size(), failures);
  return 0;
}

int scan_ladder(const Common& c, const ExperimentConfig& cfg,
                const std::vector<ScanPoint>& pts) {
  const std::size_t n_states = cfg.fs_references.size();
  if (cfg.fs_omegas.size() != n_states) {
    throw ConfigError(
        "ladder scans need one fs_omegas entry per fs_references entry");
  }
  std::ofstream out = open_out(c, "scan.csv");
  out << "point,geometry,state,omega,h_corr_final,h_total_final,"
         "e_unfolded_corr,e_unfolded_total,eproj_mean,eproj_err,"
         "diverged_steps,status\n";
  // Each state's energy is tracked in total units: the correlation scale
  // shifts with the reference energy between geometries, while the physical
  // curves move slowly and smoothly. A linear predictor from the last two
  // points keeps the estimate within the curvature of the curve, which
  // matters at avoided crossings.
  std::vector<double> track(n_states, 0.0);
  std::vector<double> last_h(n_states, 0.0);
  std::vector<double> last_r(n_states, 0.0);
  std::vector<double> track_error(n_states, 0.0);
  std::vector<AnsatzState> warm(n_states);
  std::vector<bool> have_warm(n_states, false);
  bool track_initialized = false;
  int failures = 0;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    std::optional<MolecularSystem> sys;
    std::string build_error;
    try {
      sys.emplace(build_point(cfg, pts[i]));
    } catch (const std::exception& e) {
      build_error = e.what();
    }
    if (sys && !track_initialized) {
      for (std::size_t k = 0; k < n_states; ++k)
        track[k] = cfg.fs_omegas[k] + sys->e_ref;
      track_initialized = true;
    }
    for (std::size_t k = 0; k < n_states; ++k) {
      // Fold slightly away from the nearest other track: with the fold
      // centred mid-gap between two states they decay at the same rate and
      // a mixed start never resolves, while an offset of d makes the decay
      // rates differ by gap*(2d+gap) instead of gap^2. Stay well clear of
      // the midpoint to the next track on the offset side, leaving headroom
      // for the error the predictor showed at the previous point.
      double offset = 0.0;
      double near_above = std::numeric_limits<double>::infinity();
      double near_below = near_above;
      for (std::size_t j = 0; j < n_states; ++j) {
        if (j == k) continue;
        const double d = track[j] - track[k];
        if (d > 0.0 || (d == 0.0 && j > k))
          near_above = std::min(near_above, d);
        else
          near_below = std::min(near_below, -d);
      }
      if (n_states > 1) {
        const bool go_down = near_above < near_below;
        const double room = go_down ? near_below : near_above;
        offset = std::min(0.12, 0.45 * room - track_error[k]);
        offset = std::max(offset, 0.0);
        if (go_down) offset = -offset;
      }
      const double omega_corr =
          track[k] + offset - (sys ? sys->e_ref : 0.0);
      out << i << ',' << quoted(pts[i].label) << ',' << k << ','
          << g17(omega_corr) << ',';
      try {
        if (!sys) throw ConfigError(build_error);
        FoldedSpectrumOptions fs;
        fs.omega = omega_corr;
        fs.reference = cfg.fs_references[k];
        fs.h_record_interval = cfg.fs_h_interval;
        if (have_warm[k]) fs.warm_from = &warm[k];
        PropagationConfig prop = cfg.prop;
        prop.seed = cfg.prop.seed + i * n_states + k;
        const FoldedResult res = run_folded_spectrum(*sys, prop, fs);
        // Re-center on the measured energy extrapolated one point ahead
        // (slope scaled by the grid-step ratio when the grid is non-uniform),
        // but never move the track by more than the switch window in one
        // step so a bad point cannot hand it to a neighboring state.
        const double h_total = res.h_expectation + sys->e_ref;
        if (have_warm[k]) track_error[k] = std::abs(h_total - track[k]);
        double predicted = h_total;
        if (have_warm[k]) {
          const double back = pts[i].spacing - last_r[k];
          const double ahead =
              i + 1 < pts.size() ? pts[i + 1].spacing - pts[i].spacing : 0.0;
          const double ratio =
              back != 0.0 && std::isfinite(ahead / back) ? ahead / back : 1.0;
          predicted += (h_total - last_h[k]) * ratio;
        }
        warm[k] = res.run.final_ansatz;
        have_warm[k] = true;
        last_h[k] = h_total;
        last_r[k] = pts[i].spacing;
        const double cap = std::abs(cfg.fs_switch_window);
        track[k] += std::clamp(predicted - track[k], -cap, cap);
        out << g17(res.h_expectation) << ','
            << g17(res.h_expectation + res.run.e_ref) << ','
            << g17(res.energy_from_eproj) << ','
            << g17(res.energy_from_eproj + res.run.e_ref) << ','
            << g17(res.run.eproj_estimate.mean) << ','
            << g17(res.run.eproj_estimate.std_error) << ','
            << res.run.diverged_steps << ",ok\n";
        std::printf("scan[%zu] %s state %zu: E = %.8f\n", i,
                    pts[i].label.c_str(), k,
                    res.h_expectation + res.run.e_ref);
      } catch (const std::exception& e) {
        out << ",,,,,," << 0 << ',' << error_cell(e) << '\n';
        std::printf("scan[%zu] %s state %zu: failed (%s)\n", i,
                    pts[i].label.c_str(), k, e.what());
        ++failures;
      }
    }
  }
  std::printf("scan: %zu points x %zu states, %d failed\n", pts.size(),
              n_states, failures);
  return 0;
}

int cmd_scan(const Common& c) {
  const ExperimentConfig cfg = load(c);
  const std::vector<ScanPoint> pts = scan_points(cfg);
  if (!cfg.fs_references.empty()) return scan_ladder(c, cfg, pts);
  return scan_ground(c, cfg, pts);
}

struct ReblockArgs {
  std::string input;
  std::string column = "e_proj";
  double discard = 0.25;
};

std::vector<double> read_column(const std::string& path,
                                const std::string& column) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open series file: " + path);
  std::string line;
  if (!std::getline(in, line)) throw ConfigError(path + ": empty file");

  auto split_row = [](const std::string& row) {
    std::vector<std::string> cells;
    std::stringstream ss(row);
    std::string cell;
    while (std::getline(ss, cell, ',')) cells.push_back(cell);
    return cells;
  };
  auto is_number = [](const std::string& s) {
    try {
      std::size_t pos = 0;
      std::stod(s, &pos);
      while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos])))
        ++pos;
      return pos == s.size();
    } catch (const std::exception&) {
      return false;
    }
  };

  const std::vector<std::string> header = split_row(line);
  std::size_t idx = header.size();
  for (std::size_t i = 0; i < header.size(); ++i)
    if (header[i] == column) idx = i;

  std::vector<double> series;
  if (idx == header.size()) {
    // No matching header cell: accept a numeric column index, including into
    // headerless files whose first row is already data.
    try {
      idx = static_cast<std::size_t>(std::stoul(column));
    } catch (const std::exception&) {
      throw ConfigError("column '" + column + "' not found in " + path);
    }
    if (idx >= header.size())
      throw ConfigError("column index " + column + " out of range");
    if (is_number(header[idx])) series.push_back(std::stod(header[idx]));
  }

  int line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r\n") == std::string::npos) continue;
    const std::vector<std::string> cells = split_row(line);
    if (idx >= cells.size() || !is_number(cells[idx])) {
      throw ConfigError(path + ":" + std::to_string(line_no) +
                        ": bad value in column " + std::to_string(idx));
    }
    series.push_back(std::stod(cells[idx]));
  }
  return series;
}

int cmd_reblock(const Common& c, const ReblockArgs& a) {
  const std::vector<double> series = read_column(a.input, a.column);
  const ReblockResult res = reblock(series, a.discard);

  std::ofstream out = open_out(c, "reblock.csv");
  out << "series,level,block_size,n_blocks,mean,std_error,error_on_error,"
         "chosen\n";
  for (const ReblockLevel& l : res.levels) {
    out << a.column << ',' << l.level << ',' << l.block_size << ','
        << l.n_blocks << ',' << g17(l.mean) << ',' << g17(l.std_error) << ','
        << g17(l.error_on_error) << ',' << (l.level == res.chosen_level ? 1 : 0)
        << '\n';
  }
  std::printf(
      "reblock: %lld samples, mean = %.10f +/- %.2e (level %d%s)\n",
      res.n_used, res.mean, res.std_error, res.chosen_level,
      res.plateau_found ? "" : ", no plateau");
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Monte Carlo projective quantum eigensolver toolkit"};
  app.require_subcommand(1);

  Common c_run, c_scan, c_fs, c_pqe, c_groups, c_fci, c_reblock;
  ReblockArgs rb;

  CLI::App* run = app.add_subcommand(
      "run", "stochastic ground-state propagation of a config");
  add_common(run, c_run);
  CLI::App* scan = app.add_subcommand(
      "scan", "warm-started geometry scan (ground or folded ladder)");
  add_common(scan, c_scan);
  CLI::App* fs = app.add_subcommand(
      "fs", "folded-spectrum excited-state propagation at fs_omega");
  add_common(fs, c_fs);
  CLI::App* pqe = app.add_subcommand(
      "pqe", "deterministic quasi-Newton amplitude solver");
  add_common(pqe, c_pqe);
  CLI::App* groups = app.add_subcommand(
      "groups", "measurement-group census of the qubit Hamiltonian");
  add_common(groups, c_groups);
  CLI::App* fci = app.add_subcommand(
      "fci", "exact sector spectrum from the built-in oracle");
  add_common(fci, c_fci);
  CLI::App* reblk = app.add_subcommand(
      "reblock", "blocking analysis of a trajectory column");
  add_common(reblk, c_reblock, /*needs_config=*/false);
  reblk->add_option("input", rb.input, "CSV or single-column series file")
      ->required();
  reblk->add_option("--column", rb.column, "header name or 0-based index");
  reblk->add_option("--discard", rb.discard, "leading fraction to drop");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  try {
    if (run->parsed()) return cmd_run(c_run);
    if (scan->parsed()) return cmd_scan(c_scan);
    if (fs->parsed()) return cmd_fs(c_fs);
    if (pqe->parsed()) return cmd_pqe(c_pqe);
    if (groups->parsed()) return cmd_groups(c_groups);
    if (fci->parsed()) return cmd_fci(c_fci);
    if (reblk->parsed()) return cmd_reblock(c_reblock, rb);
  } catch (const ConfigError& e) {
    std::fprintf(stderr, "config error: %s\n", e.what());
    return 2;
  } catch (const ConvergenceError& e) {
    std::fprintf(stderr, "did not converge: %s\n", e.what());
    return 4;
  } catch (const NumericalError& e) {
    std::fprintf(stderr, "numerical failure: %s\n", e.what());
    return 3;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
  return 0;
}
