#include "spinsim/runner.hpp"

#include <json.hpp>

#include <algorithm>
#include <atomic>
#include <cmath>
#include <fstream>
#include <limits>
#include <map>
#include <ostream>
#include <sstream>

#include "spinsim/csv.hpp"
#include "spinsim/decoherence.hpp"
#include "spinsim/dynamics.hpp"
#include "spinsim/geometry.hpp"
#include "spinsim/hamiltonian.hpp"
#include "spinsim/linalg.hpp"
#include "spinsim/parallel.hpp"
#include "spinsim/spectrum.hpp"

namespace spinsim {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

// Everything one cell produced, keyed by output file; concatenated in cell
// order after the parallel phase so bytes never depend on scheduling.
struct CellResult {
  std::map<std::string, std::string> chunks;
  std::vector<std::string> errors;  // "cell_key,message"
};

std::string csv_escape(std::string s) {
  for (auto& ch : s)
    if (ch == ',' || ch == '\n') ch = ';';
  return s;
}

SpinGeometry geometry_for(const ExperimentConfig& c, std::uint64_t seed) {
  return sample_ensemble(c.n_spins, c.diameter_nm, seed, c.min_separation_nm);
}

DiagonalizeOptions diag_options(const ExperimentConfig& c) {
  DiagonalizeOptions d;
  d.dense_cap = c.dense_cap;
  return d;
}

std::vector<std::uint64_t> sorted_seeds(const ExperimentConfig& c) {
  std::vector<std::uint64_t> seeds = c.seeds;
  std::sort(seeds.begin(), seeds.end());
  return seeds;
}

Eigen::Vector3d direction_of(const ExperimentConfig& c) {
  return {c.qubit_direction[0], c.qubit_direction[1], c.qubit_direction[2]};
}

RabiOptions rabi_options(const ExperimentConfig& c) {
  RabiOptions o;
  o.m_max = c.m_max;
  o.t_max_us = c.t_max_us;
  o.n_steps = c.n_steps;
  o.bare_vacuum = c.bare_vacuum;
  o.n_c_floor = c.n_c_floor;
  o.diag = diag_options(c);
  o.evolve.dense_cap = c.dense_cap;
  return o;
}

// ---- per-experiment cell bodies -------------------------------------------

void run_spectrum_cell(const ExperimentConfig& c, std::uint64_t seed, CellResult& out) {
  const SpinGeometry geom = geometry_for(c, seed);
  HamiltonianSpec spec{geom, c.params, c.m_max};
  spec.dimension_cap = c.dimension_cap;
  const SpectrumResult s = diagonalize(build_hamiltonian(spec), diag_options(c));
  std::string& chunk = out.chunks["spectrum.csv"];
  for (int i = 0; i < s.mode_count(); ++i) {
    const double m1 = s.basis->m_max() >= 1 ? s.m_weight(1, i) : 0.0;
    chunk += csv_line({std::to_string(seed), csv_double(c.params.omega_mhz), std::to_string(i),
                       csv_double(s.energies(i)), csv_double(s.n_c[i]),
                       csv_double(s.overlap_w[i]), csv_double(m1)});
  }
}

void run_sweep_omega_cell(const ExperimentConfig& c, std::uint64_t seed, double omega,
                          CellResult& out) {
  const SpinGeometry geom = geometry_for(c, seed);
  const auto rows = sweep_omega(geom, c.params, {omega}, c.m_max, diag_options(c), c.n_c_floor);
  const auto& row = rows.front();
  if (!row.ok) {
    out.errors.push_back("seed=" + std::to_string(seed) +
                         ";omega=" + csv_double(omega) + "," + csv_escape(row.error));
    out.chunks["sweep_omega.csv"] += csv_line(
        {std::to_string(seed), csv_double(omega), csv_double(kNaN), csv_double(kNaN)});
    return;
  }
  out.chunks["sweep_omega.csv"] += csv_line({std::to_string(seed), csv_double(omega),
                                             csv_double(row.max_n_c), csv_double(row.e_c_mhz)});
}

void append_summary_row(std::string& chunk, std::uint64_t seed, const DistanceRow& row,
                        double slope) {
  chunk += csv_line({std::to_string(seed), csv_double(row.r_nm),
                     csv_double(row.t_pi_us.value_or(kNaN)),
                     csv_double(row.v_c_mhz.value_or(kNaN)), csv_double(row.n_c),
                     csv_double(row.v_c_mhz ? row.eff_r_nm : kNaN), csv_double(slope)});
}

void run_rabi_cell(const ExperimentConfig& c, std::uint64_t seed, CellResult& out) {
  const SpinGeometry geom = place_qubit(geometry_for(c, seed), c.r_nm, direction_of(c));
  const RabiResult r = rabi_experiment(geom, c.params, rabi_options(c));
  if (c.emit_traces) {
    std::string& trace = out.chunks["rabi_trace.csv"];
    for (std::size_t k = 0; k < r.trace.times_us.size(); ++k)
      trace += csv_line({std::to_string(seed), csv_double(c.r_nm),
                         csv_double(r.trace.times_us[k]), csv_double(r.trace.p_q[k])});
  }
  DistanceRow row;
  row.r_nm = c.r_nm;
  row.t_pi_us = r.trace.t_pi_us;
  row.v_c_mhz = r.trace.v_c_mhz;
  row.n_c = r.n_c;
  if (r.trace.v_c_mhz)
    row.eff_r_nm = std::cbrt(std::sqrt(std::max(r.n_c, 1.0)) * c.params.j_dd_mhz_nm3 *
                             std::abs(r.angular) / *r.trace.v_c_mhz);
  append_summary_row(out.chunks["rabi_summary.csv"], seed, row, kNaN);
  if (!r.trace.t_pi_us)
    out.errors.push_back("seed=" + std::to_string(seed) + ",no pi transfer within t_max");
}

void run_sweep_distance_cell(const ExperimentConfig& c, std::uint64_t seed, CellResult& out) {
  const SpinGeometry geom = geometry_for(c, seed);
  std::vector<double> r_grid = c.r_grid_nm;
  std::sort(r_grid.begin(), r_grid.end());
  const DistanceSweep sweep =
      sweep_distance(geom, c.params, r_grid, direction_of(c), rabi_options(c));
  std::string& chunk = out.chunks["sweep_distance.csv"];
  for (const auto& row : sweep.rows) {
    append_summary_row(chunk, seed, row, sweep.slope.value_or(kNaN));
    if (!row.ok)
      out.errors.push_back("seed=" + std::to_string(seed) + ";r=" + csv_double(row.r_nm) + "," +
                           csv_escape(row.error));
  }
}

void run_error_budget_cell(const ExperimentConfig& c, CellResult& out) {
  std::string& chunk = out.chunks["error_budget.csv"];
  for (const auto& row : c.budget) {
    const EnhancementMode mode =
        row.mode == "N" ? EnhancementMode::N : EnhancementMode::SqrtN;
    const ErrorBudget b =
        make_error_budget(c.n_spins, row.t_pi_us, c.params, c.epsilon, row.n_swaps, mode);
    chunk += csv_line({std::to_string(c.n_spins), csv_double(row.t_pi_us),
                       csv_double(c.params.t2_us), std::to_string(row.n_swaps), row.mode,
                       csv_double(b.gate_error), csv_double(b.required_t2_us)});
  }
}

void run_truncation_cell(const ExperimentConfig& c, std::uint64_t seed, CellResult& out) {
  const SpinGeometry geom = geometry_for(c, seed);
  DiagonalizeOptions d = diag_options(c);
  const TruncationReport rep =
      truncation_check(geom, c.params, c.m_max, c.truncation_m_high, d);
  out.chunks["truncation.csv"] += csv_line(
      {std::to_string(seed), std::to_string(c.n_spins), std::to_string(rep.m_low),
       std::to_string(rep.m_high), csv_double(rep.e_c_low_mhz), csv_double(rep.e_c_high_mhz),
       csv_double(rep.n_c_low), csv_double(rep.n_c_high), csv_double(rep.de_over_delta),
       csv_double(rep.dn_c_rel)});
}

const std::map<std::string, std::string> kHeaders = {
    {"spectrum.csv", "seed,omega_mhz,eigenindex,energy_mhz,n_c,overlap_w,m1_weight"},
    {"sweep_omega.csv", "seed,omega_mhz,max_n_c,e_c_mhz"},
    {"rabi_trace.csv", "seed,r_nm,t_us,p_q"},
    {"rabi_summary.csv", "seed,r_nm,t_pi_us,v_c_mhz,n_c,eff_r_nm,slope"},
    {"sweep_distance.csv", "seed,r_nm,t_pi_us,v_c_mhz,n_c,eff_r_nm,slope"},
    {"error_budget.csv", "n,t_pi_us,t2_us,n_swaps,mode,gate_error,required_t2_us"},
    {"truncation.csv",
     "seed,n_spins,m_low,m_high,e_c_low_mhz,e_c_high_mhz,n_c_low,n_c_high,de_over_delta,"
     "dn_c_rel"},
};

}  // namespace

int validate_config(const ExperimentConfig& config, std::ostream& out) {
  const auto issues = config.validate();
  if (!issues.empty()) {
    out << "config invalid (" << issues.size() << " issue(s)):\n";
    for (const auto& i : issues) out << "  - " << i << "\n";
    return kExitConfigError;
  }
  out << "config valid\n";
  out << "experiment: " << config.experiment << "\n";
  out << "dimension: " << config.predicted_dimension() << "\n";
  if (!config.seeds.empty()) {
    const SpinGeometry geom = geometry_for(config, sorted_seeds(config).front());
    const double v_dd = median_nn_coupling(geom, config.params);
    out << check_hierarchy(config.params, config.n_spins, v_dd).summary() << "\n";
  }
  return kExitOk;
}

int run_experiment(const ExperimentConfig& config, const std::filesystem::path& out_dir,
                   int workers, bool fail_fast, std::ostream& log) {
  {
    std::ostringstream sink;
    if (validate_config(config, sink) != kExitOk) {
      log << sink.str();
      return kExitConfigError;
    }
  }
  set_blas_threads(1);  // bitwise-identical output for every worker count
  std::filesystem::create_directories(out_dir);

  // Cell list in canonical key order.
  const std::vector<std::uint64_t> seeds = sorted_seeds(config);
  std::vector<double> omegas = config.omega_grid_mhz;
  std::sort(omegas.begin(), omegas.end());

  struct Cell {
    std::uint64_t seed = 0;
    double omega = 0.0;
  };
  std::vector<Cell> cells;
  if (config.experiment == "sweep-omega") {
    for (auto s : seeds)
      for (double w : omegas) cells.push_back({s, w});
  } else if (config.experiment == "error-budget") {
    cells.push_back({});
  } else {
    for (auto s : seeds) cells.push_back({s, 0.0});
  }

  std::vector<CellResult> results(cells.size());
  std::atomic<bool> abort{false};
  parallel_for(cells.size(), workers, [&](std::size_t i) {
    if (abort.load()) return;
    try {
      if (config.experiment == "spectrum") {
        run_spectrum_cell(config, cells[i].seed, results[i]);
      } else if (config.experiment == "sweep-omega") {
        run_sweep_omega_cell(config, cells[i].seed, cells[i].omega, results[i]);
      } else if (config.experiment == "rabi") {
        run_rabi_cell(config, cells[i].seed, results[i]);
      } else if (config.experiment == "sweep-distance") {
        run_sweep_distance_cell(config, cells[i].seed, results[i]);
      } else if (config.experiment == "error-budget") {
        run_error_budget_cell(config, results[i]);
      } else if (config.experiment == "validate-truncation") {
        run_truncation_cell(config, cells[i].seed, results[i]);
      }
    } catch (const std::exception& e) {
      results[i].errors.push_back("seed=" + std::to_string(cells[i].seed) + "," +
                                  csv_escape(e.what()));
      if (fail_fast) abort.store(true);
    }
  });

  // Merge in cell order.
  std::map<std::string, std::string> files;
  std::vector<std::string> errors;
  for (const auto& r : results) {
    for (const auto& [name, chunk] : r.chunks) files[name] += chunk;
    errors.insert(errors.end(), r.errors.begin(), r.errors.end());
  }

  std::vector<std::string> output_names;
  for (auto& [name, body] : files) {
    std::ofstream os(out_dir / name, std::ios::binary);
    os << kHeaders.at(name) << "\n" << body;
    output_names.push_back(name);
  }
  if (!errors.empty()) {
    std::ofstream os(out_dir / "errors.csv", std::ios::binary);
    os << "cell,message\n";
    for (const auto& e : errors) os << e << "\n";
    output_names.push_back("errors.csv");
    log << errors.size() << " cell error(s); see errors.csv\n";
  }

  nlohmann::json manifest;
  {
    std::ostringstream hash_hex;
    hash_hex << std::hex << config.content_hash();
    manifest["config_hash"] = hash_hex.str();
  }
  manifest["schema_version"] = config.schema_version;
  manifest["experiment"] = config.experiment;
  manifest["seeds"] = config.seeds;
  manifest["library_version"] = kVersion;
  manifest["outputs"] = output_names;
  {
    std::ofstream os(out_dir / "manifest.json", std::ios::binary);
    os << manifest.dump(2) << "\n";
  }

  if (!errors.empty() && fail_fast) return kExitNumericalError;
  return kExitOk;
}

}  // namespace spinsim
