#include "spinsim/config.hpp"

#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <set>
#include <sstream>
#include <stdexcept>

#include "spinsim/basis.hpp"

namespace spinsim {

using nlohmann::json;

namespace {

// JSON has no Infinity literal; decoherence times may be infinite.
json time_to_json(double t) {
  if (std::isinf(t)) return "inf";
  return t;
}

double time_from_json(const json& j) {
  if (j.is_string()) {
    if (j.get<std::string>() == "inf") return std::numeric_limits<double>::infinity();
    throw std::invalid_argument("config: bad time literal \"" + j.get<std::string>() + "\"");
  }
  return j.get<double>();
}

const std::set<std::string> kExperiments = {
    "spectrum", "sweep-omega", "rabi", "sweep-distance", "error-budget", "validate-truncation"};

}  // namespace

std::string ExperimentConfig::to_json_string() const {
  json j;
  j["schema_version"] = schema_version;
  j["experiment"] = experiment;
  j["n_spins"] = n_spins;
  j["diameter_nm"] = diameter_nm;
  j["min_separation_nm"] = min_separation_nm;
  j["m_max"] = m_max;
  j["seeds"] = seeds;
  j["params"] = {{"delta_mhz", params.delta_mhz},
                 {"omega_mhz", params.omega_mhz},
                 {"j_dd_mhz_nm3", params.j_dd_mhz_nm3},
                 {"omega_ext_mhz", params.omega_ext_mhz},
                 {"t2_us", time_to_json(params.t2_us)},
                 {"t1_down_us", time_to_json(params.t1_down_us)},
                 {"t1_up_us", time_to_json(params.t1_up_us)}};
  j["omega_grid_mhz"] = omega_grid_mhz;
  j["r_nm"] = r_nm;
  j["r_grid_nm"] = r_grid_nm;
  j["qubit_direction"] = qubit_direction;
  j["t_max_us"] = t_max_us;
  j["n_steps"] = n_steps;
  j["bare_vacuum"] = bare_vacuum;
  j["emit_traces"] = emit_traces;
  j["dense_cap"] = dense_cap;
  j["dimension_cap"] = dimension_cap;
  j["n_c_floor"] = n_c_floor;
  j["epsilon"] = epsilon;
  j["truncation_m_high"] = truncation_m_high;
  json rows = json::array();
  for (const auto& b : budget)
    rows.push_back({{"t_pi_us", b.t_pi_us}, {"n_swaps", b.n_swaps}, {"mode", b.mode}});
  j["budget"] = rows;
  return j.dump(2) + "\n";  // nlohmann objects iterate sorted by key
}

ExperimentConfig ExperimentConfig::from_json_string(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw std::invalid_argument(std::string("config: JSON parse error: ") + e.what());
  }
  ExperimentConfig c;
  try {
    c.schema_version = j.at("schema_version").get<int>();
    if (c.schema_version != kConfigSchemaVersion)
      throw std::invalid_argument("config: unsupported schema_version " +
                                  std::to_string(c.schema_version));
    c.experiment = j.at("experiment").get<std::string>();
    if (j.contains("n_spins")) c.n_spins = j["n_spins"].get<int>();
    if (j.contains("diameter_nm")) c.diameter_nm = j["diameter_nm"].get<double>();
    if (j.contains("min_separation_nm"))
      c.min_separation_nm = j["min_separation_nm"].get<double>();
    if (j.contains("m_max")) c.m_max = j["m_max"].get<int>();
    if (j.contains("seeds")) c.seeds = j["seeds"].get<std::vector<std::uint64_t>>();
    if (j.contains("params")) {
      const json& p = j["params"];
      if (p.contains("delta_mhz")) c.params.delta_mhz = p["delta_mhz"].get<double>();
      if (p.contains("omega_mhz")) c.params.omega_mhz = p["omega_mhz"].get<double>();
      if (p.contains("j_dd_mhz_nm3")) c.params.j_dd_mhz_nm3 = p["j_dd_mhz_nm3"].get<double>();
      if (p.contains("omega_ext_mhz")) c.params.omega_ext_mhz = p["omega_ext_mhz"].get<double>();
      if (p.contains("t2_us")) c.params.t2_us = time_from_json(p["t2_us"]);
      if (p.contains("t1_down_us")) c.params.t1_down_us = time_from_json(p["t1_down_us"]);
      if (p.contains("t1_up_us")) c.params.t1_up_us = time_from_json(p["t1_up_us"]);
    }
    if (j.contains("omega_grid_mhz"))
      c.omega_grid_mhz = j["omega_grid_mhz"].get<std::vector<double>>();
    if (j.contains("r_nm")) c.r_nm = j["r_nm"].get<double>();
    if (j.contains("r_grid_nm")) c.r_grid_nm = j["r_grid_nm"].get<std::vector<double>>();
    if (j.contains("qubit_direction"))
      c.qubit_direction = j["qubit_direction"].get<std::array<double, 3>>();
    if (j.contains("t_max_us")) c.t_max_us = j["t_max_us"].get<double>();
    if (j.contains("n_steps")) c.n_steps = j["n_steps"].get<int>();
    if (j.contains("bare_vacuum")) c.bare_vacuum = j["bare_vacuum"].get<bool>();
    if (j.contains("emit_traces")) c.emit_traces = j["emit_traces"].get<bool>();
    if (j.contains("dense_cap")) c.dense_cap = j["dense_cap"].get<std::size_t>();
    if (j.contains("dimension_cap")) c.dimension_cap = j["dimension_cap"].get<std::size_t>();
    if (j.contains("n_c_floor")) c.n_c_floor = j["n_c_floor"].get<double>();
    if (j.contains("epsilon")) c.epsilon = j["epsilon"].get<double>();
    if (j.contains("truncation_m_high")) c.truncation_m_high = j["truncation_m_high"].get<int>();
    if (j.contains("budget")) {
      for (const auto& row : j["budget"]) {
        BudgetRow b;
        b.t_pi_us = row.at("t_pi_us").get<double>();
        if (row.contains("n_swaps")) b.n_swaps = row["n_swaps"].get<int>();
        if (row.contains("mode")) b.mode = row["mode"].get<std::string>();
        c.budget.push_back(b);
      }
    }
  } catch (const json::exception& e) {
    throw std::invalid_argument(std::string("config: ") + e.what());
  }
  return c;
}

ExperimentConfig ExperimentConfig::from_json_file(const std::filesystem::path& path) {
  std::ifstream is(path);
  if (!is) throw std::invalid_argument("config: cannot open " + path.string());
  std::ostringstream ss;
  ss << is.rdbuf();
  return from_json_string(ss.str());
}

std::vector<std::string> ExperimentConfig::validate() const {
  std::vector<std::string> issues;
  if (!kExperiments.count(experiment))
    issues.push_back("experiment must be one of spectrum, sweep-omega, rabi, sweep-distance, "
                     "error-budget, validate-truncation");
  if (seeds.empty() && experiment != "error-budget") issues.push_back("seeds must be non-empty");
  if (n_spins < 1) issues.push_back("n_spins must be >= 1");
  if (!(diameter_nm > 0)) issues.push_back("diameter_nm must be > 0");
  if (min_separation_nm < 0) issues.push_back("min_separation_nm must be >= 0");
  if (m_max < 0 || m_max > n_spins) issues.push_back("m_max must be in [0, n_spins]");
  try {
    params.validate();
  } catch (const std::exception& e) {
    issues.push_back(e.what());
  }
  try {
    const std::size_t dim = predicted_dimension();
    if (dim > dimension_cap)
      issues.push_back("predicted dimension " + std::to_string(dim) + " exceeds dimension_cap " +
                       std::to_string(dimension_cap));
  } catch (const std::exception& e) {
    issues.push_back(std::string("dimension estimate failed: ") + e.what());
  }

  if (experiment == "sweep-omega") {
    if (omega_grid_mhz.empty()) issues.push_back("sweep-omega requires omega_grid_mhz");
    for (double w : omega_grid_mhz)
      if (w < 0) issues.push_back("omega_grid_mhz entries must be >= 0");
  }
  if (experiment == "rabi") {
    if (!(r_nm > 0)) issues.push_back("rabi requires r_nm > 0");
    if (n_steps < 2) issues.push_back("n_steps must be >= 2");
    if (!(t_max_us > 0)) issues.push_back("t_max_us must be > 0");
    if (m_max < 1) issues.push_back("rabi requires m_max >= 1");
  }
  if (experiment == "sweep-distance") {
    if (r_grid_nm.empty()) {
      issues.push_back("sweep-distance requires r_grid_nm");
    } else {
      double rmin = r_grid_nm[0], rmax = r_grid_nm[0];
      for (double r : r_grid_nm) {
        if (!(r > 0)) issues.push_back("r_grid_nm entries must be > 0");
        rmin = std::min(rmin, r);
        rmax = std::max(rmax, r);
      }
      if (rmax < 3.0 * rmin)
        issues.push_back("r_grid_nm must span at least a factor 3");
    }
    if (n_steps < 2) issues.push_back("n_steps must be >= 2");
    if (m_max < 1) issues.push_back("sweep-distance requires m_max >= 1");
  }
  if (experiment == "error-budget") {
    if (budget.empty()) issues.push_back("error-budget requires budget rows");
    for (const auto& b : budget) {
      if (!(b.t_pi_us > 0)) issues.push_back("budget t_pi_us must be > 0");
      if (b.n_swaps < 1) issues.push_back("budget n_swaps must be >= 1");
      if (b.mode != "sqrtN" && b.mode != "N") issues.push_back("budget mode must be sqrtN or N");
    }
    if (!(epsilon > 0 && epsilon < 1)) issues.push_back("epsilon must be in (0,1)");
  }
  if (experiment == "validate-truncation") {
    if (truncation_m_high <= m_max)
      issues.push_back("truncation_m_high must exceed m_max");
    if (truncation_m_high > n_spins)
      issues.push_back("truncation_m_high must be <= n_spins");
    try {
      const std::size_t dim_high = truncated_dimension(n_spins, truncation_m_high);
      if (dim_high > dimension_cap)
        issues.push_back("truncation_m_high dimension " + std::to_string(dim_high) +
                         " exceeds dimension_cap");
    } catch (const std::exception& e) {
      issues.push_back(std::string("truncation dimension estimate failed: ") + e.what());
    }
  }
  return issues;
}

std::uint64_t ExperimentConfig::content_hash() const {
  const std::string canon = to_json_string();
  std::uint64_t h = 0xcbf29ce484222325ULL;  // FNV-1a 64
  for (unsigned char ch : canon) {
    h ^= ch;
    h *= 0x100000001b3ULL;
  }
  return h;
}

std::size_t ExperimentConfig::predicted_dimension() const {
  const bool with_qubit = experiment == "rabi" || experiment == "sweep-distance";
  return truncated_dimension(n_spins + (with_qubit ? 1 : 0), m_max);
}

}  // namespace spinsim
