#pragma once

// Batch front door: scenario configuration, command dispatch, serialization
// of trajectories and verification reports.

#include "spincm/dynamics.hpp"
#include "spincm/orbits.hpp"

#include <nlohmann/json.hpp>

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace spincm {

struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

enum class EngineChoice { projection, direct, both };

struct Scenario {
  int n = 0;
  OrbitSpec orbit;
  RVector q0, p0;
  std::optional<CMatrix> explicit_spin;
  std::optional<std::uint64_t> project_seed;
  double t_end = 1.0;
  double dt = 1e-3;
  EngineChoice engine = EngineChoice::projection;
  SpinSign spin_sign = SpinSign::automatic;
  std::string csv_path = "trajectory.csv";
  std::string report_path = "report.json";
  bool gnuplot = false;
};

Scenario parse_scenario(const nlohmann::json& doc);
Scenario load_scenario(const std::filesystem::path& path);

/// Initial reduced point of a scenario: explicit spin, or a seeded
/// project_to_ann_m sample of the configured orbit.
ReducedPoint scenario_initial(const Scenario& sc, std::uint64_t seed);

/// Global tolerance multiplier from SPINCM_TOL_SCALE (default 1).
double tol_scale();

struct RunReport {
  nlohmann::json scenario_echo;
  std::map<std::string, double> drifts;
  std::optional<std::map<std::string, double>> engine_agreement;
  double wall_clock_seconds = 0.0;
  std::string status;

  nlohmann::json to_json() const;
};

void write_trajectory_csv(const std::filesystem::path& path, const Trajectory& traj,
                          bool raw_spin);
void write_gnuplot_script(const std::filesystem::path& path,
                          const std::filesystem::path& csv, int n);

// Exit codes: 0 ok, 2 config error, 3 numerical failure, 4 tolerance violation.
inline constexpr int kExitOk = 0;
inline constexpr int kExitConfig = 2;
inline constexpr int kExitNumerical = 3;
inline constexpr int kExitTolerance = 4;

int run_command(const std::vector<std::string>& argv);

}  // namespace spincm
