#pragma once

// Two engines for the reduced spin Calogero-Moser flow: exact projection of
// the free straight-line flow, and RK4 integration of the reduced Hamilton
// equations, plus conserved-quantity reporting.

#include "spincm/reduction.hpp"

#include <map>
#include <string>

namespace spincm {

enum class Engine { projection, direct };

enum class SpinSign { plus, minus, automatic };

struct SampleDiagnostics {
  double energy = 0.0;
  RVector lax_spectrum;            // sorted increasing
  std::vector<double> trace_powers;  // Tr(L^k), k = 2..n
  std::vector<double> casimir_values;  // Re Tr((-iZ)^k), k = 2..n
};

struct Trajectory {
  std::vector<double> times;
  std::vector<ReducedPoint> points;
  Engine engine = Engine::projection;
  std::vector<SampleDiagnostics> diagnostics;
  int resolved_spin_sign = 0;          // +1/-1 for the direct engine
  double max_structural_drift = 0.0;   // per-step renormalization magnitude
};

struct SimulationConfig {
  ReducedPoint initial;
  double t_end = 1.0;
  double dt = 1e-3;
  Engine engine = Engine::projection;
  SpinSign spin_sign = SpinSign::automatic;

  void validate() const {
    if (!(dt > 0.0) || !(t_end > 0.0))
      throw std::invalid_argument("SimulationConfig: dt and t_end must be positive");
  }
};

struct WallCollisionError : std::runtime_error {
  double time;
  WallCollisionError(const std::string& msg, double t)
      : std::runtime_error(msg), time(t) {}
};

/// Free flow on T*V: (a, alpha) -> (a + t alpha, alpha).
PhasePoint free_flow(const PhasePoint& x, double t);

/// Samples project_point(free_flow(embed_reduced(r0), k dt)); exact up to
/// eigensolver error. Throws WallCollisionError at the first non-regular sample.
Trajectory trajectory_via_projection(const SimulationConfig& cfg);

struct ReducedVelocity {
  RVector dq;
  RVector dp;
  CMatrix dz;
};

/// dq = p; dp_i = sum_j 2|Z_ij|^2/(q_i-q_j)^3; dZ = sign [grad_Z H, Z].
ReducedVelocity reduced_vector_field(const ReducedPoint& r, int spin_sign);

/// Fixed-step RK4 on reduced_vector_field with per-step structural
/// renormalization of Z (anti-Hermitian, zero diagonal; drift logged).
Trajectory integrate_direct(const SimulationConfig& cfg);

struct ConservedReport {
  std::map<std::string, double> drifts;  // max drift over the trajectory
};

ConservedReport conserved_report(const Trajectory& traj);

/// Integrate a short probe with each spin sign and pick the one agreeing
/// with the projection oracle; throws if neither or both agree.
int resolve_spin_sign(const ReducedPoint& initial, double dt);

SampleDiagnostics sample_diagnostics(const ReducedPoint& r);

}  // namespace spincm
