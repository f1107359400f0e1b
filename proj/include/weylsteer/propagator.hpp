#pragma once

#include <span>
#include <utility>
#include <vector>

#include "weylsteer/algebra.hpp"
#include "weylsteer/steering.hpp"

// Time-ordered numerical evolution of a GateSchedule, independent of the
// commuting-family shortcut.  Coupled segments are integrated with the
// midpoint-exponential rule: the ordered product of exact exponentials
// exp(-i H(t_mid) dt), with step grids aligned to the profile's
// non-smooth points.

namespace weylsteer {

struct PropagationConfig {
  int steps = 4096;       // per coupled segment, >= 2
  double delta1 = 0.0;    // tracking perturbation, Omega_i = lambda_i (1+delta_i) g
  double delta2 = 0.0;
};

Matrix4c propagate(const GateSchedule& schedule,
                   const PropagationConfig& config = {});

/// max_norm_diff(propagate(steps), compose_analytic(schedule)) for each
/// entry of `steps_list`.
std::vector<std::pair<int, double>> convergence_scan(
    const GateSchedule& schedule, std::span<const int> steps_list);

struct SensitivityPoint {
  double delta1 = 0.0;
  double delta2 = 0.0;
  double fidelity = 0.0;
};

/// Propagate the full CNOT schedule for each (delta1, delta2) pair and
/// report phase-invariant fidelity to CNOT.  Grid points are evaluated
/// concurrently; results keep the input order.
std::vector<SensitivityPoint> tracking_sensitivity(
    const CouplingParams& params, const PulseProfile& profile,
    std::span<const std::pair<double, double>> delta_grid,
    int steps = 4096);

/// Phase-invariant fidelity of each propagated schedule against `target`,
/// evaluated concurrently, results in input order.
std::vector<double> batch_fidelity(std::span<const GateSchedule> schedules,
                                   const Matrix4c& target, int steps = 4096);

}  // namespace weylsteer
