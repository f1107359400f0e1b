#include "weylsteer/propagator.hpp"

#include <atomic>
#include <cmath>
#include <exception>
#include <functional>
#include <mutex>
#include <stdexcept>
#include <thread>

#include "weylsteer/equivalence.hpp"

namespace weylsteer {

namespace {

// Evaluate fn(0..n-1) across a small thread pool; first exception rethrown.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn) {
  const std::size_t workers =
      std::min<std::size_t>(std::max(1u, std::thread::hardware_concurrency()), n);
  if (workers <= 1) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr error;
  std::mutex error_mutex;
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (std::size_t w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (std::size_t i = next.fetch_add(1); i < n; i = next.fetch_add(1)) {
        try {
          fn(i);
        } catch (...) {
          const std::scoped_lock lock(error_mutex);
          if (!error) error = std::current_exception();
        }
      }
    });
  }
  for (std::thread& t : pool) t.join();
  if (error) std::rethrow_exception(error);
}

Matrix4c propagate_coupled(const CoupledEvolution& coupled,
                           const PropagationConfig& config) {
  double d1 = 0.0, d2 = 0.0;
  double drive_scale = 1.0;
  switch (coupled.tracking) {
    case TrackingMode::On:
      d1 = config.delta1;
      d2 = config.delta2;
      break;
    case TrackingMode::Perturbed:
      d1 = coupled.delta1;
      d2 = coupled.delta2;
      break;
    case TrackingMode::Off:
      drive_scale = 0.0;
      break;
  }
  const CouplingParams& p = coupled.params;
  const double o1 = drive_scale * p.lambda1 * (1.0 + d1);
  const double o2 = drive_scale * p.lambda2 * (1.0 + d2);

  const std::vector<double> pieces = breakpoints(coupled.profile);
  const double total = coupled.profile.t1;

  Matrix4c u = Matrix4c::Identity();
  for (std::size_t i = 0; i + 1 < pieces.size(); ++i) {
    const double a = pieces[i];
    const double b = pieces[i + 1];
    const int n = std::max(
        1, static_cast<int>(std::lround(config.steps * (b - a) / total)));
    const double dt = (b - a) / n;
    for (int j = 0; j < n; ++j) {
      const double t_mid = a + (j + 0.5) * dt;
      const double g = evaluate(coupled.profile, t_mid);
      const Matrix4c h = hamiltonian(o1 * g, o2 * g, g, p.k);
      u = expm_hermitian(h, dt) * u;
    }
  }
  return u;
}

}  // namespace

Matrix4c propagate(const GateSchedule& schedule,
                   const PropagationConfig& config) {
  if (config.steps < 2) {
    throw std::invalid_argument("propagate: steps must be >= 2");
  }
  Matrix4c u = Matrix4c::Identity();
  for (const Segment& segment : schedule.segments) {
    if (const auto* rotation = std::get_if<LocalRotation>(&segment)) {
      u = local_rotation_unitary(*rotation) * u;
    } else {
      u = propagate_coupled(std::get<CoupledEvolution>(segment), config) * u;
    }
  }
  return u;
}

std::vector<std::pair<int, double>> convergence_scan(
    const GateSchedule& schedule, std::span<const int> steps_list) {
  const Matrix4c reference = compose_analytic(schedule);
  std::vector<std::pair<int, double>> out(steps_list.size());
  parallel_for(steps_list.size(), [&](std::size_t i) {
    PropagationConfig config;
    config.steps = steps_list[i];
    out[i] = {steps_list[i], max_norm_diff(propagate(schedule, config), reference)};
  });
  return out;
}

std::vector<double> batch_fidelity(std::span<const GateSchedule> schedules,
                                   const Matrix4c& target, int steps) {
  std::vector<double> out(schedules.size());
  parallel_for(schedules.size(), [&](std::size_t i) {
    PropagationConfig config;
    config.steps = steps;
    out[i] = phase_invariant_fidelity(propagate(schedules[i], config), target);
  });
  return out;
}

std::vector<SensitivityPoint> tracking_sensitivity(
    const CouplingParams& params, const PulseProfile& profile,
    std::span<const std::pair<double, double>> delta_grid, int steps) {
  const GateSchedule schedule = cnot_schedule(params, profile);
  const Matrix4c target = cnot();
  std::vector<SensitivityPoint> out(delta_grid.size());
  parallel_for(delta_grid.size(), [&](std::size_t i) {
    PropagationConfig config;
    config.steps = steps;
    config.delta1 = delta_grid[i].first;
    config.delta2 = delta_grid[i].second;
    const Matrix4c u = propagate(schedule, config);
    out[i] = {config.delta1, config.delta2,
              phase_invariant_fidelity(u, target)};
  });
  return out;
}

}  // namespace weylsteer
