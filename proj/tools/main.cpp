// weylsteer CLI: reproduce the gate-time table, certify the steering and
// CNOT identities over k, run numerical schedule simulations, and emit
// tracking/area robustness sweeps.
//
// Exit codes: 0 success, 1 verification failure, 2 usage or I/O error.

#include <cmath>
#include <complex>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "weylsteer/algebra.hpp"
#include "weylsteer/equivalence.hpp"
#include "weylsteer/propagator.hpp"
#include "weylsteer/pulses.hpp"
#include "weylsteer/steering.hpp"

namespace {

using namespace weylsteer;

constexpr double kHalfPi = std::numbers::pi / 2.0;
constexpr int kExitVerificationFailure = 1;
constexpr int kExitUsage = 2;

std::string fmt(const char* format, double value) {
  char buf[64];
  std::snprintf(buf, sizeof buf, format, value);
  return buf;
}

// Writes to `path` when non-empty, else to stdout.
int emit(const std::string& path, const std::string& text) {
  if (path.empty()) {
    std::cout << text;
    return 0;
  }
  std::ofstream out(path);
  out << text;
  if (!out) {
    std::cerr << "error: cannot write " << path << "\n";
    return kExitUsage;
  }
  return 0;
}

int run_table(double g_peak, const std::string& format, const std::string& out) {
  const std::vector<GateTimeRow> rows = table_gate_times(g_peak);
  std::ostringstream text;
  if (format == "csv") {
    text << "label,family,param,t1_units\n";
    for (const auto& row : rows) {
      text << row.label << ',' << row.profile_name << ',' << row.param << ','
           << fmt("%.4f", row.t1_factor) << '\n';
    }
  } else if (format == "json") {
    nlohmann::json j = nlohmann::json::array();
    for (const auto& row : rows) {
      j.push_back({{"label", row.label},
                   {"family", row.profile_name},
                   {"param", row.param},
                   {"t1_factor", row.t1_factor}});
    }
    text << j.dump(2) << '\n';
  } else {
    text << "switching mechanism   param            pulse profile        t1, x pi/(2g)\n";
    for (const auto& row : rows) {
      char line[128];
      std::snprintf(line, sizeof line, "%-21s %-16s %-20s %.4f\n",
                    row.label.c_str(), row.param.c_str(),
                    row.profile_name.c_str(), row.t1_factor);
      text << line;
    }
  }
  return emit(out, text.str());
}

int run_verify(double k_min, double k_max, int n_points, double tolerance) {
  if (!(k_min <= k_max) || n_points < 1) {
    std::cerr << "error: need k_min <= k_max and n >= 1\n";
    return kExitUsage;
  }
  const Matrix4c weyl_target = cnot_weyl();
  const Matrix4c schedule_target =
      std::exp(Complex(0.0, -std::numbers::pi / 4.0)) * cnot();
  const PulseProfile pulse = with_solved_t1(PulseProfile::rectangular(1.0, 1.0));

  double worst_steer = 0.0;
  double worst_schedule = 0.0;
  for (int i = 0; i < n_points; ++i) {
    const double k =
        n_points == 1 ? k_min
                      : k_min + (k_max - k_min) * i / double(n_points - 1);
    const CouplingParams params = lambda_coeffs(k);
    worst_steer = std::max(
        worst_steer,
        max_norm_diff(steered_evolution(params, kHalfPi), weyl_target));
    const Matrix4c u = compose_analytic(cnot_schedule(params, pulse));
    worst_schedule = std::max(worst_schedule, max_norm_diff(u, schedule_target));
  }
  const bool pass = worst_steer < tolerance && worst_schedule < tolerance;
  std::cout << "steering identity: worst residual " << fmt("%.3e", worst_steer)
            << " over " << n_points << " k in [" << k_min << ", " << k_max
            << "]\n"
            << "full CNOT schedule: worst residual "
            << fmt("%.3e", worst_schedule) << "\n"
            << (pass ? "PASS" : "FAIL") << " (tolerance "
            << fmt("%.1e", tolerance) << ")\n";
  return pass ? 0 : kExitVerificationFailure;
}

PulseProfile load_profile(const std::string& spec, bool solve_t1) {
  PulseProfile profile = parse_profile_spec(spec);
  if (solve_t1) profile = with_solved_t1(profile);
  return profile;
}

int run_simulate(double k, const std::string& profile_spec, bool solve_t1,
                 int steps, double fidelity_tol, const std::string& format,
                 const std::string& out) {
  const CouplingParams params = lambda_coeffs(k);
  const PulseProfile profile = load_profile(profile_spec, solve_t1);
  const double theta = area_analytic(profile);
  if (std::abs(theta - kHalfPi) > tol::area) {
    std::cerr << "warning: pulse area " << fmt("%.6g", theta)
              << " deviates from pi/2; the schedule will not reach CNOT\n";
  }
  const GateSchedule schedule = cnot_schedule(params, profile, AreaCheck::Skip);
  PropagationConfig config;
  config.steps = steps;
  const Matrix4c u = propagate(schedule, config);
  ClassifyOptions options;
  options.fidelity_tol = fidelity_tol;
  const EquivalenceReport report = classify(u, cnot(), options);

  std::ostringstream text;
  if (format == "text") {
    text << "fidelity        " << fmt("%.12g", report.fidelity) << '\n'
         << "makhlin G1      " << fmt("%.12g", report.makhlin_g1.real())
         << (report.makhlin_g1.imag() < 0 ? " - " : " + ")
         << fmt("%.12g", std::abs(report.makhlin_g1.imag())) << "i\n"
         << "makhlin G2      " << fmt("%.12g", report.makhlin_g2) << '\n'
         << "weyl            (" << fmt("%.12g", report.weyl_coords[0]) << ", "
         << fmt("%.12g", report.weyl_coords[1]) << ", "
         << fmt("%.12g", report.weyl_coords[2]) << ")\n"
         << "verdict         " << to_string(report.verdict) << '\n';
  } else {
    text << report_to_json(report).dump(2) << '\n';
  }
  const int rc = emit(out, text.str());
  if (rc != 0) return rc;
  return report.verdict == Verdict::ExactUpToPhase ? 0
                                                   : kExitVerificationFailure;
}

int run_sweep(const std::string& kind, double k, const std::string& profile_spec,
              bool solve_t1, double lo, double hi, int n_points, double delta2,
              int steps, const std::string& out) {
  if (n_points < 1) {
    std::cerr << "error: sweep grid is empty\n";
    return kExitUsage;
  }
  const CouplingParams params = lambda_coeffs(k);
  const PulseProfile profile = load_profile(profile_spec, solve_t1);
  const auto grid_value = [&](int i) {
    return n_points == 1 ? lo : lo + (hi - lo) * i / double(n_points - 1);
  };

  std::ostringstream text;
  if (kind == "tracking") {
    std::vector<std::pair<double, double>> grid;
    grid.reserve(n_points);
    for (int i = 0; i < n_points; ++i) grid.emplace_back(grid_value(i), delta2);
    const std::vector<SensitivityPoint> points =
        tracking_sensitivity(params, profile, grid, steps);
    text << "delta1,delta2,fidelity\n";
    for (const auto& point : points) {
      text << fmt("%.12g", point.delta1) << ',' << fmt("%.12g", point.delta2)
           << ',' << fmt("%.12g", point.fidelity) << '\n';
    }
  } else {  // area: grid values scale the pulse area relative to pi/2
    std::vector<GateSchedule> schedules;
    std::vector<double> thetas;
    schedules.reserve(n_points);
    for (int i = 0; i < n_points; ++i) {
      const double scale = grid_value(i);
      PulseProfile scaled = profile;
      if (scaled.family == PulseFamily::Sampled) {
        for (double& t : scaled.times) t *= scale;
        scaled.t1 = scaled.times.back();
      } else {
        scaled.t1 *= scale;
      }
      thetas.push_back(area_analytic(scaled));
      schedules.push_back(cnot_schedule(params, scaled, AreaCheck::Skip));
    }
    const std::vector<double> fidelities =
        batch_fidelity(schedules, cnot(), steps);
    text << "theta,fidelity\n";
    for (int i = 0; i < n_points; ++i) {
      text << fmt("%.12g", thetas[i]) << ',' << fmt("%.12g", fidelities[i])
           << '\n';
    }
  }
  return emit(out, text.str());
}

int run_schedule(double k, const std::string& profile_spec, bool solve_t1,
                 const std::string& out) {
  const CouplingParams params = lambda_coeffs(k);
  const PulseProfile profile = load_profile(profile_spec, solve_t1);
  const GateSchedule schedule = cnot_schedule(params, profile);
  return emit(out, schedule_to_json(schedule).dump(2) + "\n");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "CNOT synthesis for resonantly driven qubit pairs with tunable "
      "coupling: Weyl-chamber steering, pulse-area gate times, and "
      "tracking-robustness experiments"};
  app.require_subcommand(1);

  double g_peak = 1.0;
  double k = 0.0, k_min = -7.0, k_max = 7.0;
  int n_points = 200, steps = 4096;
  double tolerance = 1e-10, fidelity_tol = 1e-9;
  double lo = 0.0, hi = 0.0, delta2 = 0.0;
  bool solve_t1 = false;
  std::string profile_spec, format = "text", out_path, kind;

  CLI::App* table = app.add_subcommand("table", "print the gate-time table");
  table->add_option("--g", g_peak, "peak coupling g (angular frequency)")
      ->check(CLI::PositiveNumber);
  table->add_option("--format", format, "text|csv|json")
      ->check(CLI::IsMember({"text", "csv", "json"}));
  table->add_option("--out", out_path, "output path (default stdout)");

  CLI::App* verify = app.add_subcommand(
      "verify", "certify the steering and CNOT identities over a k grid");
  verify->add_option("--k-min", k_min, "lower bound, >= -7");
  verify->add_option("--k-max", k_max, "upper bound, <= 7");
  verify->add_option("--n", n_points, "grid size")->check(CLI::PositiveNumber);
  verify->add_option("--tol", tolerance, "residual tolerance");

  CLI::App* simulate = app.add_subcommand(
      "simulate", "propagate the full CNOT schedule and classify the gate");
  simulate->add_option("--k", k, "coupling anisotropy, |k| <= 7")->required();
  simulate
      ->add_option("--profile", profile_spec,
                   "pulse profile: JSON object or inline spec such as "
                   "\"trapezoidal,epsilon=0.2,g=1,t1=2\"")
      ->required();
  simulate->add_flag("--solve-t1", solve_t1, "set t1 so the area is pi/2");
  simulate->add_option("--steps", steps, "propagation steps")
      ->check(CLI::Range(2, 1 << 24));
  simulate->add_option("--tol", fidelity_tol, "exact-up-to-phase fidelity tol");
  simulate->add_option("--format", format, "text|json")
      ->check(CLI::IsMember({"text", "json"}));
  simulate->add_option("--out", out_path, "output path (default stdout)");

  CLI::App* sweep = app.add_subcommand(
      "sweep", "fidelity sweep over tracking error or pulse area");
  sweep->add_option("--kind", kind, "tracking|area")
      ->required()
      ->check(CLI::IsMember({"tracking", "area"}));
  sweep->add_option("--k", k, "coupling anisotropy, |k| <= 7")->required();
  sweep->add_option("--profile", profile_spec, "pulse profile spec")->required();
  sweep->add_flag("--solve-t1", solve_t1, "set t1 so the area is pi/2");
  sweep->add_option("--min", lo, "grid start")->required();
  sweep->add_option("--max", hi, "grid end")->required();
  sweep->add_option("--n", n_points, "grid size");
  sweep->add_option("--delta2", delta2, "fixed delta2 for tracking sweeps");
  sweep->add_option("--steps", steps, "propagation steps")
      ->check(CLI::Range(2, 1 << 24));
  sweep->add_option("--out", out_path, "output path (default stdout)");

  CLI::App* schedule = app.add_subcommand(
      "schedule", "emit the four-step CNOT schedule as JSON");
  schedule->add_option("--k", k, "coupling anisotropy, |k| <= 7")->required();
  schedule->add_option("--profile", profile_spec, "pulse profile spec")
      ->required();
  schedule->add_flag("--solve-t1", solve_t1, "set t1 so the area is pi/2");
  schedule->add_option("--out", out_path, "output path (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (table->parsed()) return run_table(g_peak, format, out_path);
    if (verify->parsed()) return run_verify(k_min, k_max, n_points, tolerance);
    if (simulate->parsed()) {
      return run_simulate(k, profile_spec, solve_t1, steps, fidelity_tol,
                          format, out_path);
    }
    if (sweep->parsed()) {
      return run_sweep(kind, k, profile_spec, solve_t1, lo, hi, n_points,
                       delta2, steps, out_path);
    }
    if (schedule->parsed()) {
      return run_schedule(k, profile_spec, solve_t1, out_path);
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}
