#pragma once

#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

#include <nlohmann/json_fwd.hpp>

// Coupling switching profiles g(t) on [0, t1] and their pulse areas
// theta = integral of g dt (hbar = 1).  Every built-in family is
// non-negative and peak-normalized: 0 <= g(t) <= g_peak, with
// g(0) = g(t1) = 0 except for the rectangular pulse.

namespace weylsteer {

struct TimeOutOfRange : std::out_of_range {
  using std::out_of_range::out_of_range;
};

struct QuadratureNonConvergence : std::runtime_error {
  using std::runtime_error::runtime_error;
};

enum class PulseFamily {
  Rectangular,   // g(t) = g
  Trapezoidal,   // linear ramp over [0, eps*t1], plateau, mirrored ramp
  InvertedPoly,  // g * [1 - 2^(2n) (t/t1 - 1/2)^(2n)]
  Sinusoidal,    // g/2 * [1 - cos(2 pi t / t1)]
  LandauHat,     // g * [1 + x^4 - 2 x^2], x = 2 t/t1 - 1
  Sampled,       // user-supplied trace, linear interpolation
};

struct PulseProfile {
  PulseFamily family = PulseFamily::Rectangular;
  double g_peak = 1.0;
  double t1 = 1.0;
  double epsilon = 0.0;             // trapezoidal ramp fraction, in [0, 1/2]
  int n = 1;                        // inverted-poly order, >= 1
  std::vector<double> times;        // sampled family only
  std::vector<double> values;

  static PulseProfile rectangular(double g_peak, double t1);
  static PulseProfile trapezoidal(double epsilon, double g_peak, double t1);
  static PulseProfile inverted_poly(int n, double g_peak, double t1);
  static PulseProfile sinusoidal(double g_peak, double t1);
  static PulseProfile landau_hat(double g_peak, double t1);
  static PulseProfile sampled(std::vector<double> times,
                              std::vector<double> values);
};

/// g(t) for t in [0, t1]; throws TimeOutOfRange outside.
double evaluate(const PulseProfile& profile, double t);

/// Sorted boundaries of the profile's smooth pieces, including 0 and t1
/// (trapezoid corners, sample knots).  Quadrature and propagation grids
/// align to these.
std::vector<double> breakpoints(const PulseProfile& profile);

/// Closed-form pulse area.  For the sampled family this is the exact
/// integral of the linear interpolant.
double area_analytic(const PulseProfile& profile);

/// Adaptive-Simpson pulse area with absolute tolerance `tol`; integrates
/// piecewise between the profile's non-smooth points (trapezoid corners,
/// sample knots).
double area_numeric(const PulseProfile& profile, double tol = 1e-12);

/// Gate time t1 such that the pulse area equals pi/2.  Closed-form
/// inversion for the analytic families (theta is linear in t1); the
/// sampled family is solved by bisection on area_numeric.
double solve_gate_time(const PulseProfile& profile);

/// Copy of `profile` with t1 replaced by solve_gate_time(profile).
PulseProfile with_solved_t1(PulseProfile profile);

/// Generic bisection fallback: find t1 with area_of_t1(t1) = theta_target.
/// Assumes the area grows monotonically with t1.
double solve_gate_time_bisection(const std::function<double(double)>& area_of_t1,
                                 double theta_target, double tol = 1e-12);

struct GateTimeRow {
  std::string label;         // switching-mechanism label
  std::string profile_name;  // pulse-profile name
  std::string param;         // "epsilon=..." or "n=..." or ""
  PulseProfile profile;      // solved for area pi/2
  double t1_factor;          // t1 in units of pi/(2 g_peak)
};

/// The ten-row gate-time table: trapezoidal eps in {0, 0.025, 0.2, 0.5},
/// inverted-poly n in {1,2,3,4}, sinusoidal, Landau's hat.
std::vector<GateTimeRow> table_gate_times(double g_peak);

nlohmann::json profile_to_json(const PulseProfile& profile);
PulseProfile profile_from_json(const nlohmann::json& j);

/// Parse either a JSON object string or an inline shorthand such as
/// "trapezoidal,epsilon=0.2,g=1,t1=2.5" (family aliases: "triangular" is
/// trapezoidal with epsilon = 1/2).
PulseProfile parse_profile_spec(const std::string& spec);

}  // namespace weylsteer
