#include "weylsteer/pulses.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <sstream>

#include <nlohmann/json.hpp>

namespace weylsteer {

namespace {

constexpr double kHalfPi = std::numbers::pi / 2.0;

void require(bool condition, const char* message) {
  if (!condition) throw std::invalid_argument(message);
}

double lerp_sample(const PulseProfile& p, double t) {
  const auto it = std::upper_bound(p.times.begin(), p.times.end(), t);
  if (it == p.times.begin()) return p.values.front();
  if (it == p.times.end()) return p.values.back();
  const std::size_t hi = static_cast<std::size_t>(it - p.times.begin());
  const std::size_t lo = hi - 1;
  const double w = (t - p.times[lo]) / (p.times[hi] - p.times[lo]);
  return p.values[lo] + w * (p.values[hi] - p.values[lo]);
}

double evaluate_unchecked(const PulseProfile& p, double t) {
  switch (p.family) {
    case PulseFamily::Rectangular:
      return p.g_peak;
    case PulseFamily::Trapezoidal: {
      if (p.epsilon == 0.0) return p.g_peak;
      const double ramp = p.epsilon * p.t1;
      if (t < ramp) return p.g_peak * t / ramp;
      if (t <= p.t1 - ramp) return p.g_peak;
      return p.g_peak * (p.t1 - t) / ramp;
    }
    case PulseFamily::InvertedPoly: {
      const double u = 2.0 * (t / p.t1 - 0.5);  // 2^(2n) (t/t1-1/2)^(2n) = u^(2n)
      return p.g_peak * (1.0 - std::pow(std::abs(u), 2.0 * p.n));
    }
    case PulseFamily::Sinusoidal:
      return 0.5 * p.g_peak * (1.0 - std::cos(2.0 * std::numbers::pi * t / p.t1));
    case PulseFamily::LandauHat: {
      const double x = 2.0 * t / p.t1 - 1.0;
      const double y = 1.0 - x * x;
      return p.g_peak * y * y;  // 1 + x^4 - 2 x^2
    }
    case PulseFamily::Sampled:
      return lerp_sample(p, t);
  }
  throw std::logic_error("unknown pulse family");
}

// Adaptive Simpson on one smooth piece.
struct SimpsonIntegrator {
  const PulseProfile& profile;
  int max_depth = 60;

  double piece(double a, double b, double tol) const {
    const double fa = evaluate_unchecked(profile, a);
    const double m = 0.5 * (a + b);
    const double fm = evaluate_unchecked(profile, m);
    const double fb = evaluate_unchecked(profile, b);
    const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    return refine(a, b, fa, fm, fb, whole, tol, max_depth);
  }

  double refine(double a, double b, double fa, double fm, double fb,
                double whole, double tol, int depth) const {
    const double m = 0.5 * (a + b);
    const double lm = 0.5 * (a + m);
    const double rm = 0.5 * (m + b);
    const double flm = evaluate_unchecked(profile, lm);
    const double frm = evaluate_unchecked(profile, rm);
    const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    const double delta = left + right - whole;
    if (std::abs(delta) <= 15.0 * tol) {
      return left + right + delta / 15.0;
    }
    if (depth <= 0) {
      throw QuadratureNonConvergence("area_numeric: refinement limit reached");
    }
    return refine(a, m, fa, flm, fm, left, 0.5 * tol, depth - 1) +
           refine(m, b, fm, frm, fb, right, 0.5 * tol, depth - 1);
  }
};

PulseProfile base_profile(PulseFamily family, double g_peak, double t1) {
  require(std::isfinite(g_peak) && g_peak > 0.0, "pulse: g_peak must be > 0");
  require(std::isfinite(t1) && t1 > 0.0, "pulse: t1 must be > 0");
  PulseProfile p;
  p.family = family;
  p.g_peak = g_peak;
  p.t1 = t1;
  return p;
}

}  // namespace

PulseProfile PulseProfile::rectangular(double g_peak, double t1) {
  return base_profile(PulseFamily::Rectangular, g_peak, t1);
}

PulseProfile PulseProfile::trapezoidal(double epsilon, double g_peak, double t1) {
  require(epsilon >= 0.0 && epsilon <= 0.5, "trapezoidal: epsilon must be in [0, 1/2]");
  PulseProfile p = base_profile(PulseFamily::Trapezoidal, g_peak, t1);
  p.epsilon = epsilon;
  return p;
}

PulseProfile PulseProfile::inverted_poly(int n, double g_peak, double t1) {
  require(n >= 1, "inverted_poly: n must be a positive integer");
  PulseProfile p = base_profile(PulseFamily::InvertedPoly, g_peak, t1);
  p.n = n;
  return p;
}

PulseProfile PulseProfile::sinusoidal(double g_peak, double t1) {
  return base_profile(PulseFamily::Sinusoidal, g_peak, t1);
}

PulseProfile PulseProfile::landau_hat(double g_peak, double t1) {
  return base_profile(PulseFamily::LandauHat, g_peak, t1);
}

PulseProfile PulseProfile::sampled(std::vector<double> times,
                                   std::vector<double> values) {
  require(times.size() == values.size(), "sampled: times/values size mismatch");
  require(times.size() >= 2, "sampled: need at least two samples");
  require(times.front() == 0.0, "sampled: trace must start at t = 0");
  require(std::is_sorted(times.begin(), times.end()) &&
              std::adjacent_find(times.begin(), times.end()) == times.end(),
          "sampled: times must be strictly increasing");
  require(std::all_of(values.begin(), values.end(),
                      [](double v) { return std::isfinite(v) && v >= 0.0; }),
          "sampled: values must be finite and non-negative");
  PulseProfile p;
  p.family = PulseFamily::Sampled;
  p.times = std::move(times);
  p.values = std::move(values);
  p.t1 = p.times.back();
  p.g_peak = *std::max_element(p.values.begin(), p.values.end());
  require(p.g_peak > 0.0, "sampled: trace is identically zero");
  return p;
}

double evaluate(const PulseProfile& profile, double t) {
  if (!(t >= 0.0 && t <= profile.t1)) {
    throw TimeOutOfRange("evaluate: t outside [0, t1]");
  }
  return evaluate_unchecked(profile, t);
}

std::vector<double> breakpoints(const PulseProfile& profile) {
  switch (profile.family) {
    case PulseFamily::Trapezoidal:
      if (profile.epsilon > 0.0 && profile.epsilon < 0.5) {
        return {0.0, profile.epsilon * profile.t1,
                (1.0 - profile.epsilon) * profile.t1, profile.t1};
      }
      if (profile.epsilon == 0.5) {
        return {0.0, 0.5 * profile.t1, profile.t1};
      }
      return {0.0, profile.t1};
    case PulseFamily::Sampled:
      return profile.times;
    default:
      return {0.0, profile.t1};
  }
}

double area_analytic(const PulseProfile& profile) {
  const double gt = profile.g_peak * profile.t1;
  switch (profile.family) {
    case PulseFamily::Rectangular:
      return gt;
    case PulseFamily::Trapezoidal:
      return gt * (1.0 - profile.epsilon);
    case PulseFamily::InvertedPoly:
      return gt * (1.0 - 1.0 / (2.0 * profile.n + 1.0));
    case PulseFamily::Sinusoidal:
      return 0.5 * gt;
    case PulseFamily::LandauHat:
      return 8.0 * gt / 15.0;
    case PulseFamily::Sampled: {
      double area = 0.0;  // exact integral of the linear interpolant
      for (std::size_t i = 0; i + 1 < profile.times.size(); ++i) {
        area += 0.5 * (profile.values[i] + profile.values[i + 1]) *
                (profile.times[i + 1] - profile.times[i]);
      }
      return area;
    }
  }
  throw std::logic_error("unknown pulse family");
}

double area_numeric(const PulseProfile& profile, double tol) {
  require(tol > 0.0, "area_numeric: tol must be > 0");
  const std::vector<double> pieces = breakpoints(profile);
  const SimpsonIntegrator integrator{profile};
  double area = 0.0;
  for (std::size_t i = 0; i + 1 < pieces.size(); ++i) {
    const double frac = (pieces[i + 1] - pieces[i]) / profile.t1;
    area += integrator.piece(pieces[i], pieces[i + 1], tol * frac);
  }
  return area;
}

double solve_gate_time(const PulseProfile& profile) {
  const double g = profile.g_peak;
  switch (profile.family) {
    case PulseFamily::Rectangular:
      return kHalfPi / g;
    case PulseFamily::Trapezoidal:
      return kHalfPi / (g * (1.0 - profile.epsilon));
    case PulseFamily::InvertedPoly:
      return kHalfPi * (2.0 * profile.n + 1.0) / (2.0 * profile.n * g);
    case PulseFamily::Sinusoidal:
      return 2.0 * kHalfPi / g;
    case PulseFamily::LandauHat:
      return kHalfPi * 15.0 / (8.0 * g);
    case PulseFamily::Sampled: {
      // time-axis dilation of the measured trace
      PulseProfile scaled = profile;
      const auto area_at = [&](double t1) {
        const double factor = t1 / profile.t1;
        for (std::size_t i = 0; i < profile.times.size(); ++i) {
          scaled.times[i] = profile.times[i] * factor;
        }
        scaled.t1 = scaled.times.back();
        return area_numeric(scaled);
      };
      return solve_gate_time_bisection(area_at, kHalfPi);
    }
  }
  throw std::logic_error("unknown pulse family");
}

PulseProfile with_solved_t1(PulseProfile profile) {
  const double t1 = solve_gate_time(profile);
  if (profile.family == PulseFamily::Sampled) {
    const double factor = t1 / profile.t1;
    for (double& t : profile.times) t *= factor;
  }
  profile.t1 = t1;
  return profile;
}

double solve_gate_time_bisection(const std::function<double(double)>& area_of_t1,
                                 double theta_target, double tol) {
  require(theta_target > 0.0, "solve_gate_time_bisection: target must be > 0");
  double lo = 0.0;
  double hi = 1.0;
  for (int i = 0; i < 200 && area_of_t1(hi) < theta_target; ++i) {
    lo = hi;
    hi *= 2.0;
  }
  for (int i = 0; i < 200; ++i) {
    const double mid = 0.5 * (lo + hi);
    const double theta = area_of_t1(mid);
    if (std::abs(theta - theta_target) <= tol) return mid;
    (theta < theta_target ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

std::vector<GateTimeRow> table_gate_times(double g_peak) {
  require(g_peak > 0.0, "table_gate_times: g_peak must be > 0");
  const double unit = kHalfPi / g_peak;  // pi hbar / (2 g)
  std::vector<GateTimeRow> rows;

  const auto add = [&](std::string label, std::string name, std::string param,
                       PulseProfile prototype) {
    PulseProfile solved = with_solved_t1(std::move(prototype));
    const double factor = solved.t1 / unit;
    rows.push_back({std::move(label), std::move(name), std::move(param),
                    std::move(solved), factor});
  };

  const struct {
    double epsilon;
    const char* label;
    const char* name;
  } trapezoids[] = {{0.0, "none", "rectangular"},
                    {0.025, "fast", "trapezoidal"},
                    {0.2, "moderate", "trapezoidal"},
                    {0.5, "slow", "triangular"}};
  for (const auto& row : trapezoids) {
    char param[32];
    std::snprintf(param, sizeof param, "epsilon=%.4f", row.epsilon);
    add(row.label, row.name, param,
        row.epsilon == 0.0 ? PulseProfile::rectangular(g_peak, 1.0)
                           : PulseProfile::trapezoidal(row.epsilon, g_peak, 1.0));
  }

  const char* poly_names[] = {"inverted quadratic", "inverted quartic",
                              "inverted hexagonic", "inverted octagonic"};
  for (int n = 1; n <= 4; ++n) {
    add(poly_names[n - 1], poly_names[n - 1], "n=" + std::to_string(n),
        PulseProfile::inverted_poly(n, g_peak, 1.0));
  }

  add("sinusoidal", "inverted cosine", "", PulseProfile::sinusoidal(g_peak, 1.0));
  add("soft quartic", "Landau's hat", "", PulseProfile::landau_hat(g_peak, 1.0));
  return rows;
}

namespace {

const char* family_name(PulseFamily family) {
  switch (family) {
    case PulseFamily::Rectangular: return "rectangular";
    case PulseFamily::Trapezoidal: return "trapezoidal";
    case PulseFamily::InvertedPoly: return "inverted_poly";
    case PulseFamily::Sinusoidal: return "sinusoidal";
    case PulseFamily::LandauHat: return "landau_hat";
    case PulseFamily::Sampled: return "sampled";
  }
  throw std::logic_error("unknown pulse family");
}

}  // namespace

nlohmann::json profile_to_json(const PulseProfile& profile) {
  nlohmann::json j{{"family", family_name(profile.family)}};
  if (profile.family == PulseFamily::Sampled) {
    j["times"] = profile.times;
    j["values"] = profile.values;
    return j;
  }
  j["g_peak"] = profile.g_peak;
  j["t1"] = profile.t1;
  if (profile.family == PulseFamily::Trapezoidal) j["epsilon"] = profile.epsilon;
  if (profile.family == PulseFamily::InvertedPoly) j["n"] = profile.n;
  return j;
}

PulseProfile profile_from_json(const nlohmann::json& j) {
  const std::string family = j.at("family").get<std::string>();
  if (family == "sampled") {
    return PulseProfile::sampled(j.at("times").get<std::vector<double>>(),
                                 j.at("values").get<std::vector<double>>());
  }
  const double g = j.value("g_peak", 1.0);
  const double t1 = j.value("t1", 1.0);
  if (family == "rectangular") return PulseProfile::rectangular(g, t1);
  if (family == "trapezoidal")
    return PulseProfile::trapezoidal(j.value("epsilon", 0.0), g, t1);
  if (family == "triangular") return PulseProfile::trapezoidal(0.5, g, t1);
  if (family == "inverted_poly")
    return PulseProfile::inverted_poly(j.value("n", 1), g, t1);
  if (family == "sinusoidal") return PulseProfile::sinusoidal(g, t1);
  if (family == "landau_hat") return PulseProfile::landau_hat(g, t1);
  throw std::invalid_argument("unknown pulse family: " + family);
}

namespace {

std::string trimmed(const std::string& s) {
  const auto a = s.find_first_not_of(" \t\n");
  if (a == std::string::npos) return {};
  const auto b = s.find_last_not_of(" \t\n");
  return s.substr(a, b - a + 1);
}

}  // namespace

PulseProfile parse_profile_spec(const std::string& spec) {
  const auto first = spec.find_first_not_of(" \t\n");
  if (first != std::string::npos && spec[first] == '{') {
    return profile_from_json(nlohmann::json::parse(spec));
  }

  std::string family;
  nlohmann::json j;
  std::stringstream ss(spec);
  std::string raw;
  while (std::getline(ss, raw, ',')) {
    const std::string token = trimmed(raw);
    if (token.empty()) continue;
    const auto eq = token.find('=');
    if (eq == std::string::npos) {
      if (!family.empty())
        throw std::invalid_argument("profile spec: repeated family name");
      family = token;
      continue;
    }
    const std::string key = trimmed(token.substr(0, eq));
    const std::string value = trimmed(token.substr(eq + 1));
    if (key == "epsilon" || key == "eps") {
      j["epsilon"] = std::stod(value);
    } else if (key == "n") {
      j["n"] = std::stoi(value);
    } else if (key == "g" || key == "g_peak") {
      j["g_peak"] = std::stod(value);
    } else if (key == "t1") {
      j["t1"] = std::stod(value);
    } else {
      throw std::invalid_argument("profile spec: unknown key '" + key + "'");
    }
  }
  if (family.empty())
    throw std::invalid_argument("profile spec: missing family name");
  j["family"] = family;
  return profile_from_json(j);
}

}  // namespace weylsteer
