#include "weylsteer/steering.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include <nlohmann/json.hpp>

namespace weylsteer {

namespace {

constexpr double kHalfPi = std::numbers::pi / 2.0;

const Matrix4c& coupling_xx() {
  static const Matrix4c m = kron(pauli(PauliAxis::X), pauli(PauliAxis::X));
  return m;
}
const Matrix4c& coupling_yy() {
  static const Matrix4c m = kron(pauli(PauliAxis::Y), pauli(PauliAxis::Y));
  return m;
}
const Matrix4c& coupling_zz() {
  static const Matrix4c m = kron(pauli(PauliAxis::Z), pauli(PauliAxis::Z));
  return m;
}
const Matrix4c& drive_x1() {
  static const Matrix4c m = kron(pauli(PauliAxis::X), Matrix2c::Identity());
  return m;
}
const Matrix4c& drive_x2() {
  static const Matrix4c m = kron(Matrix2c::Identity(), pauli(PauliAxis::X));
  return m;
}

}  // namespace

CouplingParams lambda_coeffs(double k) {
  if (!(std::abs(k) <= 7.0)) {
    throw KOutOfRange("lambda_coeffs: |k| <= 7 required, got k = " +
                      std::to_string(k));
  }
  const double s_minus = std::sqrt(16.0 - 0.25 * (k - 1.0) * (k - 1.0));
  const double s_plus = std::sqrt(16.0 - 0.25 * (k + 1.0) * (k + 1.0));
  return {k, s_minus + s_plus, s_minus - s_plus};
}

Matrix4c hamiltonian(double omega1, double omega2, double g, double k) {
  return 0.5 * (omega1 * drive_x1() + omega2 * drive_x2() +
                g * (coupling_xx() + coupling_yy() + k * coupling_zz()));
}

SteeringGenerator steering_generator(const CouplingParams& params) {
  return {hamiltonian(params.lambda1, params.lambda2, 1.0, params.k), params};
}

Matrix4c steered_evolution(const CouplingParams& params, double theta) {
  return expm_hermitian(steering_generator(params).matrix, theta);
}

GateSchedule cnot_schedule(const CouplingParams& params,
                           const PulseProfile& profile, AreaCheck check) {
  if (check == AreaCheck::Enforce) {
    const double theta = area_analytic(profile);
    if (std::abs(theta - kHalfPi) > tol::area) {
      throw AreaMismatch("cnot_schedule: pulse area " + std::to_string(theta) +
                         " is not pi/2");
    }
  }
  GateSchedule schedule;
  schedule.k = params.k;
  schedule.segments = {
      LocalRotation{RotationTarget::Qubit1, PauliAxis::Y, -kHalfPi},
      CoupledEvolution{profile, params, TrackingMode::On, 0.0, 0.0},
      LocalRotation{RotationTarget::Both, PauliAxis::X, -kHalfPi},
      LocalRotation{RotationTarget::Qubit1, PauliAxis::Y, kHalfPi},
  };
  return schedule;
}

Matrix4c local_rotation_unitary(const LocalRotation& rotation) {
  const Matrix2c sigma = pauli(rotation.axis);
  const Matrix2c id = Matrix2c::Identity();
  Matrix4c generator;
  switch (rotation.qubit) {
    case RotationTarget::Qubit1:
      generator = kron(sigma, id);
      break;
    case RotationTarget::Qubit2:
      generator = kron(id, sigma);
      break;
    case RotationTarget::Both:
      // opposite-sign pair on the two qubits, one commuting factor
      generator = kron(sigma, id) - kron(id, sigma);
      break;
  }
  return expm_hermitian(generator, 0.5 * rotation.angle);
}

Matrix4c compose_analytic(const GateSchedule& schedule) {
  Matrix4c u = Matrix4c::Identity();
  for (const Segment& segment : schedule.segments) {
    if (const auto* rotation = std::get_if<LocalRotation>(&segment)) {
      u = local_rotation_unitary(*rotation) * u;
      continue;
    }
    const auto& coupled = std::get<CoupledEvolution>(segment);
    if (coupled.tracking != TrackingMode::On) {
      throw std::invalid_argument(
          "compose_analytic: only exact tracking has a closed-form evolution");
    }
    const double theta = area_analytic(coupled.profile);
    u = steered_evolution(coupled.params, theta) * u;
  }
  return u;
}

namespace {

char axis_name(PauliAxis axis) {
  switch (axis) {
    case PauliAxis::X: return 'x';
    case PauliAxis::Y: return 'y';
    case PauliAxis::Z: return 'z';
  }
  throw std::logic_error("unknown axis");
}

PauliAxis axis_from_name(const std::string& name) {
  if (name == "x") return PauliAxis::X;
  if (name == "y") return PauliAxis::Y;
  if (name == "z") return PauliAxis::Z;
  throw std::invalid_argument("unknown rotation axis: " + name);
}

}  // namespace

nlohmann::json schedule_to_json(const GateSchedule& schedule) {
  nlohmann::json segments = nlohmann::json::array();
  for (const Segment& segment : schedule.segments) {
    if (const auto* rotation = std::get_if<LocalRotation>(&segment)) {
      nlohmann::json j{{"type", "local"},
                       {"axis", std::string(1, axis_name(rotation->axis))},
                       {"angle", rotation->angle}};
      switch (rotation->qubit) {
        case RotationTarget::Qubit1: j["qubit"] = 1; break;
        case RotationTarget::Qubit2: j["qubit"] = 2; break;
        case RotationTarget::Both: j["qubit"] = "both"; break;
      }
      segments.push_back(std::move(j));
      continue;
    }
    const auto& coupled = std::get<CoupledEvolution>(segment);
    nlohmann::json j{{"type", "coupled"},
                     {"profile", profile_to_json(coupled.profile)}};
    switch (coupled.tracking) {
      case TrackingMode::On:
        j["tracking"] = "on";
        break;
      case TrackingMode::Off:
        j["tracking"] = "off";
        break;
      case TrackingMode::Perturbed:
        j["tracking"] = "perturbed";
        j["delta1"] = coupled.delta1;
        j["delta2"] = coupled.delta2;
        break;
    }
    segments.push_back(std::move(j));
  }
  return nlohmann::json{{"k", schedule.k}, {"segments", std::move(segments)}};
}

GateSchedule schedule_from_json(const nlohmann::json& j) {
  GateSchedule schedule;
  schedule.k = j.at("k").get<double>();
  const CouplingParams params = lambda_coeffs(schedule.k);
  for (const nlohmann::json& seg : j.at("segments")) {
    const std::string type = seg.at("type").get<std::string>();
    if (type == "local") {
      LocalRotation rotation;
      rotation.axis = axis_from_name(seg.at("axis").get<std::string>());
      rotation.angle = seg.at("angle").get<double>();
      const nlohmann::json& q = seg.at("qubit");
      if (q.is_string() && q.get<std::string>() == "both") {
        rotation.qubit = RotationTarget::Both;
      } else if (q.is_number_integer() && q.get<int>() == 1) {
        rotation.qubit = RotationTarget::Qubit1;
      } else if (q.is_number_integer() && q.get<int>() == 2) {
        rotation.qubit = RotationTarget::Qubit2;
      } else {
        throw std::invalid_argument("schedule: qubit must be 1, 2, or \"both\"");
      }
      schedule.segments.emplace_back(rotation);
      continue;
    }
    if (type != "coupled") {
      throw std::invalid_argument("schedule: unknown segment type " + type);
    }
    CoupledEvolution coupled;
    coupled.profile = profile_from_json(seg.at("profile"));
    coupled.params = params;
    const std::string tracking = seg.value("tracking", "on");
    if (tracking == "on") {
      coupled.tracking = TrackingMode::On;
    } else if (tracking == "off") {
      coupled.tracking = TrackingMode::Off;
    } else if (tracking == "perturbed") {
      coupled.tracking = TrackingMode::Perturbed;
      coupled.delta1 = seg.value("delta1", 0.0);
      coupled.delta2 = seg.value("delta2", 0.0);
    } else {
      throw std::invalid_argument("schedule: unknown tracking mode " + tracking);
    }
    schedule.segments.emplace_back(std::move(coupled));
  }
  return schedule;
}

}  // namespace weylsteer
