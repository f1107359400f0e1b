#pragma once

#include <stdexcept>
#include <variant>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "weylsteer/algebra.hpp"
#include "weylsteer/pulses.hpp"

// Weyl-chamber steering: the rotating-frame Hamiltonian for two resonantly
// driven qubits with tunable coupling, the tracking coefficients Lambda(k),
// the fixed steering generator, and the four-step CNOT schedule.
//
// Units: hbar = 1.  Couplings g and drives Omega are angular frequencies,
// times are in the reciprocal unit.

namespace weylsteer {

struct KOutOfRange : std::domain_error {
  using std::domain_error::domain_error;
};

struct AreaMismatch : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// Coupling anisotropy k and the drive-tracking coefficients
//   Lambda_{1,2}(k) = sqrt(16 - ((k-1)/2)^2) +- sqrt(16 - ((k+1)/2)^2),
// real for |k| <= 7.  lambda1 >= lambda2 always; lambda2 goes negative for
// k in (-7, -1), which is just a phase-inverted Rabi drive.
struct CouplingParams {
  double k = 0.0;
  double lambda1 = 0.0;
  double lambda2 = 0.0;
};

/// Validated constructor for CouplingParams; throws KOutOfRange for |k| > 7.
CouplingParams lambda_coeffs(double k);

/// H = (omega1/2) X1 + (omega2/2) X2 + (g/2)(XX + YY + k ZZ), Hermitian.
Matrix4c hamiltonian(double omega1, double omega2, double g, double k);

// The fixed matrix multiplying g(t) once the drives track the coupling:
//   (lambda1 X1 + lambda2 X2 + XX + YY + k ZZ) / 2
struct SteeringGenerator {
  Matrix4c matrix;
  CouplingParams params;
};

SteeringGenerator steering_generator(const CouplingParams& params);

/// exp(-i theta H_steer).  theta = pi/2 lands on CNOT_Weyl for every
/// |k| <= 7; that is the steering identity this library is built around.
Matrix4c steered_evolution(const CouplingParams& params, double theta);

// --- gate schedule -----------------------------------------------------

enum class RotationTarget { Qubit1, Qubit2, Both };
enum class TrackingMode { On, Off, Perturbed };

// Single-qubit rotation with the coupling off, convention
// R_a(phi) = exp(-i (phi/2) sigma_a).  Target Both means R_a(phi) on
// qubit 1 together with R_a(-phi) on qubit 2, applied as the single
// factor exp(-i (phi/2) (sigma_a1 - sigma_a2)).
struct LocalRotation {
  RotationTarget qubit = RotationTarget::Qubit1;
  PauliAxis axis = PauliAxis::X;
  double angle = 0.0;
};

// Coupled-evolution interval: g follows `profile`, the drives follow
// Omega_i = lambda_i (1 + delta_i) g(t).  Exact tracking is delta = 0.
struct CoupledEvolution {
  PulseProfile profile;
  CouplingParams params;
  TrackingMode tracking = TrackingMode::On;
  double delta1 = 0.0;
  double delta2 = 0.0;
};

using Segment = std::variant<LocalRotation, CoupledEvolution>;

struct GateSchedule {
  double k = 0.0;
  std::vector<Segment> segments;
};

enum class AreaCheck { Enforce, Skip };

/// Four-step CNOT schedule: Ry(-pi/2) on qubit 1, tracked coupled
/// evolution with the given profile, simultaneous Rx(-pi/2)_1 Rx(+pi/2)_2,
/// Ry(+pi/2) on qubit 1.  Throws AreaMismatch when the profile area is not
/// pi/2 within tol::area (unless check == Skip, for deliberate
/// wrong-area experiments).
GateSchedule cnot_schedule(const CouplingParams& params,
                           const PulseProfile& profile,
                           AreaCheck check = AreaCheck::Enforce);

/// Exact unitary of one local-rotation segment.
Matrix4c local_rotation_unitary(const LocalRotation& rotation);

/// Analytic composition of a schedule: local rotations exactly, coupled
/// segments through steered_evolution at theta = area_analytic(profile).
/// Valid for exact tracking only (Off/Perturbed segments are rejected).
Matrix4c compose_analytic(const GateSchedule& schedule);

nlohmann::json schedule_to_json(const GateSchedule& schedule);
GateSchedule schedule_from_json(const nlohmann::json& j);

}  // namespace weylsteer
