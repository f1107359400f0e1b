#pragma once

#include <array>
#include <stdexcept>
#include <string>

#include <nlohmann/json_fwd.hpp>

#include "weylsteer/algebra.hpp"

// Local-equivalence analysis of two-qubit gates: phase-invariant fidelity,
// Makhlin invariants, and canonical Weyl-chamber coordinates.

namespace weylsteer {

struct NonUnitaryInput : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

/// Canonical CNOT (control = qubit 1).
Matrix4c cnot();

/// Weyl-chamber representative of the CNOT class, exp(-i pi/4 XX).
Matrix4c cnot_weyl();

/// |tr(v^dag u)| / 4; equals 1 iff u = e^{i phi} v.
double phase_invariant_fidelity(const Matrix4c& u, const Matrix4c& v);

struct MakhlinInvariants {
  Complex g1;
  double g2 = 0.0;
};

/// Local invariants in the magic (Bell) basis:
///   m = u_B^T u_B,  G1 = tr^2(m) / (16 det u),
///   G2 = (tr^2(m) - tr(m^2)) / (4 det u).
/// Identity -> (1, 3); CNOT and CNOT_Weyl -> (0, 1).
MakhlinInvariants makhlin_invariants(const Matrix4c& u);

/// Canonical class vector (c1, c2, c3) of the nonlocal part, folded into
/// the chamber c1 >= c2 >= c3 >= 0, c1 + c2 <= pi/2, and c1 <= pi/4 when
/// c3 = 0.  CNOT class -> (pi/4, 0, 0); SWAP class -> (pi/4, pi/4, pi/4).
std::array<double, 3> weyl_coordinates(const Matrix4c& u);

enum class Verdict { ExactUpToPhase, LocallyEquivalent, Inequivalent };

std::string to_string(Verdict verdict);

struct ClassifyOptions {
  double fidelity_tol = 1e-9;   // exact-up-to-phase: fidelity > 1 - tol
  double invariant_tol = 1e-8;  // locally-equivalent: |dG1|, |dG2| < tol
};

struct EquivalenceReport {
  double fidelity = 0.0;
  Complex makhlin_g1;
  double makhlin_g2 = 0.0;
  std::array<double, 3> weyl_coords{};
  Verdict verdict = Verdict::Inequivalent;
};

EquivalenceReport classify(const Matrix4c& u, const Matrix4c& target,
                           const ClassifyOptions& options = {});

nlohmann::json report_to_json(const EquivalenceReport& report);

}  // namespace weylsteer
