#include "weylsteer/equivalence.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <optional>

#include <nlohmann/json.hpp>

namespace weylsteer {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kHalfPi = kPi / 2.0;
constexpr double kQuarterPi = kPi / 4.0;

void require_unitary(const Matrix4c& m, const char* who) {
  if (!is_unitary(m, 1e-10)) {
    throw NonUnitaryInput(std::string(who) + ": input is not unitary");
  }
}

// Magic (Bell) basis columns: (|00>+|11>)/sqrt2, -i(|00>-|11>)/sqrt2,
// (|01>-|10>)/sqrt2, -i(|01>+|10>)/sqrt2.  Local unitaries become real
// orthogonal matrices in this basis.
const Matrix4c& magic_basis() {
  static const Matrix4c q = [] {
    const double s = 1.0 / std::sqrt(2.0);
    const Complex i(0.0, 1.0);
    Matrix4c q;
    q << s, -i * s, 0, 0,
         0, 0, s, -i * s,
         0, 0, -s, -i * s,
         s, i * s, 0, 0;
    return q;
  }();
  return q;
}

Matrix4c magic_gram(const Matrix4c& u) {
  const Matrix4c& q = magic_basis();
  const Matrix4c ub = q.adjoint() * u * q;
  return ub.transpose() * ub;
}

// Invariants of the canonical gate exp(-i (c1 XX + c2 YY + c3 ZZ)), used to
// pick the right chamber representative among spectrum-compatible candidates.
MakhlinInvariants invariants_of_coords(const std::array<double, 3>& c) {
  const double phases[4] = {c[0] - c[1] + c[2], -c[0] + c[1] + c[2],
                            -c[0] - c[1] - c[2], c[0] + c[1] - c[2]};
  Complex trm = 0.0, trm2 = 0.0;
  for (double phi : phases) {
    trm += std::exp(Complex(0.0, -2.0 * phi));
    trm2 += std::exp(Complex(0.0, -4.0 * phi));
  }
  const Complex g1 = trm * trm / 16.0;
  const Complex g2 = (trm * trm - trm2) / 4.0;
  return {g1, g2.real()};
}

}  // namespace

Matrix4c cnot() {
  Matrix4c m;
  m << 1, 0, 0, 0,
       0, 1, 0, 0,
       0, 0, 0, 1,
       0, 0, 1, 0;
  return m;
}

Matrix4c cnot_weyl() {
  return expm_hermitian(kron(pauli(PauliAxis::X), pauli(PauliAxis::X)),
                        kQuarterPi);
}

double phase_invariant_fidelity(const Matrix4c& u, const Matrix4c& v) {
  require_unitary(u, "phase_invariant_fidelity");
  require_unitary(v, "phase_invariant_fidelity");
  return std::abs((v.adjoint() * u).trace()) / 4.0;
}

MakhlinInvariants makhlin_invariants(const Matrix4c& u) {
  require_unitary(u, "makhlin_invariants");
  const Matrix4c m = magic_gram(u);
  const Complex det = u.determinant();
  const Complex tr = m.trace();
  const Complex g1 = tr * tr / (16.0 * det);
  const Complex g2 = (tr * tr - (m * m).trace()) / (4.0 * det);
  return {g1, g2.real()};
}

std::array<double, 3> weyl_coordinates(const Matrix4c& u) {
  require_unitary(u, "weyl_coordinates");
  constexpr double fold_tol = 1e-9;

  const MakhlinInvariants target = makhlin_invariants(u);

  // project to SU(4), principal quartic root of the determinant
  const Complex det = u.determinant();
  const Matrix4c v = u * std::pow(det, -0.25);
  const Matrix4c m = magic_gram(v);

  Eigen::ComplexEigenSolver<Matrix4c> solver(m);
  const auto& evals = solver.eigenvalues();
  double phase[4];
  for (int i = 0; i < 4; ++i) phase[i] = -std::arg(evals(i)) / 2.0;

  // The eigenphases of m come in the four pair sums +-(c1 +- c2 +- c3), each
  // known only mod pi and in arbitrary order, so pair sums determine each
  // coordinate mod pi/2 up to sign.  Enumerate every sign/permutation image
  // folded into [0, pi/2), keep those inside the canonical chamber, and pick
  // the one whose class invariants reproduce the gate's.
  const std::array<double, 3> pair_sums = {
      0.5 * (phase[0] + phase[1]),
      0.5 * (phase[0] + phase[2]),
      0.5 * (phase[0] + phase[3]),
  };

  std::optional<std::array<double, 3>> best;
  double best_score = 0.0;
  const auto consider = [&](std::array<double, 3> c) {
    for (double& x : c) {
      x = std::fmod(x, kHalfPi);
      if (x < 0.0) x += kHalfPi;
      if (kHalfPi - x < fold_tol) x = 0.0;  // wrap-around round-off
      if (x < fold_tol) x = 0.0;
    }
    std::sort(c.begin(), c.end(), std::greater<>());
    if (c[0] + c[1] > kHalfPi + fold_tol) return;
    if (c[2] <= fold_tol && c[0] > kQuarterPi + fold_tol) return;
    const MakhlinInvariants inv = invariants_of_coords(c);
    const double score =
        std::abs(inv.g1 - target.g1) + std::abs(inv.g2 - target.g2);
    if (score > 1e-6) return;  // spectrum-compatible but wrong (conjugate) class
    if (!best || score < best_score - fold_tol ||
        (score < best_score + fold_tol && c < *best)) {
      best = c;
      best_score = score;
    }
  };

  static constexpr int signs[8][3] = {{1, 1, 1},   {1, 1, -1},  {1, -1, 1},
                                      {-1, 1, 1},  {1, -1, -1}, {-1, 1, -1},
                                      {-1, -1, 1}, {-1, -1, -1}};
  for (const auto& sign : signs) {
    consider({sign[0] * pair_sums[0], sign[1] * pair_sums[1],
              sign[2] * pair_sums[2]});
  }
  if (!best) {
    throw std::runtime_error(
        "weyl_coordinates: no chamber representative matches the invariants");
  }
  return *best;
}

std::string to_string(Verdict verdict) {
  switch (verdict) {
    case Verdict::ExactUpToPhase: return "exact-up-to-phase";
    case Verdict::LocallyEquivalent: return "locally-equivalent";
    case Verdict::Inequivalent: return "inequivalent";
  }
  throw std::logic_error("unknown verdict");
}

EquivalenceReport classify(const Matrix4c& u, const Matrix4c& target,
                           const ClassifyOptions& options) {
  EquivalenceReport report;
  report.fidelity = phase_invariant_fidelity(u, target);
  const MakhlinInvariants inv = makhlin_invariants(u);
  report.makhlin_g1 = inv.g1;
  report.makhlin_g2 = inv.g2;
  report.weyl_coords = weyl_coordinates(u);

  const MakhlinInvariants ref = makhlin_invariants(target);
  if (report.fidelity > 1.0 - options.fidelity_tol) {
    report.verdict = Verdict::ExactUpToPhase;
  } else if (std::abs(inv.g1 - ref.g1) < options.invariant_tol &&
             std::abs(inv.g2 - ref.g2) < options.invariant_tol) {
    report.verdict = Verdict::LocallyEquivalent;
  } else {
    report.verdict = Verdict::Inequivalent;
  }
  return report;
}

nlohmann::json report_to_json(const EquivalenceReport& report) {
  return nlohmann::json{
      {"fidelity", report.fidelity},
      {"makhlin_g1", {report.makhlin_g1.real(), report.makhlin_g1.imag()}},
      {"makhlin_g2", report.makhlin_g2},
      {"weyl_coordinates",
       {report.weyl_coords[0], report.weyl_coords[1], report.weyl_coords[2]}},
      {"verdict", to_string(report.verdict)},
  };
}

}  // namespace weylsteer
