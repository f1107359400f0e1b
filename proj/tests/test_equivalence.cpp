#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include <nlohmann/json.hpp>

#include "test_util.hpp"
#include "weylsteer/equivalence.hpp"
#include "weylsteer/steering.hpp"

using namespace weylsteer;
namespace wt = weylsteer::testing;

namespace {
constexpr double kPi = std::numbers::pi;
constexpr double kQuarterPi = kPi / 4.0;
const Complex I(0.0, 1.0);

Matrix4c coupling_exponential(double cx, double cy, double cz) {
  const Matrix4c gen = cx * kron(pauli(PauliAxis::X), pauli(PauliAxis::X)) +
                       cy * kron(pauli(PauliAxis::Y), pauli(PauliAxis::Y)) +
                       cz * kron(pauli(PauliAxis::Z), pauli(PauliAxis::Z));
  return expm_hermitian(gen, 1.0);
}
}  // namespace

TEST_CASE("target gates") {
  const Matrix4c c = cnot();
  CHECK(c(0, 0) == Complex(1));
  CHECK(c(1, 1) == Complex(1));
  CHECK(c(2, 3) == Complex(1));
  CHECK(c(3, 2) == Complex(1));
  CHECK(c.cwiseAbs().sum() == doctest::Approx(4.0));

  const Matrix4c w = cnot_weyl();
  const double s = 1.0 / std::sqrt(2.0);
  CHECK(w(0, 0) == doctest::Approx(s).epsilon(1e-15));
  CHECK(std::abs(w(0, 3) - (-I * s)) < 1e-15);
  CHECK(std::abs(w(1, 2) - (-I * s)) < 1e-15);
  CHECK(unitarity_error(w) < 1e-15);
}

TEST_CASE("phase_invariant_fidelity") {
  const Matrix4c c = cnot();
  CHECK(phase_invariant_fidelity(c, c) == doctest::Approx(1.0));
  const Matrix4c phased = std::exp(I * kQuarterPi) * c;
  CHECK(phase_invariant_fidelity(phased, c) == doctest::Approx(1.0));
  CHECK(phase_invariant_fidelity(Matrix4c::Identity(), c) ==
        doctest::Approx(0.5));
  CHECK_THROWS_AS(phase_invariant_fidelity((2.0 * c).eval(), c),
                  NonUnitaryInput);
}

TEST_CASE("phase invariance over random phases and unitaries") {
  std::mt19937_64 rng(53);
  std::uniform_real_distribution<double> phase(0.0, 2.0 * kPi);
  for (int trial = 0; trial < 50; ++trial) {
    const Matrix4c u = wt::random_unitary(rng);
    const Matrix4c v = std::exp(I * phase(rng)) * u;
    CHECK(std::abs(phase_invariant_fidelity(v, u) - 1.0) < 1e-12);
  }
}

TEST_CASE("makhlin invariants: fixed classes") {
  const auto id = makhlin_invariants(Matrix4c::Identity());
  CHECK(std::abs(id.g1 - Complex(1.0)) < 1e-14);
  CHECK(id.g2 == doctest::Approx(3.0).epsilon(1e-14));

  const auto c = makhlin_invariants(cnot());
  CHECK(std::abs(c.g1) < 1e-14);
  CHECK(c.g2 == doctest::Approx(1.0).epsilon(1e-14));

  const auto w = makhlin_invariants(cnot_weyl());
  CHECK(std::abs(w.g1 - c.g1) < 1e-14);
  CHECK(w.g2 == doctest::Approx(c.g2).epsilon(1e-14));

  // iSWAP and SWAP classes, computed from the canonical exponentials
  const auto iswap = makhlin_invariants(
      coupling_exponential(kQuarterPi, kQuarterPi, 0.0));
  CHECK(std::abs(iswap.g1) < 1e-13);
  CHECK(iswap.g2 == doctest::Approx(-1.0).epsilon(1e-13));
  const auto swap = makhlin_invariants(
      coupling_exponential(kQuarterPi, kQuarterPi, kQuarterPi));
  CHECK(std::abs(swap.g1 - Complex(-1.0)) < 1e-13);
  CHECK(swap.g2 == doctest::Approx(-3.0).epsilon(1e-13));
}

TEST_CASE("makhlin invariants: local invariance") {
  std::mt19937_64 rng(59);
  const Matrix4c base = cnot();
  const auto ref = makhlin_invariants(base);
  double worst = 0.0;
  for (int trial = 0; trial < 100; ++trial) {
    const Matrix4c dressed =
        wt::random_local(rng) * base * wt::random_local(rng);
    const auto inv = makhlin_invariants(dressed);
    worst = std::max({worst, std::abs(inv.g1 - ref.g1),
                      std::abs(inv.g2 - ref.g2)});
  }
  CHECK(worst < 1e-10);
}

TEST_CASE("weyl coordinates: fixed gates") {
  const auto zero = weyl_coordinates(Matrix4c::Identity());
  CHECK(zero[0] == doctest::Approx(0.0));
  CHECK(zero[1] == doctest::Approx(0.0));
  CHECK(zero[2] == doctest::Approx(0.0));

  const auto w = weyl_coordinates(cnot_weyl());
  CHECK(w[0] == doctest::Approx(kQuarterPi).epsilon(1e-12));
  CHECK(w[1] == doctest::Approx(0.0));
  CHECK(w[2] == doctest::Approx(0.0));

  const auto c = weyl_coordinates(cnot());
  CHECK(c[0] == doctest::Approx(kQuarterPi).epsilon(1e-12));

  const auto iswap =
      weyl_coordinates(coupling_exponential(kQuarterPi, kQuarterPi, 0.0));
  CHECK(iswap[0] == doctest::Approx(kQuarterPi).epsilon(1e-12));
  CHECK(iswap[1] == doctest::Approx(kQuarterPi).epsilon(1e-12));
  CHECK(iswap[2] == doctest::Approx(0.0));

  const auto swap = weyl_coordinates(
      coupling_exponential(kQuarterPi, kQuarterPi, kQuarterPi));
  for (double x : swap) CHECK(x == doctest::Approx(kQuarterPi).epsilon(1e-12));
}

TEST_CASE("weyl coordinates: chamber round trip under local dressing") {
  std::mt19937_64 rng(61);
  std::uniform_real_distribution<double> u(0.0, kPi / 2.0);
  std::uniform_real_distribution<double> phase(0.0, 2.0 * kPi);
  int accepted = 0;
  while (accepted < 40) {
    double c[3] = {u(rng), u(rng), u(rng)};
    std::sort(c, c + 3, std::greater<>());
    // stay inside the open chamber so the representative is unique
    if (c[0] + c[1] > kPi / 2.0 - 1e-3 || c[2] < 1e-3 ||
        c[0] - c[1] < 1e-3 || c[1] - c[2] < 1e-3) {
      continue;
    }
    ++accepted;
    const Matrix4c gate = std::exp(I * phase(rng)) * wt::random_local(rng) *
                          coupling_exponential(c[0], c[1], c[2]) *
                          wt::random_local(rng);
    const auto got = weyl_coordinates(gate);
    CHECK(std::abs(got[0] - c[0]) < 1e-8);
    CHECK(std::abs(got[1] - c[1]) < 1e-8);
    CHECK(std::abs(got[2] - c[2]) < 1e-8);
  }
}

TEST_CASE("weyl coordinates separate conjugate classes") {
  const Matrix4c gate = coupling_exponential(kPi / 5.0, kPi / 8.0, kPi / 16.0);
  const auto a = weyl_coordinates(gate);
  CHECK(a[0] == doctest::Approx(kPi / 5.0).epsilon(1e-10));
  CHECK(a[1] == doctest::Approx(kPi / 8.0).epsilon(1e-10));
  CHECK(a[2] == doctest::Approx(kPi / 16.0).epsilon(1e-10));

  const auto b = weyl_coordinates(gate.conjugate());
  CHECK(b[0] == doctest::Approx(3.0 * kPi / 10.0).epsilon(1e-10));
  CHECK(b[1] == doctest::Approx(kPi / 8.0).epsilon(1e-10));
  CHECK(b[2] == doctest::Approx(kPi / 16.0).epsilon(1e-10));
}

TEST_CASE("equal coordinates imply equal invariants") {
  std::mt19937_64 rng(67);
  std::uniform_real_distribution<double> u(0.05, kQuarterPi);
  for (int trial = 0; trial < 30; ++trial) {
    double c[3] = {u(rng), u(rng), u(rng)};
    std::sort(c, c + 3, std::greater<>());
    const Matrix4c base = coupling_exponential(c[0], c[1], c[2]);
    const Matrix4c u1 = wt::random_local(rng) * base * wt::random_local(rng);
    const Matrix4c u2 = wt::random_local(rng) * base * wt::random_local(rng);
    const auto w1 = weyl_coordinates(u1), w2 = weyl_coordinates(u2);
    const auto i1 = makhlin_invariants(u1), i2 = makhlin_invariants(u2);
    for (int i = 0; i < 3; ++i) CHECK(std::abs(w1[i] - w2[i]) < 1e-8);
    CHECK(std::abs(i1.g1 - i2.g1) < 1e-8);
    CHECK(std::abs(i1.g2 - i2.g2) < 1e-8);
  }
}

TEST_CASE("classify: steered evolution, schedule, identity") {
  const CouplingParams p3 = lambda_coeffs(3.0);
  const EquivalenceReport local =
      classify(steered_evolution(p3, kPi / 2.0), cnot());
  CHECK(local.verdict == Verdict::LocallyEquivalent);
  CHECK(local.fidelity < 1.0 - 1e-9);
  CHECK(local.weyl_coords[0] == doctest::Approx(kQuarterPi).epsilon(1e-10));

  const PulseProfile rect = with_solved_t1(PulseProfile::rectangular(1.0, 1.0));
  const Matrix4c composed =
      compose_analytic(cnot_schedule(lambda_coeffs(0.0), rect));
  const EquivalenceReport exact = classify(composed, cnot());
  CHECK(exact.verdict == Verdict::ExactUpToPhase);
  CHECK(exact.fidelity == doctest::Approx(1.0).epsilon(1e-12));

  const EquivalenceReport none = classify(Matrix4c::Identity(), cnot());
  CHECK(none.verdict == Verdict::Inequivalent);
}

TEST_CASE("report JSON") {
  const EquivalenceReport report =
      classify(cnot_weyl(), cnot());
  const nlohmann::json j = report_to_json(report);
  CHECK(j.at("verdict") == "locally-equivalent");
  CHECK(j.at("fidelity").get<double>() == doctest::Approx(report.fidelity));
  CHECK(j.at("makhlin_g1").size() == 2);
  CHECK(j.at("weyl_coordinates").size() == 3);
  CHECK(j.at("makhlin_g2").get<double>() ==
        doctest::Approx(1.0).epsilon(1e-12));
}
