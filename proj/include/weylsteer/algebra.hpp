#pragma once

#include <Eigen/Dense>

#include <complex>
#include <stdexcept>

// Dense complex 2x2 / 4x4 operator algebra for a two-qubit register.
//
// Basis convention, fixed project-wide: the computational basis is ordered
// |q1 q2> in {|00>, |01>, |10>, |11>}, with qubit 1 the LEFT (slow) Kronecker
// factor.  So an operator acting on qubit 1 alone is kron(op, I) and one
// acting on qubit 2 alone is kron(I, op).

namespace weylsteer {

using Complex = std::complex<double>;
using Matrix2c = Eigen::Matrix2cd;
using Matrix4c = Eigen::Matrix4cd;

// Central tolerance table.  Every hermiticity/unitarity/identity threshold
// in the library refers to one of these.
namespace tol {
inline constexpr double hermiticity = 1e-13;       // Hermitian-flag check
inline constexpr double unitarity = 1e-12;         // unitary-flag check
inline constexpr double expm_input = 1e-10;        // expm_hermitian input gate
inline constexpr double identity = 1e-10;          // analytic identity residuals
inline constexpr double quadrature = 1e-12;        // default quadrature abs tol
inline constexpr double area = 1e-9;               // pulse-area gate for schedules
inline constexpr double propagation = 1e-7;        // step-limited propagation checks
}  // namespace tol

struct NonHermitianInput : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

enum class PauliAxis { X, Y, Z };

/// Standard Pauli matrix for the given axis.
Matrix2c pauli(PauliAxis axis);

/// Kronecker product with `a` acting on qubit 1 (left factor).
Matrix4c kron(const Matrix2c& a, const Matrix2c& b);

/// exp(-i * angle * h) for Hermitian h, computed by eigendecomposition so the
/// result is unitary to round-off.  Throws NonHermitianInput if
/// ||h - h^dag||_max >= tol::expm_input.
Matrix4c expm_hermitian(const Matrix4c& h, double angle);
Matrix2c expm_hermitian(const Matrix2c& h, double angle);

/// Largest entrywise |a_ij - b_ij|.
double max_norm_diff(const Matrix4c& a, const Matrix4c& b);
double max_norm_diff(const Matrix2c& a, const Matrix2c& b);

/// ||m - m^dag||_max
double hermiticity_error(const Matrix4c& m);
/// ||m^dag m - I||_max
double unitarity_error(const Matrix4c& m);

bool is_hermitian(const Matrix4c& m, double tolerance = tol::hermiticity);
bool is_unitary(const Matrix4c& m, double tolerance = tol::unitarity);

}  // namespace weylsteer
