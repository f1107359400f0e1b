#include "weylsteer/algebra.hpp"

#include <Eigen/Eigenvalues>

namespace weylsteer {

namespace {

template <typename Matrix>
Matrix expm_hermitian_impl(const Matrix& h, double angle) {
  const double herm_err = (h - h.adjoint()).cwiseAbs().maxCoeff();
  if (!(herm_err < tol::expm_input)) {
    throw NonHermitianInput("expm_hermitian: input deviates from Hermitian by " +
                            std::to_string(herm_err));
  }
  Eigen::SelfAdjointEigenSolver<Matrix> solver(h);
  const auto& evals = solver.eigenvalues();
  const auto& evecs = solver.eigenvectors();
  Matrix phases = Matrix::Zero();
  for (Eigen::Index i = 0; i < evals.size(); ++i) {
    phases(i, i) = std::exp(Complex(0.0, -angle * evals(i)));
  }
  return evecs * phases * evecs.adjoint();
}

}  // namespace

Matrix2c pauli(PauliAxis axis) {
  Matrix2c m;
  switch (axis) {
    case PauliAxis::X:
      m << 0, 1, 1, 0;
      break;
    case PauliAxis::Y:
      m << 0, Complex(0, -1), Complex(0, 1), 0;
      break;
    case PauliAxis::Z:
      m << 1, 0, 0, -1;
      break;
  }
  return m;
}

Matrix4c kron(const Matrix2c& a, const Matrix2c& b) {
  Matrix4c out;
  for (int i = 0; i < 2; ++i) {
    for (int j = 0; j < 2; ++j) {
      out.block<2, 2>(2 * i, 2 * j) = a(i, j) * b;
    }
  }
  return out;
}

Matrix4c expm_hermitian(const Matrix4c& h, double angle) {
  return expm_hermitian_impl(h, angle);
}

Matrix2c expm_hermitian(const Matrix2c& h, double angle) {
  return expm_hermitian_impl(h, angle);
}

double max_norm_diff(const Matrix4c& a, const Matrix4c& b) {
  return (a - b).cwiseAbs().maxCoeff();
}

double max_norm_diff(const Matrix2c& a, const Matrix2c& b) {
  return (a - b).cwiseAbs().maxCoeff();
}

double hermiticity_error(const Matrix4c& m) {
  return (m - m.adjoint()).cwiseAbs().maxCoeff();
}

double unitarity_error(const Matrix4c& m) {
  return (m.adjoint() * m - Matrix4c::Identity()).cwiseAbs().maxCoeff();
}

bool is_hermitian(const Matrix4c& m, double tolerance) {
  return hermiticity_error(m) < tolerance;
}

bool is_unitary(const Matrix4c& m, double tolerance) {
  return unitarity_error(m) < tolerance;
}

}  // namespace weylsteer
