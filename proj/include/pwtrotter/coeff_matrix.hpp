#pragma once

#include <Eigen/Dense>
#include <complex>
#include <stdexcept>

namespace pwtrotter {

enum class SymmetryTag { kHermitian, kAntiHermitian, kGeneral };

// Dense coefficient matrix with symmetry metadata. Seminorm evaluation only
// supports hermitian / anti-hermitian input (optionally flagged diagonal).
struct CoefficientMatrix {
  Eigen::MatrixXcd entries;
  SymmetryTag tag = SymmetryTag::kGeneral;
  bool diagonal = false;
};

// Detects the symmetry class with an absolute tolerance of
// 1e-10 * max|A_ij| (exact-zero matrices classify as hermitian diagonal).
inline CoefficientMatrix classify_matrix(Eigen::MatrixXcd a) {
  if (a.rows() != a.cols())
    throw std::invalid_argument("classify_matrix: matrix must be square");
  const double scale = a.cwiseAbs().maxCoeff();
  const double tol = 1e-10 * scale;
  const double herm_dev = (a - a.adjoint()).cwiseAbs().maxCoeff();
  const double anti_dev = (a + a.adjoint()).cwiseAbs().maxCoeff();
  Eigen::MatrixXcd off = a;
  off.diagonal().setZero();
  const bool diag = off.cwiseAbs().maxCoeff() <= tol;
  SymmetryTag tag = SymmetryTag::kGeneral;
  if (herm_dev <= tol)
    tag = SymmetryTag::kHermitian;
  else if (anti_dev <= tol)
    tag = SymmetryTag::kAntiHermitian;
  return CoefficientMatrix{std::move(a), tag, diag};
}

}  // namespace pwtrotter
