#pragma once

#include <Eigen/Dense>
#include <algorithm>
#include <bit>
#include <cmath>
#include <complex>
#include <stdexcept>
#include <vector>

#include "pwtrotter/coeff_matrix.hpp"
#include "pwtrotter/util.hpp"

namespace pwtrotter {

// Reduced seminorm evaluator backed by a fixed eigenvalue multiset: for a
// hermitian matrix the value at eta is
//   max(|sum of eta largest eigenvalues|, |sum of eta smallest eigenvalues|),
// i.e. the largest |trace| over eta-dimensional invariant subspaces. Keeping
// prefix sums makes evaluation at many eta values nearly free.
class SeminormEvaluator {
 public:
  explicit SeminormEvaluator(std::vector<double> eigenvalues)
      : eigs_(std::move(eigenvalues)) {
    std::sort(eigs_.begin(), eigs_.end());
    prefix_.resize(eigs_.size() + 1, 0.0);
    for (std::size_t i = 0; i < eigs_.size(); ++i) prefix_[i + 1] = prefix_[i] + eigs_[i];
  }

  int size() const { return static_cast<int>(eigs_.size()); }
  const std::vector<double>& eigenvalues() const { return eigs_; }

  double at(int eta) const {
    const int n = size();
    if (eta < 0 || eta > n)
      throw std::invalid_argument("SeminormEvaluator: eta must satisfy 0 <= eta <= N");
    const double bottom = prefix_[eta];
    const double top = prefix_[n] - prefix_[n - eta];
    return std::max(std::abs(top), std::abs(bottom));
  }

 private:
  std::vector<double> eigs_;  // ascending
  std::vector<double> prefix_;
};

namespace detail {

inline std::vector<double> to_vector(const Eigen::VectorXd& v) {
  return std::vector<double>(v.data(), v.data() + v.size());
}

inline std::vector<double> hermitian_eigenvalues(const Eigen::MatrixXcd& a) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(a, Eigen::EigenvaluesOnly);
  if (es.info() != Eigen::Success)
    throw std::runtime_error("hermitian eigenvalue computation failed");
  return to_vector(es.eigenvalues());
}

inline std::vector<double> symmetric_eigenvalues(const Eigen::MatrixXd& a) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(a, Eigen::EigenvaluesOnly);
  if (es.info() != Eigen::Success)
    throw std::runtime_error("symmetric eigenvalue computation failed");
  return to_vector(es.eigenvalues());
}

// Spectrum of -i*K for real antisymmetric K without complex arithmetic:
// K^T K is PSD with eigenvalues mu^2 in pairs, and spec(-iK) = {+mu, -mu}.
// Sorting K^T K eigenvalues descending and alternating signs reproduces the
// correct multiset (equal pairs are adjacent after sorting).
inline std::vector<double> real_antisymmetric_spectrum(const Eigen::MatrixXd& k) {
  Eigen::MatrixXd g(k.cols(), k.cols());
  g.noalias() = k.transpose() * k;
  std::vector<double> w = symmetric_eigenvalues(g);  // ascending
  std::vector<double> spectrum(w.size());
  for (std::size_t i = 0; i < w.size(); ++i) {
    const double mu = std::sqrt(std::max(0.0, w[w.size() - 1 - i]));
    spectrum[i] = (i % 2 == 0) ? mu : -mu;
  }
  return spectrum;
}

}  // namespace detail

// Eigenvalue multiset of the hermitian representative of a classified matrix
// (A itself if hermitian, -iA if anti-hermitian). Diagonal-flagged matrices
// read their diagonal directly.
inline SeminormEvaluator seminorm_evaluator(const CoefficientMatrix& a) {
  if (a.tag == SymmetryTag::kGeneral)
    throw std::invalid_argument(
        "reduced_seminorm: unsupported symmetry (matrix is neither hermitian nor anti-hermitian)");
  const Eigen::Index n = a.entries.rows();
  if (a.diagonal) {
    std::vector<double> d(n);
    for (Eigen::Index i = 0; i < n; ++i) {
      const std::complex<double> z = a.entries(i, i);
      d[i] = a.tag == SymmetryTag::kHermitian ? z.real() : z.imag();
    }
    return SeminormEvaluator(std::move(d));
  }
  const Eigen::MatrixXcd h = a.tag == SymmetryTag::kHermitian
                                 ? a.entries
                                 : Eigen::MatrixXcd(std::complex<double>(0, -1) * a.entries);
  return SeminormEvaluator(detail::hermitian_eigenvalues(h));
}

inline double reduced_seminorm(const CoefficientMatrix& a, int eta) {
  return seminorm_evaluator(a).at(eta);
}

inline double reduced_seminorm(const Eigen::MatrixXcd& a, int eta) {
  return reduced_seminorm(classify_matrix(a), eta);
}

inline double reduced_seminorm(const Eigen::MatrixXd& a, int eta) {
  return reduced_seminorm(classify_matrix(a.cast<std::complex<double>>()), eta);
}

// Definition-level reference: maximizes |sum of eigenvalues over S| across all
// index subsets S of size eta. Exponential in N; guarded to N <= 20.
inline double brute_force_seminorm(const CoefficientMatrix& a, int eta) {
  const int n = static_cast<int>(a.entries.rows());
  if (n > 20)
    throw std::invalid_argument("brute_force_seminorm: N > 20 not supported");
  const SeminormEvaluator ev = seminorm_evaluator(a);
  if (eta < 0 || eta > n)
    throw std::invalid_argument("brute_force_seminorm: eta must satisfy 0 <= eta <= N");
  const auto& eigs = ev.eigenvalues();
  double best = 0.0;
  for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
    if (std::popcount(mask) != eta) continue;
    double s = 0.0;
    for (int i = 0; i < n; ++i)
      if (mask & (1u << i)) s += eigs[i];
    best = std::max(best, std::abs(s));
  }
  return best;
}

inline double brute_force_seminorm(const Eigen::MatrixXcd& a, int eta) {
  return brute_force_seminorm(classify_matrix(a), eta);
}

}  // namespace pwtrotter
