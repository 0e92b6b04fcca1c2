#pragma once

#include <Eigen/Dense>
#include <algorithm>
#include <bit>
#include <cmath>
#include <complex>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "pwtrotter/fermion_op.hpp"
#include "pwtrotter/util.hpp"

namespace pwtrotter {

// Occupation-number basis of the fixed-particle-number subspace: all bitmasks
// over N modes with popcount eta, in increasing numeric order.
struct FockBasis {
  int num_modes = 0;
  int num_particles = 0;
  std::vector<std::uint32_t> states;

  FockBasis(int n, int eta) : num_modes(n), num_particles(eta) {
    if (n < 0 || n > 16) throw std::invalid_argument("FockBasis: supported for N <= 16");
    if (eta < 0 || eta > n)
      throw std::invalid_argument("FockBasis: eta must satisfy 0 <= eta <= N");
    if (binomial(n, eta) > 4096)
      throw std::invalid_argument("FockBasis: subspace dimension exceeds 4096");
    for (std::uint32_t s = 0; s < (1u << n); ++s)
      if (std::popcount(s) == eta) states.push_back(s);
  }

  int dimension() const { return static_cast<int>(states.size()); }

  int index_of(std::uint32_t state) const {
    const auto it = std::lower_bound(states.begin(), states.end(), state);
    if (it == states.end() || *it != state)
      throw std::invalid_argument("FockBasis: state not in subspace");
    return static_cast<int>(it - states.begin());
  }
};

namespace detail {

// Applies a^dag_{cmask} a_{amask} (both blocks ascending) to a basis state.
// Returns the fermionic sign, or 0 if the term annihilates the state.
inline int apply_term(std::uint32_t cmask, std::uint32_t amask, std::uint32_t state,
                      std::uint32_t& out) {
  if ((state & amask) != amask) return 0;
  int sign = 1;
  std::uint32_t m = amask;
  while (m) {  // rightmost written operator acts first: highest index first
    const int i = 31 - std::countl_zero(m);
    m &= ~(1u << i);
    if (std::popcount(state & ((1u << i) - 1)) & 1) sign = -sign;
    state &= ~(1u << i);
  }
  if (state & cmask) return 0;
  m = cmask;
  while (m) {
    const int i = 31 - std::countl_zero(m);
    m &= ~(1u << i);
    if (std::popcount(state & ((1u << i) - 1)) & 1) sign = -sign;
    state |= 1u << i;
  }
  out = state;
  return sign;
}

}  // namespace detail

// Dense matrix of a normal-ordered operator on the eta-particle subspace.
inline Eigen::MatrixXcd fock_matrix(const NormalOrderedOperator& op, const FockBasis& basis) {
  const int dim = basis.dimension();
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(dim, dim);
  for (const auto& [key, coeff] : op.terms()) {
    const std::uint32_t cm = NormalOrderedOperator::creation_mask(key);
    const std::uint32_t am = NormalOrderedOperator::annihilation_mask(key);
    if (std::popcount(cm) != std::popcount(am)) continue;  // changes particle number
    for (int col = 0; col < dim; ++col) {
      std::uint32_t out_state = 0;
      const int sign = detail::apply_term(cm, am, basis.states[col], out_state);
      if (sign != 0) m(basis.index_of(out_state), col) += static_cast<double>(sign) * coeff;
    }
  }
  return m;
}

inline Eigen::MatrixXcd fock_matrix(const NormalOrderedOperator& op, int num_modes, int eta) {
  return fock_matrix(op, FockBasis(num_modes, eta));
}

// Dense matrix on the full 2^N Fock space (basis index == occupation bitmask),
// for cross-checks against qubit-space constructions.
inline Eigen::MatrixXcd full_space_matrix(const NormalOrderedOperator& op, int num_modes) {
  if (num_modes > 12) throw std::invalid_argument("full_space_matrix: N <= 12 only");
  const int dim = 1 << num_modes;
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(dim, dim);
  for (const auto& [key, coeff] : op.terms()) {
    const std::uint32_t cm = NormalOrderedOperator::creation_mask(key);
    const std::uint32_t am = NormalOrderedOperator::annihilation_mask(key);
    for (int col = 0; col < dim; ++col) {
      std::uint32_t out_state = 0;
      const int sign = detail::apply_term(cm, am, static_cast<std::uint32_t>(col), out_state);
      if (sign != 0) m(static_cast<int>(out_state), col) += static_cast<double>(sign) * coeff;
    }
  }
  return m;
}

// Largest singular value of a dense matrix (via the hermitian eigenproblem of
// M^dag M; exact enough for oracle-sized problems).
inline double operator_two_norm(const Eigen::MatrixXcd& m) {
  if (m.rows() == 0) return 0.0;
  const double scale = m.cwiseAbs().maxCoeff();
  if (scale == 0.0) return 0.0;
  const double herm_dev = (m - m.adjoint()).cwiseAbs().maxCoeff();
  if (herm_dev <= 1e-12 * scale) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(m, Eigen::EigenvaluesOnly);
    return es.eigenvalues().cwiseAbs().maxCoeff();
  }
  Eigen::MatrixXcd g = m.adjoint() * m;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(g, Eigen::EigenvaluesOnly);
  return std::sqrt(std::max(0.0, es.eigenvalues().maxCoeff()));
}

// Restriction of the operator 2-norm to the eta-particle subspace. For a
// hermitian/anti-hermitian one-body operator H(A) this equals the reduced
// seminorm of the coefficient matrix A.
inline double fock_seminorm(const NormalOrderedOperator& op, int num_modes, int eta) {
  return operator_two_norm(fock_matrix(op, num_modes, eta));
}

enum class TrotterOrdering { kVTV, kTVT };

namespace detail {

inline Eigen::MatrixXcd unitary_exp(const Eigen::MatrixXcd& h, double t) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(h);
  if (es.info() != Eigen::Success)
    throw std::runtime_error("unitary_exp: eigendecomposition failed");
  const Eigen::VectorXcd phases =
      (std::complex<double>(0.0, 1.0) * t * es.eigenvalues().cast<std::complex<double>>())
          .array()
          .exp();
  return es.eigenvectors() * phases.asDiagonal() * es.eigenvectors().adjoint();
}

}  // namespace detail

// Exact second-order product-formula error on the eta-particle subspace:
//   || exp(itH) - U2(t) ||_2 with H = Ht + Hv and
//   U2 = exp(it/2 Hv) exp(it Ht) exp(it/2 Hv)   (kVTV ordering)
//   U2 = exp(it/2 Ht) exp(it Hv) exp(it Ht/... ) analogously for kTVT.
inline double exact_trotter_error(const NormalOrderedOperator& ht,
                                  const NormalOrderedOperator& hv, int num_modes, int eta,
                                  double t, TrotterOrdering ordering = TrotterOrdering::kVTV) {
  const FockBasis basis(num_modes, eta);
  const Eigen::MatrixXcd ft = fock_matrix(ht, basis);
  const Eigen::MatrixXcd fv = fock_matrix(hv, basis);
  const Eigen::MatrixXcd exact = detail::unitary_exp(ft + fv, t);
  const Eigen::MatrixXcd& outer = ordering == TrotterOrdering::kVTV ? fv : ft;
  const Eigen::MatrixXcd& inner = ordering == TrotterOrdering::kVTV ? ft : fv;
  const Eigen::MatrixXcd half = detail::unitary_exp(outer, t / 2.0);
  const Eigen::MatrixXcd u2 = half * detail::unitary_exp(inner, t) * half;
  return operator_two_norm(exact - u2);
}

}  // namespace pwtrotter
