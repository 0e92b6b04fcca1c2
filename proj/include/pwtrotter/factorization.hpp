#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>
#include <vector>

#include "pwtrotter/hamiltonian.hpp"
#include "pwtrotter/system.hpp"

namespace pwtrotter {

// Decomposition of the two-body coefficient matrix into a weighted sum of
// factor pairs: V + shift*I  ~  sum_l weight_l * X_l (x) Y_l. For the
// spectral / cholesky / cosine methods the factors are diagonal and Y = X;
// the general tensor route produces dense hermitian factors.
struct FactorizedPotential {
  std::string method;
  double shift = 0.0;             // chemical-potential shift C applied to V
  double dropped_diagonal = 0.0;  // cosine: constant sum_{nu != 0} 2pi/(volume k^2)
  std::vector<double> weights;
  std::vector<Eigen::VectorXd> diag_factors;  // diagonal factors (empty for dense)
  std::vector<Eigen::MatrixXd> dense_factors; // dense hermitian factors (X = Y)
  Eigen::MatrixXd one_body;                   // residual one-body coefficients (general route)

  bool diagonal() const { return dense_factors.empty(); }
  int factor_count() const {
    return static_cast<int>(diagonal() ? diag_factors.size() : dense_factors.size());
  }
};

inline Eigen::MatrixXd shift_chemical_potential(const Eigen::MatrixXd& v, double c) {
  if (v.rows() != v.cols())
    throw std::invalid_argument("shift_chemical_potential: matrix must be square");
  return v + c * Eigen::MatrixXd::Identity(v.rows(), v.cols());
}

// Smallest shift C such that V + C*I is positive definite (with a safety
// epsilon): C = max(0, -lambda_min(V)) + eps, eps = max(1e-12, 1e-8*max|V_ij|).
inline double min_pd_shift(const Eigen::MatrixXd& v) {
  if (v.rows() != v.cols())
    throw std::invalid_argument("min_pd_shift: matrix must be square");
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(v, Eigen::EigenvaluesOnly);
  if (es.info() != Eigen::Success)
    throw std::runtime_error("min_pd_shift: eigenvalue computation failed");
  const double lambda_min = es.eigenvalues().minCoeff();
  const double eps = std::max(1e-12, 1e-8 * v.cwiseAbs().maxCoeff());
  return std::max(0.0, -lambda_min) + eps;
}

namespace detail {

// Deterministic eigenvector sign: first component with non-negligible
// magnitude is made positive.
inline void fix_sign(Eigen::VectorXd& v) {
  const double tol = 1e-12 * std::max(1.0, v.cwiseAbs().maxCoeff());
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    if (std::abs(v[i]) > tol) {
      if (v[i] < 0) v = -v;
      return;
    }
  }
}

}  // namespace detail

// Eigendecomposition route: V + shift*I = sum_l lambda_l v_l v_l^T with unit
// eigenvectors as diagonal factors. Eigenpairs are ordered by descending
// eigenvalue with a deterministic sign convention; all N factors are kept.
inline FactorizedPotential spectral_decompose(const Eigen::MatrixXd& v, double shift = 0.0) {
  const Eigen::MatrixXd shifted = shift_chemical_potential(v, shift);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(shifted);
  if (es.info() != Eigen::Success)
    throw std::runtime_error("spectral_decompose: eigendecomposition failed");
  const int n = static_cast<int>(v.rows());
  FactorizedPotential fp;
  fp.method = "spectral";
  fp.shift = shift;
  fp.weights.resize(n);
  fp.diag_factors.resize(n);
  for (int i = 0; i < n; ++i) {
    const int src = n - 1 - i;  // Eigen sorts ascending; we publish descending
    fp.weights[i] = es.eigenvalues()[src];
    Eigen::VectorXd vec = es.eigenvectors().col(src);
    detail::fix_sign(vec);
    fp.diag_factors[i] = std::move(vec);
  }
  return fp;
}

// Cholesky route: V + C*I = L L^T with C = min_pd_shift(V); the columns of L
// become unit-weight diagonal factors.
inline FactorizedPotential cholesky_decompose(const Eigen::MatrixXd& v) {
  const double c = min_pd_shift(v);
  const Eigen::MatrixXd shifted = shift_chemical_potential(v, c);
  Eigen::LLT<Eigen::MatrixXd> llt(shifted);
  if (llt.info() != Eigen::Success)
    throw std::runtime_error("cholesky_decompose: factorization failed after shifting");
  const Eigen::MatrixXd l = llt.matrixL();
  const int n = static_cast<int>(v.rows());
  FactorizedPotential fp;
  fp.method = "cholesky";
  fp.shift = c;
  fp.weights.assign(n, 1.0);
  fp.diag_factors.resize(n);
  for (int i = 0; i < n; ++i) fp.diag_factors[i] = l.col(i);
  return fp;
}

// Momentum-mode route: for every nonzero momentum k_nu one cosine and one
// sine diagonal factor with entries sqrt(2pi/volume) * cos(k_nu . r_p) / |k_nu|
// (resp. sin), replicated across spin blocks. The factor sum reproduces the
// off-diagonal of V exactly; the constant it adds on the diagonal is recorded
// in dropped_diagonal.
inline FactorizedPotential cosine_decompose(const SystemSpec& spec) {
  spec.validate();
  const auto ks = momentum_vectors(spec);
  const auto positions = orbital_positions(spec);
  const double volume = cell_volume(spec);
  const int m = spec.num_sites();
  const int n = spec.num_spin_orbitals();
  FactorizedPotential fp;
  fp.method = "cosine";
  for (const auto& k : ks) {
    const double k2 = k[0] * k[0] + k[1] * k[1] + k[2] * k[2];
    if (k2 <= 0.0) continue;
    const double pref = std::sqrt(2.0 * std::numbers::pi / volume) / std::sqrt(k2);
    fp.dropped_diagonal += 2.0 * std::numbers::pi / (volume * k2);
    Eigen::VectorXd c(n), s(n);
    for (int site = 0; site < m; ++site) {
      double phase = 0.0;
      for (int i = 0; i < spec.dimension; ++i) phase += k[i] * positions[site][i];
      c[site] = pref * std::cos(phase);
      s[site] = pref * std::sin(phase);
      if (spec.spinful) {
        c[site + m] = c[site];
        s[site + m] = s[site];
      }
    }
    fp.weights.push_back(1.0);
    fp.diag_factors.push_back(std::move(c));
    fp.weights.push_back(1.0);
    fp.diag_factors.push_back(std::move(s));
  }
  return fp;
}

// Coefficient-level reconstruction sum_l w_l x_l x_l^T for diagonal-factor
// decompositions (equals V + shift*I for spectral/cholesky; off-diagonal of V
// plus dropped_diagonal*I for cosine).
inline Eigen::MatrixXd reconstruct_coulomb(const FactorizedPotential& fp) {
  if (!fp.diagonal())
    throw std::invalid_argument("reconstruct_coulomb: only diagonal-factor decompositions");
  if (fp.diag_factors.empty())
    throw std::invalid_argument("reconstruct_coulomb: empty factor list");
  const Eigen::Index n = fp.diag_factors.front().size();
  Eigen::MatrixXd acc = Eigen::MatrixXd::Zero(n, n);
  for (std::size_t l = 0; l < fp.diag_factors.size(); ++l)
    acc.noalias() += fp.weights[l] * fp.diag_factors[l] * fp.diag_factors[l].transpose();
  return acc;
}

// Flat four-index coefficient tensor h(p,q,r,s) for
//   H = sum_{pqrs} h_pqrs a^dag_p a^dag_q a_r a_s.
struct Tensor4 {
  int n = 0;
  std::vector<double> v;

  explicit Tensor4(int n_) : n(n_), v(static_cast<std::size_t>(n_) * n_ * n_ * n_, 0.0) {}
  double& operator()(int p, int q, int r, int s) {
    return v[((static_cast<std::size_t>(p) * n + q) * n + r) * n + s];
  }
  double operator()(int p, int q, int r, int s) const {
    return v[((static_cast<std::size_t>(p) * n + q) * n + r) * n + s];
  }
};

// General two-body route (small-N validation): rewrites
//   H = sum h_pqrs a^dag_p a^dag_q a_r a_s
//     = -H0 + sum_l lambda_l H(X_l) H(X_l),
// where [H0]_pr = sum_q h_pqrq and the X_l come from diagonalizing the
// (pq),(rs) flattening of the reordered tensor V_pqrs = h_prsq. Requires the
// standard real 8-fold symmetry of V (verified); factors with negligible
// weight are dropped, the rest are exactly symmetric.
inline FactorizedPotential general_spectral_from_tensor(const Tensor4& h) {
  const int n = h.n;
  if (n < 1 || n > 32)
    throw std::invalid_argument("general_spectral_from_tensor: supported for 1 <= N <= 32");

  Tensor4 vt(n);
  double vmax = 0.0;
  for (int p = 0; p < n; ++p)
    for (int q = 0; q < n; ++q)
      for (int r = 0; r < n; ++r)
        for (int s = 0; s < n; ++s) {
          vt(p, q, r, s) = h(p, r, s, q);
          vmax = std::max(vmax, std::abs(vt(p, q, r, s)));
        }
  const double tol = 1e-10 * std::max(1.0, vmax);
  for (int p = 0; p < n; ++p)
    for (int q = 0; q < n; ++q)
      for (int r = 0; r < n; ++r)
        for (int s = 0; s < n; ++s) {
          const double x = vt(p, q, r, s);
          const double deviation =
              std::max({std::abs(x - vt(s, r, q, p)), std::abs(x - vt(p, q, s, r)),
                        std::abs(x - vt(q, p, r, s)), std::abs(x - vt(q, p, s, r)),
                        std::abs(x - vt(r, s, q, p)), std::abs(x - vt(r, s, p, q)),
                        std::abs(x - vt(s, r, p, q))});
          if (deviation > tol)
            throw std::invalid_argument(
                "general_spectral_from_tensor: tensor lacks the required 8-fold symmetry");
        }

  Eigen::MatrixXd w(n * n, n * n);
  for (int p = 0; p < n; ++p)
    for (int q = 0; q < n; ++q)
      for (int r = 0; r < n; ++r)
        for (int s = 0; s < n; ++s) w(p * n + q, r * n + s) = vt(p, q, r, s);

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(w);
  if (es.info() != Eigen::Success)
    throw std::runtime_error("general_spectral_from_tensor: eigendecomposition failed");

  FactorizedPotential fp;
  fp.method = "general_spectral";
  fp.one_body.resize(n, n);
  for (int p = 0; p < n; ++p)
    for (int r = 0; r < n; ++r) {
      double acc = 0.0;
      for (int q = 0; q < n; ++q) acc += h(p, q, r, q);
      fp.one_body(p, r) = -acc;
    }

  const double wmax = es.eigenvalues().cwiseAbs().maxCoeff();
  for (int i = n * n - 1; i >= 0; --i) {  // descending eigenvalue order
    const double lambda = es.eigenvalues()[i];
    if (std::abs(lambda) <= 1e-12 * std::max(1.0, wmax)) continue;
    Eigen::VectorXd u = es.eigenvectors().col(i);
    detail::fix_sign(u);
    Eigen::MatrixXd x(n, n);
    for (int p = 0; p < n; ++p)
      for (int q = 0; q < n; ++q) x(p, q) = u[p * n + q];
    x = 0.5 * (x + x.transpose().eval());
    fp.weights.push_back(lambda);
    fp.dense_factors.push_back(std::move(x));
  }
  return fp;
}

}  // namespace pwtrotter
