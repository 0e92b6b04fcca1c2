#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <map>
#include <numbers>
#include <vector>

#include "pwtrotter/system.hpp"

namespace pwtrotter {

// Coefficient data of H = sum_pq T_pq a^dag_p a_q + sum_p U_p n_p
//                        + sum_{p != q} V_pq n_p n_q  (spin-orbital indices).
struct CoefficientMatrices {
  Eigen::MatrixXd kinetic;   // T, N x N, real symmetric, zero across spin blocks
  Eigen::VectorXd external;  // U diagonal, length N
  Eigen::MatrixXd coulomb;   // V, N x N, real symmetric, exactly zero diagonal
};

namespace detail {

// Canonical representative of a displacement class. Coefficients are
// periodic in each component mod L_i and even under global negation, so d is
// reduced mod L and the lexicographically smaller of {d mod L, -d mod L} is
// used. Entries for p-q and q-p (and for wrapped copies of the same
// displacement) then read the same table slot, which makes the matrices
// exactly symmetric and exactly translation invariant.
inline std::array<int, 3> canonical_displacement(std::array<int, 3> d, const SystemSpec& spec) {
  std::array<int, 3> a{0, 0, 0}, b{0, 0, 0};
  for (int i = 0; i < spec.dimension; ++i) {
    const int L = spec.sides[i];
    a[i] = ((d[i] % L) + L) % L;
    b[i] = ((-d[i] % L) + L) % L;
  }
  return std::min(a, b);
}

enum class KernelKind { kKinetic, kCoulomb };

// Displacement table of either sum_nu k^2 cos(k . r_d) / denom (kinetic) or
// sum_{nu != 0} 2*pi*cos(k . r_d) / (volume * k^2) (Coulomb interaction).
inline std::map<std::array<int, 3>, double> displacement_table(const SystemSpec& spec,
                                                               KernelKind kind) {
  const auto points = lattice_points(spec);
  const auto ks = momentum_vectors(spec);
  const double s = grid_spacing(spec);
  const double volume = cell_volume(spec);
  double denom = static_cast<double>(spec.num_spin_orbitals());
  if (spec.kinetic_denominator == KineticDenominator::kSpatialOrbitals) denom /= 2.0;

  std::map<std::array<int, 3>, double> table;
  for (const auto& p : points)
    for (const auto& q : points) {
      const auto d = canonical_displacement({p[0] - q[0], p[1] - q[1], p[2] - q[2]}, spec);
      if (table.count(d)) continue;
      double acc = 0.0;
      for (const auto& k : ks) {
        const double k2 = k[0] * k[0] + k[1] * k[1] + k[2] * k[2];
        const double phase = k[0] * s * d[0] + k[1] * s * d[1] + k[2] * s * d[2];
        if (kind == KernelKind::kKinetic) {
          acc += k2 * std::cos(phase) / denom;
        } else if (k2 > 0.0) {
          acc += 2.0 * std::numbers::pi * std::cos(phase) / (volume * k2);
        }
      }
      table[d] = acc;
    }
  return table;
}

inline Eigen::MatrixXd site_matrix(const SystemSpec& spec, KernelKind kind) {
  const auto table = displacement_table(spec, kind);
  const auto points = lattice_points(spec);
  const int m = spec.num_sites();
  Eigen::MatrixXd a(m, m);
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) {
      const auto d = canonical_displacement({points[i][0] - points[j][0],
                                             points[i][1] - points[j][1],
                                             points[i][2] - points[j][2]},
                                            spec);
      a(i, j) = table.at(d);
    }
  return a;
}

}  // namespace detail

// Kinetic coefficients T_pq = delta_{spin(p),spin(q)} *
//   sum_nu k_nu^2 cos(k_nu . (r_p - r_q)) / N.
inline Eigen::MatrixXd build_kinetic(const SystemSpec& spec) {
  spec.validate();
  const Eigen::MatrixXd tbar = detail::site_matrix(spec, detail::KernelKind::kKinetic);
  if (!spec.spinful) return tbar;
  const int m = spec.num_sites();
  Eigen::MatrixXd t = Eigen::MatrixXd::Zero(2 * m, 2 * m);
  t.topLeftCorner(m, m) = tbar;
  t.bottomRightCorner(m, m) = tbar;
  return t;
}

// Interaction coefficients V_pq = sum_{nu != 0} 2*pi*cos(k_nu . (r_p - r_q))
//   / (volume * k_nu^2) for p != q; the diagonal is exactly zero.
inline Eigen::MatrixXd build_coulomb(const SystemSpec& spec) {
  spec.validate();
  const Eigen::MatrixXd vbar = detail::site_matrix(spec, detail::KernelKind::kCoulomb);
  const int m = spec.num_sites();
  Eigen::MatrixXd v;
  if (!spec.spinful) {
    v = vbar;
  } else {
    v.resize(2 * m, 2 * m);
    v << vbar, vbar, vbar, vbar;
  }
  v.diagonal().setZero();
  return v;
}

// External potential U_p = -sum_j sum_{nu != 0} 4*pi*charge_j *
//   cos(k_nu . (R_j - r_p)) / (volume * k_nu^2); zero for jellium.
inline Eigen::VectorXd build_external(const SystemSpec& spec) {
  spec.validate();
  const int n = spec.num_spin_orbitals();
  Eigen::VectorXd u = Eigen::VectorXd::Zero(n);
  if (spec.nuclei.empty()) return u;
  const auto positions = orbital_positions(spec);
  const auto ks = momentum_vectors(spec);
  const double volume = cell_volume(spec);
  const int m = spec.num_sites();
  for (int site = 0; site < m; ++site) {
    double acc = 0.0;
    for (const auto& nuc : spec.nuclei)
      for (const auto& k : ks) {
        const double k2 = k[0] * k[0] + k[1] * k[1] + k[2] * k[2];
        if (k2 <= 0.0) continue;
        double phase = 0.0;
        for (int i = 0; i < spec.dimension; ++i)
          phase += k[i] * (nuc.position[i] - positions[site][i]);
        acc -= 4.0 * std::numbers::pi * nuc.charge * std::cos(phase) / (volume * k2);
      }
    u[site] = acc;
    if (spec.spinful) u[site + m] = acc;
  }
  return u;
}

inline CoefficientMatrices build_hamiltonian(const SystemSpec& spec) {
  return CoefficientMatrices{build_kinetic(spec), build_external(spec), build_coulomb(spec)};
}

}  // namespace pwtrotter
