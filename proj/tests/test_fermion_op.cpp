#include <gtest/gtest.h>

#include <complex>
#include <random>

#include "pwtrotter/fermion_op.hpp"
#include "pwtrotter/oracle.hpp"

namespace pw = pwtrotter;
using Op = pw::NormalOrderedOperator;
using Eigen::MatrixXcd;
using Eigen::MatrixXd;
using Eigen::VectorXd;
using cplx = std::complex<double>;

namespace {

MatrixXcd random_complex(int n, std::mt19937& rng) {
  std::normal_distribution<double> d(0.0, 1.0);
  MatrixXcd a(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) a(i, j) = cplx(d(rng), d(rng));
  return a;
}

double term_distance(const Op& a, const Op& b) {
  const Op diff = a - b;
  return diff.one_norm();
}

TEST(FermionOp, NumberOperatorFromIdentity) {
  const Op op = Op::from_quadratic(MatrixXcd::Identity(3, 3));
  EXPECT_EQ(op.terms().size(), 3u);
  EXPECT_DOUBLE_EQ(op.one_norm(), 3.0);
  for (int p = 0; p < 3; ++p) {
    const auto it = op.terms().find(Op::make_key(1u << p, 1u << p));
    ASSERT_NE(it, op.terms().end());
    EXPECT_DOUBLE_EQ(it->second.real(), 1.0);
  }
}

TEST(FermionOp, HoppingCommutatorIsDensityDifference) {
  MatrixXcd e01 = MatrixXcd::Zero(2, 2), e10 = MatrixXcd::Zero(2, 2);
  e01(0, 1) = 1.0;
  e10(1, 0) = 1.0;
  const Op c = pw::commutator(Op::from_quadratic(e01), Op::from_quadratic(e10));
  // [a^dag_0 a_1, a^dag_1 a_0] = n_0 - n_1
  ASSERT_EQ(c.terms().size(), 2u);
  EXPECT_NEAR(std::abs(c.terms().at(Op::make_key(1, 1)) - cplx(1.0)), 0.0, 1e-14);
  EXPECT_NEAR(std::abs(c.terms().at(Op::make_key(2, 2)) - cplx(-1.0)), 0.0, 1e-14);
}

TEST(FermionOp, AnticommutationProducesIdentityTerm) {
  Op a(1), adag(1);
  a.add_term(0, 1u, 1.0);     // a_0
  adag.add_term(1u, 0, 1.0);  // a^dag_0
  const Op prod = pw::normal_ordered_product(a, adag);  // a_0 a^dag_0 = 1 - n_0
  ASSERT_EQ(prod.terms().size(), 2u);
  EXPECT_NEAR(std::abs(prod.terms().at(Op::make_key(0, 0)) - cplx(1.0)), 0.0, 1e-14);
  EXPECT_NEAR(std::abs(prod.terms().at(Op::make_key(1, 1)) - cplx(-1.0)), 0.0, 1e-14);
}

TEST(FermionOp, CommutatorOfQuadraticsMatchesMatrixCommutator) {
  std::mt19937 rng(42);
  for (int rep = 0; rep < 10; ++rep) {
    const int n = 4;
    const MatrixXcd a = random_complex(n, rng), b = random_complex(n, rng);
    const Op lhs = pw::commutator(Op::from_quadratic(a), Op::from_quadratic(b));
    const Op rhs = Op::from_quadratic(a * b - b * a);
    EXPECT_LE(term_distance(lhs, rhs), 1e-10);
  }
}

TEST(FermionOp, CommutatorAlgebraProperties) {
  std::mt19937 rng(43);
  const int n = 4;
  const Op a = Op::from_quadratic(random_complex(n, rng));
  const Op b = Op::from_quadratic(random_complex(n, rng));
  const Op c = Op::from_quadratic(random_complex(n, rng));
  // antisymmetry
  EXPECT_LE(term_distance(pw::commutator(a, b), cplx(-1.0) * pw::commutator(b, a)), 1e-10);
  // bilinearity
  const Op lhs = pw::commutator(cplx(2.0) * a + b, c);
  const Op rhs = cplx(2.0) * pw::commutator(a, c) + pw::commutator(b, c);
  EXPECT_LE(term_distance(lhs, rhs), 1e-10);
  // Jacobi identity
  Op jac = pw::commutator(pw::commutator(a, b), c);
  jac += pw::commutator(pw::commutator(b, c), a);
  jac += pw::commutator(pw::commutator(c, a), b);
  EXPECT_LE(jac.one_norm(), 1e-9);
}

TEST(FermionOp, OneNormOfQuadratic) {
  MatrixXcd a(2, 2);
  a << cplx(1.0, 0.0), cplx(0.0, -2.0), cplx(3.0, 4.0), cplx(-0.5, 0.0);
  EXPECT_NEAR(Op::from_quadratic(a).one_norm(), 1.0 + 2.0 + 5.0 + 0.5, 1e-14);
}

TEST(FermionOp, DensityDensityDiagonalInFockSpace) {
  // On the number basis the operator must act diagonally with value
  // sum_{p in occ} U_p + sum_{p != q in occ} V_pq.
  std::mt19937 rng(44);
  std::normal_distribution<double> d(0.0, 1.0);
  const int n = 5;
  MatrixXd v(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) v(i, j) = d(rng);
  v = ((v + v.transpose()) / 2).eval();
  v.diagonal().setZero();
  VectorXd u(n);
  for (int i = 0; i < n; ++i) u[i] = d(rng);

  const Op op = Op::from_density_density(v, u);
  const pw::FockBasis basis(n, 2);
  const MatrixXcd f = pw::fock_matrix(op, basis);
  for (int col = 0; col < basis.dimension(); ++col) {
    const std::uint32_t s = basis.states[col];
    double expected = 0.0;
    for (int p = 0; p < n; ++p) {
      if (!(s & (1u << p))) continue;
      expected += u[p];
      for (int q = 0; q < n; ++q)
        if (q != p && (s & (1u << q))) expected += v(p, q);
    }
    for (int row = 0; row < basis.dimension(); ++row) {
      const double want = row == col ? expected : 0.0;
      EXPECT_NEAR(std::abs(f(row, col) - cplx(want)), 0.0, 1e-12);
    }
  }
}

TEST(FermionOp, DaggerMatchesAdjointInFockSpace) {
  std::mt19937 rng(45);
  const int n = 4;
  Op op = Op::from_quadratic(random_complex(n, rng));
  // add a quartic non-hermitian piece
  op.add_term((1u << 0) | (1u << 2), (1u << 1) | (1u << 3), cplx(0.7, -0.3));
  const MatrixXcd f = pw::fock_matrix(op, n, 2);
  const MatrixXcd fd = pw::fock_matrix(op.dagger(), n, 2);
  EXPECT_LE((fd - f.adjoint()).cwiseAbs().maxCoeff(), 1e-12);
}

TEST(FermionOp, ProductHomomorphismInFockSpace) {
  std::mt19937 rng(46);
  const int n = 6;
  const Op a = Op::from_quadratic(random_complex(n, rng));
  const Op b = Op::from_quadratic(random_complex(n, rng));
  const pw::FockBasis basis(n, 3);
  const MatrixXcd fa = pw::fock_matrix(a, basis), fb = pw::fock_matrix(b, basis);
  const MatrixXcd fprod = pw::fock_matrix(pw::normal_ordered_product(a, b), basis);
  EXPECT_LE((fprod - fa * fb).cwiseAbs().maxCoeff(), 1e-10);
  const MatrixXcd fcomm = pw::fock_matrix(pw::commutator(a, b), basis);
  EXPECT_LE((fcomm - (fa * fb - fb * fa)).cwiseAbs().maxCoeff(), 1e-10);
}

TEST(FermionOp, RejectsTooManyModes) {
  EXPECT_THROW(Op::from_quadratic(MatrixXcd::Identity(21, 21)), std::invalid_argument);
}

}  // namespace
