#pragma once

#include <Eigen/Dense>
#include <array>
#include <bit>
#include <complex>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <unordered_map>

#include "pwtrotter/fermion_op.hpp"

namespace pwtrotter {

// Sum of Pauli strings. A string is stored as an (x_mask, z_mask) pair packed
// into one 64-bit key; the basis element is the hermitian product over qubits
// of I (00), X (10), Z (01), Y (11).
class PauliOperator {
 public:
  static constexpr int kMaxQubits = 14;
  using Key = std::uint64_t;
  using Coeff = std::complex<double>;

  PauliOperator() = default;
  explicit PauliOperator(int num_qubits) : num_qubits_(num_qubits) {
    if (num_qubits < 0 || num_qubits > kMaxQubits)
      throw std::invalid_argument("PauliOperator: supported for 0 <= qubits <= 14");
  }

  static Key make_key(std::uint32_t x, std::uint32_t z) {
    return (static_cast<Key>(x) << 32) | z;
  }
  static std::uint32_t x_mask(Key k) { return static_cast<std::uint32_t>(k >> 32); }
  static std::uint32_t z_mask(Key k) { return static_cast<std::uint32_t>(k); }

  int num_qubits() const { return num_qubits_; }
  const std::unordered_map<Key, Coeff>& terms() const { return terms_; }

  void add_term(std::uint32_t x, std::uint32_t z, Coeff c) { terms_[make_key(x, z)] += c; }

  std::string string_of(Key k) const {
    std::string s(num_qubits_, 'I');
    for (int q = 0; q < num_qubits_; ++q) {
      const bool x = x_mask(k) & (1u << q), z = z_mask(k) & (1u << q);
      if (x && z)
        s[q] = 'Y';
      else if (x)
        s[q] = 'X';
      else if (z)
        s[q] = 'Z';
    }
    return s;
  }

  Coeff coefficient(const std::string& letters) const {
    if (static_cast<int>(letters.size()) != num_qubits_)
      throw std::invalid_argument("PauliOperator::coefficient: wrong string length");
    std::uint32_t x = 0, z = 0;
    for (int q = 0; q < num_qubits_; ++q) {
      switch (letters[q]) {
        case 'I': break;
        case 'X': x |= 1u << q; break;
        case 'Z': z |= 1u << q; break;
        case 'Y': x |= 1u << q; z |= 1u << q; break;
        default: throw std::invalid_argument("PauliOperator::coefficient: bad letter");
      }
    }
    const auto it = terms_.find(make_key(x, z));
    return it == terms_.end() ? Coeff(0.0) : it->second;
  }

  double one_norm(bool include_identity = true) const {
    double s = 0.0;
    for (const auto& [k, c] : terms_)
      if (include_identity || k != 0) s += std::abs(c);
    return s;
  }

  // Basis strings are hermitian, so the operator is hermitian iff every
  // coefficient is (numerically) real.
  bool is_hermitian(double tol = 1e-12) const {
    double scale = 0.0;
    for (const auto& [k, c] : terms_) scale = std::max(scale, std::abs(c));
    for (const auto& [k, c] : terms_)
      if (std::abs(c.imag()) > tol * std::max(1.0, scale)) return false;
    return true;
  }

  void prune(double rel_tol = 1e-14) {
    double scale = 0.0;
    for (const auto& [k, c] : terms_) scale = std::max(scale, std::abs(c));
    const double cut = rel_tol * scale;
    for (auto it = terms_.begin(); it != terms_.end();)
      it = std::abs(it->second) <= cut ? terms_.erase(it) : std::next(it);
  }

  PauliOperator& operator+=(const PauliOperator& o) {
    num_qubits_ = std::max(num_qubits_, o.num_qubits_);
    for (const auto& [k, c] : o.terms_) terms_[k] += c;
    return *this;
  }

  // Dense matrix on the full 2^n space; qubit q acts on bit q of the basis
  // index. Intended for small-n cross-checks.
  Eigen::MatrixXcd to_matrix() const {
    if (num_qubits_ > 12)
      throw std::invalid_argument("PauliOperator::to_matrix: too many qubits");
    const int dim = 1 << num_qubits_;
    Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(dim, dim);
    for (const auto& [k, c] : terms_) {
      const std::uint32_t xm = x_mask(k), zm = z_mask(k);
      for (int col = 0; col < dim; ++col) {
        const int row = col ^ static_cast<int>(xm);
        // phase: Z contributes (-1)^bit on the input; Y = i X Z contributes i.
        Coeff phase(1.0, 0.0);
        for (int q = 0; q < num_qubits_; ++q) {
          const bool x = xm & (1u << q), z = zm & (1u << q), bit = col & (1 << q);
          if (x && z) phase *= bit ? Coeff(0, -1) : Coeff(0, 1);  // Y|b> = i(-1)^b|1-b>
          else if (z && bit) phase = -phase;
        }
        m(row, col) += c * phase;
      }
    }
    return m;
  }

 private:
  int num_qubits_ = 0;
  std::unordered_map<Key, Coeff> terms_;

  friend PauliOperator pauli_product(const PauliOperator&, const PauliOperator&);
};

namespace detail {

// Phase exponents g (powers of i) for single-qubit products:
// codes 0=I, 1=X, 2=Z, 3=Y; sigma_a sigma_b = i^g sigma_(a xor b).
inline constexpr std::array<std::array<int, 4>, 4> kPauliPhase = {{
    {0, 0, 0, 0},
    {0, 0, 3, 1},  // X*Z = -iY, X*Y = iZ
    {0, 1, 0, 3},  // Z*X = iY,  Z*Y = -iX
    {0, 3, 1, 0},  // Y*X = -iZ, Y*Z = iX
}};

inline std::complex<double> string_product_phase(std::uint32_t x1, std::uint32_t z1,
                                                 std::uint32_t x2, std::uint32_t z2) {
  int g = 0;
  std::uint32_t support = x1 | z1 | x2 | z2;
  while (support) {
    const int q = std::countr_zero(support);
    support &= support - 1;
    const int c1 = ((x1 >> q) & 1u) | (((z1 >> q) & 1u) << 1);
    const int c2 = ((x2 >> q) & 1u) | (((z2 >> q) & 1u) << 1);
    g = (g + kPauliPhase[c1][c2]) & 3;
  }
  constexpr std::complex<double> kI(0.0, 1.0);
  switch (g) {
    case 0: return {1.0, 0.0};
    case 1: return kI;
    case 2: return {-1.0, 0.0};
    default: return -kI;
  }
}

}  // namespace detail

inline PauliOperator pauli_product(const PauliOperator& a, const PauliOperator& b) {
  PauliOperator out(std::max(a.num_qubits(), b.num_qubits()));
  for (const auto& [ka, ca] : a.terms())
    for (const auto& [kb, cb] : b.terms()) {
      const std::uint32_t x1 = PauliOperator::x_mask(ka), z1 = PauliOperator::z_mask(ka);
      const std::uint32_t x2 = PauliOperator::x_mask(kb), z2 = PauliOperator::z_mask(kb);
      const std::complex<double> phase = detail::string_product_phase(x1, z1, x2, z2);
      out.terms_[PauliOperator::make_key(x1 ^ x2, z1 ^ z2)] += ca * cb * phase;
    }
  out.prune();
  return out;
}

// Jordan-Wigner image of a normal-ordered fermionic operator:
//   a_p      -> (prod_{j<p} Z_j) (X_p + i Y_p)/2,
//   a^dag_p  -> (prod_{j<p} Z_j) (X_p - i Y_p)/2.
inline PauliOperator jordan_wigner(const NormalOrderedOperator& op, int num_qubits) {
  if (num_qubits > PauliOperator::kMaxQubits)
    throw std::invalid_argument("jordan_wigner: supported for N <= 14 qubits");
  const auto ladder_image = [](int p, bool dagger) {
    PauliOperator img;
    const std::uint32_t zstring = (1u << p) - 1;
    img.add_term(1u << p, zstring, {0.5, 0.0});
    img.add_term(1u << p, zstring | (1u << p), dagger ? std::complex<double>(0.0, -0.5)
                                                      : std::complex<double>(0.0, 0.5));
    return img;
  };

  PauliOperator out(num_qubits);
  for (const auto& [key, coeff] : op.terms()) {
    PauliOperator acc(num_qubits);
    acc.add_term(0, 0, coeff);
    for (const detail::LadderOp& lop : detail::ops_of_key(key)) {
      if (lop.index >= num_qubits)
        throw std::invalid_argument("jordan_wigner: operator touches mode beyond qubit count");
      acc = pauli_product(acc, ladder_image(lop.index, lop.dagger));
    }
    out += acc;
  }
  out.prune();
  return out;
}

}  // namespace pwtrotter
