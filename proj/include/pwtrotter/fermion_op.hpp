#pragma once

#include <Eigen/Dense>
#include <bit>
#include <complex>
#include <cstdint>
#include <stdexcept>
#include <unordered_map>
#include <utility>
#include <vector>

namespace pwtrotter {

// Second-quantized operator kept in normal order. Each term is
//   coeff * a^dag_{c1} ... a^dag_{ck} a_{a1} ... a_{am}
// with c1 < ... < ck and a1 < ... < am; the permutation parity of any
// reordering is absorbed into the coefficient. Because the index tuples are
// strictly ascending, a pair of bitmasks identifies a term uniquely.
class NormalOrderedOperator {
 public:
  static constexpr int kMaxModes = 20;

  using Key = std::uint64_t;  // (creation mask << 32) | annihilation mask
  using Coeff = std::complex<double>;

  NormalOrderedOperator() = default;
  explicit NormalOrderedOperator(int num_modes) : num_modes_(num_modes) {
    if (num_modes < 0 || num_modes > kMaxModes)
      throw std::invalid_argument("NormalOrderedOperator: supported for 0 <= modes <= 20");
  }

  static Key make_key(std::uint32_t cmask, std::uint32_t amask) {
    return (static_cast<Key>(cmask) << 32) | amask;
  }
  static std::uint32_t creation_mask(Key k) { return static_cast<std::uint32_t>(k >> 32); }
  static std::uint32_t annihilation_mask(Key k) { return static_cast<std::uint32_t>(k); }

  int num_modes() const { return num_modes_; }
  const std::unordered_map<Key, Coeff>& terms() const { return terms_; }
  bool empty() const { return terms_.empty(); }

  void add_term(std::uint32_t cmask, std::uint32_t amask, Coeff c) {
    terms_[make_key(cmask, amask)] += c;
  }

  // One-body part: sum_pq A_pq a^dag_p a_q.
  static NormalOrderedOperator from_quadratic(const Eigen::MatrixXcd& a) {
    const int n = static_cast<int>(a.rows());
    if (a.cols() != n) throw std::invalid_argument("from_quadratic: matrix must be square");
    if (n > kMaxModes) throw std::invalid_argument("from_quadratic: too many modes");
    NormalOrderedOperator op(n);
    for (int p = 0; p < n; ++p)
      for (int q = 0; q < n; ++q)
        if (a(p, q) != Coeff(0.0)) op.add_term(1u << p, 1u << q, a(p, q));
    op.prune();
    return op;
  }

  // Density part: sum_p U_p n_p + sum_{p != q} V_pq n_p n_q. Note that for
  // p < q the normal-ordered form of n_p n_q is -a^dag_p a^dag_q a_p a_q.
  static NormalOrderedOperator from_density_density(const Eigen::MatrixXd& v,
                                                    const Eigen::VectorXd& u) {
    const int n = static_cast<int>(v.rows());
    if (v.cols() != n || u.size() != n)
      throw std::invalid_argument("from_density_density: inconsistent dimensions");
    if (n > kMaxModes) throw std::invalid_argument("from_density_density: too many modes");
    NormalOrderedOperator op(n);
    for (int p = 0; p < n; ++p)
      if (u[p] != 0.0) op.add_term(1u << p, 1u << p, u[p]);
    for (int p = 0; p < n; ++p)
      for (int q = p + 1; q < n; ++q) {
        const double c = v(p, q) + v(q, p);
        const std::uint32_t mask = (1u << p) | (1u << q);
        if (c != 0.0) op.add_term(mask, mask, -c);
      }
    op.prune();
    return op;
  }

  NormalOrderedOperator& operator+=(const NormalOrderedOperator& o) {
    merge_modes(o);
    for (const auto& [k, c] : o.terms_) terms_[k] += c;
    prune();
    return *this;
  }
  NormalOrderedOperator& operator-=(const NormalOrderedOperator& o) {
    merge_modes(o);
    for (const auto& [k, c] : o.terms_) terms_[k] -= c;
    prune();
    return *this;
  }
  NormalOrderedOperator& operator*=(Coeff s) {
    for (auto& [k, c] : terms_) c *= s;
    prune();
    return *this;
  }
  friend NormalOrderedOperator operator+(NormalOrderedOperator a, const NormalOrderedOperator& b) {
    a += b;
    return a;
  }
  friend NormalOrderedOperator operator-(NormalOrderedOperator a, const NormalOrderedOperator& b) {
    a -= b;
    return a;
  }
  friend NormalOrderedOperator operator*(Coeff s, NormalOrderedOperator a) {
    a *= s;
    return a;
  }

  NormalOrderedOperator dagger() const {
    NormalOrderedOperator out(num_modes_);
    for (const auto& [k, c] : terms_) {
      const std::uint32_t cm = creation_mask(k), am = annihilation_mask(k);
      // (a^dag_{c...} a_{a...})^dag reverses both blocks; re-sorting each
      // ascending contributes parity (k choose 2) + (m choose 2).
      const int kc = std::popcount(cm), ka = std::popcount(am);
      const int swaps = kc * (kc - 1) / 2 + ka * (ka - 1) / 2;
      const double sign = (swaps % 2 == 0) ? 1.0 : -1.0;
      out.terms_[make_key(am, cm)] += sign * std::conj(c);
    }
    out.prune();
    return out;
  }

  // Sum of |coefficient| over the normal-ordered terms.
  double one_norm() const {
    double s = 0.0;
    for (const auto& [k, c] : terms_) s += std::abs(c);
    return s;
  }

  double max_abs_coeff() const {
    double m = 0.0;
    for (const auto& [k, c] : terms_) m = std::max(m, std::abs(c));
    return m;
  }

  // Drops terms that are zero up to rounding noise (relative threshold).
  void prune(double rel_tol = 1e-14) {
    const double cut = rel_tol * max_abs_coeff();
    for (auto it = terms_.begin(); it != terms_.end();)
      it = std::abs(it->second) <= cut ? terms_.erase(it) : std::next(it);
  }

 private:
  void merge_modes(const NormalOrderedOperator& o) {
    num_modes_ = std::max(num_modes_, o.num_modes_);
  }

  int num_modes_ = 0;
  std::unordered_map<Key, Coeff> terms_;

  friend NormalOrderedOperator normal_ordered_product(const NormalOrderedOperator&,
                                                      const NormalOrderedOperator&);
};

namespace detail {

struct LadderOp {
  std::uint8_t index;
  bool dagger;
};

// Rewrites an arbitrary ladder-operator string into canonical normal order
// with a worklist of branch terms ({a_i, a^dag_j} = delta_ij spawns the
// contraction branch).
inline void normal_order_into(std::unordered_map<std::uint64_t, std::complex<double>>& acc,
                              std::vector<LadderOp> ops, std::complex<double> coeff) {
  struct Pending {
    std::complex<double> coeff;
    std::vector<LadderOp> ops;
  };
  std::vector<Pending> work;
  work.push_back({coeff, std::move(ops)});
  while (!work.empty()) {
    Pending t = std::move(work.back());
    work.pop_back();
    bool changed = false;
    for (std::size_t i = 0; i + 1 < t.ops.size(); ++i) {
      const LadderOp a = t.ops[i], b = t.ops[i + 1];
      if (!a.dagger && b.dagger) {
        if (a.index == b.index) {
          Pending contracted{t.coeff, t.ops};
          contracted.ops.erase(contracted.ops.begin() + i, contracted.ops.begin() + i + 2);
          work.push_back(std::move(contracted));
        }
        std::swap(t.ops[i], t.ops[i + 1]);
        t.coeff = -t.coeff;
        work.push_back(std::move(t));
        changed = true;
        break;
      }
      if (a.dagger == b.dagger && a.index >= b.index) {
        if (a.index == b.index) {
          changed = true;  // repeated creation/annihilation: term vanishes
          break;
        }
        std::swap(t.ops[i], t.ops[i + 1]);
        t.coeff = -t.coeff;
        work.push_back(std::move(t));
        changed = true;
        break;
      }
    }
    if (changed) continue;
    std::uint32_t cmask = 0, amask = 0;
    for (const LadderOp& op : t.ops) (op.dagger ? cmask : amask) |= 1u << op.index;
    acc[NormalOrderedOperator::make_key(cmask, amask)] += t.coeff;
  }
}

inline std::vector<LadderOp> ops_of_key(std::uint64_t key) {
  std::vector<LadderOp> ops;
  const std::uint32_t cm = NormalOrderedOperator::creation_mask(key);
  const std::uint32_t am = NormalOrderedOperator::annihilation_mask(key);
  for (int i = 0; i < 32; ++i)
    if (cm & (1u << i)) ops.push_back({static_cast<std::uint8_t>(i), true});
  for (int i = 0; i < 32; ++i)
    if (am & (1u << i)) ops.push_back({static_cast<std::uint8_t>(i), false});
  return ops;
}

}  // namespace detail

inline NormalOrderedOperator normal_ordered_product(const NormalOrderedOperator& a,
                                                    const NormalOrderedOperator& b) {
  NormalOrderedOperator out(std::max(a.num_modes(), b.num_modes()));
  for (const auto& [ka, ca] : a.terms())
    for (const auto& [kb, cb] : b.terms()) {
      std::vector<detail::LadderOp> ops = detail::ops_of_key(ka);
      const std::vector<detail::LadderOp> rhs = detail::ops_of_key(kb);
      ops.insert(ops.end(), rhs.begin(), rhs.end());
      detail::normal_order_into(out.terms_, std::move(ops), ca * cb);
    }
  out.prune();
  return out;
}

inline NormalOrderedOperator commutator(const NormalOrderedOperator& a,
                                        const NormalOrderedOperator& b) {
  return normal_ordered_product(a, b) - normal_ordered_product(b, a);
}

}  // namespace pwtrotter
