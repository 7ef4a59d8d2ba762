#pragma once

#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "nielsen/automorphisms.hpp"
#include "nielsen/errors.hpp"
#include "nielsen/integers.hpp"

namespace nielsen {

// Coefficient ring for the module V: either Z or Z/m. The main theorem
// needs Z or an odd modulus; even moduli are allowed for exploration but
// flagged as outside the hypothesis.
class RingSpec {
 public:
  static RingSpec integers() { return RingSpec(0); }

  static RingSpec modulus(unsigned long long m) {
    if (m < 2) throw InputError("modulus must be at least 2");
    return RingSpec(m);
  }

  bool is_integers() const { return m_ == 0; }
  unsigned long long modulus() const { return m_; }
  bool is_prime_field() const { return m_ != 0 && is_prime_u64(m_); }
  bool within_theorem_hypothesis() const { return m_ == 0 || m_ % 2 == 1; }

  Int reduce(const Int& a) const { return m_ == 0 ? a : mod_reduce(a, Int(m_)); }

  std::string str() const {
    return m_ == 0 ? "z" : "mod:" + std::to_string(m_);
  }

  friend bool operator==(const RingSpec&, const RingSpec&) = default;

 private:
  explicit RingSpec(unsigned long long m) : m_(m) {}
  unsigned long long m_;
};

inline RingSpec parse_ring(const std::string& text) {
  if (text == "z" || text == "Z") return RingSpec::integers();
  const std::string prefix = "mod:";
  if (text.rfind(prefix, 0) == 0) {
    const std::string num = text.substr(prefix.size());
    if (num.empty()) throw ParseError("missing modulus in '" + text + "'");
    for (char c : num)
      if (!std::isdigit(static_cast<unsigned char>(c)))
        throw ParseError("modulus must be a positive integer in '" + text + "'");
    unsigned long long m = std::stoull(num);
    if (m < 2) throw ParseError("modulus must be at least 2");
    return RingSpec::modulus(m);
  }
  throw ParseError("ring must be 'z' or 'mod:<m>', got '" + text + "'");
}

// Basis index of V = H^* (x) wedge^2 H: e^i_{j,k} with 1 <= i <= n and
// 1 <= j < k <= n.
struct VBasisIndex {
  int i, j, k;
  friend auto operator<=>(const VBasisIndex&, const VBasisIndex&) = default;
};

// Enumerates the basis in (i, j, k) lexicographic order and converts between
// index triples and flat positions.
class VBasis {
 public:
  explicit VBasis(int n) : n_(n) {
    if (n < 2) throw InputError("V needs rank at least 2");
    for (int i = 1; i <= n; ++i)
      for (int j = 1; j < n; ++j)
        for (int k = j + 1; k <= n; ++k) list_.push_back({i, j, k});
  }

  int n() const { return n_; }
  int dim() const { return static_cast<int>(list_.size()); }
  const VBasisIndex& at(int pos) const { return list_.at(pos); }

  int position(const VBasisIndex& idx) const {
    int pairs = n_ * (n_ - 1) / 2;
    int pair_pos = (idx.j - 1) * (2 * n_ - idx.j) / 2 + (idx.k - idx.j - 1);
    return (idx.i - 1) * pairs + pair_pos;
  }

 private:
  int n_;
  std::vector<VBasisIndex> list_;
};

// Element of V over a RingSpec. Coefficients are kept ring-reduced and
// nonzero; wedge indices are kept canonical (j < k).
class VElement {
 public:
  VElement() : ring_(RingSpec::integers()) {}

  static VElement zero(int n, const RingSpec& ring) {
    if (n < 2) throw InputError("V needs rank at least 2");
    VElement v;
    v.n_ = n;
    v.ring_ = ring;
    return v;
  }

  // c * e^i_{j,k}, canonicalizing j > k by a sign flip; j == k is invalid.
  static VElement term(int n, const RingSpec& ring, int i, int j, int k, Int c) {
    VElement v = zero(n, ring);
    v.add_term(i, j, k, c);
    return v;
  }

  int n() const { return n_; }
  const RingSpec& ring() const { return ring_; }
  const std::map<VBasisIndex, Int>& coeffs() const { return coeffs_; }
  bool is_zero() const { return coeffs_.empty(); }

  Int coefficient(int i, int j, int k) const {
    int sign = 1;
    if (j > k) { std::swap(j, k); sign = -1; }
    auto it = coeffs_.find({i, j, k});
    if (it == coeffs_.end()) return 0;
    return ring_.reduce(sign * it->second);
  }

  void add_term(int i, int j, int k, const Int& c) {
    if (i < 1 || i > n_ || j < 1 || j > n_ || k < 1 || k > n_)
      throw InputError("V basis index out of range");
    if (j == k) throw InputError("wedge index pair must be distinct");
    Int v = c;
    if (j > k) { std::swap(j, k); v = -v; }
    v = ring_.reduce(v);
    if (v == 0) return;
    VBasisIndex idx{i, j, k};
    auto it = coeffs_.find(idx);
    if (it == coeffs_.end()) {
      coeffs_.emplace(idx, v);
    } else {
      it->second = ring_.reduce(it->second + v);
      if (it->second == 0) coeffs_.erase(it);
    }
  }

  friend VElement operator+(const VElement& a, const VElement& b) {
    check_pair(a, b);
    VElement r = a;
    for (const auto& [idx, c] : b.coeffs_) r.add_term(idx.i, idx.j, idx.k, c);
    return r;
  }

  friend VElement operator-(const VElement& a, const VElement& b) {
    check_pair(a, b);
    VElement r = a;
    for (const auto& [idx, c] : b.coeffs_) r.add_term(idx.i, idx.j, idx.k, -c);
    return r;
  }

  VElement operator-() const {
    VElement r = zero(n_, ring_);
    for (const auto& [idx, c] : coeffs_) r.add_term(idx.i, idx.j, idx.k, -c);
    return r;
  }

  friend VElement operator*(const Int& c, const VElement& a) {
    VElement r = zero(a.n_, a.ring_);
    for (const auto& [idx, cv] : a.coeffs_) r.add_term(idx.i, idx.j, idx.k, c * cv);
    return r;
  }

  friend bool operator==(const VElement& a, const VElement& b) = default;

  std::vector<Int> to_dense() const {
    VBasis basis(n_);
    std::vector<Int> out(basis.dim(), Int(0));
    for (const auto& [idx, c] : coeffs_) out[basis.position(idx)] = c;
    return out;
  }

  static VElement from_dense(int n, const RingSpec& ring, const std::vector<Int>& dense) {
    VBasis basis(n);
    if (static_cast<int>(dense.size()) != basis.dim())
      throw RankMismatchError("dense vector length does not match dim V");
    VElement v = zero(n, ring);
    for (int p = 0; p < basis.dim(); ++p) {
      const VBasisIndex& idx = basis.at(p);
      v.add_term(idx.i, idx.j, idx.k, dense[p]);
    }
    return v;
  }

  // Same element with coefficients reduced into another ring (Z -> Z/m or
  // Z/m with the same m; other conversions are rejected).
  VElement with_ring(const RingSpec& ring) const {
    if (!ring_.is_integers() && !(ring == ring_))
      throw InputError("cannot convert between different moduli");
    VElement v = zero(n_, ring);
    for (const auto& [idx, c] : coeffs_) v.add_term(idx.i, idx.j, idx.k, c);
    return v;
  }

 private:
  static void check_pair(const VElement& a, const VElement& b) {
    if (a.n_ != b.n_) throw RankMismatchError("V elements have different ranks");
    if (!(a.ring_ == b.ring_)) throw RankMismatchError("V elements have different rings");
  }

  int n_ = 2;
  RingSpec ring_;
  std::map<VBasisIndex, Int> coeffs_;
};

inline std::string to_string(const VElement& v) {
  if (v.is_zero()) return "0";
  std::ostringstream out;
  bool first = true;
  for (const auto& [idx, c] : v.coeffs()) {
    if (!first) out << (c > 0 ? " + " : " - ");
    else if (c < 0) out << '-';
    first = false;
    Int mag = abs(c);
    if (mag != 1) out << mag.str() << '*';
    out << "e^" << idx.i << "_{" << idx.j << ',' << idx.k << '}';
  }
  return out.str();
}

// Adjugate-based inverse of a unimodular integer matrix.
inline std::vector<std::vector<long long>> unimodular_inverse(
    const std::vector<std::vector<long long>>& m) {
  int n = static_cast<int>(m.size());
  Int det = int_matrix_determinant(m);
  if (det != 1 && det != -1)
    throw NotAnAutomorphism("matrix is not unimodular, determinant " + det.str());
  std::vector<std::vector<long long>> inv(n, std::vector<long long>(n));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      // Cofactor C_{ji} / det.
      std::vector<std::vector<long long>> minor;
      minor.reserve(n - 1);
      for (int r = 0; r < n; ++r) {
        if (r == j) continue;
        std::vector<long long> row;
        row.reserve(n - 1);
        for (int c = 0; c < n; ++c)
          if (c != i) row.push_back(m[r][c]);
        minor.push_back(std::move(row));
      }
      Int cof = minor.empty() ? Int(1) : int_matrix_determinant(minor);
      if ((i + j) % 2 == 1) cof = -cof;
      Int entry = det == 1 ? cof : -cof;
      inv[i][j] = static_cast<long long>(entry);
    }
  return inv;
}

// Matrices realizing the left action of sigma on H and H^*:
// sigma . e_i has coordinates column i of M = rho(sigma)^-1, and
// sigma . e_i^* has coordinates column i of Mdual = rho(sigma)^T.
struct HActionData {
  std::vector<std::vector<long long>> M;
  std::vector<std::vector<long long>> Mdual;
};

inline HActionData h_action(const Automorphism& a) {
  auto r = rho(a);
  HActionData d;
  d.M = unimodular_inverse(r);
  int n = a.n();
  d.Mdual.assign(n, std::vector<long long>(n));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) d.Mdual[i][j] = r[j][i];
  return d;
}

inline HActionData h_action_inverse(const Automorphism& a) {
  auto r = rho(a);
  HActionData d;
  d.M = r;
  auto rinv = unimodular_inverse(r);
  int n = a.n();
  d.Mdual.assign(n, std::vector<long long>(n));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) d.Mdual[i][j] = rinv[j][i];
  return d;
}

// e^i_{j,k} -> sum_a Mdual[a][i] sum_{b<c} (M[b][j] M[c][k] - M[b][k] M[c][j]) e^a_{b,c}
inline VElement act(const HActionData& d, const VElement& v) {
  int n = v.n();
  if (static_cast<int>(d.M.size()) != n)
    throw RankMismatchError("action matrix size does not match V rank");
  VElement out = VElement::zero(n, v.ring());
  for (const auto& [idx, coeff] : v.coeffs()) {
    int i = idx.i - 1, j = idx.j - 1, k = idx.k - 1;
    for (int b = 0; b < n; ++b)
      for (int c = b + 1; c < n; ++c) {
        long long wedge = d.M[b][j] * d.M[c][k] - d.M[b][k] * d.M[c][j];
        if (wedge == 0) continue;
        for (int a = 0; a < n; ++a) {
          if (d.Mdual[a][i] == 0) continue;
          out.add_term(a + 1, b + 1, c + 1, coeff * Int(d.Mdual[a][i] * wedge));
        }
      }
  }
  return out;
}

inline VElement act(const Automorphism& a, const VElement& v) {
  return act(h_action(a), v);
}

inline VElement act_inverse(const Automorphism& a, const VElement& v) {
  return act(h_action_inverse(a), v);
}

// Sparse columns of the dim V x dim V action matrix of sigma: cols[p] lists
// (row position, coefficient) for the image of basis vector p.
inline std::vector<std::vector<std::pair<int, long long>>> act_columns(const HActionData& d,
                                                                       int n) {
  VBasis basis(n);
  std::vector<std::vector<std::pair<int, long long>>> cols(basis.dim());
  RingSpec z = RingSpec::integers();
  for (int p = 0; p < basis.dim(); ++p) {
    const VBasisIndex& idx = basis.at(p);
    VElement image = act(d, VElement::term(n, z, idx.i, idx.j, idx.k, 1));
    for (const auto& [r, c] : image.coeffs())
      cols[p].emplace_back(basis.position(r), static_cast<long long>(c));
  }
  return cols;
}

inline std::vector<std::vector<std::pair<int, long long>>> act_columns(const Automorphism& a) {
  return act_columns(h_action(a), a.n());
}

// Embedding H -> V from the abelianized inner automorphisms:
// e_i -> sum_{j != i} e^j_{j,i} (with j > i entries canonicalized).
inline VElement embed_basis(int n, const RingSpec& ring, int i) {
  if (i < 1 || i > n) throw InputError("basis index out of range");
  VElement v = VElement::zero(n, ring);
  for (int j = 1; j <= n; ++j)
    if (j != i) v.add_term(j, j, i, 1);
  return v;
}

inline VElement embed_H(int n, const RingSpec& ring, const std::vector<Int>& h) {
  if (static_cast<int>(h.size()) != n)
    throw RankMismatchError("H vector length does not match rank");
  VElement v = VElement::zero(n, ring);
  for (int i = 1; i <= n; ++i)
    if (h[i - 1] != 0) v = v + h[i - 1] * embed_basis(n, ring, i);
  return v;
}

}  // namespace nielsen
