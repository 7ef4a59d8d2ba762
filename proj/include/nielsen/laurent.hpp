#pragma once

#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "nielsen/errors.hpp"
#include "nielsen/integers.hpp"
#include "nielsen/words.hpp"

namespace nielsen {

// Exponent vector of a Laurent monomial t_1^{v_1} ... t_n^{v_n}.
using ExpVec = std::vector<long long>;

// Multivariate Laurent polynomial over Z, the abelianized group ring
// Z[t_1^{+-1}, ..., t_n^{+-1}]. Terms are kept in a map keyed by exponent
// vector; zero coefficients are never stored.
class LaurentPoly {
 public:
  LaurentPoly() = default;

  static LaurentPoly zero(int vars) {
    check_vars(vars);
    LaurentPoly p;
    p.vars_ = vars;
    return p;
  }

  static LaurentPoly one(int vars) { return monomial(vars, ExpVec(vars, 0)); }

  static LaurentPoly monomial(int vars, ExpVec exps, Int c = 1) {
    check_vars(vars);
    if (static_cast<int>(exps.size()) != vars)
      throw RankMismatchError("exponent vector length does not match variable count");
    LaurentPoly p;
    p.vars_ = vars;
    if (c != 0) p.terms_[exps] = c;
    return p;
  }

  static LaurentPoly variable(int vars, int i, long long e = 1) {
    check_vars(vars);
    if (i < 1 || i > vars) throw InputError("variable index out of range");
    ExpVec v(vars, 0);
    v[i - 1] = e;
    return monomial(vars, std::move(v));
  }

  int vars() const { return vars_; }
  const std::map<ExpVec, Int>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  void add_term(const ExpVec& v, const Int& c) {
    if (static_cast<int>(v.size()) != vars_)
      throw RankMismatchError("exponent vector length does not match variable count");
    accumulate(v, c);
  }

  friend LaurentPoly operator+(const LaurentPoly& a, const LaurentPoly& b) {
    check_pair(a, b);
    LaurentPoly r = a;
    for (const auto& [v, c] : b.terms_) r.accumulate(v, c);
    return r;
  }

  friend LaurentPoly operator-(const LaurentPoly& a, const LaurentPoly& b) {
    check_pair(a, b);
    LaurentPoly r = a;
    for (const auto& [v, c] : b.terms_) r.accumulate(v, -c);
    return r;
  }

  LaurentPoly operator-() const {
    LaurentPoly r = zero(vars_);
    for (const auto& [v, c] : terms_) r.terms_[v] = -c;
    return r;
  }

  friend LaurentPoly operator*(const LaurentPoly& a, const LaurentPoly& b) {
    check_pair(a, b);
    LaurentPoly r = zero(a.vars_);
    ExpVec sum(a.vars_);
    for (const auto& [va, ca] : a.terms_)
      for (const auto& [vb, cb] : b.terms_) {
        for (int i = 0; i < a.vars_; ++i) sum[i] = va[i] + vb[i];
        r.accumulate(sum, ca * cb);
      }
    return r;
  }

  friend LaurentPoly operator*(const Int& c, const LaurentPoly& a) {
    LaurentPoly r = zero(a.vars_);
    if (c == 0) return r;
    for (const auto& [v, cv] : a.terms_) r.terms_[v] = c * cv;
    return r;
  }

  friend bool operator==(const LaurentPoly& a, const LaurentPoly& b) = default;

  // Requires the polynomial to be exactly one term with coefficient +-1;
  // returns (sign, exponent vector).
  std::pair<int, ExpVec> as_signed_monomial() const {
    if (terms_.size() != 1)
      throw NotMonomialError("expected a single monomial, found " +
                             std::to_string(terms_.size()) + " terms");
    const auto& [v, c] = *terms_.begin();
    if (c != 1 && c != -1)
      throw NotMonomialError("monomial coefficient " + c.str() + " is not +-1");
    return {c == 1 ? 1 : -1, v};
  }

  // Ring endomorphism t^v -> t^{M v} for an integer matrix M (column j is
  // the image exponent vector of t_j).
  LaurentPoly substitute(const std::vector<std::vector<long long>>& M) const {
    if (static_cast<int>(M.size()) != vars_)
      throw RankMismatchError("substitution matrix has wrong size");
    LaurentPoly r = zero(vars_);
    ExpVec image(vars_);
    for (const auto& [v, c] : terms_) {
      for (int i = 0; i < vars_; ++i) {
        long long s = 0;
        for (int j = 0; j < vars_; ++j) s += M[i][j] * v[j];
        image[i] = s;
      }
      r.accumulate(image, c);
    }
    return r;
  }

 private:
  static void check_vars(int vars) {
    if (vars < 1) throw InputError("variable count must be at least 1");
  }
  static void check_pair(const LaurentPoly& a, const LaurentPoly& b) {
    if (a.vars_ != b.vars_)
      throw RankMismatchError("Laurent polynomials have different variable counts");
  }
  void accumulate(const ExpVec& v, const Int& c) {
    if (c == 0) return;
    auto it = terms_.find(v);
    if (it == terms_.end()) {
      terms_.emplace(v, c);
    } else {
      it->second += c;
      if (it->second == 0) terms_.erase(it);
    }
  }

  int vars_ = 0;
  std::map<ExpVec, Int> terms_;
};

// Abelianization Z[F_n] -> Z[t_i^{+-1}]: x_i -> t_i on words, extended
// linearly. Distinct words may collide, so coefficients can cancel.
inline LaurentPoly abelianize(const GroupRingElement& a) {
  LaurentPoly r = LaurentPoly::zero(a.rank());
  for (const auto& [w, c] : a.terms()) {
    ExpVec v(a.rank(), 0);
    for (const auto& s : w.syllables()) v[s.index - 1] += s.exponent;
    r.add_term(v, c);
  }
  return r;
}

// Cofactor expansion along the first column; fine for the small matrices
// (n <= 8) this library produces.
inline LaurentPoly determinant(const std::vector<std::vector<LaurentPoly>>& m) {
  size_t n = m.size();
  if (n == 0) throw InputError("determinant of empty matrix");
  for (const auto& row : m)
    if (row.size() != n) throw InputError("determinant requires a square matrix");
  int vars = m[0][0].vars();
  if (n == 1) return m[0][0];
  LaurentPoly det = LaurentPoly::zero(vars);
  for (size_t i = 0; i < n; ++i) {
    if (m[i][0].is_zero()) continue;
    std::vector<std::vector<LaurentPoly>> minor;
    minor.reserve(n - 1);
    for (size_t r = 0; r < n; ++r) {
      if (r == i) continue;
      minor.emplace_back(m[r].begin() + 1, m[r].end());
    }
    LaurentPoly term = m[i][0] * determinant(minor);
    det = (i % 2 == 0) ? det + term : det - term;
  }
  return det;
}

inline std::string to_string(const LaurentPoly& p) {
  if (p.is_zero()) return "0";
  std::ostringstream out;
  bool first = true;
  for (const auto& [v, c] : p.terms()) {
    if (!first) out << (c > 0 ? " + " : " - ");
    else if (c < 0) out << '-';
    first = false;
    Int mag = abs(c);
    bool constant = true;
    for (long long e : v) constant = constant && e == 0;
    if (mag != 1 || constant) {
      out << mag.str();
      if (!constant) out << '*';
    }
    bool leading = true;
    for (size_t i = 0; i < v.size(); ++i) {
      if (v[i] == 0) continue;
      if (!leading) out << '*';
      leading = false;
      out << 't' << i + 1;
      if (v[i] != 1) out << '^' << v[i];
    }
  }
  return out.str();
}

}  // namespace nielsen
