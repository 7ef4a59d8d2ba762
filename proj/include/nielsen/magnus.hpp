#pragma once

#include <utility>
#include <vector>

#include "nielsen/automorphisms.hpp"
#include "nielsen/errors.hpp"
#include "nielsen/integers.hpp"
#include "nielsen/vmodule.hpp"
#include "nielsen/words.hpp"

namespace nielsen {

// Element of the tensor algebra on e_1..e_n truncated above degree 2:
// c0 + sum_a c1[a] e_a + sum_{a,b} c2[a][b] e_a (x) e_b.
struct TensorTrunc2 {
  int n = 0;
  Int c0 = 0;
  std::vector<Int> c1;
  std::vector<std::vector<Int>> c2;

  static TensorTrunc2 zero(int n) {
    TensorTrunc2 t;
    t.n = n;
    t.c1.assign(n, Int(0));
    t.c2.assign(n, std::vector<Int>(n, Int(0)));
    return t;
  }

  static TensorTrunc2 one(int n) {
    TensorTrunc2 t = zero(n);
    t.c0 = 1;
    return t;
  }

  friend bool operator==(const TensorTrunc2&, const TensorTrunc2&) = default;
};

inline TensorTrunc2 tt2_mul(const TensorTrunc2& a, const TensorTrunc2& b) {
  if (a.n != b.n) throw RankMismatchError("truncated tensors have different ranks");
  TensorTrunc2 r = TensorTrunc2::zero(a.n);
  r.c0 = a.c0 * b.c0;
  for (int i = 0; i < a.n; ++i) r.c1[i] = a.c0 * b.c1[i] + a.c1[i] * b.c0;
  for (int i = 0; i < a.n; ++i)
    for (int j = 0; j < a.n; ++j)
      r.c2[i][j] = a.c0 * b.c2[i][j] + a.c1[i] * b.c1[j] + a.c2[i][j] * b.c0;
  return r;
}

// (1 + a + b)^-1 = 1 - a + (a(x)a - b) for degree-1 part a and degree-2
// part b; only defined when the constant term is 1.
inline TensorTrunc2 tt2_inverse(const TensorTrunc2& a) {
  if (a.c0 != 1) throw InputError("truncated inverse needs constant term 1");
  TensorTrunc2 r = TensorTrunc2::one(a.n);
  for (int i = 0; i < a.n; ++i) r.c1[i] = -a.c1[i];
  for (int i = 0; i < a.n; ++i)
    for (int j = 0; j < a.n; ++j) r.c2[i][j] = a.c1[i] * a.c1[j] - a.c2[i][j];
  return r;
}

// A Magnus expansion, given by its values on the generators. Each value must
// have constant term 1 and degree-1 part e_i; the degree-2 part is free, and
// everything downstream of the antisymmetrization is independent of it.
struct MagnusExpansionSpec {
  int n = 0;
  std::vector<TensorTrunc2> values;

  MagnusExpansionSpec(int rank, std::vector<TensorTrunc2> vals)
      : n(rank), values(std::move(vals)) {
    if (static_cast<int>(values.size()) != n)
      throw InputError("expansion spec needs one value per generator");
    for (int i = 0; i < n; ++i) {
      if (values[i].n != n || values[i].c0 != 1)
        throw InputError("expansion value must have constant term 1");
      for (int a = 0; a < n; ++a)
        if (values[i].c1[a] != (a == i ? 1 : 0))
          throw InputError("expansion value must have degree-1 part e_i");
    }
  }

  static MagnusExpansionSpec standard(int n) {
    std::vector<TensorTrunc2> vals;
    vals.reserve(n);
    for (int i = 0; i < n; ++i) {
      TensorTrunc2 t = TensorTrunc2::one(n);
      t.c1[i] = 1;
      vals.push_back(std::move(t));
    }
    return MagnusExpansionSpec(n, std::move(vals));
  }
};

inline TensorTrunc2 expand(const MagnusExpansionSpec& theta, const FreeWord& w) {
  if (w.rank() != theta.n)
    throw RankMismatchError("word rank does not match expansion spec");
  TensorTrunc2 acc = TensorTrunc2::one(theta.n);
  for (const auto& syl : w.syllables()) {
    const TensorTrunc2& base = theta.values[syl.index - 1];
    TensorTrunc2 factor = syl.exponent > 0 ? base : tt2_inverse(base);
    long long reps = syl.exponent > 0 ? syl.exponent : -syl.exponent;
    for (long long r = 0; r < reps; ++r) acc = tt2_mul(acc, factor);
  }
  return acc;
}

// Degree-2 rows of the twisted Johnson map: row i is
//   theta2(x_i) - M theta2(x_i^sigma) M^T
// with M the left-action matrix of sigma on H (column j = coordinates of
// sigma . e_j), so the group inverse enters through M = rho(sigma)^-1 and no
// word-level inversion is needed.
inline std::vector<std::vector<std::vector<Int>>> tau1_theta(
    const MagnusExpansionSpec& theta, const Automorphism& sigma) {
  int n = sigma.n();
  if (n != theta.n)
    throw RankMismatchError("automorphism rank does not match expansion spec");
  const auto M = h_action(sigma).M;
  std::vector<std::vector<std::vector<Int>>> rows;
  rows.reserve(n);
  for (int i = 1; i <= n; ++i) {
    const auto image2 = expand(theta, sigma.image(i)).c2;
    std::vector<std::vector<Int>> row = theta.values[i - 1].c2;
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b) {
        Int twisted = 0;
        for (int c = 0; c < n; ++c) {
          if (M[a][c] == 0) continue;
          for (int d = 0; d < n; ++d) {
            if (M[b][d] == 0 || image2[c][d] == 0) continue;
            twisted += Int(M[a][c] * M[b][d]) * image2[c][d];
          }
        }
        row[a][b] -= twisted;
      }
    rows.push_back(std::move(row));
  }
  return rows;
}

// The V-valued crossed homomorphism obtained by antisymmetrizing the rows of
// tau1_theta (e_a (x) e_b -> e_a ^ e_b). Independent of the expansion spec.
inline VElement f_K(const MagnusExpansionSpec& theta, const Automorphism& sigma,
                    const RingSpec& ring) {
  auto rows = tau1_theta(theta, sigma);
  int n = sigma.n();
  VElement out = VElement::zero(n, ring);
  for (int i = 0; i < n; ++i)
    for (int a = 0; a < n; ++a)
      for (int b = a + 1; b < n; ++b) {
        Int c = rows[i][a][b] - rows[i][b][a];
        if (c != 0) out.add_term(i + 1, a + 1, b + 1, c);
      }
  return out;
}

inline VElement f_K(const Automorphism& sigma, const RingSpec& ring) {
  return f_K(MagnusExpansionSpec::standard(sigma.n()), sigma, ring);
}

// The first Johnson homomorphism on IA automorphisms: for each i the word
// x_i^-1 x_i^sigma lies in the commutator subgroup, and its antisymmetric
// degree-2 expansion coefficient is the e_i^* component in Lambda^2 H.
inline VElement tau1(const Automorphism& sigma,
                     const RingSpec& ring = RingSpec::integers()) {
  if (!is_IA(sigma))
    throw NotIAError("tau1 is only defined on IA automorphisms");
  int n = sigma.n();
  auto theta = MagnusExpansionSpec::standard(n);
  VElement out = VElement::zero(n, ring);
  for (int i = 1; i <= n; ++i) {
    FreeWord w = FreeWord::generator(n, i, -1) * sigma.image(i);
    TensorTrunc2 t = expand(theta, w);
    for (int a = 0; a < n; ++a)
      if (t.c1[a] != 0)
        throw VerifyError("tau1 word has nonzero degree-1 part");
    for (int a = 0; a < n; ++a)
      for (int b = a; b < n; ++b)
        if (t.c2[a][b] != -t.c2[b][a])
          throw VerifyError("tau1 degree-2 part is not antisymmetric");
    for (int a = 0; a < n; ++a)
      for (int b = a + 1; b < n; ++b)
        if (t.c2[a][b] != 0) out.add_term(i, a + 1, b + 1, t.c2[a][b]);
  }
  return out;
}

}  // namespace nielsen
