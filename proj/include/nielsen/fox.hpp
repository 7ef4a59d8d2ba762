#pragma once

#include <vector>

#include "nielsen/automorphisms.hpp"
#include "nielsen/errors.hpp"
#include "nielsen/factorization.hpp"
#include "nielsen/laurent.hpp"
#include "nielsen/vmodule.hpp"
#include "nielsen/words.hpp"

namespace nielsen {

// Fox free derivative d w / d x_j in Z[F_n]: d(x_j)/dx_j = 1,
// d(x_j^-1)/dx_j = -x_j^-1, d(uv) = du + u dv.
inline GroupRingElement fox_derivative(const FreeWord& w, int j) {
  int n = w.rank();
  if (j < 1 || j > n) throw InputError("derivative index out of range");
  GroupRingElement deriv = GroupRingElement::zero(n);
  FreeWord prefix = FreeWord::identity(n);
  for (const auto& s : w.syllables()) {
    if (s.index == j) {
      // d(x^e)/dx = 1 + x + ... + x^{e-1} for e > 0,
      //           = -(x^-1 + ... + x^e) for e < 0.
      GroupRingElement block = GroupRingElement::zero(n);
      if (s.exponent > 0) {
        for (long long t = 0; t < s.exponent; ++t)
          block.add_term(FreeWord::generator(n, j, t), 1);
      } else {
        for (long long t = 1; t <= -s.exponent; ++t)
          block.add_term(FreeWord::generator(n, j, -t), -1);
      }
      deriv = deriv + GroupRingElement::from_word(prefix) * block;
    }
    prefix = prefix * FreeWord::generator(n, s.index, s.exponent);
  }
  return deriv;
}

// Magnus representation twisted by the inverse: entry (i, j) is the
// abelianized bar of d(x_j^{sigma^-1}) / d x_i.
inline std::vector<std::vector<LaurentPoly>> magnus_representation_of_inverse_images(
    const Automorphism& sigma_inverse) {
  int n = sigma_inverse.n();
  std::vector<std::vector<LaurentPoly>> m(n, std::vector<LaurentPoly>(n, LaurentPoly::zero(n)));
  for (int j = 1; j <= n; ++j) {
    const FreeWord& image = sigma_inverse.image(j);
    for (int i = 1; i <= n; ++i)
      m[i - 1][j - 1] = abelianize(bar(fox_derivative(image, i)));
  }
  return m;
}

inline std::vector<std::vector<LaurentPoly>> magnus_representation(const Automorphism& sigma) {
  return magnus_representation_of_inverse_images(invert(sigma));
}

// Exponent vector of f_M(sigma) = sgn(sigma) det r_M(sigma), which must be a
// monomial with coefficient +1.
inline ExpVec f_M_exponent(const Automorphism& sigma) {
  LaurentPoly det = determinant(magnus_representation(sigma));
  auto [sign, exps] = det.as_signed_monomial();
  if (sign * sgn(sigma) != 1)
    throw MonomialSignError("sgn-corrected Magnus determinant has sign -1 at " +
                            to_string(det));
  return exps;
}

// f_M as a V-valued cocycle value: the monomial exponent embedded through
// H -> V.
inline VElement f_M(const Automorphism& sigma, const RingSpec& ring) {
  ExpVec v = f_M_exponent(sigma);
  std::vector<Int> h(v.size());
  for (size_t i = 0; i < v.size(); ++i) h[i] = v[i];
  return embed_H(sigma.n(), ring, h);
}

}  // namespace nielsen
