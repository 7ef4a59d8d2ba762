#pragma once

#include <array>
#include <string>
#include <utility>
#include <vector>

#include "nielsen/automorphisms.hpp"
#include "nielsen/errors.hpp"
#include "nielsen/fox.hpp"
#include "nielsen/magnus.hpp"
#include "nielsen/vmodule.hpp"

namespace nielsen {

// A crossed homomorphism Aut F_n -> V, stored by its values on the four
// Nielsen generators. Whether an assignment really is a cocycle is checked
// against the relator catalog by certify().
class Cocycle {
 public:
  static Cocycle from_values(int n, const RingSpec& ring, VElement on_P,
                             VElement on_Q, VElement on_S, VElement on_U,
                             std::string label) {
    Cocycle f;
    f.n_ = n;
    f.ring_ = ring;
    f.values_ = {std::move(on_P), std::move(on_Q), std::move(on_S), std::move(on_U)};
    f.label_ = std::move(label);
    for (const auto& v : f.values_)
      if (v.n() != n || !(v.ring() == ring))
        throw RankMismatchError("cocycle value has wrong rank or ring");
    return f;
  }

  int n() const { return n_; }
  const RingSpec& ring() const { return ring_; }
  const std::string& label() const { return label_; }

  const VElement& value(Gen g) const { return values_[static_cast<int>(g)]; }

  friend Cocycle operator+(const Cocycle& a, const Cocycle& b) {
    if (a.n_ != b.n_ || !(a.ring_ == b.ring_))
      throw RankMismatchError("cocycles have different ranks or rings");
    return from_values(a.n_, a.ring_, a.values_[0] + b.values_[0],
                       a.values_[1] + b.values_[1], a.values_[2] + b.values_[2],
                       a.values_[3] + b.values_[3],
                       "(" + a.label_ + "+" + b.label_ + ")");
  }

  friend Cocycle operator*(const Int& c, const Cocycle& a) {
    return from_values(a.n_, a.ring_, c * a.values_[0], c * a.values_[1],
                       c * a.values_[2], c * a.values_[3],
                       c.str() + "*" + a.label_);
  }

 private:
  int n_ = 2;
  RingSpec ring_ = RingSpec::integers();
  std::array<VElement, 4> values_;
  std::string label_;
};

namespace detail {

inline std::vector<std::vector<long long>> llmat_mul(
    const std::vector<std::vector<long long>>& a,
    const std::vector<std::vector<long long>>& b) {
  size_t n = a.size();
  std::vector<std::vector<long long>> c(n, std::vector<long long>(n, 0));
  for (size_t i = 0; i < n; ++i)
    for (size_t k = 0; k < n; ++k) {
      if (a[i][k] == 0) continue;
      for (size_t j = 0; j < n; ++j) c[i][j] += a[i][k] * b[k][j];
    }
  return c;
}

}  // namespace detail

// f(g_1 ... g_m) = sum_t act(g_1 ... g_{t-1}, f(g_t)), with
// f(g^-1) = -act(g^-1, f(g)) for inverse letters. The prefix action is
// carried as a matrix pair and updated multiplicatively.
inline VElement evaluate(const Cocycle& f, const GenWord& w) {
  int n = f.n();
  std::array<HActionData, 4> pos, neg;
  std::array<VElement, 4> neg_value;
  std::array<bool, 4> have{};
  for (const auto& letter : w) {
    int g = static_cast<int>(letter.sym);
    if (have[g]) continue;
    have[g] = true;
    pos[g] = h_action(nielsen_generator(n, letter.sym));
    Automorphism ginv = nielsen_generator_inverse(n, letter.sym);
    neg[g] = h_action(ginv);
    neg_value[g] = -act(neg[g], f.value(letter.sym));
  }

  HActionData prefix;
  prefix.M.assign(n, std::vector<long long>(n, 0));
  prefix.Mdual.assign(n, std::vector<long long>(n, 0));
  for (int i = 0; i < n; ++i) prefix.M[i][i] = prefix.Mdual[i][i] = 1;

  VElement total = VElement::zero(n, f.ring());
  for (const auto& letter : w) {
    int g = static_cast<int>(letter.sym);
    const VElement& step = letter.exp > 0 ? f.value(letter.sym) : neg_value[g];
    total = total + act(prefix, step);
    const HActionData& d = letter.exp > 0 ? pos[g] : neg[g];
    prefix.M = detail::llmat_mul(prefix.M, d.M);
    prefix.Mdual = detail::llmat_mul(prefix.Mdual, d.Mdual);
  }
  return total;
}

inline VElement evaluate_on_automorphism(const Cocycle& f, const Automorphism& sigma) {
  return evaluate(f, factorize(sigma));
}

// Relator condition: the cocycle must vanish along every catalog word that
// actually represents the identity. (At small ranks some printed words do
// not, and those impose no constraint.)
inline void certify(const Cocycle& f) {
  int n = f.n();
  for (const auto& rel : relator_catalog(n)) {
    if (!(evaluate_genword(n, rel.word) == Automorphism::identity(n))) continue;
    if (!evaluate(f, rel.word).is_zero())
      throw CertificationError("cocycle " + f.label() + " fails relator " + rel.label);
  }
}

// sigma |-> sigma . a - a, a cocycle for every a.
inline Cocycle principal(const VElement& a, const std::string& label = "principal") {
  int n = a.n();
  auto val = [&](Gen g) { return act(nielsen_generator(n, g), a) - a; };
  return Cocycle::from_values(n, a.ring(), val(Gen::P), val(Gen::Q), val(Gen::S),
                              val(Gen::U), label);
}

// The distinguished element with a^i_{j,k} = -1 for i = j, +1 for i = k.
inline VElement special_a(int n, const RingSpec& ring) {
  VElement a = VElement::zero(n, ring);
  for (int j = 1; j <= n; ++j)
    for (int k = j + 1; k <= n; ++k) {
      a.add_term(k, j, k, 1);
      a.add_term(j, j, k, -1);
    }
  return a;
}

// The four named cocycles: fM from the determinant of the Magnus
// representation, fK from the expansion-based crossed homomorphism, fa the
// principal cocycle of the special element, and fN = 2 fM - fK - fa. Values
// are computed by the underlying modules, never hardcoded, and certified.
inline Cocycle named_cocycle(const std::string& label, int n, const RingSpec& ring) {
  Cocycle result;
  if (label == "fM") {
    auto val = [&](Gen g) { return f_M(nielsen_generator(n, g), ring); };
    result = Cocycle::from_values(n, ring, val(Gen::P), val(Gen::Q), val(Gen::S),
                                  val(Gen::U), label);
  } else if (label == "fK") {
    auto val = [&](Gen g) { return f_K(nielsen_generator(n, g), ring); };
    result = Cocycle::from_values(n, ring, val(Gen::P), val(Gen::Q), val(Gen::S),
                                  val(Gen::U), label);
  } else if (label == "fa") {
    result = principal(special_a(n, ring), label);
  } else if (label == "fN") {
    Cocycle fM = named_cocycle("fM", n, ring);
    Cocycle fK = named_cocycle("fK", n, ring);
    Cocycle fa = named_cocycle("fa", n, ring);
    auto val = [&](Gen g) {
      return Int(2) * fM.value(g) - fK.value(g) - fa.value(g);
    };
    result = Cocycle::from_values(n, ring, val(Gen::P), val(Gen::Q), val(Gen::S),
                                  val(Gen::U), label);
  } else {
    throw InputError("unknown cocycle label: " + label);
  }
  certify(result);
  return result;
}

}  // namespace nielsen
