#pragma once

#include <sstream>
#include <string>
#include <vector>

#include "nielsen/errors.hpp"
#include "nielsen/integers.hpp"
#include "nielsen/words.hpp"

namespace nielsen {

// An automorphism of F_n given by the images of the basis. Composition is in
// right-action order: x^(ab) = (x^a)^b. Construction checks that the
// abelianized matrix is unimodular, a necessary (not sufficient) condition;
// full invertibility is certified by factorization.
class Automorphism {
 public:
  Automorphism() = default;

  static Automorphism identity(int n) {
    if (n < 1) throw InputError("rank must be at least 1");
    Automorphism a;
    a.n_ = n;
    for (int i = 1; i <= n; ++i) a.images_.push_back(FreeWord::generator(n, i));
    return a;
  }

  static Automorphism from_images(std::vector<FreeWord> images) {
    if (images.empty()) throw InputError("empty image list");
    Automorphism a;
    a.n_ = static_cast<int>(images.size());
    for (const auto& w : images)
      if (w.rank() != a.n_)
        throw RankMismatchError("image word rank does not match tuple size");
    a.images_ = std::move(images);
    a.check_unimodular();
    return a;
  }

  int n() const { return n_; }

  // 1-based image of the generator x_i.
  const FreeWord& image(int i) const {
    if (i < 1 || i > n_) throw InputError("generator index out of range");
    return images_[i - 1];
  }

  const std::vector<FreeWord>& images() const { return images_; }

  // Substitute x_i -> image(i) in w and reduce.
  FreeWord apply(const FreeWord& w) const {
    if (w.rank() != n_) throw RankMismatchError("word rank does not match automorphism");
    FreeWord out = FreeWord::identity(n_);
    for (const auto& s : w.syllables())
      out = out * images_[s.index - 1].pow(s.exponent);
    return out;
  }

  friend bool operator==(const Automorphism& a, const Automorphism& b) = default;

 private:
  void check_unimodular();

  int n_ = 0;
  std::vector<FreeWord> images_;
};

// x^(ab) = (x^a)^b: substitute b's images into the images of a.
inline Automorphism compose(const Automorphism& a, const Automorphism& b) {
  if (a.n() != b.n()) throw RankMismatchError("cannot compose automorphisms of different ranks");
  std::vector<FreeWord> images;
  images.reserve(a.n());
  for (int i = 1; i <= a.n(); ++i) images.push_back(b.apply(a.image(i)));
  return Automorphism::from_images(std::move(images));
}

// Abelianized matrix: column j is the exponent vector of the image of x_j.
// rho(ab) = rho(b) rho(a).
inline std::vector<std::vector<long long>> rho(const Automorphism& a) {
  int n = a.n();
  std::vector<std::vector<long long>> m(n, std::vector<long long>(n, 0));
  for (int j = 1; j <= n; ++j)
    for (const auto& s : a.image(j).syllables()) m[s.index - 1][j - 1] += s.exponent;
  return m;
}

// Exact determinant by cofactor expansion in big integers; n <= 8 here.
inline Int int_matrix_determinant(const std::vector<std::vector<long long>>& m) {
  size_t n = m.size();
  std::vector<std::vector<Int>> a(n, std::vector<Int>(n));
  for (size_t i = 0; i < n; ++i)
    for (size_t j = 0; j < n; ++j) a[i][j] = m[i][j];
  // Fraction-free Gaussian elimination (Bareiss).
  Int det = 1;
  int sign = 1;
  for (size_t k = 0; k < n; ++k) {
    size_t piv = k;
    while (piv < n && a[piv][k] == 0) ++piv;
    if (piv == n) return 0;
    if (piv != k) {
      std::swap(a[piv], a[k]);
      sign = -sign;
    }
    for (size_t i = k + 1; i < n; ++i)
      for (size_t j = k + 1; j < n; ++j) {
        a[i][j] = a[k][k] * a[i][j] - a[i][k] * a[k][j];
        if (k > 0) a[i][j] /= det;
      }
    det = a[k][k];
  }
  return sign > 0 ? det : -det;
}

inline void Automorphism::check_unimodular() {
  Int d = int_matrix_determinant(rho(*this));
  if (d != 1 && d != -1)
    throw NotAnAutomorphism("abelianized matrix has determinant " + d.str());
}

// Sign of the abelianized determinant, +1 or -1.
inline int sgn(const Automorphism& a) {
  return int_matrix_determinant(rho(a)) == 1 ? 1 : -1;
}

// IA = kernel of the action on the abelianization.
inline bool is_IA(const Automorphism& a) {
  auto m = rho(a);
  for (int i = 0; i < a.n(); ++i)
    for (int j = 0; j < a.n(); ++j)
      if (m[i][j] != (i == j ? 1 : 0)) return false;
  return true;
}

// The four Nielsen generators.
enum class Gen { P, Q, S, U };

inline char gen_name(Gen g) {
  switch (g) {
    case Gen::P: return 'P';
    case Gen::Q: return 'Q';
    case Gen::S: return 'S';
    case Gen::U: return 'U';
  }
  throw InputError("invalid generator");
}

inline Automorphism nielsen_generator(int n, Gen g) {
  if (n < 2) throw InputError("Nielsen generators need rank at least 2");
  std::vector<FreeWord> im;
  for (int i = 1; i <= n; ++i) im.push_back(FreeWord::generator(n, i));
  switch (g) {
    case Gen::P:
      std::swap(im[0], im[1]);
      break;
    case Gen::Q:
      // x_i -> x_{i+1}, x_n -> x_1.
      for (int i = 0; i < n - 1; ++i) im[i] = FreeWord::generator(n, i + 2);
      im[n - 1] = FreeWord::generator(n, 1);
      break;
    case Gen::S:
      im[0] = FreeWord::generator(n, 1, -1);
      break;
    case Gen::U:
      im[0] = FreeWord::generator(n, 1) * FreeWord::generator(n, 2);
      break;
  }
  return Automorphism::from_images(std::move(im));
}

inline Automorphism nielsen_generator_inverse(int n, Gen g) {
  if (n < 2) throw InputError("Nielsen generators need rank at least 2");
  std::vector<FreeWord> im;
  for (int i = 1; i <= n; ++i) im.push_back(FreeWord::generator(n, i));
  switch (g) {
    case Gen::P:
      std::swap(im[0], im[1]);
      break;
    case Gen::Q:
      // x_1 -> x_n, x_i -> x_{i-1}.
      im[0] = FreeWord::generator(n, n);
      for (int i = 1; i < n; ++i) im[i] = FreeWord::generator(n, i);
      break;
    case Gen::S:
      im[0] = FreeWord::generator(n, 1, -1);
      break;
    case Gen::U:
      im[0] = FreeWord::generator(n, 1) * FreeWord::generator(n, 2, -1);
      break;
  }
  return Automorphism::from_images(std::move(im));
}

// One letter of a word in the Nielsen generators; exp is +1 or -1.
struct GenLetter {
  Gen sym;
  int exp;
  friend bool operator==(const GenLetter&, const GenLetter&) = default;
};

using GenWord = std::vector<GenLetter>;

inline GenWord gw(std::initializer_list<GenLetter> letters) { return GenWord(letters); }

inline GenWord operator*(const GenWord& a, const GenWord& b) {
  GenWord r = a;
  r.insert(r.end(), b.begin(), b.end());
  return r;
}

inline GenWord gw_inverse(const GenWord& w) {
  GenWord r;
  for (auto it = w.rbegin(); it != w.rend(); ++it) r.push_back({it->sym, -it->exp});
  return r;
}

inline GenWord gw_pow(const GenWord& w, int k) {
  if (k < 0) return gw_pow(gw_inverse(w), -k);
  GenWord r;
  for (int i = 0; i < k; ++i) r = r * w;
  return r;
}

// [a, b] = a b a^-1 b^-1.
inline GenWord gw_commutator(const GenWord& a, const GenWord& b) {
  return a * b * gw_inverse(a) * gw_inverse(b);
}

inline Automorphism evaluate_genword(int n, const GenWord& w) {
  Automorphism acc = Automorphism::identity(n);
  for (const auto& letter : w) {
    const Automorphism g = letter.exp == 1 ? nielsen_generator(n, letter.sym)
                                           : nielsen_generator_inverse(n, letter.sym);
    acc = compose(acc, g);
  }
  return acc;
}

inline std::string to_string(const GenWord& w) {
  if (w.empty()) return "1";
  std::ostringstream out;
  // Collapse runs of the same letter for readability.
  size_t i = 0;
  bool first = true;
  while (i < w.size()) {
    size_t j = i;
    while (j < w.size() && w[j] == w[i]) ++j;
    long long e = static_cast<long long>(j - i) * w[i].exp;
    if (!first) out << '*';
    first = false;
    out << gen_name(w[i].sym);
    if (e != 1) out << '^' << e;
    i = j;
  }
  return out.str();
}

// Grammar: "1" or letters P,Q,S,U with optional ^<int>, separated by '*' or
// whitespace. Exponents expand to repeated +-1 letters.
inline GenWord parse_genword(const std::string& text) {
  GenWord w;
  size_t pos = 0;
  auto skip = [&] {
    while (pos < text.size() &&
           (std::isspace(static_cast<unsigned char>(text[pos])) || text[pos] == '*'))
      ++pos;
  };
  skip();
  if (pos < text.size() && text[pos] == '1') {
    ++pos;
    skip();
    if (pos != text.size()) throw ParseError("unexpected input after '1'");
    return w;
  }
  while (pos < text.size()) {
    Gen g;
    switch (text[pos]) {
      case 'P': g = Gen::P; break;
      case 'Q': g = Gen::Q; break;
      case 'S': g = Gen::S; break;
      case 'U': g = Gen::U; break;
      default:
        throw ParseError(std::string("expected generator letter, found '") + text[pos] + "'");
    }
    ++pos;
    long long e = 1;
    if (pos < text.size() && text[pos] == '^') {
      ++pos;
      size_t start = pos;
      if (pos < text.size() && (text[pos] == '-' || text[pos] == '+')) ++pos;
      while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) ++pos;
      if (pos == start || (pos == start + 1 && !std::isdigit(static_cast<unsigned char>(text[start]))))
        throw ParseError("expected integer exponent in '" + text + "'");
      e = std::stoll(text.substr(start, pos - start));
    }
    int s = e >= 0 ? 1 : -1;
    for (long long i = 0; i < (e >= 0 ? e : -e); ++i) w.push_back({g, s});
    skip();
  }
  if (w.empty()) throw ParseError("empty generator word; use '1' for the identity");
  return w;
}

// Nielsen's relator catalog. Data, not code: each relator is a labelled word
// that must evaluate to the identity automorphism.
struct Relator {
  std::string label;
  GenWord word;
};

inline std::vector<Relator> relator_catalog(int n) {
  if (n < 2) throw InputError("relator catalog needs rank at least 2");
  const GenWord P = {{Gen::P, 1}};
  const GenWord Q = {{Gen::Q, 1}};
  const GenWord S = {{Gen::S, 1}};
  const GenWord U = {{Gen::U, 1}};
  auto inv = gw_inverse;

  std::vector<Relator> rs;
  rs.push_back({"N1a", gw_pow(P, 2)});
  rs.push_back({"N1b", gw_pow(Q, n)});
  rs.push_back({"N1c", gw_pow(S, 2)});
  rs.push_back({"N2", gw_pow(Q * P, n - 1)});
  rs.push_back({"N3", gw_pow(P * S * P * U, 2)});
  for (int l = 2; 2 * l <= n; ++l)
    rs.push_back({"N4l" + std::to_string(l),
                  gw_commutator(P, gw_pow(Q, -l) * P * gw_pow(Q, l))});
  rs.push_back({"N5a", gw_commutator(S, inv(Q) * P * Q)});
  rs.push_back({"N5b", gw_commutator(S, Q * P)});
  rs.push_back({"N6", gw_pow(P * S, 4)});
  if (n >= 3) {
    rs.push_back({"N7a", gw_commutator(U, gw_pow(Q, -2) * P * gw_pow(Q, 2))});
    rs.push_back({"N7b", gw_commutator(U, gw_pow(Q, -2) * U * gw_pow(Q, 2))});
  }
  rs.push_back({"N8a", gw_commutator(U, gw_pow(Q, -2) * S * gw_pow(Q, 2))});
  rs.push_back({"N8b", gw_commutator(U, S * U * S)});
  rs.push_back({"N9a", gw_commutator(U, Q * P * inv(Q) * P * Q)});
  rs.push_back({"N9b", gw_commutator(U, P * inv(Q) * S * U * S * Q * P)});
  rs.push_back({"N10", gw_commutator(U, P * inv(Q) * P * Q * P * U * P * inv(Q) * P * Q * P)});
  rs.push_back({"N11", inv(U) * P * U * P * S * U * S * P * S});
  rs.push_back({"N12", gw_pow(P * inv(Q) * U * Q, 2) * U * inv(Q) * inv(U) * Q * inv(U)});
  return rs;
}

// K_{ij}: x_i -> x_j^-1 x_i x_j, the conjugation IA generator.
inline Automorphism magnus_K(int n, int i, int j) {
  if (i < 1 || i > n || j < 1 || j > n) throw InputError("K_ij index out of range");
  if (i == j) throw InputError("K_ij requires i != j");
  std::vector<FreeWord> im;
  for (int k = 1; k <= n; ++k) im.push_back(FreeWord::generator(n, k));
  im[i - 1] = FreeWord::generator(n, j, -1) * FreeWord::generator(n, i) * FreeWord::generator(n, j);
  return Automorphism::from_images(std::move(im));
}

// K_{ijk}: x_i -> x_i [x_j, x_k] = x_i x_j x_k x_j^-1 x_k^-1, the
// commutator IA generator; i, j, k pairwise distinct.
inline Automorphism magnus_K(int n, int i, int j, int k) {
  if (i < 1 || i > n || j < 1 || j > n || k < 1 || k > n)
    throw InputError("K_ijk index out of range");
  if (i == j || i == k || j == k) throw InputError("K_ijk requires distinct indices");
  std::vector<FreeWord> im;
  for (int t = 1; t <= n; ++t) im.push_back(FreeWord::generator(n, t));
  im[i - 1] = FreeWord::generator(n, i) * FreeWord::generator(n, j) *
              FreeWord::generator(n, k) * FreeWord::generator(n, j, -1) *
              FreeWord::generator(n, k, -1);
  return Automorphism::from_images(std::move(im));
}

// iota_i: conjugation by x_i on every generator.
inline Automorphism inner_automorphism(int n, int i) {
  if (i < 1 || i > n) throw InputError("inner automorphism index out of range");
  std::vector<FreeWord> im;
  FreeWord xi = FreeWord::generator(n, i);
  for (int j = 1; j <= n; ++j)
    im.push_back(xi.inverse() * FreeWord::generator(n, j) * xi);
  return Automorphism::from_images(std::move(im));
}

}  // namespace nielsen
