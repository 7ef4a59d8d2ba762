#include <catch2/catch_amalgamated.hpp>

#include <random>
#include <vector>

#include "nielsen/words.hpp"

using namespace nielsen;

namespace {

// Independent oracle: words as explicit letter sequences (index, +-1),
// reduced with a stack. No shared code with FreeWord.
using Letters = std::vector<std::pair<int, int>>;

Letters reduce_letters(const Letters& in) {
  Letters out;
  for (auto [idx, sgn] : in) {
    if (!out.empty() && out.back().first == idx && out.back().second == -sgn)
      out.pop_back();
    else
      out.emplace_back(idx, sgn);
  }
  return out;
}

Letters invert_letters(const Letters& in) {
  Letters out;
  for (auto it = in.rbegin(); it != in.rend(); ++it)
    out.emplace_back(it->first, -it->second);
  return out;
}

Letters to_letters(const FreeWord& w) {
  Letters out;
  for (const auto& s : w.syllables()) {
    int sgn = s.exponent > 0 ? 1 : -1;
    for (long long i = 0; i < (s.exponent > 0 ? s.exponent : -s.exponent); ++i)
      out.emplace_back(s.index, sgn);
  }
  return out;
}

FreeWord from_letters(int rank, const Letters& in) {
  FreeWord w = FreeWord::identity(rank);
  for (auto [idx, sgn] : in)
    w = w * FreeWord::generator(rank, idx, sgn);
  return w;
}

Letters random_letters(std::mt19937& rng, int rank, int len) {
  std::uniform_int_distribution<int> pick_idx(1, rank);
  std::uniform_int_distribution<int> pick_sgn(0, 1);
  Letters out;
  for (int i = 0; i < len; ++i)
    out.emplace_back(pick_idx(rng), pick_sgn(rng) ? 1 : -1);
  return out;
}

}  // namespace

TEST_CASE("free reduction and cancellation") {
  // x1^2 x2 times x2^-1 x1^-2 cancels to the identity.
  FreeWord u = parse_word(3, "x1^2*x2");
  FreeWord v = parse_word(3, "x2^-1*x1^-2");
  CHECK((u * v).is_identity());
  CHECK((v * u).is_identity());
  CHECK(u.inverse() == v);

  // Partial cancellation across the boundary merges syllables.
  FreeWord a = parse_word(2, "x1*x2^2");
  FreeWord b = parse_word(2, "x2^-1*x1");
  FreeWord ab = a * b;
  CHECK(ab == parse_word(2, "x1*x2*x1"));
  CHECK(ab.length() == 3);
}

TEST_CASE("identity and generators") {
  FreeWord e = FreeWord::identity(4);
  CHECK(e.is_identity());
  CHECK(e.length() == 0);
  FreeWord g = FreeWord::generator(4, 3);
  CHECK(g.length() == 1);
  CHECK(g * e == g);
  CHECK(e * g == g);
  CHECK((g * g.inverse()).is_identity());
  CHECK_THROWS_AS(FreeWord::generator(4, 5), InputError);
  CHECK_THROWS_AS(FreeWord::generator(4, 0), InputError);
}

TEST_CASE("parser round trip and errors") {
  for (const char* text : {"1", "x1", "x2^-1", "x1^2*x2^-1", "x3*x1^-4*x3"}) {
    FreeWord w = parse_word(3, text);
    CHECK(parse_word(3, to_string(w)) == w);
  }
  CHECK(to_string(parse_word(2, "x1*x1")) == "x1^2");
  CHECK(to_string(FreeWord::identity(2)) == "1");
  CHECK_THROWS_AS(parse_word(2, "x3"), ParseError);
  CHECK_THROWS_AS(parse_word(2, "y1"), ParseError);
  CHECK_THROWS_AS(parse_word(2, "x1^"), ParseError);
  CHECK_THROWS_AS(parse_word(2, ""), ParseError);
}

TEST_CASE("random words agree with letter-stack oracle") {
  std::mt19937 rng(20260823);
  for (int trial = 0; trial < 200; ++trial) {
    Letters la = random_letters(rng, 4, 24);
    Letters lb = random_letters(rng, 4, 24);
    FreeWord a = from_letters(4, la);
    FreeWord b = from_letters(4, lb);

    CHECK(to_letters(a) == reduce_letters(la));

    Letters lab = la;
    lab.insert(lab.end(), lb.begin(), lb.end());
    CHECK(to_letters(a * b) == reduce_letters(lab));
    CHECK(to_letters(a.inverse()) == reduce_letters(invert_letters(la)));
    CHECK((a * b) * a == a * (b * a));
  }
}

TEST_CASE("group ring arithmetic") {
  GroupRingElement one = GroupRingElement::one(2);
  GroupRingElement x1 = GroupRingElement::from_word(parse_word(2, "x1"));
  GroupRingElement x2 = GroupRingElement::from_word(parse_word(2, "x2"));
  GroupRingElement x1inv = GroupRingElement::from_word(parse_word(2, "x1^-1"));

  // (x1 + x2) * x1^-1 = 1 + x2 x1^-1
  GroupRingElement prod = (x1 + x2) * x1inv;
  GroupRingElement expect = one + GroupRingElement::from_word(parse_word(2, "x2*x1^-1"));
  CHECK(prod == expect);

  CHECK((x1 - x1).is_zero());
  CHECK((x1 * x1inv) == one);
  CHECK(prod.augmentation() == 2);
  CHECK((x1 + x1) == x1 * GroupRingElement::scalar(2, 2));

  // Fundamental-identity shape: (x1 - 1)(x2 - 1) expands to 4 terms.
  GroupRingElement d = (x1 - one) * (x2 - one);
  CHECK(d.terms().size() == 4);
  CHECK(d.augmentation() == 0);
}

TEST_CASE("bar is an involutive antiautomorphism") {
  std::mt19937 rng(7);
  auto random_elt = [&](int terms) {
    GroupRingElement e = GroupRingElement::zero(3);
    std::uniform_int_distribution<int> coeff(-3, 3);
    for (int i = 0; i < terms; ++i) {
      FreeWord w = from_letters(3, random_letters(rng, 3, 6));
      e = e + GroupRingElement::from_word(w, coeff(rng));
    }
    return e;
  };
  for (int trial = 0; trial < 50; ++trial) {
    GroupRingElement a = random_elt(3), b = random_elt(3);
    CHECK(bar(bar(a)) == a);
    CHECK(bar(a * b) == bar(b) * bar(a));
    CHECK(bar(a + b) == bar(a) + bar(b));
  }
  GroupRingElement x1 = GroupRingElement::from_word(parse_word(2, "x1"));
  CHECK(bar(x1) == GroupRingElement::from_word(parse_word(2, "x1^-1")));
}

TEST_CASE("rank mismatch is rejected") {
  FreeWord u = parse_word(2, "x1");
  FreeWord v = parse_word(3, "x1");
  CHECK_THROWS_AS(u * v, RankMismatchError);
  GroupRingElement a = GroupRingElement::from_word(u);
  GroupRingElement b = GroupRingElement::from_word(v);
  CHECK_THROWS_AS(a + b, RankMismatchError);
  CHECK_THROWS_AS(a * b, RankMismatchError);
}
