#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "nielsen/factorization.hpp"

using namespace nielsen;

namespace {

Automorphism random_automorphism(std::mt19937& rng, int n, int len) {
  std::uniform_int_distribution<int> pick(0, 3), sgn(0, 1);
  GenWord w;
  for (int i = 0; i < len; ++i)
    w.push_back({static_cast<Gen>(pick(rng)), sgn(rng) ? 1 : -1});
  return evaluate_genword(n, w);
}

void check_roundtrip(const Automorphism& a) {
  GenWord w = factorize(a);
  CHECK(evaluate_genword(a.n(), w) == a);
}

}  // namespace

TEST_CASE("factorize identity and generators") {
  for (int n : {2, 3, 5}) {
    check_roundtrip(Automorphism::identity(n));
    for (Gen g : {Gen::P, Gen::Q, Gen::S, Gen::U}) {
      check_roundtrip(nielsen_generator(n, g));
      check_roundtrip(nielsen_generator_inverse(n, g));
    }
  }
  CHECK(factorize(Automorphism::identity(3)).empty());
}

TEST_CASE("factorize signed permutation automorphisms") {
  // All signed permutations at n=3: 6 permutations x 8 sign patterns.
  int n = 3;
  std::vector<int> perm = {1, 2, 3};
  do {
    for (int mask = 0; mask < 8; ++mask) {
      std::vector<FreeWord> im;
      for (int i = 0; i < n; ++i)
        im.push_back(FreeWord::generator(n, perm[i], (mask >> i) & 1 ? -1 : 1));
      check_roundtrip(Automorphism::from_images(im));
    }
  } while (std::next_permutation(perm.begin(), perm.end()));
}

TEST_CASE("factorize elementary multiplication automorphisms") {
  int n = 4;
  for (int i = 1; i <= n; ++i)
    for (int j = 1; j <= n; ++j) {
      if (i == j) continue;
      for (int d : {1, -1}) {
        // x_i -> x_i x_j^d
        std::vector<FreeWord> right;
        for (int k = 1; k <= n; ++k) right.push_back(FreeWord::generator(n, k));
        right[i - 1] = FreeWord::generator(n, i) * FreeWord::generator(n, j, d);
        check_roundtrip(Automorphism::from_images(right));
        // x_i -> x_j^d x_i
        std::vector<FreeWord> left;
        for (int k = 1; k <= n; ++k) left.push_back(FreeWord::generator(n, k));
        left[i - 1] = FreeWord::generator(n, j, d) * FreeWord::generator(n, i);
        check_roundtrip(Automorphism::from_images(left));
      }
    }
}

TEST_CASE("factorize IA generators and inner automorphisms") {
  int n = 5;
  for (int i = 1; i <= n; ++i) {
    check_roundtrip(inner_automorphism(n, i));
    for (int j = 1; j <= n; ++j) {
      if (i == j) continue;
      check_roundtrip(magnus_K(n, i, j));
      for (int k = 1; k <= n; ++k) {
        if (k == i || k == j) continue;
        check_roundtrip(magnus_K(n, i, j, k));
      }
    }
  }
}

TEST_CASE("factorize random automorphisms") {
  std::mt19937 rng(20260823);
  for (int n : {2, 3, 5}) {
    for (int trial = 0; trial < 40; ++trial) {
      check_roundtrip(random_automorphism(rng, n, 20));
    }
  }
}

TEST_CASE("non-automorphisms are detected") {
  // rho = identity but the images generate a proper subgroup.
  Automorphism a = Automorphism::from_images(
      {parse_word(2, "x1"), parse_word(2, "x2*x1*x2^-1*x1^-1*x2")});
  CHECK_THROWS_AS(factorize(a), NotAnAutomorphism);

  // Another: x1 -> x1, x2 -> x1 x2 x1 x2^-1 x1^-1 ... rho col2 = (1,0)+... pick
  // a clean one: w2 = x1 x2^2 x1 x2^-1 x1^-1: exponent sums e1: 1+1-1=1, e2: 2-1=1.
  Automorphism b = Automorphism::from_images(
      {parse_word(3, "x1"), parse_word(3, "x1*x2^2*x1*x2^-1*x1^-1"), parse_word(3, "x3")});
  CHECK_THROWS_AS(factorize(b), NotAnAutomorphism);
}

TEST_CASE("inversion through factorization") {
  std::mt19937 rng(5);
  for (int n : {2, 4}) {
    for (int trial = 0; trial < 15; ++trial) {
      Automorphism a = random_automorphism(rng, n, 15);
      Automorphism ainv = invert(a);
      CHECK(compose(a, ainv) == Automorphism::identity(n));
      CHECK(compose(ainv, a) == Automorphism::identity(n));
    }
  }
  CHECK(invert(nielsen_generator(5, Gen::U)) == nielsen_generator_inverse(5, Gen::U));
}
