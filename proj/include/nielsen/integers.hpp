#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <cstdint>
#include <string>

namespace nielsen {

// Exact arbitrary-precision integer used for all ring arithmetic.
using Int = boost::multiprecision::cpp_int;

inline Int gcd(const Int& a, const Int& b) { return boost::multiprecision::gcd(a, b); }
inline Int abs(const Int& a) { return boost::multiprecision::abs(a); }

// Quotient rounded toward the nearest integer, so |a - q*b| <= |b|/2.
// Keeps entries small during elimination.
inline Int round_div(const Int& a, const Int& b) {
  Int q = a / b;
  Int r = a - q * b;
  if (r != 0) {
    Int half = abs(b) - 2 * abs(r);  // >= 0 iff |r| <= |b|/2
    if (half < 0) q += (r < 0) == (b < 0) ? 1 : -1;
  }
  return q;
}

// Canonical representative of a mod m in [0, m), m > 0.
inline Int mod_reduce(const Int& a, const Int& m) {
  Int r = a % m;
  if (r < 0) r += m;
  return r;
}

inline std::string to_string(const Int& a) { return a.str(); }

// Deterministic Miller-Rabin, exact for any 64-bit input.
inline bool is_prime_u64(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t p : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
    if (n % p == 0) return n == p;
  }
  std::uint64_t d = n - 1;
  int s = 0;
  while ((d & 1) == 0) { d >>= 1; ++s; }
  auto mulmod = [](std::uint64_t a, std::uint64_t b, std::uint64_t m) -> std::uint64_t {
    return static_cast<std::uint64_t>((static_cast<unsigned __int128>(a) * b) % m);
  };
  auto powmod = [&](std::uint64_t a, std::uint64_t e, std::uint64_t m) {
    std::uint64_t r = 1;
    a %= m;
    while (e) {
      if (e & 1) r = mulmod(r, a, m);
      a = mulmod(a, a, m);
      e >>= 1;
    }
    return r;
  };
  for (std::uint64_t a : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
    std::uint64_t x = powmod(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool witness = true;
    for (int i = 1; i < s; ++i) {
      x = mulmod(x, x, n);
      if (x == n - 1) { witness = false; break; }
    }
    if (witness) return false;
  }
  return true;
}

}  // namespace nielsen
