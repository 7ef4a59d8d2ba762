#pragma once

#include <compare>
#include <cstdlib>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "nielsen/errors.hpp"
#include "nielsen/integers.hpp"

namespace nielsen {

// A maximal run x_index^exponent inside a reduced word. exponent != 0 and
// adjacent syllables have distinct indices.
struct Syllable {
  int index = 0;           // 1-based generator index
  long long exponent = 0;

  friend auto operator<=>(const Syllable&, const Syllable&) = default;
};

// Reduced word in the free group F_rank on x_1..x_rank. Always stored in
// canonical reduced form, so equality is structural equality.
class FreeWord {
 public:
  FreeWord() = default;

  static FreeWord identity(int rank) {
    check_rank(rank);
    FreeWord w;
    w.rank_ = rank;
    return w;
  }

  static FreeWord generator(int rank, int index, long long exponent = 1) {
    check_rank(rank);
    if (index < 1 || index > rank)
      throw InputError("generator index " + std::to_string(index) +
                       " out of range for rank " + std::to_string(rank));
    FreeWord w;
    w.rank_ = rank;
    if (exponent != 0) w.syllables_.push_back({index, exponent});
    return w;
  }

  static FreeWord from_syllables(int rank, const std::vector<Syllable>& raw) {
    FreeWord w = identity(rank);
    for (const auto& s : raw) w.push(s);
    return w;
  }

  int rank() const { return rank_; }
  const std::vector<Syllable>& syllables() const { return syllables_; }
  bool is_identity() const { return syllables_.empty(); }

  long long length() const {
    long long n = 0;
    for (const auto& s : syllables_) n += s.exponent > 0 ? s.exponent : -s.exponent;
    return n;
  }

  FreeWord inverse() const {
    FreeWord w = identity(rank_);
    for (auto it = syllables_.rbegin(); it != syllables_.rend(); ++it)
      w.syllables_.push_back({it->index, -it->exponent});
    return w;
  }

  friend FreeWord operator*(const FreeWord& a, const FreeWord& b) {
    if (a.rank_ != b.rank_)
      throw RankMismatchError("cannot multiply words of rank " + std::to_string(a.rank_) +
                              " and " + std::to_string(b.rank_));
    FreeWord w = a;
    for (const auto& s : b.syllables_) w.push(s);
    return w;
  }

  FreeWord pow(long long k) const {
    if (k < 0) return inverse().pow(-k);
    FreeWord r = identity(rank_);
    for (long long i = 0; i < k; ++i) r = r * *this;
    return r;
  }

  friend bool operator==(const FreeWord& a, const FreeWord& b) = default;

  // Lexicographic on the syllable sequence; used for canonical map keys.
  friend bool operator<(const FreeWord& a, const FreeWord& b) {
    if (a.rank_ != b.rank_) return a.rank_ < b.rank_;
    return a.syllables_ < b.syllables_;
  }

 private:
  static void check_rank(int rank) {
    if (rank < 1) throw InputError("rank must be at least 1");
  }

  // Append one syllable, merging and cancelling at the boundary.
  void push(Syllable s) {
    if (s.index < 1 || s.index > rank_)
      throw InputError("syllable index out of range");
    if (s.exponent == 0) return;
    if (!syllables_.empty() && syllables_.back().index == s.index) {
      syllables_.back().exponent += s.exponent;
      if (syllables_.back().exponent == 0) syllables_.pop_back();
    } else {
      syllables_.push_back(s);
    }
  }

  int rank_ = 0;
  std::vector<Syllable> syllables_;
};

inline std::string to_string(const FreeWord& w) {
  if (w.is_identity()) return "1";
  std::ostringstream out;
  bool first = true;
  for (const auto& s : w.syllables()) {
    if (!first) out << '*';
    first = false;
    out << 'x' << s.index;
    if (s.exponent != 1) out << '^' << s.exponent;
  }
  return out.str();
}

// Grammar: word = "1" | factor ("*" factor)*, factor = "x"<digits>("^"<int>)?
// Whitespace may appear around factors.
inline FreeWord parse_word(int rank, const std::string& text) {
  size_t pos = 0;
  auto skip_ws = [&] { while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos; };
  auto parse_int = [&]() -> long long {
    size_t start = pos;
    if (pos < text.size() && (text[pos] == '-' || text[pos] == '+')) ++pos;
    while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) ++pos;
    if (pos == start || (pos == start + 1 && !std::isdigit(static_cast<unsigned char>(text[start]))))
      throw ParseError("expected integer at position " + std::to_string(start) + " in '" + text + "'");
    return std::stoll(text.substr(start, pos - start));
  };

  skip_ws();
  if (pos >= text.size()) throw ParseError("empty word; use '1' for the identity");
  if (text[pos] == '1') {
    ++pos;
    skip_ws();
    if (pos != text.size()) throw ParseError("unexpected trailing input in '" + text + "'");
    return FreeWord::identity(rank);
  }

  std::vector<Syllable> syls;
  while (true) {
    skip_ws();
    if (pos >= text.size() || text[pos] != 'x')
      throw ParseError("expected generator 'x<k>' at position " + std::to_string(pos) + " in '" + text + "'");
    ++pos;
    long long index = parse_int();
    if (index < 1 || index > rank)
      throw ParseError("generator x" + std::to_string(index) + " out of range for rank " + std::to_string(rank));
    long long exponent = 1;
    if (pos < text.size() && text[pos] == '^') {
      ++pos;
      exponent = parse_int();
    }
    syls.push_back({static_cast<int>(index), exponent});
    skip_ws();
    if (pos >= text.size()) break;
    if (text[pos] != '*')
      throw ParseError("expected '*' at position " + std::to_string(pos) + " in '" + text + "'");
    ++pos;
  }
  return FreeWord::from_syllables(rank, syls);
}

// Element of the integral group ring Z[F_rank]: finite formal sum of reduced
// words with Int coefficients. Zero coefficients are never stored.
class GroupRingElement {
 public:
  GroupRingElement() = default;

  static GroupRingElement zero(int rank) {
    GroupRingElement e;
    e.rank_ = rank;
    return e;
  }

  static GroupRingElement one(int rank) { return from_word(FreeWord::identity(rank)); }

  static GroupRingElement scalar(int rank, Int c) {
    return from_word(FreeWord::identity(rank), std::move(c));
  }

  static GroupRingElement from_word(const FreeWord& w, Int c = 1) {
    GroupRingElement e;
    e.rank_ = w.rank();
    if (c != 0) e.terms_[w] = std::move(c);
    return e;
  }

  int rank() const { return rank_; }
  const std::map<FreeWord, Int>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  Int coefficient(const FreeWord& w) const {
    auto it = terms_.find(w);
    return it == terms_.end() ? Int(0) : it->second;
  }

  // Ring homomorphism sending every word to 1.
  Int augmentation() const {
    Int s = 0;
    for (const auto& [w, c] : terms_) s += c;
    return s;
  }

  void add_term(const FreeWord& w, const Int& c) {
    if (w.rank() != rank_) throw RankMismatchError("group ring term has wrong rank");
    if (c == 0) return;
    Int& slot = terms_[w];
    slot += c;
    if (slot == 0) terms_.erase(w);
  }

  friend GroupRingElement operator+(const GroupRingElement& a, const GroupRingElement& b) {
    check_ranks(a, b);
    GroupRingElement r = a;
    for (const auto& [w, c] : b.terms_) r.add_term(w, c);
    return r;
  }

  friend GroupRingElement operator-(const GroupRingElement& a, const GroupRingElement& b) {
    check_ranks(a, b);
    GroupRingElement r = a;
    for (const auto& [w, c] : b.terms_) r.add_term(w, -c);
    return r;
  }

  GroupRingElement operator-() const {
    GroupRingElement r = zero(rank_);
    for (const auto& [w, c] : terms_) r.terms_[w] = -c;
    return r;
  }

  friend GroupRingElement operator*(const GroupRingElement& a, const GroupRingElement& b) {
    check_ranks(a, b);
    GroupRingElement r = zero(a.rank_);
    for (const auto& [wa, ca] : a.terms_)
      for (const auto& [wb, cb] : b.terms_) r.add_term(wa * wb, ca * cb);
    return r;
  }

  friend GroupRingElement operator*(const Int& c, const GroupRingElement& a) {
    GroupRingElement r = zero(a.rank_);
    if (c == 0) return r;
    for (const auto& [w, cw] : a.terms_) r.terms_[w] = c * cw;
    return r;
  }

  friend bool operator==(const GroupRingElement& a, const GroupRingElement& b) = default;

 private:
  static void check_ranks(const GroupRingElement& a, const GroupRingElement& b) {
    if (a.rank_ != b.rank_)
      throw RankMismatchError("group ring elements have ranks " + std::to_string(a.rank_) +
                              " and " + std::to_string(b.rank_));
  }

  int rank_ = 0;
  std::map<FreeWord, Int> terms_;
};

// bar(sum c_w w) = sum c_w w^-1; an involutive antiautomorphism.
inline GroupRingElement bar(const GroupRingElement& a) {
  GroupRingElement r = GroupRingElement::zero(a.rank());
  for (const auto& [w, c] : a.terms()) r.add_term(w.inverse(), c);
  return r;
}

inline std::string to_string(const GroupRingElement& a) {
  if (a.is_zero()) return "0";
  std::ostringstream out;
  bool first = true;
  for (const auto& [w, c] : a.terms()) {
    if (!first) out << (c > 0 ? " + " : " - ");
    else if (c < 0) out << '-';
    first = false;
    Int mag = abs(c);
    if (mag != 1 || w.is_identity()) {
      out << mag.str();
      if (!w.is_identity()) out << '*';
    }
    if (!w.is_identity()) out << to_string(w);
  }
  return out.str();
}

}  // namespace nielsen
