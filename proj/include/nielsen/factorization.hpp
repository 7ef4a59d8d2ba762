#pragma once

#include <algorithm>
#include <array>
#include <functional>
#include <map>
#include <numeric>
#include <set>
#include <string>
#include <vector>

#include "nielsen/automorphisms.hpp"
#include "nielsen/errors.hpp"

namespace nielsen {

namespace detail {

// Elementary Nielsen move on an image tuple. R: w_i <- w_i w_j^d,
// L: w_i <- w_j^d w_i, Inv: w_i <- w_i^-1.
struct Move {
  enum Kind { R, L, Inv } kind;
  int i, j, d;  // 1-based slots; d = +-1; j, d unused for Inv
};

// Word for the adjacent transposition of x_k, x_{k+1}: Q^-(k-1) P Q^(k-1).
inline GenWord adjacent_transposition_word(int k) {
  GenWord w;
  for (int t = 0; t < k - 1; ++t) w.push_back({Gen::Q, -1});
  w.push_back({Gen::P, 1});
  for (int t = 0; t < k - 1; ++t) w.push_back({Gen::Q, 1});
  return w;
}

// Word evaluating to the permutation automorphism x_k -> x_{perm[k-1]}.
// Bubble decomposition: repeatedly fix an adjacent descent of the target.
inline GenWord permutation_word(const std::vector<int>& perm) {
  std::vector<int> c = perm;
  int n = static_cast<int>(c.size());
  GenWord out;
  while (true) {
    int m = -1;
    for (int t = 0; t + 1 < n; ++t)
      if (c[t] > c[t + 1]) { m = t; break; }
    if (m < 0) break;
    out = out * adjacent_transposition_word(m + 1);
    std::swap(c[m], c[m + 1]);
  }
  return out;
}

// Word for a permutation automorphism sending 1 -> i (and 2 -> j when given),
// used to conjugate the rank-2 moves into arbitrary slots.
inline std::vector<int> slot_permutation(int n, int i, int j) {
  std::vector<int> perm(n);
  std::iota(perm.begin(), perm.end(), 1);
  std::vector<int> rest;
  for (int v = 1; v <= n; ++v)
    if (v != i && v != j) rest.push_back(v);
  perm[0] = i;
  if (j > 0) perm[1] = j;
  for (size_t t = 0; t < rest.size(); ++t) perm[(j > 0 ? 2 : 1) + t] = rest[t];
  return perm;
}

inline GenWord move_word(int n, const Move& m) {
  const GenWord S = {{Gen::S, 1}};
  switch (m.kind) {
    case Move::R: {
      // A^-1 U^d A with A: 1 -> i, 2 -> j gives x_i -> x_i x_j^d.
      GenWord A = permutation_word(slot_permutation(n, m.i, m.j));
      return gw_inverse(A) * GenWord{{Gen::U, m.d}} * A;
    }
    case Move::L: {
      // Middle S U^-d S gives x_1 -> x_2^d x_1.
      GenWord A = permutation_word(slot_permutation(n, m.i, m.j));
      return gw_inverse(A) * (S * GenWord{{Gen::U, -m.d}} * S) * A;
    }
    case Move::Inv: {
      GenWord A = permutation_word(slot_permutation(n, m.i, 0));
      return gw_inverse(A) * S * A;
    }
  }
  throw InputError("invalid move");
}

inline void apply_move(std::vector<FreeWord>& w, const Move& m) {
  switch (m.kind) {
    case Move::R:
      w[m.i - 1] = w[m.i - 1] * (m.d == 1 ? w[m.j - 1] : w[m.j - 1].inverse());
      break;
    case Move::L:
      w[m.i - 1] = (m.d == 1 ? w[m.j - 1] : w[m.j - 1].inverse()) * w[m.i - 1];
      break;
    case Move::Inv:
      w[m.i - 1] = w[m.i - 1].inverse();
      break;
  }
}

// Stallings folding decision: does the tuple generate F_n? Exact, so a
// reduction stall can be classified soundly.
inline bool generates_free_group(int n, const std::vector<FreeWord>& words) {
  // Vertices are union-find classes; edges[(v, letter)] = target.
  std::vector<int> parent(1, 0);
  auto fresh = [&] {
    parent.push_back(static_cast<int>(parent.size()));
    return static_cast<int>(parent.size()) - 1;
  };
  std::function<int(int)> find = [&](int v) {
    while (parent[v] != v) v = parent[v] = parent[parent[v]];
    return v;
  };
  // Edge list (from, to, letter); folded incrementally to a fixpoint.
  std::vector<std::array<int, 3>> edges;
  int base = 0;
  for (const auto& w : words) {
    int cur = base;
    for (const auto& s : w.syllables()) {
      long long reps = s.exponent > 0 ? s.exponent : -s.exponent;
      for (long long t = 0; t < reps; ++t) {
        int nxt = fresh();
        if (s.exponent > 0)
          edges.push_back({cur, nxt, s.index});
        else
          edges.push_back({nxt, cur, s.index});
        cur = nxt;
      }
    }
    // Identify the path end with the base point to close the loop.
    parent[find(cur)] = find(base);
  }
  // Fold to a fixpoint: no vertex may have two same-label edges out or in.
  bool changed = true;
  while (changed) {
    changed = false;
    std::map<std::pair<int, int>, int> out, in;
    for (auto& e : edges) {
      int a = find(e[0]), b = find(e[1]);
      auto [ito, inserted_o] = out.try_emplace({a, e[2]}, b);
      if (!inserted_o && find(ito->second) != b) {
        parent[find(ito->second)] = b;
        changed = true;
        break;
      }
      auto [iti, inserted_i] = in.try_emplace({b, e[2]}, a);
      if (!inserted_i && find(iti->second) != a) {
        parent[find(iti->second)] = a;
        changed = true;
        break;
      }
    }
  }
  // Collapse and deduplicate edges, then check for the rose on n petals.
  std::set<std::array<int, 3>> folded;
  std::set<int> vertices;
  vertices.insert(find(base));
  for (auto& e : edges) {
    folded.insert({find(e[0]), find(e[1]), e[2]});
    vertices.insert(find(e[0]));
    vertices.insert(find(e[1]));
  }
  if (vertices.size() != 1) return false;
  std::set<int> letters;
  for (auto& e : folded) letters.insert(e[2]);
  return static_cast<int>(letters.size()) == n;
}

inline std::string tuple_key(const std::vector<FreeWord>& w) {
  std::string key;
  for (const auto& x : w) {
    key += to_string(x);
    key += '|';
  }
  return key;
}

inline std::vector<Move> all_moves(int n) {
  std::vector<Move> out;
  for (int i = 1; i <= n; ++i) {
    out.push_back({Move::Inv, i, 0, 0});
    for (int j = 1; j <= n; ++j) {
      if (i == j) continue;
      for (int d : {1, -1}) {
        out.push_back({Move::R, i, j, d});
        out.push_back({Move::L, i, j, d});
      }
    }
  }
  return out;
}

// Breadth-first search over the plateau of tuples with the same total
// length, reachable by single moves. Succeeds when some plateau tuple
// admits a strictly length-decreasing move; the path to it is appended to
// `moves` and applied to `w`.
inline bool plateau_search(int n, std::vector<FreeWord>& w, std::vector<Move>& moves) {
  const size_t cap = 50000;
  struct Node {
    std::vector<FreeWord> tuple;
    int parent;
    Move via;
  };
  auto candidates = all_moves(n);
  std::vector<Node> nodes;
  std::map<std::string, int> visited;
  nodes.push_back({w, -1, {}});
  visited[tuple_key(w)] = 0;
  for (size_t head = 0; head < nodes.size() && nodes.size() < cap; ++head) {
    // Copy, since nodes may reallocate while expanding.
    const std::vector<FreeWord> cur = nodes[head].tuple;
    for (const auto& m : candidates) {
      std::vector<FreeWord> trial = cur;
      apply_move(trial, m);
      long long delta = trial[m.i - 1].length() - cur[m.i - 1].length();
      if (delta < 0) {
        // Found the way off the plateau: replay the path, then this move.
        std::vector<Move> path;
        for (int at = static_cast<int>(head); at > 0; at = nodes[at].parent)
          path.push_back(nodes[at].via);
        std::reverse(path.begin(), path.end());
        path.push_back(m);
        for (const auto& step : path) {
          apply_move(w, step);
          moves.push_back(step);
        }
        return true;
      }
      if (delta > 0) continue;
      std::string key = tuple_key(trial);
      if (visited.count(key)) continue;
      visited[key] = static_cast<int>(nodes.size());
      nodes.push_back({std::move(trial), static_cast<int>(head), m});
    }
  }
  return false;
}

}  // namespace detail

// Writes sigma as a word in P, Q, S, U by greedy Nielsen reduction of the
// image tuple. Throws NotAnAutomorphism (certified by a Stallings folding
// check) when the images do not generate F_n.
inline GenWord factorize(const Automorphism& sigma) {
  const int n = sigma.n();
  if (n < 2) throw InputError("factorization needs rank at least 2");
  std::vector<FreeWord> w = sigma.images();
  std::vector<detail::Move> moves;

  auto total_length = [&] {
    long long t = 0;
    for (const auto& x : w) t += x.length();
    return t;
  };

  auto is_signed_permutation = [&]() -> bool {
    for (const auto& x : w)
      if (x.length() != 1) return false;
    return true;  // distinct indices are guaranteed by unimodularity
  };

  // Termination is guaranteed by the strictly decreasing (length, measure)
  // pair; the budget only catches implementation bugs.
  const long long move_budget = 1000000;
  long long applied = 0;
  while (!is_signed_permutation()) {
    if (++applied > move_budget)
      throw Error("factorization exceeded its move budget; input tuple " +
                  std::to_string(total_length()) + " letters");
    // Stage 1: the multiply move with the largest strict length decrease.
    long long best_gain = 0;
    detail::Move best{};
    for (int i = 1; i <= n; ++i)
      for (int j = 1; j <= n; ++j) {
        if (i == j) continue;
        for (int d : {1, -1})
          for (auto kind : {detail::Move::R, detail::Move::L}) {
            detail::Move m{kind, i, j, d};
            std::vector<FreeWord> trial = w;
            detail::apply_move(trial, m);
            long long gain = w[i - 1].length() - trial[i - 1].length();
            if (gain > best_gain) {
              best_gain = gain;
              best = m;
            }
          }
      }
    if (best_gain > 0) {
      detail::apply_move(w, best);
      moves.push_back(best);
      continue;
    }
    // Stage 2: cross the equal-length plateau to a tuple that can shrink.
    if (detail::plateau_search(n, w, moves)) continue;
    // Full stall: decide soundly.
    if (!detail::generates_free_group(n, w))
      throw NotAnAutomorphism("image tuple does not generate the free group");
    throw Error("factorization stalled on a generating tuple; please report this input");
  }

  // Terminal tuple x_{perm[i]}^{eps_i}: emit sign flips then the permutation.
  std::vector<int> perm(n);
  GenWord terminal;
  for (int i = 1; i <= n; ++i) {
    const auto& s = w[i - 1].syllables().front();
    perm[i - 1] = s.index;
    if (s.exponent < 0)
      terminal = terminal * detail::move_word(n, {detail::Move::Inv, i, 0, 0});
  }
  terminal = terminal * detail::permutation_word(perm);

  // sigma = mu_1^-1 mu_2^-1 ... mu_T^-1 . terminal (apply left to right).
  GenWord out;
  for (const auto& m : moves) out = out * gw_inverse(detail::move_word(n, m));
  return out * terminal;
}

inline Automorphism invert(const Automorphism& sigma) {
  if (sigma.n() == 1) {
    // Rank 1 has only x_1 -> x_1^{+-1}, each self-inverse.
    return sigma;
  }
  return evaluate_genword(sigma.n(), gw_inverse(factorize(sigma)));
}

}  // namespace nielsen
