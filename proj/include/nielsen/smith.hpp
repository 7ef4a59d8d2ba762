#pragma once

#include <ostream>
#include <utility>
#include <vector>

#include "nielsen/errors.hpp"
#include "nielsen/integers.hpp"
#include "nielsen/vmodule.hpp"

namespace nielsen {

// Dense integer matrix for the linear-algebra layer. Entries are exact; all
// eliminations below use unimodular row/column operations only.
struct IntMatrix {
  int rows = 0;
  int cols = 0;
  std::vector<std::vector<Int>> a;

  static IntMatrix zero(int r, int c) {
    IntMatrix m;
    m.rows = r;
    m.cols = c;
    m.a.assign(r, std::vector<Int>(c, Int(0)));
    return m;
  }

  static IntMatrix identity(int n) {
    IntMatrix m = zero(n, n);
    for (int i = 0; i < n; ++i) m.a[i][i] = 1;
    return m;
  }

  friend bool operator==(const IntMatrix&, const IntMatrix&) = default;
};

inline IntMatrix mat_mul(const IntMatrix& x, const IntMatrix& y) {
  if (x.cols != y.rows) throw InputError("matrix product dimension mismatch");
  IntMatrix r = IntMatrix::zero(x.rows, y.cols);
  for (int i = 0; i < x.rows; ++i)
    for (int k = 0; k < x.cols; ++k) {
      const Int& v = x.a[i][k];
      if (v == 0) continue;
      for (int j = 0; j < y.cols; ++j) {
        const Int& w = y.a[k][j];
        if (w != 0) r.a[i][j] += v * w;
      }
    }
  return r;
}

inline std::vector<Int> mat_vec(const IntMatrix& x, const std::vector<Int>& v) {
  if (x.cols != static_cast<int>(v.size()))
    throw InputError("matrix-vector dimension mismatch");
  std::vector<Int> r(x.rows, Int(0));
  for (int i = 0; i < x.rows; ++i)
    for (int j = 0; j < x.cols; ++j)
      if (x.a[i][j] != 0 && v[j] != 0) r[i] += x.a[i][j] * v[j];
  return r;
}

// Writes "rows cols nnz" followed by one "row col value" line per nonzero
// entry, 1-based, in row-major order.
inline void dump_matrix(const IntMatrix& m, std::ostream& out) {
  long long nnz = 0;
  for (int i = 0; i < m.rows; ++i)
    for (int j = 0; j < m.cols; ++j)
      if (m.a[i][j] != 0) ++nnz;
  out << m.rows << ' ' << m.cols << ' ' << nnz << '\n';
  for (int i = 0; i < m.rows; ++i)
    for (int j = 0; j < m.cols; ++j)
      if (m.a[i][j] != 0)
        out << (i + 1) << ' ' << (j + 1) << ' ' << m.a[i][j] << '\n';
}

namespace detail {

// In-place diagonalization engine. Row and column operations are mirrored
// onto the witness matrices that the caller asked to track; rhs columns ride
// along under the row operations so U itself never needs to be materialized
// for kernel extraction or solving.
struct SmithEngine {
  IntMatrix A;
  IntMatrix R;  // optional right-hand sides, transformed by the row ops
  bool track_u = false;
  bool track_v = false;
  bool full_chain = false;
  IntMatrix U, Uinv, V, Vinv;
  int rank = 0;

  SmithEngine(IntMatrix a, IntMatrix rhs, bool tu, bool tv, bool chain)
      : A(std::move(a)), R(std::move(rhs)), track_u(tu), track_v(tv), full_chain(chain) {
    if (R.rows != 0 && R.rows != A.rows)
      throw InputError("right-hand side row count mismatch");
    if (track_u) {
      U = IntMatrix::identity(A.rows);
      Uinv = IntMatrix::identity(A.rows);
    }
    if (track_v) {
      V = IntMatrix::identity(A.cols);
      Vinv = IntMatrix::identity(A.cols);
    }
  }

  void swap_rows(int i, int j) {
    if (i == j) return;
    A.a[i].swap(A.a[j]);
    if (R.rows != 0) R.a[i].swap(R.a[j]);
    if (track_u) {
      U.a[i].swap(U.a[j]);
      for (int r = 0; r < Uinv.rows; ++r) std::swap(Uinv.a[r][i], Uinv.a[r][j]);
    }
  }

  void swap_cols(int i, int j) {
    if (i == j) return;
    for (int r = 0; r < A.rows; ++r) std::swap(A.a[r][i], A.a[r][j]);
    if (track_v) {
      for (int r = 0; r < V.rows; ++r) std::swap(V.a[r][i], V.a[r][j]);
      Vinv.a[i].swap(Vinv.a[j]);
    }
  }

  // row_i += c * row_t
  void add_row(int i, int t, const Int& c) {
    if (c == 0) return;
    for (int j = 0; j < A.cols; ++j)
      if (A.a[t][j] != 0) A.a[i][j] += c * A.a[t][j];
    for (int j = 0; j < R.cols; ++j)
      if (R.a[t][j] != 0) R.a[i][j] += c * R.a[t][j];
    if (track_u) {
      for (int j = 0; j < U.cols; ++j)
        if (U.a[t][j] != 0) U.a[i][j] += c * U.a[t][j];
      for (int r = 0; r < Uinv.rows; ++r)
        if (Uinv.a[r][i] != 0) Uinv.a[r][t] -= c * Uinv.a[r][i];
    }
  }

  // col_j += c * col_t
  void add_col(int j, int t, const Int& c) {
    if (c == 0) return;
    for (int r = 0; r < A.rows; ++r)
      if (A.a[r][t] != 0) A.a[r][j] += c * A.a[r][t];
    if (track_v) {
      for (int r = 0; r < V.rows; ++r)
        if (V.a[r][t] != 0) V.a[r][j] += c * V.a[r][t];
      for (int cidx = 0; cidx < Vinv.cols; ++cidx)
        if (Vinv.a[j][cidx] != 0) Vinv.a[t][cidx] -= c * Vinv.a[j][cidx];
    }
  }

  void negate_row(int i) {
    for (auto& v : A.a[i]) v = -v;
    if (R.rows != 0)
      for (auto& v : R.a[i]) v = -v;
    if (track_u) {
      for (auto& v : U.a[i]) v = -v;
      for (int r = 0; r < Uinv.rows; ++r) Uinv.a[r][i] = -Uinv.a[r][i];
    }
  }

  // Finds a nonzero pivot of minimal magnitude in the trailing submatrix,
  // stopping the scan early once a unit is seen.
  bool find_pivot(int t, int& pi, int& pj) const {
    bool found = false;
    Int best = 0;
    for (int i = t; i < A.rows; ++i)
      for (int j = t; j < A.cols; ++j) {
        const Int& v = A.a[i][j];
        if (v == 0) continue;
        Int mag = abs(v);
        if (!found || mag < best) {
          found = true;
          best = mag;
          pi = i;
          pj = j;
          if (best == 1) return true;
        }
      }
    return found;
  }

  void run() {
    int t = 0;
    while (t < A.rows && t < A.cols) {
      int pi = 0, pj = 0;
      if (!find_pivot(t, pi, pj)) break;
      swap_rows(t, pi);
      swap_cols(t, pj);
      for (;;) {
        bool moved = false;
        for (int i = t + 1; i < A.rows; ++i) {
          if (A.a[i][t] == 0) continue;
          Int q = round_div(A.a[i][t], A.a[t][t]);
          add_row(i, t, -q);
          if (A.a[i][t] != 0) {
            swap_rows(t, i);
            moved = true;
            break;
          }
        }
        if (moved) continue;
        for (int j = t + 1; j < A.cols; ++j) {
          if (A.a[t][j] == 0) continue;
          Int q = round_div(A.a[t][j], A.a[t][t]);
          add_col(j, t, -q);
          if (A.a[t][j] != 0) {
            swap_cols(t, j);
            moved = true;
            break;
          }
        }
        if (moved) continue;
        if (full_chain) {
          bool fixed = false;
          for (int i = t + 1; i < A.rows && !fixed; ++i)
            for (int j = t + 1; j < A.cols && !fixed; ++j)
              if (A.a[i][j] % A.a[t][t] != 0) {
                add_row(t, i, Int(1));
                fixed = true;
              }
          if (fixed) continue;
        }
        break;
      }
      if (A.a[t][t] < 0) negate_row(t);
      ++t;
    }
    rank = t;
  }
};

}  // namespace detail

// Full Smith normal form D = U * A * V with unimodular U, V, their exact
// inverses as witnesses, positive invariant factors in a divisibility chain.
// The result is re-verified by multiplication before it is returned.
struct SNFResult {
  std::vector<Int> factors;
  IntMatrix D, U, Uinv, V, Vinv;
  int rank() const { return static_cast<int>(factors.size()); }
};

inline SNFResult smith_normal_form(const IntMatrix& input) {
  detail::SmithEngine eng(input, IntMatrix{}, true, true, true);
  eng.run();
  SNFResult out;
  out.D = std::move(eng.A);
  out.U = std::move(eng.U);
  out.Uinv = std::move(eng.Uinv);
  out.V = std::move(eng.V);
  out.Vinv = std::move(eng.Vinv);
  for (int i = 0; i < eng.rank; ++i) out.factors.push_back(out.D.a[i][i]);
  for (size_t i = 0; i + 1 < out.factors.size(); ++i)
    if (out.factors[i] <= 0 || out.factors[i + 1] % out.factors[i] != 0)
      throw VerifyError("invariant factors fail the divisibility chain");
  if (mat_mul(mat_mul(out.U, input), out.V) != out.D)
    throw VerifyError("Smith form witness product U*A*V does not equal D");
  if (mat_mul(out.U, out.Uinv) != IntMatrix::identity(input.rows) ||
      mat_mul(out.V, out.Vinv) != IntMatrix::identity(input.cols))
    throw VerifyError("Smith form transformation matrices are not unimodular");
  return out;
}

// Diagonalization without the row witness: tracks only V, Vinv and carries
// the optional right-hand-side columns through the row operations. Suited to
// the large constraint matrices where materializing U would be wasteful.
// diag holds the nonzero pivots in order; they need not form a chain.
struct SmithDiag {
  std::vector<Int> diag;
  int rank = 0;
  IntMatrix V, Vinv;
  IntMatrix R;  // transformed right-hand sides (implicit U times input rhs)
};

inline SmithDiag smith_diagonal(const IntMatrix& input, IntMatrix rhs = IntMatrix{}) {
  detail::SmithEngine eng(input, std::move(rhs), false, true, false);
  eng.run();
  SmithDiag out;
  out.rank = eng.rank;
  for (int i = 0; i < eng.rank; ++i) out.diag.push_back(eng.A.a[i][i]);
  out.V = std::move(eng.V);
  out.Vinv = std::move(eng.Vinv);
  out.R = std::move(eng.R);
  if (mat_mul(out.V, out.Vinv) != IntMatrix::identity(input.cols))
    throw VerifyError("diagonalization column witness is not unimodular");
  return out;
}

// Basis of the integer kernel lattice { x : A x = 0 }, returned as columns.
// The basis columns are the trailing columns of V, so they span a saturated
// sublattice; each is re-checked against A before being returned.
inline std::vector<std::vector<Int>> kernel_basis(const IntMatrix& A) {
  SmithDiag sd = smith_diagonal(A);
  std::vector<std::vector<Int>> out;
  for (int j = sd.rank; j < A.cols; ++j) {
    std::vector<Int> col(A.cols);
    for (int i = 0; i < A.cols; ++i) col[i] = sd.V.a[i][j];
    if (!(mat_vec(A, col) == std::vector<Int>(A.rows, Int(0))))
      throw VerifyError("kernel basis column fails A x = 0");
    out.push_back(std::move(col));
  }
  return out;
}

struct SolveResult {
  bool ok = false;
  std::vector<Int> x;
};

// Solves A x = b over the ring: exactly over Z, or modulo m. In both cases
// the system is reduced to diagonal form d_i y_i = c_i; over Z/m the pivot
// equation is solvable iff gcd(d_i, m) divides c_i. Any solution found is
// verified against the original system.
inline SolveResult solve_linear(const IntMatrix& A, const std::vector<Int>& b,
                                const RingSpec& ring) {
  if (static_cast<int>(b.size()) != A.rows)
    throw InputError("right-hand side length mismatch");
  IntMatrix rhs = IntMatrix::zero(A.rows, 1);
  for (int i = 0; i < A.rows; ++i) rhs.a[i][0] = b[i];
  SmithDiag sd = smith_diagonal(A, std::move(rhs));
  const Int m = ring.is_integers() ? Int(0) : Int(ring.modulus());
  std::vector<Int> y(A.cols, Int(0));
  for (int i = 0; i < sd.rank; ++i) {
    const Int& d = sd.diag[i];
    const Int& c = sd.R.a[i][0];
    if (m == 0) {
      if (c % d != 0) return {};
      y[i] = c / d;
    } else {
      Int g = gcd(d, m);
      if (c % g != 0) return {};
      // d/g is invertible mod m/g; lift the inverse to solve d y = c mod m.
      Int mg = m / g;
      Int dg = mod_reduce(d / g, mg);
      Int inv = 0, t0 = 0, t1 = 1, r0 = mg, r1 = dg;
      while (r1 != 0) {
        Int q = r0 / r1;
        Int tmp = t0 - q * t1;
        t0 = t1;
        t1 = tmp;
        tmp = r0 - q * r1;
        r0 = r1;
        r1 = tmp;
      }
      if (r0 != 1 && mg != 1) throw VerifyError("pivot inverse does not exist");
      inv = mg == 1 ? Int(0) : mod_reduce(t0, mg);
      y[i] = mod_reduce((c / g) * inv, mg);
    }
  }
  for (int i = sd.rank; i < A.rows; ++i) {
    const Int& c = sd.R.a[i][0];
    if (m == 0 ? c != 0 : c % m != 0) return {};
  }
  SolveResult out;
  out.ok = true;
  out.x = mat_vec(sd.V, y);
  for (auto& v : out.x) v = ring.reduce(v);
  std::vector<Int> check = mat_vec(A, out.x);
  for (int i = 0; i < A.rows; ++i) {
    Int diff = check[i] - b[i];
    if (m == 0 ? diff != 0 : diff % m != 0)
      throw VerifyError("constructed solution fails the original system");
  }
  return out;
}

}  // namespace nielsen
