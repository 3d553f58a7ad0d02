#include "mcq/lp.hpp"

#include <stdexcept>

namespace mcq {

namespace {

// Dense tableau: rows[i] has n coefficient columns plus rhs at index n.
// obj holds reduced costs (we maximize, entering column needs obj[j] > 0)
// plus the negated objective value at index n.
struct Tableau {
  int m, n;
  int enter_limit;  // columns >= this never enter (phase 2 bars artificials)
  std::vector<Vec> row;
  Vec obj;
  std::vector<int> basis;

  void pivot(int r, int c) {
    Rational inv = 1 / row[r][c];
    for (int j = 0; j <= n; ++j) row[r][j] *= inv;
    for (int i = 0; i < m; ++i) {
      if (i == r || sgn(row[i][c]) == 0) continue;
      Rational f = row[i][c];
      for (int j = 0; j <= n; ++j) row[i][j] -= f * row[r][j];
    }
    if (sgn(obj[c]) != 0) {
      Rational f = obj[c];
      for (int j = 0; j <= n; ++j) obj[j] -= f * row[r][j];
    }
    basis[r] = c;
  }

  // Bland's rule: smallest eligible indices, so no cycling.
  // Returns Optimal or Unbounded.
  LPStatus iterate() {
    for (;;) {
      int enter = -1;
      for (int j = 0; j < enter_limit; ++j)
        if (sgn(obj[j]) > 0) {
          enter = j;
          break;
        }
      if (enter < 0) return LPStatus::Optimal;
      int leave = -1;
      Rational best;
      for (int i = 0; i < m; ++i) {
        if (sgn(row[i][enter]) <= 0) continue;
        Rational ratio = row[i][n] / row[i][enter];
        if (leave < 0 || ratio < best ||
            (ratio == best && basis[i] < basis[leave])) {
          leave = i;
          best = ratio;
        }
      }
      if (leave < 0) return LPStatus::Unbounded;
      pivot(leave, enter);
    }
  }
};

}  // namespace

LPResult lp_max(const Mat& A, const Vec& b, const Vec& c) {
  int m = static_cast<int>(A.size());
  int n = m == 0 ? static_cast<int>(c.size()) : static_cast<int>(A[0].size());
  if (static_cast<int>(c.size()) != n) throw std::invalid_argument("lp_max: c size");

  Tableau t;
  t.m = m;
  t.n = n + m;  // structural + one artificial per row
  t.enter_limit = t.n;
  t.row.assign(m, Vec(t.n + 1, Rational(0)));
  t.basis.assign(m, 0);
  for (int i = 0; i < m; ++i) {
    bool neg = sgn(b[i]) < 0;
    for (int j = 0; j < n; ++j) t.row[i][j] = neg ? -A[i][j] : A[i][j];
    t.row[i][n + i] = 1;
    t.row[i][t.n] = neg ? -b[i] : b[i];
    t.basis[i] = n + i;
  }

  // Phase 1: maximize minus the sum of artificials; reduced costs start as
  // the column sums over structural variables.
  t.obj.assign(t.n + 1, Rational(0));
  for (int i = 0; i < m; ++i)
    for (int j = 0; j <= t.n; ++j)
      if (j < n || j == t.n) t.obj[j] += t.row[i][j];
  LPStatus st = t.iterate();
  if (st == LPStatus::Unbounded)
    throw std::logic_error("phase-1 objective unbounded");
  if (sgn(t.obj[t.n]) != 0) {  // leftover infeasibility
    LPResult r;
    r.status = LPStatus::Infeasible;
    return r;
  }
  // Remove artificials still sitting (at zero level) in the basis.
  for (int i = 0; i < m; ++i) {
    if (t.basis[i] < n) continue;
    int c2 = -1;
    for (int j = 0; j < n; ++j)
      if (sgn(t.row[i][j]) != 0) {
        c2 = j;
        break;
      }
    if (c2 >= 0) {
      t.pivot(i, c2);
    } else {
      // Redundant constraint; the artificial stays basic at value zero and
      // its column never re-enters because phase-2 costs below exclude it.
    }
  }

  // Phase 2: real objective.  obj[j] = c[j] - c_B^T B^-1 A_j.  Artificial
  // columns are barred from entering via enter_limit.
  t.enter_limit = n;
  t.obj.assign(t.n + 1, Rational(0));
  for (int j = 0; j < n; ++j) t.obj[j] = c[j];
  for (int i = 0; i < m; ++i) {
    int bv = t.basis[i];
    if (bv < n && sgn(c[bv]) != 0) {
      Rational f = c[bv];
      for (int j = 0; j <= t.n; ++j) t.obj[j] -= f * t.row[i][j];
    }
  }

  st = t.iterate();
  LPResult r;
  if (st == LPStatus::Unbounded) {
    r.status = LPStatus::Unbounded;
    return r;
  }
  r.status = LPStatus::Optimal;
  r.x.assign(n, Rational(0));
  for (int i = 0; i < m; ++i)
    if (t.basis[i] < n) r.x[t.basis[i]] = t.row[i][t.n];
  r.value = -t.obj[t.n];
  return r;
}

bool lp_feasible(const Mat& A, const Vec& b) {
  Vec c(A.empty() ? 0 : A[0].size(), Rational(0));
  LPResult r = lp_max(A, b, c);
  return r.status == LPStatus::Optimal;
}

}  // namespace mcq
