#include "mcq/matrix.hpp"

#include <stdexcept>

namespace mcq {

Mat mat_identity(int n) {
  Mat I(n, Vec(n, Rational(0)));
  for (int i = 0; i < n; ++i) I[i][i] = 1;
  return I;
}

Mat mat_mul(const Mat& A, const Mat& B) {
  size_t n = A.size(), k = B.size(), m = B.empty() ? 0 : B[0].size();
  Mat C(n, Vec(m, Rational(0)));
  for (size_t i = 0; i < n; ++i)
    for (size_t l = 0; l < k; ++l) {
      if (sgn(A[i][l]) == 0) continue;
      for (size_t j = 0; j < m; ++j) C[i][j] += A[i][l] * B[l][j];
    }
  return C;
}

Vec mat_vec(const Mat& A, const Vec& x) {
  Vec y(A.size(), Rational(0));
  for (size_t i = 0; i < A.size(); ++i)
    for (size_t j = 0; j < x.size(); ++j) y[i] += A[i][j] * x[j];
  return y;
}

Mat mat_transpose(const Mat& A) {
  if (A.empty()) return A;
  Mat T(A[0].size(), Vec(A.size(), Rational(0)));
  for (size_t i = 0; i < A.size(); ++i)
    for (size_t j = 0; j < A[0].size(); ++j) T[j][i] = A[i][j];
  return T;
}

Rational det_bareiss(const Mat& A) {
  int n = static_cast<int>(A.size());
  if (n == 0) return Rational(1);
  // Clear denominators row by row, remembering the total scale.
  std::vector<std::vector<Integer>> B(n, std::vector<Integer>(n));
  Integer scale = 1;
  for (int i = 0; i < n; ++i) {
    Integer L = 1;
    for (int j = 0; j < n; ++j) L = ilcm(L, den(A[i][j]));
    for (int j = 0; j < n; ++j) {
      Rational v = A[i][j] * Rational(L);
      B[i][j] = num(v);  // den is 1 by construction
    }
    scale *= L;
  }
  int sign = 1;
  Integer prev = 1;
  for (int k = 0; k < n - 1; ++k) {
    int piv = -1;
    for (int r = k; r < n; ++r)
      if (sgn(B[r][k]) != 0) {
        piv = r;
        break;
      }
    if (piv < 0) return Rational(0);
    if (piv != k) {
      std::swap(B[piv], B[k]);
      sign = -sign;
    }
    for (int i = k + 1; i < n; ++i)
      for (int j = k + 1; j < n; ++j) {
        Integer t = B[k][k] * B[i][j] - B[i][k] * B[k][j];
        mpz_divexact(B[i][j].get_mpz_t(), t.get_mpz_t(), prev.get_mpz_t());
      }
    prev = B[k][k];
  }
  Integer di = B[n - 1][n - 1];
  if (sign < 0) di = -di;
  return make_rational(di, scale);
}

Rational det_cofactor(const Mat& A) {
  int n = static_cast<int>(A.size());
  if (n == 0) return Rational(1);
  if (n == 1) return A[0][0];
  Rational acc = 0;
  for (int j = 0; j < n; ++j) {
    if (sgn(A[0][j]) == 0) continue;
    Mat minor(n - 1, Vec(n - 1));
    for (int i = 1; i < n; ++i) {
      int cc = 0;
      for (int jj = 0; jj < n; ++jj) {
        if (jj == j) continue;
        minor[i - 1][cc++] = A[i][jj];
      }
    }
    Rational term = A[0][j] * det_cofactor(minor);
    if (j & 1)
      acc -= term;
    else
      acc += term;
  }
  return acc;
}

std::optional<Mat> mat_inverse(const Mat& A) {
  int n = static_cast<int>(A.size());
  Mat W = A;
  Mat I = mat_identity(n);
  for (int k = 0; k < n; ++k) {
    int piv = -1;
    for (int r = k; r < n; ++r)
      if (sgn(W[r][k]) != 0) {
        piv = r;
        break;
      }
    if (piv < 0) return std::nullopt;
    std::swap(W[piv], W[k]);
    std::swap(I[piv], I[k]);
    Rational inv = 1 / W[k][k];
    for (int j = 0; j < n; ++j) {
      W[k][j] *= inv;
      I[k][j] *= inv;
    }
    for (int i = 0; i < n; ++i) {
      if (i == k || sgn(W[i][k]) == 0) continue;
      Rational f = W[i][k];
      for (int j = 0; j < n; ++j) {
        W[i][j] -= f * W[k][j];
        I[i][j] -= f * I[k][j];
      }
    }
  }
  return I;
}

std::optional<Vec> solve_linear(const Mat& A, const Vec& b) {
  auto inv = mat_inverse(A);
  if (!inv) return std::nullopt;
  return mat_vec(*inv, b);
}

std::optional<Vec> barycentric(const std::vector<Vec>& verts, const Vec& p) {
  // Solve [verts as columns; row of ones] lambda = [p; 1] exactly, demanding
  // a unique consistent solution.
  size_t m = verts.size();
  if (m == 0) return std::nullopt;
  size_t d = p.size();
  size_t rows = d + 1, cols = m;
  Mat W(rows, Vec(cols + 1, Rational(0)));
  for (size_t r = 0; r < d; ++r) {
    for (size_t j = 0; j < m; ++j) W[r][j] = verts[j][r];
    W[r][cols] = p[r];
  }
  for (size_t j = 0; j < m; ++j) W[d][j] = 1;
  W[d][cols] = 1;

  std::vector<int> pivot_col(rows, -1);
  size_t rank = 0;
  for (size_t c = 0; c < cols && rank < rows; ++c) {
    size_t piv = rank;
    while (piv < rows && sgn(W[piv][c]) == 0) ++piv;
    if (piv == rows) continue;
    std::swap(W[piv], W[rank]);
    Rational inv = 1 / W[rank][c];
    for (size_t j = c; j <= cols; ++j) W[rank][j] *= inv;
    for (size_t i = 0; i < rows; ++i) {
      if (i == rank || sgn(W[i][c]) == 0) continue;
      Rational f = W[i][c];
      for (size_t j = c; j <= cols; ++j) W[i][j] -= f * W[rank][j];
    }
    pivot_col[rank] = static_cast<int>(c);
    ++rank;
  }
  if (rank < cols) return std::nullopt;  // affinely dependent vertices
  for (size_t i = rank; i < rows; ++i)
    if (sgn(W[i][cols]) != 0) return std::nullopt;  // p outside the affine hull
  Vec lambda(m, Rational(0));
  for (size_t i = 0; i < rank; ++i) lambda[pivot_col[i]] = W[i][cols];
  return lambda;
}

Mat ones_two_matrix(int b) {
  Mat M(b, Vec(b, Rational(2)));
  for (int i = 0; i < b; ++i) M[i][i] = 1;
  return M;
}

Mat ones_two_matrix_punctured(int b, int a) {
  Mat full = ones_two_matrix(b);
  Mat M;
  for (int i = 0; i < b; ++i) {
    if (i == a) continue;
    Vec row;
    for (int j = 0; j < b; ++j) {
      if (j == a) continue;
      row.push_back(full[i][j]);
    }
    M.push_back(row);
  }
  return M;
}

}  // namespace mcq
