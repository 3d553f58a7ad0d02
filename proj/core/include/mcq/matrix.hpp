#pragma once

#include <optional>
#include <vector>

#include "mcq/rational.hpp"

namespace mcq {

// Dense rational matrix as a vector of rows.  Small sizes only (the ambient
// dimensions here are 2k <= 14), so no pivoting heuristics beyond exactness.
using Mat = std::vector<Vec>;

Mat mat_identity(int n);
Mat mat_mul(const Mat& A, const Mat& B);
Vec mat_vec(const Mat& A, const Vec& x);
Mat mat_transpose(const Mat& A);

// Determinant by fraction-free elimination: rows are scaled to a common
// integer matrix, reduced with the two-step division-exact rule, and the
// scaling is divided back out.  Exact for any rational input.
Rational det_bareiss(const Mat& A);

// Plain cofactor expansion, exponential; kept as an independent cross-check
// for small matrices.
Rational det_cofactor(const Mat& A);

// Exact inverse via Gauss-Jordan; nullopt if singular.
std::optional<Mat> mat_inverse(const Mat& A);

// Solve A x = b exactly (A square); nullopt if singular.
std::optional<Vec> solve_linear(const Mat& A, const Vec& b);

// Barycentric coordinates of p with respect to affinely independent verts
// (any count m <= dim+1): the unique lambda with sum 1 and sum lambda_i v_i
// = p, if p lies in the affine hull; nullopt otherwise (or if the vertices
// are affinely dependent).
std::optional<Vec> barycentric(const std::vector<Vec>& verts, const Vec& p);

// Signed interaction matrix of a block of size b: 1 on the diagonal and 2 in
// every off-diagonal slot.  Its determinant alternates as (-1)^(b-1)(2b-1).
Mat ones_two_matrix(int b);
// Same with row a and column a deleted.
Mat ones_two_matrix_punctured(int b, int a);

}  // namespace mcq
