#pragma once

#include <vector>

#include "mcq/matrix.hpp"
#include "mcq/rational.hpp"

namespace mcq {

// Exact linear programming over the rationals, standard form
//   maximize c^T x   subject to  A x = b,  x >= 0.
// Two-phase simplex with Bland's rule, so it terminates and every
// feasibility/optimality answer is a certificate, not an approximation.
enum class LPStatus { Optimal, Infeasible, Unbounded };

struct LPResult {
  LPStatus status{LPStatus::Infeasible};
  Rational value{0};
  Vec x;
};

LPResult lp_max(const Mat& A, const Vec& b, const Vec& c);

// Convenience: feasibility of A x = b, x >= 0.
bool lp_feasible(const Mat& A, const Vec& b);

}  // namespace mcq
