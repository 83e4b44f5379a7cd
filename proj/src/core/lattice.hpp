#pragma once

// Positive-definite quadratic forms on Z^n: Gram-matrix LLL, the
// sum-of-squares (Cholesky) form, and Fincke-Pohst enumeration.

#include "core/hyperbolic.hpp"

#include <cstdint>
#include <functional>
#include <vector>

namespace fdom {

using RealMatrix = std::vector<std::vector<Real>>;
using IntVector = std::vector<std::int64_t>;
using IntMatrix = std::vector<IntVector>;

Real quadratic_value(const RealMatrix& gram, const IntVector& x);

struct LllResult {
  // Row i is the i-th reduced basis vector in the original coordinates.
  IntMatrix basis;
  RealMatrix gram;
};

LllResult lll_reduce(const RealMatrix& gram, const ToleranceContext& ctx, double delta = 0.99);

// Q(x) = sum_i diag[i] * (x_i + sum_{j>i} mu[i][j] x_j)^2.
struct CholeskyForm {
  std::vector<Real> diag;
  RealMatrix mu;
};

// Throws a precision error if the matrix is not numerically positive definite.
CholeskyForm cholesky_form(const RealMatrix& gram, const ToleranceContext& ctx);

// Called once per surviving assignment of x_1..x_{n-1}; x[0] is unset. The
// admissible x_0 satisfy (x_0 - center)^2 <= radius2, and lo is the smallest
// admissible value respecting the sign convention below. Return false to stop.
using LastLevelVisitor =
    std::function<bool(IntVector& x, const Real& center, const Real& radius2, std::int64_t lo, std::int64_t hi)>;

// Depth-first traversal of {x : Q(x) <= bound}, one representative per +-pair:
// the last nonzero coordinate is positive. The zero vector is reported to the
// visitor as the assignment with all higher coordinates zero and lo = 1.
void fp_traverse(const CholeskyForm& form, const Real& bound, const LastLevelVisitor& visit);

// Visits every nonzero x with Q(x) <= C (one per +-pair) after one LLL pass;
// stops early when the visitor returns false.
void fincke_pohst_visit(const RealMatrix& gram, const Real& C, const ToleranceContext& ctx,
                        const std::function<bool(const IntVector&)>& visit);

// All nonzero x with Q(x) <= C (one per +-pair). Q is the Gram form; the
// boundary is inclusive up to a relative slack of the tolerance.
std::vector<IntVector> fincke_pohst(const RealMatrix& gram, const Real& C, const ToleranceContext& ctx);

}  // namespace fdom
