#include "core/lattice.hpp"

#include <cmath>

namespace fdom {

namespace {

constexpr std::int64_t kCoordinateLimit = std::int64_t(1) << 40;

std::int64_t to_coordinate(const Real& v) {
  if (abs(v) > Real(kCoordinateLimit)) fail(ErrorCode::resource, "enumeration coordinate bound overflow");
  return v.convert_to<std::int64_t>();
}

RealMatrix transform(const RealMatrix& gram, const IntMatrix& basis) {
  const std::size_t n = gram.size();
  RealMatrix out(n, std::vector<Real>(n, Real(0)));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i; j < n; ++j) {
      Real s = 0;
      for (std::size_t k = 0; k < n; ++k) {
        if (basis[i][k] == 0) continue;
        for (std::size_t l = 0; l < n; ++l)
          if (basis[j][l] != 0) s += gram[k][l] * Real(basis[i][k]) * Real(basis[j][l]);
      }
      out[i][j] = s;
      out[j][i] = s;
    }
  return out;
}

// Gram-Schmidt data of the current basis: mu and squared lengths.
void gso(const RealMatrix& g, RealMatrix& mu, std::vector<Real>& b) {
  const std::size_t n = g.size();
  mu.assign(n, std::vector<Real>(n, Real(0)));
  b.assign(n, Real(0));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < i; ++j) {
      Real s = g[i][j];
      for (std::size_t k = 0; k < j; ++k) s -= mu[j][k] * mu[i][k] * b[k];
      mu[i][j] = s / b[j];
    }
    Real s = g[i][i];
    for (std::size_t k = 0; k < i; ++k) s -= mu[i][k] * mu[i][k] * b[k];
    b[i] = s;
  }
}

}  // namespace

Real quadratic_value(const RealMatrix& gram, const IntVector& x) {
  Real s = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (x[i] == 0) continue;
    Real row = 0;
    for (std::size_t j = 0; j < x.size(); ++j)
      if (x[j] != 0) row += gram[i][j] * Real(x[j]);
    s += row * Real(x[i]);
  }
  return s;
}

LllResult lll_reduce(const RealMatrix& gram, const ToleranceContext& ctx, double delta) {
  const std::size_t n = gram.size();
  LllResult r{IntMatrix(n, IntVector(n, 0)), gram};
  for (std::size_t i = 0; i < n; ++i) r.basis[i][i] = 1;
  RealMatrix mu;
  std::vector<Real> b;
  std::size_t k = 1;
  std::size_t guard = 0;
  while (k < n) {
    if (++guard > 100000) fail(ErrorCode::divergence, "lattice reduction did not terminate");
    gso(r.gram, mu, b);
    for (std::size_t j = k; j-- > 0;) {
      Real q = round(mu[k][j]);
      if (q == 0) continue;
      const std::int64_t qi = to_coordinate(q);
      for (std::size_t t = 0; t < n; ++t) r.basis[k][t] -= qi * r.basis[j][t];
      for (std::size_t t = 0; t <= j; ++t) mu[k][t] -= q * (t == j ? Real(1) : mu[j][t]);
    }
    r.gram = transform(gram, r.basis);
    gso(r.gram, mu, b);
    if (!(b[k - 1] > ctx.tolerance() * ctx.tolerance()))
      fail(ErrorCode::precision, "Gram matrix is not positive definite at working precision");
    if (b[k] >= (Real(delta) - mu[k][k - 1] * mu[k][k - 1]) * b[k - 1]) {
      ++k;
    } else {
      std::swap(r.basis[k], r.basis[k - 1]);
      r.gram = transform(gram, r.basis);
      k = k > 1 ? k - 1 : 1;
    }
  }
  return r;
}

CholeskyForm cholesky_form(const RealMatrix& gram, const ToleranceContext& ctx) {
  const std::size_t n = gram.size();
  CholeskyForm f{std::vector<Real>(n, Real(0)), RealMatrix(n, std::vector<Real>(n, Real(0)))};
  RealMatrix a = gram;
  for (std::size_t i = 0; i < n; ++i) {
    if (!(a[i][i] > ctx.tolerance() * ctx.tolerance()))
      fail(ErrorCode::precision, "Cholesky decomposition failed: form is not positive definite");
    f.diag[i] = a[i][i];
    for (std::size_t j = i + 1; j < n; ++j) f.mu[i][j] = a[i][j] / a[i][i];
    for (std::size_t j = i + 1; j < n; ++j)
      for (std::size_t k = j; k < n; ++k) {
        a[j][k] -= f.mu[i][j] * a[i][k];
        a[k][j] = a[j][k];
      }
  }
  return f;
}

void fp_traverse(const CholeskyForm& form, const Real& bound, const LastLevelVisitor& visit) {
  const std::size_t n = form.diag.size();
  if (n == 0) return;
  IntVector x(n, 0);
  std::vector<Real> remaining(n + 1, Real(0));
  remaining[n] = bound;
  // Explicit stack over levels n-1 .. 1; level 0 goes to the visitor.
  std::vector<std::int64_t> hi(n, 0);
  std::vector<Real> centers(n, Real(0));

  auto level_center = [&](std::size_t i) {
    Real c = 0;
    for (std::size_t j = i + 1; j < n; ++j)
      if (x[j] != 0) c -= form.mu[i][j] * Real(x[j]);
    return c;
  };
  auto higher_zero = [&](std::size_t i) {
    for (std::size_t j = i + 1; j < n; ++j)
      if (x[j] != 0) return false;
    return true;
  };
  // Prepares level i: sets x[i] to its first value; false if empty.
  auto open = [&](std::size_t i) {
    Real r2 = remaining[i + 1] / form.diag[i];
    if (r2 < 0) return false;
    Real w = sqrt(r2);
    centers[i] = level_center(i);
    std::int64_t lo = to_coordinate(ceil(centers[i] - w));
    hi[i] = to_coordinate(floor(centers[i] + w));
    if (higher_zero(i)) lo = std::max<std::int64_t>(lo, 0);
    if (lo > hi[i]) return false;
    x[i] = lo;
    return true;
  };
  auto settle = [&](std::size_t i) {
    Real d = Real(x[i]) - centers[i];
    remaining[i] = remaining[i + 1] - form.diag[i] * d * d;
  };

  if (n == 1) {
    Real r2 = bound / form.diag[0];
    if (r2 < 0) return;
    Real w = sqrt(r2);
    visit(x, Real(0), r2, 1, to_coordinate(floor(w)));
    return;
  }
  std::size_t i = n - 1;
  if (!open(i)) return;
  for (;;) {
    settle(i);
    if (i == 1) {
      // Hand level 0 to the visitor.
      Real c = level_center(0);
      Real r2 = remaining[1] / form.diag[0];
      if (r2 >= 0) {
        Real w = sqrt(r2);
        std::int64_t lo = to_coordinate(ceil(c - w));
        std::int64_t h = to_coordinate(floor(c + w));
        if (higher_zero(0)) lo = std::max<std::int64_t>(lo, 1);
        if (!visit(x, c, r2, lo, h)) return;
      }
    } else {
      --i;
      if (open(i)) continue;
      ++i;
    }
    // Advance at level i, climbing while exhausted.
    for (;;) {
      if (x[i] < hi[i]) {
        ++x[i];
        break;
      }
      x[i] = 0;
      if (++i == n) return;
    }
  }
}

void fincke_pohst_visit(const RealMatrix& gram, const Real& C, const ToleranceContext& ctx,
                        const std::function<bool(const IntVector&)>& visit) {
  if (C <= 0) return;
  const std::size_t n = gram.size();
  LllResult red = lll_reduce(gram, ctx);
  CholeskyForm form = cholesky_form(red.gram, ctx);
  const Real slack = ctx.tolerance() * (C > 1 ? C : Real(1)) * 10;
  const Real bound = C + slack;
  fp_traverse(form, bound, [&](IntVector& y, const Real&, const Real&, std::int64_t lo, std::int64_t hi) {
    for (std::int64_t v = lo; v <= hi; ++v) {
      y[0] = v;
      IntVector x(n, 0);
      for (std::size_t i = 0; i < n; ++i)
        if (y[i] != 0)
          for (std::size_t k = 0; k < n; ++k) x[k] += y[i] * red.basis[i][k];
      if (quadratic_value(gram, x) > bound) continue;
      // Re-sign in the original coordinates: last nonzero positive.
      for (std::size_t k = n; k-- > 0;) {
        if (x[k] == 0) continue;
        if (x[k] < 0)
          for (auto& t : x) t = -t;
        break;
      }
      if (!visit(x)) {
        y[0] = 0;
        return false;
      }
    }
    y[0] = 0;
    return true;
  });
}

std::vector<IntVector> fincke_pohst(const RealMatrix& gram, const Real& C, const ToleranceContext& ctx) {
  std::vector<IntVector> out;
  fincke_pohst_visit(gram, C, ctx, [&](const IntVector& x) {
    out.push_back(x);
    return true;
  });
  return out;
}

}  // namespace fdom
