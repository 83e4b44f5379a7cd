#pragma once

// Slow, obviously-correct reference computations shared by the unit suites
// and the acceptance binary.

#include "core/boundary.hpp"
#include "core/lattice.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <vector>

namespace fdom::oracle {

// Random elements whose isometric circles have centres at modulus in
// [lo, lo + span]; small lo gives large circles, hence many intersections.
inline std::vector<DiscAutomorphism> random_elements(std::mt19937_64& rng, int n, double lo, double span,
                                                     const ToleranceContext& ctx) {
  std::uniform_real_distribution<double> U(0, 1);
  std::vector<DiscAutomorphism> out;
  for (int i = 0; i < n; ++i) {
    const Real r(lo + span * U(rng)), theta(6.283185307179586 * U(rng));
    out.push_back(from_psu(element_with_circle(Complex(r * cos(theta), r * sin(theta)), ctx)));
  }
  return out;
}

// The O(nk) arrangement method: every circle endpoint and pairwise
// intersection that is not strictly inside another circle is a vertex.
inline std::vector<Complex> arrangement_vertices(const std::vector<DiscAutomorphism>& G, const ToleranceContext& ctx) {
  std::vector<IsometricCircle> cs;
  for (const auto& g : G) cs.push_back(*isometric_circle(g.psu, ctx));
  std::vector<Complex> cand;
  for (std::size_t i = 0; i < cs.size(); ++i) {
    cand.push_back(cs[i].initial_point);
    cand.push_back(cs[i].terminal_point);
    for (std::size_t j = i + 1; j < cs.size(); ++j)
      if (auto v = intersect_isometric(cs[i], cs[j], ctx)) cand.push_back(*v);
  }
  std::vector<Complex> keep;
  for (const auto& z : cand) {
    bool outside = true;
    for (const auto& c : cs)
      if ((z - c.center).abs() < c.radius - ctx.tolerance() * 10) {
        outside = false;
        break;
      }
    if (!outside) continue;
    bool dup = false;
    for (const auto& k : keep) dup = dup || tol_eq(k, z, ctx);
    if (!dup) keep.push_back(z);
  }
  return keep;
}

inline bool same_vertex_set(const std::vector<Complex>& expected, const NormalizedBoundary& B,
                            const ToleranceContext& ctx) {
  if (expected.size() != B.vertices.size()) return false;
  for (const auto& v : B.vertices) {
    bool found = false;
    for (const auto& e : expected) found = found || tol_eq(e, v.point, ctx);
    if (!found) return false;
  }
  return true;
}

// Same side elements in the same order and the same vertices within t.
inline bool same_boundary(const NormalizedBoundary& a, const NormalizedBoundary& b, const ToleranceContext& ctx) {
  if (a.size() != b.size()) return false;
  for (std::size_t j = 0; j < a.size(); ++j) {
    if (!tol_eq(a.vertices[j].point, b.vertices[j].point, ctx)) return false;
    if (a.vertices[j].kind != b.vertices[j].kind) return false;
    if (a.sides[j].has_value() != b.sides[j].has_value()) return false;
    if (a.sides[j] && !(tol_eq(a.sides[j]->psu.A, b.sides[j]->psu.A, ctx) && tol_eq(a.sides[j]->psu.B, b.sides[j]->psu.B, ctx)))
      return false;
  }
  return true;
}

// Integer vectors with Q(x) <= C, one per +-pair, by scanning the box
// |x_i| <= sqrt(C (G^-1)_ii), which contains the whole ellipsoid.
inline std::vector<IntVector> box_search(const std::vector<std::vector<double>>& gram, double C) {
  const std::size_t n = gram.size();
  // Gauss-Jordan inverse in long double.
  std::vector<std::vector<long double>> m(n, std::vector<long double>(2 * n, 0));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) m[i][j] = gram[i][j];
    m[i][n + i] = 1;
  }
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t piv = c;
    for (std::size_t r = c + 1; r < n; ++r)
      if (std::fabs(m[r][c]) > std::fabs(m[piv][c])) piv = r;
    std::swap(m[c], m[piv]);
    const long double d = m[c][c];
    for (auto& v : m[c]) v /= d;
    for (std::size_t r = 0; r < n; ++r) {
      if (r == c) continue;
      const long double f = m[r][c];
      for (std::size_t k = 0; k < 2 * n; ++k) m[r][k] -= f * m[c][k];
    }
  }
  std::vector<std::int64_t> bound(n);
  for (std::size_t i = 0; i < n; ++i) bound[i] = static_cast<std::int64_t>(std::ceil(std::sqrt(C * static_cast<double>(m[i][n + i]))));
  std::vector<IntVector> out;
  IntVector x(n);
  for (std::size_t i = 0; i < n; ++i) x[i] = -bound[i];
  for (;;) {
    long double q = 0;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) q += gram[i][j] * static_cast<long double>(x[i]) * static_cast<long double>(x[j]);
    std::size_t last = n;
    for (std::size_t i = n; i-- > 0;)
      if (x[i] != 0) {
        last = i;
        break;
      }
    if (last != n && x[last] > 0 && q <= C + 1e-9) out.push_back(x);
    std::size_t i = 0;
    while (i < n && x[i] == bound[i]) x[i] = -bound[i], ++i;
    if (i == n) break;
    ++x[i];
  }
  return out;
}

// cosh d(g z1, z2) without forming 1 - |g z1|^2 by subtraction, which loses
// every digit that g z1 has crept toward the circle.
inline Real cosh_distance_after(const PsuElement& g, const Complex& z1, const Complex& z2) {
  const Complex den = g.B.conj() * z1 + g.A.conj();
  const Complex w = (g.A * z1 + g.B) / den;
  const Real inner1 = (Real(1) - z1.norm()) / den.norm();
  return 1 + 2 * (w - z2).norm() / (inner1 * (Real(1) - z2.norm()));
}

}  // namespace fdom::oracle
