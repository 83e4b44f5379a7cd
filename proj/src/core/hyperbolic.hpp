#pragma once

// Floating-point geometry of the unit-disc model: the Cayley map from the
// upper half plane, PSL(2,R) and PSU(1,1) elements, hyperbolic distance,
// isometric circles and arc intersections. All equality tests go through a
// ToleranceContext.

#include "core/errors.hpp"
#include "core/real.hpp"

#include <optional>
#include <variant>
#include <vector>

namespace fdom {

class ToleranceContext {
 public:
  static constexpr int kDefaultDigits = 38;

  // Sets the process-wide working precision to `digits` decimal digits; the
  // tolerance is 10^(-digits/2).
  explicit ToleranceContext(int digits = kDefaultDigits);

  int digits() const { return digits_; }
  const Real& tolerance() const { return tolerance_; }
  const Real& pi() const { return pi_; }
  Real two_pi() const { return pi_ * 2; }

  // Re-applies the working precision (after another context changed it).
  void activate() const;

 private:
  int digits_;
  Real tolerance_;
  Real pi_;
};

bool tol_eq(const Complex& z1, const Complex& z2, const ToleranceContext& ctx);
bool tol_eq(const Real& x1, const Real& x2, const ToleranceContext& ctx);
inline bool tol_zero(const Real& x, const ToleranceContext& ctx) { return abs(x) < ctx.tolerance(); }

// Argument in [0, 2pi).
Real arg(const Complex& z, const ToleranceContext& ctx);

struct PslElement {
  Real a, b, c, d;

  Real det() const { return a * d - b * c; }
  PslElement operator*(const PslElement& o) const;
  PslElement inverse() const { return {d, -b, -c, a}; }
  // First entry of (c, d, a, b) that is not tolerance-zero made positive.
  PslElement canonical(const ToleranceContext& ctx) const;
  Complex apply(const Complex& z) const;
};

// The matrix [[A, B], [conj(B), conj(A)]].
struct PsuElement {
  Complex A, B;

  static PsuElement identity() { return {Complex(1), Complex(0)}; }
  // The standard transvection sending 0 to z.
  static PsuElement translation_to(const Complex& z);

  Real det() const { return A.norm() - B.norm(); }
  PsuElement operator*(const PsuElement& o) const;
  PsuElement inverse() const { return {A.conj(), -B}; }
  // Re(A) > 0, or Im(A) > 0 when Re(A) is tolerance-zero.
  PsuElement canonical(const ToleranceContext& ctx) const;
};

// Cayley transform sending p to 0.
Complex cayley_to_disc(const Complex& z, const Complex& p);
Complex cayley_from_disc(const Complex& w, const Complex& p);

// The same conjugation for any real matrix, with no determinant check and no
// sign normalization; linear in g.
PsuElement conjugate_linear(const PslElement& g, const Complex& p);
PsuElement conjugate_to_psu(const PslElement& g, const Complex& p, const ToleranceContext& ctx);
PslElement conjugate_to_psl(const PsuElement& m, const Complex& p);

Complex apply_moebius(const PsuElement& m, const Complex& z, const ToleranceContext& ctx);

Real hyperbolic_distance(const Complex& z1, const Complex& z2);
// cosh of the hyperbolic distance, without the arccosh.
Real cosh_distance(const Complex& z1, const Complex& z2);

// The arc I(g) inside the disc. Traversed counterclockwise about its own
// centre it runs from initial_point to terminal_point, which means clockwise
// as seen from 0: the terminal point has the smaller argument.
struct IsometricCircle {
  Complex center;
  Real radius;
  Complex initial_point;
  Complex terminal_point;
  Real terminal_arg;
  Real initial_arg;

  // |z - center| < radius; strict, no tolerance.
  bool strictly_inside(const Complex& z) const { return (z - center).norm() < radius * radius; }
  // Signed power |z - c|^2 - r^2 (negative inside the circle).
  Real power(const Complex& z) const { return (z - center).norm() - radius * radius; }
  // Clockwise-about-centre tangent at z, i.e. direction of increasing
  // argument about 0 along the arc.
  Complex tangent(const Complex& z) const;
};

std::optional<IsometricCircle> isometric_circle(const PsuElement& m, const ToleranceContext& ctx);
// The isometric circle with the given centre (|center| > 1); the radius is
// derived from orthogonality with the unit circle.
IsometricCircle circle_from_center(const Complex& center, const ToleranceContext& ctx);
// An element of PSU(1,1) whose isometric circle has the given centre.
PsuElement element_with_circle(const Complex& center, const ToleranceContext& ctx);

struct UnitCircle {};
// Euclidean segment from 0 to `end`.
struct RadialSegment {
  Complex end;
};
using ArcObject = std::variant<IsometricCircle, UnitCircle, RadialSegment>;

// Intersections inside the closed unit disc; tangency gives one point. The
// discriminant is compared to zero with the tolerance before any square root.
std::vector<Complex> arc_intersections(const ArcObject& obj1, const IsometricCircle& obj2,
                                       const ToleranceContext& ctx);

// Intersection of two isometric circles inside the closed disc, if any.
std::optional<Complex> intersect_isometric(const IsometricCircle& c1, const IsometricCircle& c2,
                                           const ToleranceContext& ctx);

// Scales a point of tolerance-unit modulus onto the unit circle.
Complex normalize_to_circle(const Complex& z);

}  // namespace fdom
