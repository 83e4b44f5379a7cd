#include "core/hyperbolic.hpp"

#include <cmath>

namespace fdom {

std::string to_string(const Real& x, int digits) {
  return x.str(digits, std::ios_base::scientific);
}

ToleranceContext::ToleranceContext(int digits) : digits_(digits) {
  if (digits < 10) fail(ErrorCode::invalid_argument, "working precision must be at least 10 digits");
  activate();
  tolerance_ = pow(Real(10), Real(-digits) / 2);
  pi_ = acos(Real(-1));
}

void ToleranceContext::activate() const {
  boost::multiprecision::mpfr_float::default_precision(static_cast<unsigned>(digits_));
}

bool tol_eq(const Complex& z1, const Complex& z2, const ToleranceContext& ctx) {
  return (z1 - z2).abs() < ctx.tolerance();
}

bool tol_eq(const Real& x1, const Real& x2, const ToleranceContext& ctx) {
  return abs(x1 - x2) < ctx.tolerance();
}

Real arg(const Complex& z, const ToleranceContext& ctx) {
  Real a = atan2(z.im, z.re);
  if (a < 0) {
    a += ctx.two_pi();
    if (a >= ctx.two_pi()) a = 0;
  }
  return a;
}

PslElement PslElement::operator*(const PslElement& o) const {
  return {a * o.a + b * o.c, a * o.b + b * o.d, c * o.a + d * o.c, c * o.b + d * o.d};
}

PslElement PslElement::canonical(const ToleranceContext& ctx) const {
  for (const Real* x : {&c, &d, &a, &b}) {
    if (tol_zero(*x, ctx)) continue;
    if (*x < 0) return {-a, -b, -c, -d};
    return *this;
  }
  return *this;
}

Complex PslElement::apply(const Complex& z) const {
  return (Complex(a) * z + Complex(b)) / (Complex(c) * z + Complex(d));
}

PsuElement PsuElement::translation_to(const Complex& z) {
  Real s = sqrt(Real(1) - z.norm());
  return {Complex(Real(1) / s), z / s};
}

PsuElement PsuElement::operator*(const PsuElement& o) const {
  return {A * o.A + B * o.B.conj(), A * o.B + B * o.A.conj()};
}

PsuElement PsuElement::canonical(const ToleranceContext& ctx) const {
  if (tol_zero(A.re, ctx)) {
    if (A.im < 0) return {-A, -B};
    return *this;
  }
  if (A.re < 0) return {-A, -B};
  return *this;
}

Complex cayley_to_disc(const Complex& z, const Complex& p) { return (z - p) / (z - p.conj()); }

Complex cayley_from_disc(const Complex& w, const Complex& p) {
  // Inverse of w = (z - p) / (z - conj(p)).
  return (p - w * p.conj()) / (Complex(1) - w);
}

PsuElement conjugate_linear(const PslElement& g, const Complex& p) {
  // phi = [[1, -p], [1, -conj(p)]], det(phi) = 2iy, phi^-1 = adj(phi) / 2iy.
  const Complex pc = p.conj();
  const Complex two_iy(Real(0), p.im * 2);
  const Complex r11 = Complex(g.a) - p * Complex(g.c);
  const Complex r12 = Complex(g.b) - p * Complex(g.d);
  Complex A = (-(r11 * pc) - r12) / two_iy;
  Complex B = (r11 * p + r12) / two_iy;
  return PsuElement{std::move(A), std::move(B)};
}

PsuElement conjugate_to_psu(const PslElement& g, const Complex& p, const ToleranceContext& ctx) {
  if (!tol_eq(g.det(), Real(1), ctx)) fail(ErrorCode::invalid_element, "matrix does not have determinant 1");
  return conjugate_linear(g, p).canonical(ctx);
}

PslElement conjugate_to_psl(const PsuElement& m, const Complex& p) {
  const Complex pc = p.conj();
  const Complex two_iy(Real(0), p.im * 2);
  const Complex& A = m.A;
  const Complex& B = m.B;
  const Complex Ac = A.conj();
  const Complex Bc = B.conj();
  const Real p2 = p.norm();
  Complex g11 = (-(pc * (A + B)) + p * (Bc + Ac)) / two_iy;
  Complex g12 = (A * p2 + B * pc * pc - Bc * p * p - Ac * p2) / two_iy;
  Complex g21 = (-(A + B) + (Bc + Ac)) / two_iy;
  Complex g22 = (A * p + B * pc - Bc * p - Ac * pc) / two_iy;
  return {g11.re, g12.re, g21.re, g22.re};
}

Complex apply_moebius(const PsuElement& m, const Complex& z, const ToleranceContext& ctx) {
  Complex den = m.B.conj() * z + m.A.conj();
  if (den.abs() < ctx.tolerance()) fail(ErrorCode::numeric, "Moebius denominator vanishes");
  return (m.A * z + m.B) / den;
}

Real cosh_distance(const Complex& z1, const Complex& z2) {
  Real w1 = Real(1) - z1.norm();
  Real w2 = Real(1) - z2.norm();
  if (w1 <= 0 || w2 <= 0) fail(ErrorCode::numeric, "hyperbolic distance to a point on or outside the unit circle");
  return Real(1) + (z1 - z2).norm() * 2 / (w1 * w2);
}

Real hyperbolic_distance(const Complex& z1, const Complex& z2) { return acosh(cosh_distance(z1, z2)); }

Complex IsometricCircle::tangent(const Complex& z) const {
  Complex r = z - center;
  return {r.im, -r.re};
}

Complex normalize_to_circle(const Complex& z) { return z / z.abs(); }

namespace {

IsometricCircle make_circle(Complex center, Real radius, const ToleranceContext& ctx) {
  const Real cabs = center.abs();
  const Complex u = center / cabs;
  const Real cs = Real(1) / cabs;
  const Real sn = radius / cabs;
  IsometricCircle out;
  out.terminal_point = normalize_to_circle(u * Complex(cs, -sn));
  out.initial_point = normalize_to_circle(u * Complex(cs, sn));
  out.terminal_arg = arg(out.terminal_point, ctx);
  out.initial_arg = arg(out.initial_point, ctx);
  out.center = std::move(center);
  out.radius = std::move(radius);
  return out;
}

}  // namespace

std::optional<IsometricCircle> isometric_circle(const PsuElement& m, const ToleranceContext& ctx) {
  if (m.B.abs() < ctx.tolerance()) return std::nullopt;
  Complex center = -(m.A / m.B).conj();
  Real radius = Real(1) / m.B.abs();
  return make_circle(std::move(center), std::move(radius), ctx);
}

IsometricCircle circle_from_center(const Complex& center, const ToleranceContext& ctx) {
  Real r2 = center.norm() - 1;
  if (r2 <= 0) fail(ErrorCode::invalid_argument, "isometric circle centre must lie outside the unit disc");
  return make_circle(center, sqrt(r2), ctx);
}

PsuElement element_with_circle(const Complex& center, const ToleranceContext& ctx) {
  Real r2 = center.norm() - 1;
  if (r2 <= 0) fail(ErrorCode::invalid_argument, "isometric circle centre must lie outside the unit disc");
  Complex B(Real(1) / sqrt(r2));
  Complex A = -(center.conj() * B);
  return PsuElement{A, B}.canonical(ctx);
}

namespace {

bool in_closed_disc(const Complex& z, const ToleranceContext& ctx) { return z.abs() <= Real(1) + ctx.tolerance(); }

Complex snap(const Complex& z, const ToleranceContext& ctx) {
  return tol_eq(z.abs(), Real(1), ctx) ? normalize_to_circle(z) : z;
}

std::vector<Complex> circle_circle(const IsometricCircle& c1, const IsometricCircle& c2, const ToleranceContext& ctx) {
  const Complex diff = c1.center - c2.center;
  if (tol_eq(c1.center, c2.center, ctx) && tol_eq(c1.radius, c2.radius, ctx))
    fail(ErrorCode::degenerate_input, "coincident isometric circles");
  // Both circles are orthogonal to the unit circle, so their common points lie
  // on the radical line Re(z conj(c1 - c2)) = 0, a line through 0. Writing
  // z = s u with u a unit vector along it, s^2 - 2 beta s + 1 = 0.
  const Complex u = Complex(-diff.im, diff.re) / diff.abs();
  const Real beta = dot(u, c1.center);
  const Real disc = beta * beta - 1;
  if (tol_zero(disc, ctx)) {
    const Real s = beta < 0 ? Real(-1) : Real(1);
    return {normalize_to_circle(u * s)};
  }
  if (disc < 0) return {};
  const Real root = sqrt(disc);
  const Real big = beta < 0 ? beta - root : beta + root;
  const Real s = Real(1) / big;
  return {snap(u * s, ctx)};
}

std::vector<Complex> unit_circle_hits(const IsometricCircle& c, const ToleranceContext& ctx) {
  // Radical line of |z| = 1 and |z - c| = r: Re(z conj(c)) = h.
  const Real c2 = c.center.norm();
  const Real h = (c2 - c.radius * c.radius + 1) / 2;
  const Real disc = Real(1) - h * h / c2;
  const Complex foot = c.center * (h / c2);
  const Complex dir = Complex(-c.center.im, c.center.re) / sqrt(c2);
  if (tol_zero(disc, ctx)) return {normalize_to_circle(foot)};
  if (disc < 0) return {};
  const Real root = sqrt(disc);
  return {normalize_to_circle(foot - dir * root), normalize_to_circle(foot + dir * root)};
}

std::vector<Complex> segment_hits(const Complex& w, const IsometricCircle& c, const ToleranceContext& ctx) {
  // |s w - c|^2 = r^2 for s in [0, 1].
  const Real ww = w.norm();
  if (ww == 0) return {};
  const Real bw = dot(w, c.center);
  const Real k = c.center.norm() - c.radius * c.radius;
  const Real disc = bw * bw - ww * k;
  std::vector<Real> roots;
  if (tol_zero(disc, ctx)) {
    roots.push_back(bw / ww);
  } else if (disc > 0) {
    const Real root = sqrt(disc);
    // Numerically stable pair via the product of the roots k / ww.
    const Real big = bw < 0 ? (bw - root) / ww : (bw + root) / ww;
    roots.push_back(k / (ww * big));
    roots.push_back(big);
  }
  std::vector<Complex> out;
  for (const Real& s : roots) {
    if (s < -ctx.tolerance() || s > Real(1) + ctx.tolerance()) continue;
    Complex z = w * s;
    if (in_closed_disc(z, ctx)) out.push_back(snap(z, ctx));
  }
  return out;
}

}  // namespace

std::vector<Complex> arc_intersections(const ArcObject& obj1, const IsometricCircle& obj2,
                                       const ToleranceContext& ctx) {
  if (const auto* c = std::get_if<IsometricCircle>(&obj1)) return circle_circle(*c, obj2, ctx);
  if (std::holds_alternative<UnitCircle>(obj1)) return unit_circle_hits(obj2, ctx);
  return segment_hits(std::get<RadialSegment>(obj1).end, obj2, ctx);
}

std::optional<Complex> intersect_isometric(const IsometricCircle& c1, const IsometricCircle& c2,
                                           const ToleranceContext& ctx) {
  auto pts = circle_circle(c1, c2, ctx);
  if (pts.empty()) return std::nullopt;
  return pts.front();
}

}  // namespace fdom
