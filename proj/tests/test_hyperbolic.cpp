#include <doctest.h>

#include "support.hpp"

using namespace fdom;
using fdom::test::ctx;

namespace {

// sigma with sigma(i) = p; conjugating a rotation about i by it fixes p.
PslElement fixing(const Complex& p, double theta) {
  const Real s = sqrt(p.im);
  PslElement sigma{s, p.re / s, Real(0), Real(1) / s};
  const Real c = cos(Real(theta)), sn = sin(Real(theta));
  PslElement rot{c, sn, -sn, c};
  return sigma * rot * sigma.inverse();
}

}  // namespace

TEST_SUITE("hyperbolic") {

TEST_CASE("tolerance is ten to minus half the digits") {
  CHECK(ctx().digits() == 38);
  CHECK(abs(ctx().tolerance() - pow(Real(10), -19)) < pow(Real(10), -30));
  ToleranceContext wide(40);
  CHECK(abs(wide.tolerance() - pow(Real(10), -20)) < pow(Real(10), -35));
  ctx().activate();
  CHECK(test::code_of([] { ToleranceContext bad(5); }) == ErrorCode::invalid_argument);
  ctx().activate();
}

TEST_CASE("tol_eq is symmetric but not transitive") {
  const Real& t = ctx().tolerance();
  Complex z(0), z1(t * Real(0.6)), z2(t * Real(1.2));
  CHECK(tol_eq(z, z, ctx()));
  CHECK(tol_eq(Complex(0), Complex(pow(Real(10), -20)), ctx()));
  CHECK(tol_eq(z, z1, ctx()));
  CHECK(tol_eq(z1, z, ctx()));
  CHECK(tol_eq(z1, z2, ctx()));
  CHECK_FALSE(tol_eq(z, z2, ctx()));
}

TEST_CASE("cayley transform") {
  const Complex i(Real(0), Real(1));
  CHECK(tol_eq(cayley_to_disc(i, i), Complex(0), ctx()));
  CHECK(tol_eq(cayley_to_disc(Complex(Real(0), Real(2)), i), Complex(Real(1) / 3), ctx()));
  std::mt19937_64 rng(3);
  for (int k = 0; k < 50; ++k) {
    Complex p = test::random_uhp_point(rng);
    Complex x(Real(test::uniform(rng, -10, 10)));
    CHECK(tol_eq(cayley_to_disc(x, p).abs(), Real(1), ctx()));
    Complex z = test::random_uhp_point(rng);
    CHECK(tol_eq(cayley_from_disc(cayley_to_disc(z, p), p), z, ctx()));
  }
}

TEST_CASE("conjugate_to_psu") {
  std::mt19937_64 rng(5);
  const Complex p(Real(0.3), Real(1.7));
  PsuElement e = conjugate_to_psu(PslElement{Real(1), Real(0), Real(0), Real(1)}, p, ctx());
  CHECK(tol_eq(e.A, Complex(1), ctx()));
  CHECK(tol_eq(e.B, Complex(0), ctx()));

  for (double theta : {0.4, 1.3, 2.9}) {
    PsuElement r = conjugate_to_psu(fixing(p, theta), p, ctx());
    CHECK(tol_eq(r.B, Complex(0), ctx()));
    CHECK(tol_eq(r.A.abs(), Real(1), ctx()));
  }

  PslElement g = test::random_psl(rng);
  PsuElement m = conjugate_to_psu(g, p, ctx());
  CHECK(tol_eq(m.det(), Real(1), ctx()));
  for (int k = 0; k < 100; ++k) {
    Complex z = test::random_uhp_point(rng);
    CHECK(tol_eq(apply_moebius(m, cayley_to_disc(z, p), ctx()), cayley_to_disc(g.apply(z), p), ctx()));
  }

  PslElement bad{Real(2), Real(0), Real(0), Real(1)};
  CHECK(test::code_of([&] { conjugate_to_psu(bad, p, ctx()); }) == ErrorCode::invalid_element);
}

TEST_CASE("canonical signs") {
  PslElement g{Real(-1), Real(2), Real(0), Real(-1)};
  PslElement c = g.canonical(ctx());
  CHECK(c.d > 0);
  CHECK(tol_eq(c.a, Real(1), ctx()));
  PslElement h{Real(2), Real(3), Real(-1), Real(-1)};
  CHECK(h.canonical(ctx()).c > 0);
  PsuElement m{Complex(Real(-1.25), Real(0)), Complex(Real(0.75))};
  CHECK(m.canonical(ctx()).A.re > 0);
  PsuElement rot{Complex(Real(0), Real(-1)), Complex(0)};
  CHECK(rot.canonical(ctx()).A.im > 0);
}

TEST_CASE("apply_moebius") {
  std::mt19937_64 rng(7);
  PsuElement m{Complex(Real(5) / 4), Complex(Real(3) / 4)};
  CHECK(tol_eq(apply_moebius(m, Complex(0), ctx()), Complex(Real(3) / 5), ctx()));
  for (int k = 0; k < 100; ++k) {
    Complex z = test::random_disc_point(rng);
    CHECK(tol_eq(apply_moebius(PsuElement::identity(), z, ctx()), z, ctx()));
    PsuElement m1 = test::random_psu(rng), m2 = test::random_psu(rng);
    CHECK(tol_eq(apply_moebius(m1 * m2, z, ctx()), apply_moebius(m1, apply_moebius(m2, z, ctx()), ctx()), ctx()));
    CHECK(apply_moebius(m1, z, ctx()).abs() < 1);
    Complex u = test::polar(1, test::uniform(rng, 0, 6.28));
    CHECK(tol_eq(apply_moebius(m1, u, ctx()).abs(), Real(1), ctx()));
  }
}

TEST_CASE("hyperbolic distance") {
  std::mt19937_64 rng(11);
  Complex z(Real(0.2), Real(-0.4));
  CHECK(hyperbolic_distance(z, z) == 0);
  CHECK(tol_eq(hyperbolic_distance(Complex(0), Complex(Real(0.5))), Real(acosh(Real(5) / 3)), ctx()));
  for (int k = 0; k < 100; ++k) {
    PsuElement m = test::random_psu(rng);
    Complex a = test::random_disc_point(rng, 0.8), b = test::random_disc_point(rng, 0.8);
    Real d = hyperbolic_distance(a, b);
    CHECK(tol_eq(d, hyperbolic_distance(b, a), ctx()));
    Real dm = hyperbolic_distance(apply_moebius(m, a, ctx()), apply_moebius(m, b, ctx()));
    CHECK(abs(dm - d) < ctx().tolerance() * 10);
  }
  CHECK(test::code_of([] { hyperbolic_distance(Complex(0), Complex(1)); }) == ErrorCode::numeric);
}

TEST_CASE("isometric circles") {
  CHECK_FALSE(isometric_circle(PsuElement::identity(), ctx()).has_value());
  auto c = isometric_circle(PsuElement{Complex(Real(5) / 4), Complex(Real(3) / 4)}, ctx());
  REQUIRE(c.has_value());
  CHECK(tol_eq(c->center, Complex(Real(-5) / 3), ctx()));
  CHECK(tol_eq(c->radius, Real(4) / 3, ctx()));
  CHECK(tol_eq(c->center.norm() - c->radius * c->radius, Real(1), ctx()));

  std::mt19937_64 rng(13);
  for (int k = 0; k < 200; ++k) {
    PsuElement g = test::random_psu(rng, 3.0);
    auto circle = isometric_circle(g, ctx());
    REQUIRE(circle.has_value());
    CHECK(tol_eq(circle->center.norm() - circle->radius * circle->radius, Real(1), ctx()));
    CHECK(tol_eq(circle->initial_point.abs(), Real(1), ctx()));
    CHECK(tol_eq(circle->terminal_point.abs(), Real(1), ctx()));
    CHECK(tol_zero(circle->power(circle->initial_point), ctx()));
    // Seen from 0 the terminal point comes first, within a half turn.
    Real span = circle->initial_arg - circle->terminal_arg;
    if (span < 0) span += ctx().two_pi();
    CHECK(span < ctx().pi());
    // 2 / rad^2 + 1 = cosh d(g0, 0).
    Real lhs = Real(2) / (circle->radius * circle->radius) + 1;
    Real rhs = cosh(hyperbolic_distance(apply_moebius(g, Complex(0), ctx()), Complex(0)));
    CHECK(abs(lhs - rhs) < ctx().tolerance() * 1000 * rhs);
  }
}

TEST_CASE("exterior of I(g) is where g moves points away from 0") {
  std::mt19937_64 rng(17);
  int checked = 0;
  for (int k = 0; k < 1000; ++k) {
    PsuElement g = test::random_psu(rng);
    auto circle = isometric_circle(g, ctx());
    Complex z = test::random_disc_point(rng, 0.99);
    Real dz = hyperbolic_distance(z, Complex(0));
    Real dgz = hyperbolic_distance(apply_moebius(g, z, ctx()), Complex(0));
    Real power = circle->power(z);
    if (abs(dz - dgz) < ctx().tolerance() || tol_zero(power, ctx())) continue;
    ++checked;
    CHECK((dz < dgz) == (power > 0));
  }
  CHECK(checked > 990);
}

TEST_CASE("arc intersections") {
  IsometricCircle c = circle_from_center(Complex(Real(-5) / 3), ctx());
  auto hits = arc_intersections(UnitCircle{}, c, ctx());
  REQUIRE(hits.size() == 2);
  // Orthogonality puts the endpoints at arg(center) +- arccos(1/|center|).
  const Real half = acos(Real(3) / 5);
  const Complex e1(cos(ctx().pi() - half), sin(ctx().pi() - half));
  const Complex e2(cos(ctx().pi() + half), sin(ctx().pi() + half));
  auto matches = [&](const Complex& z) { return tol_eq(z, e1, ctx()) || tol_eq(z, e2, ctx()); };
  CHECK(matches(hits[0]));
  CHECK(matches(hits[1]));
  CHECK_FALSE(tol_eq(hits[0], hits[1], ctx()));

  // Disjoint.
  IsometricCircle far1 = circle_from_center(Complex(Real(1.1)), ctx());
  IsometricCircle far2 = circle_from_center(Complex(Real(-1.1)), ctx());
  CHECK(arc_intersections(far1, far2, ctx()).empty());
  CHECK_FALSE(intersect_isometric(far1, far2, ctx()).has_value());

  // Two geodesics can only touch at infinity: centres 2 and 2 e^{2 pi i/3}.
  IsometricCircle t1 = circle_from_center(Complex(Real(2)), ctx());
  IsometricCircle t2 = circle_from_center(Complex(Real(-1), sqrt(Real(3))), ctx());
  auto touch = arc_intersections(t1, t2, ctx());
  REQUIRE(touch.size() == 1);
  CHECK(tol_eq(touch[0], Complex(Real(0.5), sqrt(Real(3)) / 2), ctx()));

  CHECK(test::code_of([&] { arc_intersections(t1, t1, ctx()); }) == ErrorCode::degenerate_input);

  // Radial segment through the circle.
  auto radial = arc_intersections(RadialSegment{Complex(Real(-0.9))}, c, ctx());
  REQUIRE(radial.size() == 1);
  CHECK(tol_eq(radial[0], Complex(Real(-1) / 3), ctx()));
  CHECK(arc_intersections(RadialSegment{Complex(Real(-0.2))}, c, ctx()).empty());
}

TEST_CASE("arc intersections are symmetric") {
  std::mt19937_64 rng(19);
  int crossing = 0;
  for (int k = 0; k < 300; ++k) {
    IsometricCircle a = circle_from_center(test::polar(test::uniform(rng, 1.01, 3), test::uniform(rng, 0, 6.28)), ctx());
    IsometricCircle b = circle_from_center(test::polar(test::uniform(rng, 1.01, 3), test::uniform(rng, 0, 6.28)), ctx());
    auto ab = arc_intersections(a, b, ctx());
    auto ba = arc_intersections(b, a, ctx());
    REQUIRE(ab.size() == ba.size());
    for (const auto& z : ab) {
      CHECK(z.abs() <= Real(1) + ctx().tolerance());
      CHECK(tol_zero(a.power(z), ctx()));
      CHECK(tol_zero(b.power(z), ctx()));
      bool found = false;
      for (const auto& w : ba) found = found || tol_eq(z, w, ctx());
      CHECK(found);
    }
    crossing += !ab.empty();
  }
  CHECK(crossing > 10);
}

TEST_CASE("element_with_circle") {
  std::mt19937_64 rng(23);
  for (int k = 0; k < 50; ++k) {
    Complex c = test::polar(test::uniform(rng, 1.01, 4), test::uniform(rng, 0, 6.28));
    PsuElement g = element_with_circle(c, ctx());
    CHECK(tol_eq(g.det(), Real(1), ctx()));
    CHECK(tol_eq(isometric_circle(g, ctx())->center, c, ctx()));
  }
  CHECK(test::code_of([] { circle_from_center(Complex(Real(0.5)), ctx()); }) == ErrorCode::invalid_argument);
}

}  // TEST_SUITE
