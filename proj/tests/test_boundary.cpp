#include <doctest.h>

#include "oracles.hpp"
#include "support.hpp"

using namespace fdom;
using fdom::test::ctx;

namespace {

std::vector<DiscAutomorphism> with_centers(const std::vector<Complex>& centers) {
  std::vector<DiscAutomorphism> out;
  for (const auto& c : centers) out.push_back(from_psu(element_with_circle(c, ctx())));
  return out;
}

// k circles at modulus rho and arguments 2 pi j / k.
std::vector<DiscAutomorphism> regular(int k, const Real& rho) {
  std::vector<Complex> cs;
  for (int j = 0; j < k; ++j) cs.push_back(test::polar(rho, ctx().two_pi() * j / k));
  return with_centers(cs);
}

DiscAutomorphism rotate(const DiscAutomorphism& g, const Real& theta) {
  PsuElement r{test::polar(Real(1), theta / 2), Complex(0)};
  return from_psu(r * g.psu * r.inverse());
}

}  // namespace

TEST_SUITE("boundary") {

TEST_CASE("empty input is the whole disc") {
  NormalizedBoundary b = normalized_boundary({}, ctx());
  CHECK(b.size() == 0);
  CHECK_FALSE(b.area.has_value());
  CHECK(test::code_of([&] { polygon_area(b, ctx()); }) == ErrorCode::degenerate_input);
}

TEST_CASE("one circle gives one proper and one infinite side") {
  NormalizedBoundary b = normalized_boundary(with_centers({Complex(Real(-5) / 3)}), ctx());
  REQUIRE(b.size() == 2);
  CHECK(b.proper_side_count() == 1);
  CHECK(b.has_infinite_side());
  CHECK_FALSE(b.area.has_value());
  auto ends = arc_intersections(UnitCircle{}, circle_from_center(Complex(Real(-5) / 3), ctx()), ctx());
  for (const auto& v : b.vertices) {
    CHECK(v.kind == VertexKind::at_infinity);
    CHECK((tol_eq(v.point, ends[0], ctx()) || tol_eq(v.point, ends[1], ctx())));
  }
}

TEST_CASE("elements without a circle are rejected") {
  std::vector<DiscAutomorphism> G{from_psu(PsuElement{test::polar(1, 0.3), Complex(0)})};
  CHECK(test::code_of([&] { normalized_boundary(G, ctx()); }) == ErrorCode::invalid_element);
}

TEST_CASE("duplicates collapse") {
  auto G = with_centers({Complex(Real(1.5), Real(0.5))});
  NormalizedBoundary once = normalized_boundary(G, ctx());
  G.push_back(G[0]);
  G.push_back(from_psu(PsuElement{-G[0].psu.A, -G[0].psu.B}));
  CHECK(oracle::same_boundary(once, normalized_boundary(G, ctx()), ctx()));
}

TEST_CASE("ideal triangle has area pi") {
  NormalizedBoundary b = normalized_boundary(regular(3, Real(2)), ctx());
  CHECK(b.proper_side_count() == 3);
  REQUIRE(b.area.has_value());
  CHECK(abs(*b.area - ctx().pi()) < ctx().tolerance() * 10);
}

TEST_CASE("right-angled pentagon has area pi/2") {
  // Adjacent circles are orthogonal when rho^2 = 1 / cos(2 pi / 5).
  const Real rho = sqrt(Real(1) / cos(ctx().two_pi() / 5));
  NormalizedBoundary b = normalized_boundary(regular(5, rho), ctx());
  REQUIRE(b.size() == 5);
  for (const auto& v : b.vertices) CHECK(v.kind == VertexKind::proper);
  REQUIRE(b.area.has_value());
  CHECK(abs(*b.area - ctx().pi() / 2) < ctx().tolerance() * 10);
}

TEST_CASE("normalized boundary matches the arrangement oracle") {
  std::mt19937_64 rng(101);
  int bad = 0;
  for (int trial = 0; trial < 200; ++trial) {
    const int n = 1 + static_cast<int>(rng() % 50);
    const double lo = trial % 3 == 0 ? 1.0005 : 1.02, span = trial % 3 == 1 ? 0.5 : 4;
    auto G = oracle::random_elements(rng, n, lo, span, ctx());
    NormalizedBoundary B = normalized_boundary(G, ctx());
    bad += !oracle::same_vertex_set(oracle::arrangement_vertices(G, ctx()), B, ctx());
    // Each deletion costs one intersection beyond the one per append.
    CHECK(B.sweep_intersections <= static_cast<std::size_t>(2 * n + 2));
  }
  CHECK(bad == 0);
}

TEST_CASE("vertex arguments increase and the first vertex obeys the starting rule") {
  std::mt19937_64 rng(103);
  for (int trial = 0; trial < 100; ++trial) {
    auto G = oracle::random_elements(rng, 2 + static_cast<int>(rng() % 30), 1.01, 2, ctx());
    NormalizedBoundary B = normalized_boundary(G, ctx());
    for (std::size_t j = 1; j < B.size(); ++j) CHECK(B.vertex_args[j - 1] < B.vertex_args[j]);
    for (std::size_t j = 0; j < B.size(); ++j) {
      CHECK(tol_eq(B.vertex_args[j], B.vertices[j].arg, ctx()));
      const bool at_inf = B.vertices[j].kind == VertexKind::at_infinity;
      CHECK(at_inf == tol_eq(B.vertices[j].point.abs(), Real(1), ctx()));
      // vertices[j] ends side j and starts side j+1.
      if (B.circles[j]) CHECK(tol_zero(B.circles[j]->power(B.vertices[j].point), ctx()));
      const std::size_t next = (j + 1) % B.size();
      if (B.circles[next]) CHECK(tol_zero(B.circles[next]->power(B.vertices[j].point), ctx()));
    }
    const bool has_inf = B.has_infinite_side();
    CHECK(has_inf == !B.area.has_value());
  }
}

TEST_CASE("exterior soundness") {
  std::mt19937_64 rng(107);
  for (int trial = 0; trial < 10; ++trial) {
    auto G = oracle::random_elements(rng, 20, 1.01, 1.5, ctx());
    NormalizedBoundary B = normalized_boundary(G, ctx());
    std::vector<IsometricCircle> cs;
    for (const auto& g : G) cs.push_back(*isometric_circle(g.psu, ctx()));
    for (int k = 0; k < 100; ++k) {
      Complex z = test::random_disc_point(rng, 0.999);
      bool near_wall = false, outside_all = true;
      for (const auto& c : cs) {
        Real pw = c.power(z);
        near_wall = near_wall || abs(pw) < ctx().tolerance() * 100;
        outside_all = outside_all && pw > 0;
      }
      if (near_wall) continue;
      CHECK(in_exterior(B, z, ctx()) == outside_all);
    }
  }
}

TEST_CASE("merge") {
  std::mt19937_64 rng(109);
  auto G = oracle::random_elements(rng, 30, 1.02, 2, ctx());
  NormalizedBoundary U = normalized_boundary(G, ctx());
  CHECK(oracle::same_boundary(merge_boundary(U, {}, ctx()), U, ctx()));

  int bad = 0;
  for (int trial = 0; trial < 100; ++trial) {
    auto G1 = oracle::random_elements(rng, 100, 1.02, 3, ctx());
    auto G2 = oracle::random_elements(rng, 5, 1.02, 3, ctx());
    auto all = G1;
    all.insert(all.end(), G2.begin(), G2.end());
    bad += !oracle::same_boundary(merge_boundary(normalized_boundary(G1, ctx()), G2, ctx()),
                                  normalized_boundary(all, ctx()), ctx());
  }
  CHECK(bad == 0);

  // A big circle over a small one removes the small side.
  auto small = with_centers({Complex(Real(1.2)), Complex(Real(-1.5))});
  NormalizedBoundary before = normalized_boundary(small, ctx());
  REQUIRE(before.proper_side_count() == 2);
  auto big = with_centers({Complex(Real(3))});
  NormalizedBoundary after = merge_boundary(before, big, ctx());
  CHECK(after.proper_side_count() == 2);
  const IsometricCircle gone = circle_from_center(Complex(Real(1.2)), ctx());
  for (const auto& c : after.circles)
    if (c) CHECK_FALSE(tol_eq(c->center, gone.center, ctx()));
}

TEST_CASE("area is invariant under rotation") {
  const auto& D6 = test::converged(6);
  std::vector<DiscAutomorphism> sides;
  for (const auto& s : D6.result.boundary.sides)
    if (s) sides.push_back(*s);
  NormalizedBoundary base = normalized_boundary(sides, ctx());
  REQUIRE(base.area.has_value());
  for (double theta : {0.3, 1.7, 4.0}) {
    std::vector<DiscAutomorphism> turned;
    for (const auto& g : sides) turned.push_back(rotate(g, Real(theta)));
    auto b = normalized_boundary(turned, ctx());
    REQUIRE(b.area.has_value());
    CHECK(abs(*b.area - *base.area) < ctx().tolerance() * 10);
  }
}

TEST_CASE("side pairing of a cyclic group") {
  PsuElement g = element_with_circle(Complex(Real(1.3), Real(0.4)), ctx());
  std::vector<DiscAutomorphism> G{from_psu(g), from_psu(g.inverse())};
  NormalizedBoundary B = normalized_boundary(G, ctx());
  CHECK(B.proper_side_count() == 2);
  SidePairing P = side_pairing(B, ctx());
  REQUIRE(P.pairs.size() == 1);
  CHECK(P.pairs[0].first != P.pairs[0].second);
  CHECK(P.partner[P.pairs[0].first] == P.pairs[0].second);
  CHECK(P.partner[P.pairs[0].second] == P.pairs[0].first);
  CHECK_FALSE(B.area.has_value());
}

TEST_CASE("converged pairing is a complete involution") {
  const auto& D6 = test::converged(6);
  SidePairing P = side_pairing(D6.result.boundary, ctx());
  CHECK(P.complete());
  const std::size_t k = D6.result.boundary.size();
  for (std::size_t i = 0; i < k; ++i) {
    REQUIRE(P.partner[i].has_value());
    CHECK(P.partner[*P.partner[i]] == i);
  }
}

TEST_CASE("every pair of a partial domain maps endpoints onto endpoints") {
  const auto& D33 = test::converged(33);
  std::vector<DiscAutomorphism> half;
  for (std::size_t j = 0; j < D33.result.boundary.size(); j += 2)
    if (D33.result.boundary.sides[j]) half.push_back(*D33.result.boundary.sides[j]);
  for (std::size_t j = 0; j < D33.result.boundary.size(); j += 3)
    if (D33.result.boundary.sides[j]) half.push_back(*D33.result.boundary.sides[j]);
  NormalizedBoundary B = normalized_boundary(half, ctx());
  SidePairing P = side_pairing(B, ctx());
  CHECK_FALSE(P.pairs.empty());
  const std::size_t k = B.size();
  for (const auto& pr : P.pairs) {
    const Complex& s0 = B.vertices[(pr.first + k - 1) % k].point;
    const Complex& s1 = B.vertices[pr.first].point;
    const Complex& t0 = B.vertices[(pr.second + k - 1) % k].point;
    const Complex& t1 = B.vertices[pr.second].point;
    CHECK(tol_eq(apply_moebius(pr.element.psu, s0, ctx()), t1, ctx()));
    CHECK(tol_eq(apply_moebius(pr.element.psu, s1, ctx()), t0, ctx()));
  }
}

}  // TEST_SUITE
