#include <doctest.h>

#include "core/calibrate.hpp"
#include "core/document.hpp"
#include "support.hpp"

using namespace fdom;
using fdom::test::ctx;

namespace {

QuaternionOrder order_for(std::int64_t D) {
  auto [a, b] = algebra_for_discriminant(D);
  return maximal_order(make_algebra(Rational(a), Rational(b)));
}

std::vector<DiscAutomorphism> proper_sides(const NormalizedBoundary& b) {
  std::vector<DiscAutomorphism> out;
  for (const auto& s : b.sides)
    if (s) out.push_back(*s);
  return out;
}

}  // namespace

TEST_SUITE("driver") {

TEST_CASE("area targets") {
  const Real pi = ctx().pi();
  CHECK(abs(area_target(order_for(6)) - 2 * pi / 3) < ctx().tolerance());
  CHECK(abs(area_target(order_for(6)) - Real(2.0944)) < Real(1e-4));
  const Real mu33 = area_target(order_for(33));
  CHECK(abs(mu33 - 20 * pi / 3) < ctx().tolerance());
  CHECK(abs(mu33 - Real(20.943)) < Real(1e-3));
  const Real mu793 = area_target(order_for(793));
  CHECK(abs(mu793 - 240 * pi) < ctx().tolerance());
  CHECK(abs(mu793 - Real(753.982)) < Real(1e-3));

  CHECK(test::code_of([] { area_target(maximal_order(make_algebra(Rational(1), Rational(1)))); }) ==
        ErrorCode::non_cocompact);
  // Eichler orders sit in the split algebra, so the cusp check fires first.
  CHECK(test::code_of([] { area_target(eichler_order(101)); }) == ErrorCode::non_cocompact);
  CHECK(test::code_of([] { area_target(standard_order(make_algebra(Rational(3), Rational(-1)))); }) ==
        ErrorCode::unsupported);
  CHECK(area_target(eichler_order(101), Real(34) * ctx().pi()) == Real(34) * ctx().pi());
  CHECK(test::code_of([] { area_target(order_for(6), Real(-1)); }) == ErrorCode::invalid_argument);
}

TEST_CASE("batch size") {
  // max(16, ceil(c mu^2 / (8 pi (C - 1)))).
  for (std::int64_t D : {6, 33, 793}) {
    const Real mu = area_target(order_for(D));
    const Real C = compute_C(1, Real(1), Real(D));
    const double expect = std::max(16.0, std::ceil(0.5 * std::pow(static_cast<double>(mu), 2) /
                                                   (8 * M_PI * (static_cast<double>(C) - 1))));
    CHECK(batch_size(mu, C, 0.5) == static_cast<std::size_t>(expect));
  }
  CHECK(batch_size(Real(2), Real(3), 0.5) == 16);
}

TEST_CASE("default centre") {
  Rng rng(5);
  const Real base_y = sqrt(Real(3)) / 2;
  for (int k = 0; k < 100; ++k) {
    Complex p = default_center(rng);
    CHECK(abs(p.re - Real(0.5)) <= Real(1e-3) + ctx().tolerance());
    CHECK(abs(p.im - base_y) <= Real(1e-3) + ctx().tolerance());
    // A rational offset in units of 10^-6.
    const Real k1 = (p.re - Real(0.5)) * 1000000;
    CHECK(abs(k1 - round(k1)) < Real(1e-20));
  }
}

TEST_CASE("choose_centers") {
  const Real R(4);
  Rng rng(7);
  NormalizedBoundary closed = test::converged(6).result.boundary;
  auto centres = choose_centers(closed, 40, R, rng, ctx());
  CHECK(centres.size() == 40);
  for (const auto& z : centres) CHECK(hyperbolic_distance(Complex(0), z) <= R + ctx().tolerance());

  // One circle: the infinite side is the complementary arc.
  NormalizedBoundary open = normalized_boundary({from_psu(element_with_circle(Complex(Real(-5) / 3), ctx()))}, ctx());
  std::size_t inf = 0;
  while (open.sides[inf]) ++inf;
  const Real lo = open.vertex_args[(inf + open.size() - 1) % open.size()];
  const Real hi = open.vertex_args[inf];
  auto mixed = choose_centers(open, 40, R, rng, ctx());
  REQUIRE(mixed.size() == 40);
  int targeted = 0;
  for (const auto& z : mixed) {
    if (!tol_eq(z.abs(), Real(1) - Real(1) / 1000, ctx())) continue;
    ++targeted;
    const Real a = arg(z, ctx());
    // The arc may wrap through argument 0.
    const bool inside = lo < hi ? (a > lo && a < hi) : (a > lo || a < hi);
    CHECK(inside);
  }
  CHECK(targeted == 20);
}

TEST_CASE("discriminant 6 converges to the exact area") {
  const auto& D = test::converged(6);
  CHECK(D.result.converged);
  CHECK(D.result.exact);
  CHECK(D.result.pairing.complete());
  CHECK(abs(D.result.area - 2 * ctx().pi() / 3) / (2 * ctx().pi() / 3) < 1e-9);
  CHECK(D.result.area < 2 * D.result.mu_target);
}

TEST_CASE("area never increases once finite") {
  for (std::int64_t disc : {6, 15, 33}) {
    const auto& h = test::converged(disc).result.area_history;
    REQUIRE_FALSE(h.empty());
    for (std::size_t k = 1; k < h.size(); ++k) CHECK(h[k] <= h[k - 1] + ctx().tolerance());
  }
}

TEST_CASE("generators are exact norm-one order elements") {
  for (std::int64_t disc : {6, 33}) {
    const auto& D = test::converged(disc);
    OrderArithmetic arith(D.order, D.result.center, ctx());
    CHECK(D.result.generators.size() >= D.result.boundary.proper_side_count());
    for (const auto& g : D.result.generators) {
      REQUIRE(g.coords.has_value());
      CHECK(arith.norm(*g.coords) == 1);
      CHECK_FALSE(arith.is_identity(g));
    }
  }
}

TEST_CASE("same seed, same document") {
  QuaternionOrder O = order_for(15);
  DriverOptions opts;
  opts.seed = 42;
  auto a = serialize_document(export_document(fundamental_domain(O, opts, ctx()), O, ctx(), 42));
  auto b = serialize_document(export_document(fundamental_domain(O, opts, ctx()), O, ctx(), 42));
  CHECK(a == b);
  opts.seed = 43;
  auto c = serialize_document(export_document(fundamental_domain(O, opts, ctx()), O, ctx(), 43));
  CHECK(a != c);
}

TEST_CASE("a centre with a nontrivial stabilizer is perturbed") {
  // j = [[0, 1], [-1, 0]] in (3, -1) fixes i.
  QuaternionOrder O = order_for(6);
  REQUIRE(O.algebra.a == 3);
  REQUIRE(O.algebra.b == -1);
  DriverOptions opts;
  opts.center = Complex(Real(0), Real(1));
  DomainResult r = fundamental_domain(O, opts, ctx());
  CHECK(r.stats.center_perturbations > 0);
  CHECK_FALSE(tol_eq(r.center, Complex(Real(0), Real(1)), ctx()));
  CHECK(r.converged);
  CHECK(r.exact);
}

TEST_CASE("driver errors") {
  DriverOptions opts;
  CHECK(test::code_of([&] { fundamental_domain(maximal_order(make_algebra(Rational(1), Rational(1))), opts, ctx()); }) ==
        ErrorCode::non_cocompact);
  CHECK(test::code_of([&] { fundamental_domain(standard_order(make_algebra(Rational(3), Rational(-1))), opts, ctx()); }) ==
        ErrorCode::unsupported);
  DriverOptions with_area = opts;
  with_area.area = Real(34) * ctx().pi();
  CHECK(test::code_of([&] { fundamental_domain(eichler_order(101), with_area, ctx()); }) == ErrorCode::non_cocompact);
  DriverOptions low = opts;
  low.C = Real(1);
  CHECK(test::code_of([&] { fundamental_domain(order_for(6), low, ctx()); }) == ErrorCode::invalid_argument);
}

TEST_CASE("iteration cap returns an unconverged result") {
  DriverOptions opts;
  opts.max_iterations = 1;
  opts.C = Real(2);  // too small for the warm-up to find everything
  DomainResult r = fundamental_domain(order_for(33), opts, ctx());
  CHECK_FALSE(r.converged);
  CHECK(r.stats.iterations == 1);
}

TEST_CASE("shortest generating prefix") {
  QuaternionOrder O = order_for(15);
  DriverOptions opts;
  opts.seed = 1;
  DomainResult plain = fundamental_domain(O, opts, ctx());
  CHECK(plain.stats.elements_needed == 0);
  opts.measure_needed = true;
  DomainResult r = fundamental_domain(O, opts, ctx());
  CHECK(r.stats.elements_needed >= 1);
  CHECK(r.stats.elements_needed <= r.stats.elements_found);
  // Measuring does not change the domain.
  CHECK(serialize_document(export_document(r, O, ctx(), 1)) == serialize_document(export_document(plain, O, ctx(), 1)));
}

TEST_CASE("long products outrun the working precision, not the exact arithmetic") {
  auto letters = [](std::size_t sides) {
    std::mt19937_64 rng(603);
    std::vector<std::size_t> out(60);
    for (auto& x : out) x = rng() % sides;
    return out;
  };
  const auto& D = test::converged(22);
  OrderArithmetic arith(D.order, D.result.center, ctx());
  auto sides = proper_sides(D.result.boundary);
  DiscAutomorphism gamma = arith.identity();
  for (auto s : letters(sides.size())) gamma = arith.multiply(gamma, sides[s]);
  CHECK(arith.norm(*gamma.coords) == 1);
  CHECK(abs((*gamma.coords)[0]) + abs((*gamma.coords)[1]) > BigInt(1) << 40);
  CHECK(test::code_of([&] { word(D.result, gamma, arith, ctx()); }) == ErrorCode::not_in_group);

  // The same word at 150 digits.
  ToleranceContext wide(150);
  wide.activate();
  DriverOptions opts;
  opts.seed = 1;
  DomainResult r = fundamental_domain(D.order, opts, wide);
  OrderArithmetic warith(D.order, r.center, wide);
  auto wsides = proper_sides(r.boundary);
  DiscAutomorphism g = warith.identity();
  for (auto s : letters(wsides.size())) g = warith.multiply(g, wsides[s]);
  auto w = word(r, g, warith, wide);
  CHECK(canonical_coords(*evaluate_word(r, w, warith).coords) == canonical_coords(*g.coords));
  ctx().activate();
}

TEST_CASE("words") {
  const auto& D = test::converged(6);
  OrderArithmetic arith(D.order, D.result.center, ctx());
  CHECK(word(D.result, arith.identity(), arith, ctx()).empty());
  for (std::size_t s = 0; s < D.result.boundary.size(); ++s) {
    const auto& g = *D.result.boundary.sides[s];
    auto w = word(D.result, g, arith, ctx());
    REQUIRE(w.size() == 1);
    CHECK(arith.same(evaluate_word(D.result, w, arith), g));
  }
  auto sides = proper_sides(D.result.boundary);
  std::mt19937_64 rng(601);
  for (int k = 0; k < 100; ++k) {
    DiscAutomorphism gamma = arith.identity();
    const int len = static_cast<int>(rng() % 21);
    for (int m = 0; m < len; ++m) gamma = arith.multiply(gamma, sides[rng() % sides.size()]);
    auto w = word(D.result, gamma, arith, ctx());
    DiscAutomorphism back = evaluate_word(D.result, w, arith);
    CHECK(canonical_coords(*back.coords) == canonical_coords(*gamma.coords));
  }
  CHECK(test::code_of([&] { evaluate_word(D.result, {0}, arith); }) == ErrorCode::invalid_argument);
  CHECK(test::code_of([&] { evaluate_word(D.result, {999}, arith); }) == ErrorCode::invalid_argument);
}

}  // TEST_SUITE

TEST_SUITE("calibrate") {

TEST_CASE("counts are deterministic and grow with C") {
  CalibrationOptions o;
  o.area = Real(34) * ctx().pi();
  o.seed = 3;
  o.trials_per_C = 150;
  o.C_values = {5, 20, 40};
  auto a = calibrate(eichler_order(101), o, ctx());
  auto b = calibrate(eichler_order(101), o, ctx());
  REQUIRE(a.size() == 3);
  for (std::size_t k = 0; k < 3; ++k) {
    CHECK(a[k].found == b[k].found);
    CHECK(a[k].trials == 150);
    CHECK(a[k].elapsed_s >= 0);
  }
  CHECK(a[0].found <= a[1].found);
  CHECK(a[1].found <= a[2].found);

  // A single C run on its own finds the same elements.
  o.C_values = {20};
  CHECK(calibrate(eichler_order(101), o, ctx())[0].found == a[1].found);

  const std::string csv = calibration_csv(a);
  CHECK(csv.rfind("C,elapsed_s,found\n", 0) == 0);
  CHECK(std::count(csv.begin(), csv.end(), '\n') == 4);
}

TEST_CASE("calibration errors") {
  CalibrationOptions o;
  o.C_values = {5};
  CHECK(test::code_of([&] { calibrate(eichler_order(101), o, ctx()); }) == ErrorCode::non_cocompact);
  o.area = Real(1);
  o.C_values = {};
  CHECK(test::code_of([&] { calibrate(eichler_order(101), o, ctx()); }) == ErrorCode::invalid_argument);
  o.C_values = {0.5};
  CHECK(test::code_of([&] { calibrate(eichler_order(101), o, ctx()); }) == ErrorCode::invalid_argument);
}

TEST_CASE("success-rate fit") {
  std::vector<CalibrationSample> s;
  for (int k = 1; k <= 5; ++k) s.push_back({double(k * 10), 1.0, static_cast<std::size_t>(100 * (3 + 2 * k * 10)), 100});
  AffineFit f = fit_success_rate(s);
  CHECK(f.slope == doctest::Approx(2));
  CHECK(f.intercept == doctest::Approx(3));
  CHECK(f.r_squared == doctest::Approx(1));
  CHECK(test::code_of([&] { fit_success_rate({s[0]}); }) == ErrorCode::degenerate_input);
  CHECK(test::code_of([&] { fit_success_rate({s[0], s[0]}); }) == ErrorCode::degenerate_input);
}

}  // TEST_SUITE
