#pragma once

// Shared fixtures for the unit suites: one working precision for the whole
// binary, seeded random generators, and converged domains cached by
// discriminant.

#include "core/driver.hpp"

#include <cmath>
#include <cstdint>
#include <map>
#include <optional>
#include <random>

namespace fdom::test {

// The error code raised by f, or nullopt when it returns normally.
template <class F>
std::optional<ErrorCode> code_of(F&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  return std::nullopt;
}

inline const ToleranceContext& ctx() {
  static const ToleranceContext c(ToleranceContext::kDefaultDigits);
  return c;
}

inline double uniform(std::mt19937_64& rng, double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(rng);
}

inline Complex polar(const Real& r, const Real& theta) { return {r * cos(theta), r * sin(theta)}; }
inline Complex polar(double r, double theta) { return polar(Real(r), Real(theta)); }

// A random point of the open disc with |z| <= rmax.
inline Complex random_disc_point(std::mt19937_64& rng, double rmax = 0.95) {
  return polar(rmax * std::sqrt(uniform(rng, 0, 1)), uniform(rng, 0, 6.283185307179586));
}

// cosh(t) e^{i alpha}, sinh(t) e^{i beta}: determinant exactly 1 up to rounding.
inline PsuElement random_psu(std::mt19937_64& rng, double tmax = 2.0) {
  const Real t(uniform(rng, 0.05, tmax));
  const double alpha = uniform(rng, 0, 6.283185307179586), beta = uniform(rng, 0, 6.283185307179586);
  return {polar(1, alpha) * Real(cosh(t)), polar(1, beta) * Real(sinh(t))};
}

inline PslElement random_psl(std::mt19937_64& rng) {
  Real a(uniform(rng, 0.3, 3.0)), b(uniform(rng, -3, 3)), c(uniform(rng, -3, 3));
  if (uniform(rng, 0, 1) < 0.5) a = -a;
  Real d = (Real(1) + b * c) / a;
  return {a, b, c, d};
}

inline Complex random_uhp_point(std::mt19937_64& rng) {
  return {Real(uniform(rng, -2, 2)), Real(uniform(rng, 0.2, 3))};
}

struct Converged {
  QuaternionOrder order;
  DomainResult result;
};

// Converged domain of the maximal order of discriminant D with seed 1.
inline const Converged& converged(std::int64_t D) {
  static std::map<std::int64_t, Converged> cache;
  auto it = cache.find(D);
  if (it != cache.end()) return it->second;
  auto [a, b] = algebra_for_discriminant(D);
  QuaternionOrder order = maximal_order(make_algebra(Rational(a), Rational(b)));
  DriverOptions opts;
  opts.seed = 1;
  DomainResult r = fundamental_domain(order, opts, ctx());
  return cache.emplace(D, Converged{std::move(order), std::move(r)}).first->second;
}

}  // namespace fdom::test
