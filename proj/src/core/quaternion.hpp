#pragma once

// Rational quaternion algebras (a, b) with i^2 = a, j^2 = b, ij = -ji = k,
// orders given by a Z-basis, and the matrix embedding at the split real
// place. All algebra is exact; Reals appear only in embed_split.

#include "core/group.hpp"

#include <array>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace fdom {

using Rational = BigRational;

struct QuaternionAlgebra {
  Rational a;
  Rational b;
  std::vector<std::int64_t> ramified_primes;
  BigInt discriminant;
};

struct QuaternionElement {
  std::array<Rational, 4> x;  // coefficients of 1, i, j, k

  static QuaternionElement one() { return {{Rational(1), Rational(0), Rational(0), Rational(0)}}; }
  bool operator==(const QuaternionElement& o) const { return x == o.x; }
};

struct QuaternionOrder {
  QuaternionAlgebra algebra;
  std::array<QuaternionElement, 4> basis;
  BigInt reduced_discriminant;
};

struct GroupData {
  int degree = 1;
  std::int64_t field_disc = 1;
  BigInt norm_disc;
};

// Hilbert symbol (a, b)_p of nonzero integers at a prime p.
int hilbert_symbol(std::int64_t a, std::int64_t b, std::int64_t p);

QuaternionAlgebra make_algebra(const Rational& a, const Rational& b);

QuaternionElement multiply(const QuaternionAlgebra& alg, const QuaternionElement& x, const QuaternionElement& y);
QuaternionElement conjugate(const QuaternionElement& x);
Rational reduced_norm(const QuaternionAlgebra& alg, const QuaternionElement& x);
Rational reduced_trace(const QuaternionElement& x);

// The real matrix of x at the split place; det = nrd(x), trace = trd(x).
PslElement embed_split(const QuaternionAlgebra& alg, const QuaternionElement& x, const ToleranceContext& ctx);

// The positive integer whose square is |det(trd(e_i e_j))|.
BigInt reduced_discriminant(const QuaternionAlgebra& alg, const std::array<QuaternionElement, 4>& basis);

// Validates an explicit basis: contains 1, closed under multiplication,
// integral reduced norms and traces.
QuaternionOrder make_order(const QuaternionAlgebra& alg, const std::array<QuaternionElement, 4>& basis);

// Z<1, i, j, k> after clearing the denominators of a and b.
QuaternionOrder standard_order(const QuaternionAlgebra& alg);

QuaternionOrder maximal_order(const QuaternionAlgebra& alg);

// Eichler order of level N in M_2(Q) = (1, 1).
QuaternionOrder eichler_order(std::int64_t level);

// An indefinite algebra (a, b), a > 0, of the given squarefree discriminant,
// preferring small |ab|.
std::pair<std::int64_t, std::int64_t> algebra_for_discriminant(std::int64_t discriminant);

GroupData group_data(const QuaternionOrder& order);

// Coordinates of x in the order basis (rational in general).
std::array<Rational, 4> order_coordinates(const QuaternionOrder& order, const QuaternionElement& x);
QuaternionElement from_order_coordinates(const QuaternionOrder& order, const std::array<BigInt, 4>& c);

std::vector<std::int64_t> prime_factors(std::int64_t n);
bool is_squarefree(std::int64_t n);

std::string to_string(const Rational& q);
Rational parse_rational(const std::string& text);

}  // namespace fdom
