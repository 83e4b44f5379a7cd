#pragma once

#include "core/hyperbolic.hpp"

#include <boost/multiprecision/gmp.hpp>

#include <array>
#include <optional>
#include <string>

namespace fdom {

using BigInt = boost::multiprecision::mpz_int;
using BigRational = boost::multiprecision::mpq_rational;

// A group element seen three ways: integer coordinates in an order basis
// (when it comes from one), a real 2x2 matrix of determinant 1, and the
// PSU(1,1) conjugate acting on the disc. Geometry only reads `psu`.
struct DiscAutomorphism {
  PsuElement psu;
  std::optional<PslElement> matrix;
  std::optional<std::array<BigInt, 4>> coords;
};

// How the reducer and the basis loop compose group elements. Geometric
// elements multiply in floating point; order elements multiply exactly and
// regenerate their float views, so long words do not accumulate drift.
class GroupArithmetic {
 public:
  virtual ~GroupArithmetic() = default;

  virtual DiscAutomorphism multiply(const DiscAutomorphism& x, const DiscAutomorphism& y) const = 0;
  virtual DiscAutomorphism inverse(const DiscAutomorphism& x) const = 0;
  virtual DiscAutomorphism identity() const = 0;
  virtual bool is_identity(const DiscAutomorphism& x) const = 0;
  // Equality in PSL/PSU (i.e. up to sign).
  virtual bool same(const DiscAutomorphism& x, const DiscAutomorphism& y) const = 0;
  // A string that identifies the projective class exactly, if the
  // arithmetic is exact.
  virtual std::optional<std::string> exact_key(const DiscAutomorphism& x) const = 0;
};

class PsuArithmetic final : public GroupArithmetic {
 public:
  explicit PsuArithmetic(const ToleranceContext& ctx) : ctx_(ctx) {}

  DiscAutomorphism multiply(const DiscAutomorphism& x, const DiscAutomorphism& y) const override;
  DiscAutomorphism inverse(const DiscAutomorphism& x) const override;
  DiscAutomorphism identity() const override;
  bool is_identity(const DiscAutomorphism& x) const override;
  bool same(const DiscAutomorphism& x, const DiscAutomorphism& y) const override;
  std::optional<std::string> exact_key(const DiscAutomorphism&) const override { return std::nullopt; }

 private:
  const ToleranceContext& ctx_;
};

inline DiscAutomorphism from_psu(PsuElement m) { return {std::move(m), std::nullopt, std::nullopt}; }

}  // namespace fdom
