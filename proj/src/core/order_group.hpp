#pragma once

// Norm-one units of an order as disc automorphisms, multiplied exactly in
// integer coordinates with respect to the order basis.

#include "core/quaternion.hpp"

namespace fdom {

using OrderCoords = std::array<BigInt, 4>;

class OrderArithmetic final : public GroupArithmetic {
 public:
  // p is the upper-half-plane point sent to 0 in the disc.
  OrderArithmetic(QuaternionOrder order, Complex p, const ToleranceContext& ctx);

  const QuaternionOrder& order() const { return order_; }
  const Complex& center() const { return p_; }
  const ToleranceContext& context() const { return ctx_; }

  OrderCoords product(const OrderCoords& x, const OrderCoords& y) const;
  OrderCoords conjugate(const OrderCoords& x) const;
  BigInt trace(const OrderCoords& x) const;
  BigInt norm(const OrderCoords& x) const;
  const OrderCoords& one() const { return one_; }

  // Requires nrd = 1.
  DiscAutomorphism element(const OrderCoords& x) const;

  DiscAutomorphism multiply(const DiscAutomorphism& x, const DiscAutomorphism& y) const override;
  DiscAutomorphism inverse(const DiscAutomorphism& x) const override;
  DiscAutomorphism identity() const override;
  bool is_identity(const DiscAutomorphism& x) const override;
  bool same(const DiscAutomorphism& x, const DiscAutomorphism& y) const override;
  std::optional<std::string> exact_key(const DiscAutomorphism& x) const override;

 private:
  QuaternionOrder order_;
  Complex p_;
  const ToleranceContext& ctx_;
  std::array<std::array<OrderCoords, 4>, 4> table_;
  std::array<OrderCoords, 4> conj_;
  std::array<BigInt, 4> traces_;
  std::array<std::array<BigInt, 4>, 4> norm_form_;  // upper triangular
  OrderCoords one_;
  PsuArithmetic fallback_;
};

// Sign-normalized coordinates: the first nonzero entry is positive.
OrderCoords canonical_coords(const OrderCoords& x);

}  // namespace fdom
