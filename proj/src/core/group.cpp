#include "core/group.hpp"

namespace fdom {

DiscAutomorphism PsuArithmetic::multiply(const DiscAutomorphism& x, const DiscAutomorphism& y) const {
  return from_psu((x.psu * y.psu).canonical(ctx_));
}

DiscAutomorphism PsuArithmetic::inverse(const DiscAutomorphism& x) const {
  return from_psu(x.psu.inverse().canonical(ctx_));
}

DiscAutomorphism PsuArithmetic::identity() const { return from_psu(PsuElement::identity()); }

bool PsuArithmetic::is_identity(const DiscAutomorphism& x) const {
  // Rounding accumulates along words, so allow a few orders of magnitude.
  const Real slack = ctx_.tolerance() * 1000;
  return x.psu.B.abs() < slack && (x.psu.canonical(ctx_).A - Complex(1)).abs() < slack;
}

bool PsuArithmetic::same(const DiscAutomorphism& x, const DiscAutomorphism& y) const {
  const Real slack = ctx_.tolerance() * 1000;
  PsuElement a = x.psu.canonical(ctx_);
  PsuElement b = y.psu.canonical(ctx_);
  return (a.A - b.A).abs() < slack && (a.B - b.B).abs() < slack;
}

}  // namespace fdom
