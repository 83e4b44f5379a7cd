#include "core/order_group.hpp"

namespace fdom {

namespace {

OrderCoords integral_coords(const QuaternionOrder& order, const QuaternionElement& x) {
  OrderCoords out;
  auto c = order_coordinates(order, x);
  for (int i = 0; i < 4; ++i) {
    if (boost::multiprecision::denominator(c[i]) != 1) fail(ErrorCode::invalid_argument, "element is not in the order");
    out[i] = boost::multiprecision::numerator(c[i]);
  }
  return out;
}

bool is_zero(const OrderCoords& x) {
  for (const auto& v : x)
    if (v != 0) return false;
  return true;
}

}  // namespace

OrderCoords canonical_coords(const OrderCoords& x) {
  for (const auto& v : x) {
    if (v == 0) continue;
    if (v > 0) return x;
    return {-x[0], -x[1], -x[2], -x[3]};
  }
  return x;
}

OrderArithmetic::OrderArithmetic(QuaternionOrder order, Complex p, const ToleranceContext& ctx)
    : order_(std::move(order)), p_(std::move(p)), ctx_(ctx), fallback_(ctx) {
  if (!(p_.im > 0)) fail(ErrorCode::invalid_argument, "center must lie in the upper half-plane");
  const auto& alg = order_.algebra;
  const auto& e = order_.basis;
  for (int i = 0; i < 4; ++i) {
    for (int j = 0; j < 4; ++j) table_[i][j] = integral_coords(order_, fdom::multiply(alg, e[i], e[j]));
    conj_[i] = integral_coords(order_, fdom::conjugate(e[i]));
    traces_[i] = boost::multiprecision::numerator(reduced_trace(e[i]));
    norm_form_[i][i] = boost::multiprecision::numerator(reduced_norm(alg, e[i]));
    for (int j = i + 1; j < 4; ++j)
      norm_form_[i][j] =
          boost::multiprecision::numerator(reduced_trace(fdom::multiply(alg, e[i], fdom::conjugate(e[j]))));
  }
  one_ = integral_coords(order_, QuaternionElement::one());
}

OrderCoords OrderArithmetic::product(const OrderCoords& x, const OrderCoords& y) const {
  OrderCoords z{0, 0, 0, 0};
  for (int i = 0; i < 4; ++i) {
    if (x[i] == 0) continue;
    for (int j = 0; j < 4; ++j) {
      if (y[j] == 0) continue;
      BigInt s = x[i] * y[j];
      for (int k = 0; k < 4; ++k) z[k] += s * table_[i][j][k];
    }
  }
  return z;
}

OrderCoords OrderArithmetic::conjugate(const OrderCoords& x) const {
  OrderCoords z{0, 0, 0, 0};
  for (int i = 0; i < 4; ++i)
    for (int k = 0; k < 4; ++k) z[k] += x[i] * conj_[i][k];
  return z;
}

BigInt OrderArithmetic::trace(const OrderCoords& x) const {
  BigInt t = 0;
  for (int i = 0; i < 4; ++i) t += x[i] * traces_[i];
  return t;
}

BigInt OrderArithmetic::norm(const OrderCoords& x) const {
  BigInt s = 0;
  for (int i = 0; i < 4; ++i)
    for (int j = i; j < 4; ++j) s += norm_form_[i][j] * x[i] * x[j];
  return s;
}

DiscAutomorphism OrderArithmetic::element(const OrderCoords& x) const {
  if (norm(x) != 1) fail(ErrorCode::invalid_element, "order element does not have reduced norm 1");
  OrderCoords c = canonical_coords(x);
  PslElement m = embed_split(order_.algebra, from_order_coordinates(order_, c), ctx_);
  // det = nrd = 1 exactly; a floating check would reject long products whose
  // large entries cancel below working precision.
  PsuElement u = conjugate_linear(m, p_).canonical(ctx_);
  return DiscAutomorphism{std::move(u), std::move(m), std::move(c)};
}

DiscAutomorphism OrderArithmetic::multiply(const DiscAutomorphism& x, const DiscAutomorphism& y) const {
  if (x.coords && y.coords) return element(product(*x.coords, *y.coords));
  return fallback_.multiply(x, y);
}

DiscAutomorphism OrderArithmetic::inverse(const DiscAutomorphism& x) const {
  if (x.coords) return element(conjugate(*x.coords));
  return fallback_.inverse(x);
}

DiscAutomorphism OrderArithmetic::identity() const { return element(one_); }

bool OrderArithmetic::is_identity(const DiscAutomorphism& x) const {
  if (x.coords) return canonical_coords(*x.coords) == canonical_coords(one_);
  return fallback_.is_identity(x);
}

bool OrderArithmetic::same(const DiscAutomorphism& x, const DiscAutomorphism& y) const {
  if (x.coords && y.coords) return canonical_coords(*x.coords) == canonical_coords(*y.coords);
  return fallback_.same(x, y);
}

std::optional<std::string> OrderArithmetic::exact_key(const DiscAutomorphism& x) const {
  if (!x.coords || is_zero(*x.coords)) return std::nullopt;
  OrderCoords c = canonical_coords(*x.coords);
  return c[0].str() + "," + c[1].str() + "," + c[2].str() + "," + c[3].str();
}

}  // namespace fdom
