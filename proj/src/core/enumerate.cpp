#include "core/enumerate.hpp"

#include <cmath>
#include <string>

namespace fdom {

namespace {

using boost::multiprecision::denominator;
using boost::multiprecision::numerator;

// 2 * nrd as an integer symmetric matrix over the order basis.
std::array<std::array<BigInt, 4>, 4> doubled_norm_form(const OrderArithmetic& arith) {
  const auto& alg = arith.order().algebra;
  const auto& e = arith.order().basis;
  std::array<std::array<BigInt, 4>, 4> s;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) {
      Rational v = reduced_trace(multiply(alg, e[i], conjugate(e[j])));
      s[i][j] = numerator(v);
    }
  return s;
}

OrderCoords to_order_coords(const IntVector& x) { return {BigInt(x[0]), BigInt(x[1]), BigInt(x[2]), BigInt(x[3])}; }

bool is_plus_minus_one(const OrderArithmetic& arith, const OrderCoords& x) {
  return canonical_coords(x) == canonical_coords(arith.one());
}

}  // namespace

Complex f_of(const PsuElement& M, const Complex& p) {
  const Complex lower_left = M.B.conj();
  return Complex(Real(0), p.im * 2) * lower_left.conj();
}

Complex f_of(const PslElement& g, const Complex& p) {
  return Complex(g.c) * p * p + Complex(g.d - g.a) * p - Complex(g.b);
}

QForm build_qform(const Complex& z1, const Complex& z2, const OrderArithmetic& arith) {
  if (!(z1.norm() < 1) || !(z2.norm() < 1)) fail(ErrorCode::invalid_argument, "centres must lie in the open disc");
  const auto& order = arith.order();
  const auto& ctx = arith.context();
  QForm q{RealMatrix(4, std::vector<Real>(4, Real(0))), z1, z2, PsuElement::translation_to(z1),
          PsuElement::translation_to(z2)};
  const PsuElement m2inv = q.M2.inverse();
  std::array<Complex, 4> beta;
  for (int k = 0; k < 4; ++k) {
    PsuElement g = conjugate_linear(embed_split(order.algebra, order.basis[k], ctx), arith.center());
    beta[k] = (m2inv * g * q.M1).B;
  }
  const auto s = doubled_norm_form(arith);
  for (int i = 0; i < 4; ++i)
    for (int j = i; j < 4; ++j) {
      Real v = dot(beta[i], beta[j]) * 2 + Real(s[i][j]) / 2;
      q.gram[i][j] = v;
      q.gram[j][i] = v;
    }
  return q;
}

NormOneCholesky::NormOneCholesky(const OrderArithmetic& arith) {
  // Lagrange diagonalization: peel off B(u, x)^2 / q(u) for some u with
  // q(u) != 0 until the form vanishes.
  std::array<std::array<Rational, 4>, 4> m;
  const auto s = doubled_norm_form(arith);
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) m[i][j] = Rational(s[i][j], 2);
  for (int step = 0; step < 4; ++step) {
    std::array<Rational, 4> u{};
    bool found = false;
    for (int i = 0; i < 4 && !found; ++i)
      if (m[i][i] != 0) {
        u[i] = 1;
        found = true;
      }
    for (int i = 0; i < 4 && !found; ++i)
      for (int j = i + 1; j < 4 && !found; ++j)
        if (m[i][j] != 0) {
          u[i] = 1;
          u[j] = 1;
          found = true;
        }
    if (!found) break;
    std::array<Rational, 4> mu{};  // B(u, .)
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j) mu[j] += u[i] * m[i][j];
    Rational qu = 0;
    for (int j = 0; j < 4; ++j) qu += u[j] * mu[j];
    weights_.push_back(1 / qu);
    forms_.push_back(mu);
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j) m[i][j] -= mu[i] * mu[j] / qu;
  }
  scale_ = 1;
  for (std::size_t k = 0; k < forms_.size(); ++k) {
    BigInt den = 1;
    for (const auto& c : forms_[k]) den = boost::multiprecision::lcm(den, denominator(c));
    std::array<BigInt, 4> l;
    for (int i = 0; i < 4; ++i) l[i] = numerator(Rational(forms_[k][i] * Rational(den)));
    int_forms_.push_back(l);
    Rational w = weights_[k] / Rational(den * den);
    int_weights_.push_back(0);
    scale_ = boost::multiprecision::lcm(scale_, denominator(w));
  }
  for (std::size_t k = 0; k < forms_.size(); ++k) {
    BigInt den = 1;
    for (const auto& c : forms_[k]) den = boost::multiprecision::lcm(den, denominator(c));
    Rational w = weights_[k] / Rational(den * den) * Rational(scale_);
    int_weights_[k] = numerator(w);
  }
}

Rational NormOneCholesky::value(const OrderCoords& x) const {
  Rational s = 0;
  for (std::size_t k = 0; k < forms_.size(); ++k) {
    Rational l = 0;
    for (int i = 0; i < 4; ++i) l += forms_[k][i] * Rational(x[i]);
    s += weights_[k] * l * l;
  }
  return s;
}

bool NormOneCholesky::is_norm_one(const OrderCoords& x) const {
  BigInt s = 0;
  for (std::size_t k = 0; k < int_forms_.size(); ++k) {
    BigInt l = 0;
    for (int i = 0; i < 4; ++i) l += int_forms_[k][i] * x[i];
    s += int_weights_[k] * l * l;
  }
  return s == scale_;
}

std::pair<int, int> NormOneCholesky::signature() const {
  int pos = 0, neg = 0;
  for (const auto& w : weights_) (w > 0 ? pos : neg)++;
  return {pos, neg};
}

std::vector<DiscAutomorphism> norm_one_trial(const QForm& q, const Real& C, const NormOneCholesky& chol,
                                             const OrderArithmetic& arith, bool stop_after_first) {
  std::vector<DiscAutomorphism> out;
  fincke_pohst_visit(q.gram, C, arith.context(), [&](const IntVector& x) {
    OrderCoords c = to_order_coords(x);
    if (!chol.is_norm_one(c) || is_plus_minus_one(arith, c)) return true;
    out.push_back(arith.element(c));
    return !stop_after_first;
  });
  return out;
}

std::vector<DiscAutomorphism> ifp_norm_one(const QForm& q, const Real& C, const OrderArithmetic& arith,
                                           bool stop_after_first) {
  std::vector<DiscAutomorphism> out;
  if (C <= 0) return out;
  const auto& ctx = arith.context();
  LllResult red = lll_reduce(q.gram, ctx);
  CholeskyForm form = cholesky_form(red.gram, ctx);
  // 2 nrd in the reduced coordinates.
  const auto s = doubled_norm_form(arith);
  std::array<std::array<BigInt, 4>, 4> t;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) {
      BigInt v = 0;
      for (int k = 0; k < 4; ++k)
        for (int l = 0; l < 4; ++l)
          if (red.basis[i][k] != 0 && red.basis[j][l] != 0) v += s[k][l] * red.basis[i][k] * red.basis[j][l];
      t[i][j] = v;
    }
  const Real bound = C + ctx.tolerance() * (C > 1 ? C : Real(1)) * 10;

  auto emit = [&](IntVector& y, const BigInt& y0) -> bool {
    if (abs(y0) > BigInt(std::int64_t(1) << 40)) return true;
    y[0] = y0.convert_to<std::int64_t>();
    OrderCoords x{0, 0, 0, 0};
    for (int i = 0; i < 4; ++i)
      if (y[i] != 0)
        for (int k = 0; k < 4; ++k) x[k] += BigInt(y[i]) * red.basis[i][k];
    y[0] = 0;
    if (arith.norm(x) != 1 || is_plus_minus_one(arith, x)) return true;
    out.push_back(arith.element(x));
    return !stop_after_first;
  };

  fp_traverse(form, bound, [&](IntVector& y, const Real&, const Real&, std::int64_t, std::int64_t) {
    // t00 y0^2 + 2 beta y0 + gamma = 2.
    BigInt beta = 0, gamma = 0;
    bool higher_zero = true;
    for (int j = 1; j < 4; ++j) {
      if (y[j] == 0) continue;
      higher_zero = false;
      beta += t[0][j] * y[j];
      for (int k = 1; k < 4; ++k)
        if (y[k] != 0) gamma += t[j][k] * y[j] * y[k];
    }
    const BigInt& a = t[0][0];
    if (a == 0) {
      if (beta == 0) return true;
      BigInt num = 2 - gamma, den = 2 * beta;
      if (num % den != 0) return true;
      BigInt y0 = num / den;
      if (higher_zero && y0 <= 0) return true;
      return emit(y, y0);
    }
    BigInt disc = beta * beta - a * (gamma - 2);
    if (disc < 0) return true;
    BigInt r = boost::multiprecision::sqrt(disc);
    if (r * r != disc) return true;
    for (int sign : {1, -1}) {
      if (sign == -1 && r == 0) break;
      BigInt num = -beta + sign * r;
      if (num % a != 0) continue;
      BigInt y0 = num / a;
      if (higher_zero && y0 <= 0) continue;
      if (!emit(y, y0)) return false;
    }
    return true;
  });
  return out;
}

Complex sample_center(const Real& R, Rng& rng, const ToleranceContext& ctx) {
  if (!(R > 0)) fail(ErrorCode::invalid_argument, "sampling radius must be positive");
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const Real u(unit(rng));
  const Real v(unit(rng));
  const Real r = acosh(1 + u * (cosh(R) - 1));
  const Real rho = tanh(r / 2);
  const Real theta = v * ctx.two_pi();
  return Complex(rho * cos(theta), rho * sin(theta));
}

Real compute_R(const Real& mu, double exponent) {
  if (!(mu > 0)) fail(ErrorCode::invalid_argument, "area must be positive");
  const Real pi = boost::math::constants::pi<Real>();
  return 2 * asinh(sqrt(pow(mu, Real(exponent)) / (4 * pi)));
}

namespace {

constexpr const char* kHeuristicTable[] = {"2.8304840896", "0.9331764427", "0.9097513831", "0.9734563346",
                                           "1.0195386113", "1.0184814342", "0.9942555240", "0.9644002039"};

}  // namespace

double heuristic_constant(int n) {
  if (n < 1) fail(ErrorCode::invalid_argument, "degree must be positive");
  return n <= 8 ? std::stod(kHeuristicTable[n - 1]) : 1.0;
}

Real compute_C(int n, const Real& field_disc, const Real& norm_disc) {
  if (n < 1) fail(ErrorCode::invalid_argument, "degree must be positive");
  const Real cn = n <= 8 ? Real(kHeuristicTable[n - 1]) : Real(1);
  return cn * pow(field_disc, Real(1) / n) * pow(norm_disc, Real(1) / (2 * n));
}

Real predict_success(const Real& C, int n, const Real& mu) {
  if (C < n) fail(ErrorCode::invalid_argument, "search bound must be at least the degree");
  const Real pi = boost::math::constants::pi<Real>();
  return 2 * pi * (C - n) / mu;
}

double optimal_C_from_timing(int n, double A, double B) {
  if (!(A > 0) || !(B > 0)) fail(ErrorCode::invalid_argument, "timing constants must be positive");
  const double ratio = A / B;
  auto f = [&](double c) {
    return (2.0 * n - 1) * std::pow(c, 2 * n) - 2.0 * n * n * std::pow(c, 2 * n - 1) - ratio;
  };
  double lo = n, hi = 2.0 * n + 1;
  while (f(hi) < 0) hi *= 2;
  for (int i = 0; i < 200 && hi - lo > 1e-15 * hi; ++i) {
    double mid = 0.5 * (lo + hi);
    (f(mid) < 0 ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

TimingFit fit_timing_model(const std::vector<std::pair<double, double>>& samples, int n) {
  if (samples.size() < 2) fail(ErrorCode::degenerate_input, "timing fit needs at least two samples");
  double sx = 0, sy = 0;
  const double m = static_cast<double>(samples.size());
  for (const auto& [c, t] : samples) {
    sx += std::pow(c, 2 * n);
    sy += t;
  }
  const double mx = sx / m, my = sy / m;
  double sxx = 0, sxy = 0, syy = 0;
  for (const auto& [c, t] : samples) {
    const double dx = std::pow(c, 2 * n) - mx, dy = t - my;
    sxx += dx * dx;
    sxy += dx * dy;
    syy += dy * dy;
  }
  if (!(sxx > 0)) fail(ErrorCode::degenerate_input, "timing samples do not span a range of C");
  TimingFit fit;
  fit.B = sxy / sxx;
  fit.A = my - fit.B * mx;
  double ss_res = 0;
  for (const auto& [c, t] : samples) {
    const double r = t - (fit.A + fit.B * std::pow(c, 2 * n));
    ss_res += r * r;
  }
  fit.r_squared = syy > 0 ? 1 - ss_res / syy : 1.0;
  return fit;
}

}  // namespace fdom
