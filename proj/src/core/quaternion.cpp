#include "core/quaternion.hpp"

#include <algorithm>
#include <limits>
#include <numeric>
#include <regex>

namespace fdom {

namespace {

using boost::multiprecision::denominator;
using boost::multiprecision::numerator;

using Row = std::array<BigInt, 4>;

std::int64_t to_int64(const BigInt& v, const char* what) {
  if (v > std::numeric_limits<std::int64_t>::max() || v < std::numeric_limits<std::int64_t>::min())
    fail(ErrorCode::unsupported, what);
  return v.convert_to<std::int64_t>();
}

std::int64_t mod_pow(std::int64_t base, std::int64_t e, std::int64_t m) {
  __int128 result = 1;
  __int128 b = ((base % m) + m) % m;
  while (e > 0) {
    if (e & 1) result = result * b % m;
    b = b * b % m;
    e >>= 1;
  }
  return static_cast<std::int64_t>(result);
}

int legendre(std::int64_t u, std::int64_t p) {
  std::int64_t r = mod_pow(u, (p - 1) / 2, p);
  return r == 1 ? 1 : -1;
}

int valuation(std::int64_t& n, std::int64_t p) {
  int v = 0;
  while (n % p == 0) {
    n /= p;
    ++v;
  }
  return v;
}

int valuation(BigInt n, std::int64_t p) {
  if (n == 0) return std::numeric_limits<int>::max();
  int v = 0;
  while (n % p == 0) {
    n /= p;
    ++v;
  }
  return v;
}

bool is_integer(const Rational& q) { return denominator(q) == 1; }

Rational det4(std::array<std::array<Rational, 4>, 4> m) {
  Rational det = 1;
  for (int c = 0; c < 4; ++c) {
    int pivot = -1;
    for (int r = c; r < 4; ++r)
      if (m[r][c] != 0) {
        pivot = r;
        break;
      }
    if (pivot < 0) return 0;
    if (pivot != c) {
      std::swap(m[pivot], m[c]);
      det = -det;
    }
    det *= m[c][c];
    for (int r = c + 1; r < 4; ++r) {
      if (m[r][c] == 0) continue;
      Rational f = m[r][c] / m[c][c];
      for (int k = c; k < 4; ++k) m[r][k] -= f * m[c][k];
    }
  }
  return det;
}

// Solves v = sum_i y_i * rows[i] for y.
std::array<Rational, 4> solve_coordinates(const std::array<QuaternionElement, 4>& rows, const QuaternionElement& v) {
  // Augmented transpose system: columns are basis elements.
  std::array<std::array<Rational, 5>, 4> m;
  for (int r = 0; r < 4; ++r) {
    for (int c = 0; c < 4; ++c) m[r][c] = rows[c].x[r];
    m[r][4] = v.x[r];
  }
  for (int c = 0; c < 4; ++c) {
    int pivot = -1;
    for (int r = c; r < 4; ++r)
      if (m[r][c] != 0) {
        pivot = r;
        break;
      }
    if (pivot < 0) fail(ErrorCode::invalid_argument, "order basis is linearly dependent");
    std::swap(m[pivot], m[c]);
    for (int r = 0; r < 4; ++r) {
      if (r == c || m[r][c] == 0) continue;
      Rational f = m[r][c] / m[c][c];
      for (int k = c; k < 5; ++k) m[r][k] -= f * m[c][k];
    }
  }
  std::array<Rational, 4> y;
  for (int c = 0; c < 4; ++c) y[c] = m[c][4] / m[c][c];
  return y;
}

// Hermite normal form of the Z-span of integer rows; requires rank 4.
std::array<Row, 4> hnf(std::vector<Row> rows) {
  std::array<Row, 4> out;
  std::size_t top = 0;
  for (int c = 0; c < 4; ++c) {
    // Euclid down the column until a single nonzero entry remains in rows >= top.
    for (;;) {
      std::size_t best = rows.size();
      for (std::size_t r = top; r < rows.size(); ++r)
        if (rows[r][c] != 0 && (best == rows.size() || abs(rows[r][c]) < abs(rows[best][c]))) best = r;
      if (best == rows.size()) fail(ErrorCode::invalid_argument, "lattice does not have rank 4");
      std::swap(rows[top], rows[best]);
      bool done = true;
      for (std::size_t r = top + 1; r < rows.size(); ++r) {
        if (rows[r][c] == 0) continue;
        BigInt q = rows[r][c] / rows[top][c];
        for (int k = c; k < 4; ++k) rows[r][k] -= q * rows[top][k];
        if (rows[r][c] != 0) done = false;
      }
      if (done) break;
    }
    if (rows[top][c] < 0)
      for (int k = c; k < 4; ++k) rows[top][k] = -rows[top][k];
    ++top;
  }
  for (int c = 0; c < 4; ++c) {
    out[c] = rows[c];
    for (int r = 0; r < c; ++r) {
      BigInt q = out[r][c] / out[c][c];
      if (out[r][c] - q * out[c][c] < 0) q -= 1;
      for (int k = c; k < 4; ++k) out[r][k] -= q * out[c][k];
    }
  }
  return out;
}

// Z-span of rational quaternions as an HNF basis.
std::array<QuaternionElement, 4> lattice_basis(const std::vector<QuaternionElement>& gens) {
  BigInt l = 1;
  for (const auto& g : gens)
    for (const auto& x : g.x) l = boost::multiprecision::lcm(l, denominator(x));
  std::vector<Row> rows;
  rows.reserve(gens.size());
  for (const auto& g : gens) {
    Row r;
    for (int k = 0; k < 4; ++k) r[k] = numerator(Rational(g.x[k] * l));
    rows.push_back(r);
  }
  auto h = hnf(std::move(rows));
  std::array<QuaternionElement, 4> out;
  for (int r = 0; r < 4; ++r)
    for (int k = 0; k < 4; ++k) out[r].x[k] = Rational(h[r][k], l);
  return out;
}

bool integral(const QuaternionAlgebra& alg, const QuaternionElement& x) {
  return is_integer(reduced_trace(x)) && is_integer(reduced_norm(alg, x));
}

// The ring generated by an order and x, or nothing if it is not integral.
std::optional<std::array<QuaternionElement, 4>> adjoin(const QuaternionAlgebra& alg,
                                                       const std::array<QuaternionElement, 4>& basis,
                                                       const QuaternionElement& x) {
  std::vector<QuaternionElement> gens(basis.begin(), basis.end());
  gens.push_back(x);
  auto current = lattice_basis(gens);
  for (;;) {
    for (const auto& e : current)
      if (!integral(alg, e)) return std::nullopt;
    std::vector<QuaternionElement> more(current.begin(), current.end());
    for (const auto& e : current)
      for (const auto& f : current) more.push_back(multiply(alg, e, f));
    for (const auto& e : more)
      if (!integral(alg, e)) return std::nullopt;
    auto next = lattice_basis(more);
    if (next == current) return current;
    current = next;
  }
}

// Replaces the order by a strictly larger one with index p, or returns false
// when the order is already maximal at p.
bool enlarge_at(const QuaternionAlgebra& alg, std::array<QuaternionElement, 4>& basis, std::int64_t p) {
  std::array<std::int64_t, 4> t{};
  std::array<std::array<std::int64_t, 4>, 4> n{};
  for (int i = 0; i < 4; ++i) {
    t[i] = to_int64(numerator(reduced_trace(basis[i])), "trace too large") % p;
    n[i][i] = to_int64(numerator(reduced_norm(alg, basis[i])), "norm too large");
    for (int j = i + 1; j < 4; ++j)
      n[i][j] = to_int64(numerator(reduced_trace(multiply(alg, basis[i], conjugate(basis[j])))), "norm too large");
  }
  const __int128 p2 = static_cast<__int128>(p) * p;
  auto norm_mod = [&](const std::array<std::int64_t, 4>& c) {
    __int128 s = 0;
    for (int i = 0; i < 4; ++i)
      for (int j = i; j < 4; ++j) s = (s + static_cast<__int128>(n[i][j] % p2) * c[i] % p2 * c[j]) % p2;
    return s;
  };
  // Solve the trace condition for one coordinate when possible.
  int solved = -1;
  std::int64_t inv = 0;
  for (int i = 0; i < 4; ++i)
    if (((t[i] % p) + p) % p != 0) {
      solved = i;
      inv = mod_pow(t[i], p - 2, p);
      break;
    }
  std::array<std::int64_t, 4> c{};
  const std::int64_t total = p * p * p * (solved < 0 ? p : 1);
  for (std::int64_t idx = 1; idx < total; ++idx) {
    std::int64_t rest = idx;
    for (int i = 0; i < 4; ++i) {
      if (i == solved) continue;
      c[i] = rest % p;
      rest /= p;
    }
    if (solved >= 0) {
      __int128 s = 0;
      for (int i = 0; i < 4; ++i)
        if (i != solved) s += static_cast<__int128>(t[i]) * c[i];
      std::int64_t sm = static_cast<std::int64_t>(((-s) % p + p) % p);
      c[solved] = static_cast<std::int64_t>(static_cast<__int128>(sm) * inv % p);
    }
    if (std::all_of(c.begin(), c.end(), [](std::int64_t v) { return v == 0; })) continue;
    if (norm_mod(c) != 0) continue;
    QuaternionElement x{};
    for (int i = 0; i < 4; ++i)
      for (int k = 0; k < 4; ++k) x.x[k] += basis[i].x[k] * Rational(c[i], p);
    if (auto bigger = adjoin(alg, basis, x)) {
      basis = *bigger;
      return true;
    }
  }
  return false;
}

}  // namespace

std::vector<std::int64_t> prime_factors(std::int64_t n) {
  std::vector<std::int64_t> out;
  if (n < 0) n = -n;
  for (std::int64_t p = 2; p * p <= n; ++p) {
    if (n % p != 0) continue;
    out.push_back(p);
    while (n % p == 0) n /= p;
  }
  if (n > 1) out.push_back(n);
  return out;
}

bool is_squarefree(std::int64_t n) {
  if (n == 0) return false;
  if (n < 0) n = -n;
  for (std::int64_t p = 2; p * p <= n; ++p) {
    if (n % (p * p) == 0) return false;
    if (n % p == 0) n /= p;
  }
  return true;
}

int hilbert_symbol(std::int64_t a, std::int64_t b, std::int64_t p) {
  if (a == 0 || b == 0) fail(ErrorCode::invalid_argument, "Hilbert symbol of zero");
  const int alpha = valuation(a, p);
  const int beta = valuation(b, p);
  if (p != 2) {
    int s = ((static_cast<std::int64_t>(alpha) * beta) % 2 == 1 && (p - 1) / 2 % 2 == 1) ? -1 : 1;
    if (beta % 2 == 1) s *= legendre(a, p);
    if (alpha % 2 == 1) s *= legendre(b, p);
    return s;
  }
  auto eps = [](std::int64_t u) { return ((u % 4) + 4) % 4 == 3 ? 1 : 0; };
  auto omega = [](std::int64_t u) {
    std::int64_t r = ((u % 8) + 8) % 8;
    return (r == 3 || r == 5) ? 1 : 0;
  };
  int e = eps(a) * eps(b) + alpha * omega(b) + beta * omega(a);
  return e % 2 == 0 ? 1 : -1;
}

QuaternionAlgebra make_algebra(const Rational& a, const Rational& b) {
  if (a == 0 || b == 0) fail(ErrorCode::invalid_argument, "quaternion algebra parameters must be nonzero");
  if (a < 0 && b < 0) fail(ErrorCode::definite_algebra, "definite algebra: ramified at the real place");
  // Square classes are unchanged by multiplying by den^2.
  const std::int64_t ai = to_int64(numerator(a) * denominator(a), "algebra parameter too large");
  const std::int64_t bi = to_int64(numerator(b) * denominator(b), "algebra parameter too large");
  std::vector<std::int64_t> primes = prime_factors(ai);
  for (auto p : prime_factors(bi)) primes.push_back(p);
  primes.push_back(2);
  std::sort(primes.begin(), primes.end());
  primes.erase(std::unique(primes.begin(), primes.end()), primes.end());
  QuaternionAlgebra alg{a, b, {}, BigInt(1)};
  for (auto p : primes)
    if (hilbert_symbol(ai, bi, p) == -1) {
      alg.ramified_primes.push_back(p);
      alg.discriminant *= p;
    }
  return alg;
}

QuaternionElement multiply(const QuaternionAlgebra& alg, const QuaternionElement& x, const QuaternionElement& y) {
  const Rational& a = alg.a;
  const Rational& b = alg.b;
  const auto& [x0, x1, x2, x3] = x.x;
  const auto& [y0, y1, y2, y3] = y.x;
  QuaternionElement z;
  z.x[0] = x0 * y0 + a * x1 * y1 + b * x2 * y2 - a * b * x3 * y3;
  z.x[1] = x0 * y1 + x1 * y0 - b * x2 * y3 + b * x3 * y2;
  z.x[2] = x0 * y2 + x2 * y0 + a * x1 * y3 - a * x3 * y1;
  z.x[3] = x0 * y3 + x3 * y0 + x1 * y2 - x2 * y1;
  return z;
}

QuaternionElement conjugate(const QuaternionElement& x) { return {{x.x[0], -x.x[1], -x.x[2], -x.x[3]}}; }

Rational reduced_norm(const QuaternionAlgebra& alg, const QuaternionElement& x) {
  const auto& [x0, x1, x2, x3] = x.x;
  return x0 * x0 - alg.a * x1 * x1 - alg.b * x2 * x2 + alg.a * alg.b * x3 * x3;
}

Rational reduced_trace(const QuaternionElement& x) { return 2 * x.x[0]; }

PslElement embed_split(const QuaternionAlgebra& alg, const QuaternionElement& x, const ToleranceContext& ctx) {
  (void)ctx;
  if (alg.a < 0 && alg.b < 0) fail(ErrorCode::definite_algebra, "definite algebra: ramified at the real place");
  Rational a = alg.a, b = alg.b;
  Rational c0 = x.x[0], c1 = x.x[1], c2 = x.x[2], c3 = x.x[3];
  if (a < 0) {
    // j, i, -k is a standard basis for (b, a).
    std::swap(a, b);
    std::swap(c1, c2);
    c3 = -c3;
  }
  const Real s = sqrt(Real(a));
  const Real x0(c0), x1(c1), x2(c2), x3(c3), rb(b);
  return PslElement{x0 + x1 * s, x2 + x3 * s, rb * (x2 - x3 * s), x0 - x1 * s};
}

BigInt reduced_discriminant(const QuaternionAlgebra& alg, const std::array<QuaternionElement, 4>& basis) {
  std::array<std::array<Rational, 4>, 4> m;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) m[i][j] = reduced_trace(multiply(alg, basis[i], basis[j]));
  Rational d = abs(det4(m));
  if (d == 0 || !is_integer(d)) fail(ErrorCode::invalid_argument, "basis is not an order");
  BigInt n = numerator(d);
  BigInt r = boost::multiprecision::sqrt(n);
  if (r * r != n) fail(ErrorCode::invalid_argument, "basis is not an order: trace-form determinant is not a square");
  return r;
}

QuaternionOrder make_order(const QuaternionAlgebra& alg, const std::array<QuaternionElement, 4>& basis) {
  for (const auto& c : solve_coordinates(basis, QuaternionElement::one()))
    if (!is_integer(c)) fail(ErrorCode::invalid_argument, "order basis does not contain 1");
  for (const auto& e : basis) {
    if (!integral(alg, e)) fail(ErrorCode::invalid_argument, "order basis element is not integral");
    for (const auto& f : basis)
      for (const auto& c : solve_coordinates(basis, multiply(alg, e, f)))
        if (!is_integer(c)) fail(ErrorCode::invalid_argument, "order basis is not closed under multiplication");
  }
  return QuaternionOrder{alg, basis, reduced_discriminant(alg, basis)};
}

QuaternionOrder standard_order(const QuaternionAlgebra& alg) {
  const Rational qa(denominator(alg.a));
  const Rational qb(denominator(alg.b));
  std::array<QuaternionElement, 4> basis{QuaternionElement::one(),
                                         QuaternionElement{{0, qa, 0, 0}},
                                         QuaternionElement{{0, 0, qb, 0}},
                                         QuaternionElement{{0, 0, 0, qa * qb}}};
  return make_order(alg, basis);
}

QuaternionOrder maximal_order(const QuaternionAlgebra& alg) {
  QuaternionOrder order = standard_order(alg);
  auto basis = order.basis;
  BigInt d = order.reduced_discriminant;
  const std::int64_t dd = to_int64(d, "order discriminant too large");
  for (auto p : prime_factors(dd)) {
    const int target = valuation(alg.discriminant, p);
    while (valuation(d, p) > target) {
      if (!enlarge_at(alg, basis, p)) fail(ErrorCode::numeric, "local maximalization made no progress");
      d = reduced_discriminant(alg, basis);
    }
  }
  return make_order(alg, basis);
}

QuaternionOrder eichler_order(std::int64_t level) {
  if (level < 1) fail(ErrorCode::invalid_argument, "level must be positive");
  QuaternionAlgebra alg = make_algebra(1, 1);
  const Rational h(1, 2);
  std::array<QuaternionElement, 4> basis{QuaternionElement{{h, h, 0, 0}}, QuaternionElement{{h, -h, 0, 0}},
                                         QuaternionElement{{0, 0, h, h}},
                                         QuaternionElement{{0, 0, h * level, -h * level}}};
  return make_order(alg, basis);
}

std::pair<std::int64_t, std::int64_t> algebra_for_discriminant(std::int64_t discriminant) {
  if (discriminant < 1 || !is_squarefree(discriminant))
    fail(ErrorCode::invalid_argument, "discriminant must be a positive squarefree integer");
  const auto target = prime_factors(discriminant);
  if (target.size() % 2 != 0)
    fail(ErrorCode::invalid_argument, "an indefinite algebra over Q has an even number of ramified primes");
  if (discriminant == 1) return {1, 1};
  // Smallest |ab| first; odd primes of ab outside D force extra saturation
  // work, so such pairs are only a fallback.
  std::optional<std::pair<std::int64_t, std::int64_t>> fallback;
  const std::int64_t bound = 64 * discriminant + 64;
  for (std::int64_t m = 1; m <= bound; ++m) {
    if (!is_squarefree(m)) continue;
    for (std::int64_t a = 1; a <= m; ++a) {
      if (m % a != 0) continue;
      for (std::int64_t b : {-(m / a), m / a}) {
        auto alg = make_algebra(a, b);
        if (alg.ramified_primes != target) continue;
        bool clean = true;
        for (auto p : prime_factors(m))
          if (p != 2 && discriminant % p != 0) clean = false;
        if (clean) return {a, b};
        if (!fallback) fallback = std::pair{a, b};
      }
    }
  }
  if (fallback) return *fallback;
  fail(ErrorCode::numeric, "no algebra found for the discriminant");
}

GroupData group_data(const QuaternionOrder& order) { return GroupData{1, 1, order.reduced_discriminant}; }

std::array<Rational, 4> order_coordinates(const QuaternionOrder& order, const QuaternionElement& x) {
  return solve_coordinates(order.basis, x);
}

QuaternionElement from_order_coordinates(const QuaternionOrder& order, const std::array<BigInt, 4>& c) {
  QuaternionElement x{};
  for (int i = 0; i < 4; ++i)
    for (int k = 0; k < 4; ++k) x.x[k] += order.basis[i].x[k] * Rational(c[i]);
  return x;
}

std::string to_string(const Rational& q) { return q.str(); }

Rational parse_rational(const std::string& text) {
  static const std::regex pattern(R"(\s*([+-]?\d+)\s*(?:/\s*(\d+))?\s*)");
  std::smatch m;
  if (!std::regex_match(text, m, pattern)) fail(ErrorCode::invalid_argument, "not a rational number: " + text);
  std::string digits = m[1].str();
  if (digits[0] == '+') digits.erase(0, 1);
  BigInt num(digits);
  BigInt den = m[2].matched ? BigInt(m[2].str()) : BigInt(1);
  if (den == 0) fail(ErrorCode::invalid_argument, "zero denominator: " + text);
  return Rational(num, den);
}

}  // namespace fdom
