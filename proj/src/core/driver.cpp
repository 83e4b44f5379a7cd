#include "core/driver.hpp"

#include <algorithm>
#include <chrono>
#include <thread>

namespace fdom {

namespace {

bool fixes_origin(const DiscAutomorphism& g, const GroupArithmetic& arith, const ToleranceContext& ctx) {
  return !arith.is_identity(g) && !isometric_circle(g.psu, ctx);
}

struct TrialOutcome {
  std::vector<DiscAutomorphism> found;
};

// Runs one enumeration per centre; results are kept in centre order so the
// merged set does not depend on scheduling.
std::vector<TrialOutcome> run_trials(const std::vector<Complex>& centers, const Real& C,
                                     const OrderArithmetic& arith, const NormOneCholesky& chol,
                                     const DriverOptions& options, const ToleranceContext& ctx) {
  std::vector<TrialOutcome> out(centers.size());
  auto one = [&](std::size_t i) {
    QForm q = build_qform(Complex(0), centers[i], arith);
    out[i].found = options.use_ifp ? ifp_norm_one(q, C, arith, options.stop_after_first)
                                   : norm_one_trial(q, C, chol, arith, options.stop_after_first);
  };
  const std::size_t workers =
      std::min<std::size_t>(centers.size(), std::max(1u, std::thread::hardware_concurrency()));
  if (workers <= 1) {
    for (std::size_t i = 0; i < centers.size(); ++i) one(i);
    return out;
  }
  std::vector<std::thread> pool;
  std::vector<std::exception_ptr> errors(workers);
  for (std::size_t w = 0; w < workers; ++w)
    pool.emplace_back([&, w] {
      try {
        // Working precision is per thread.
        ctx.activate();
        for (std::size_t i = w; i < centers.size(); i += workers) one(i);
      } catch (...) {
        errors[w] = std::current_exception();
      }
    });
  for (auto& t : pool) t.join();
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
  return out;
}

}  // namespace

Real area_target(const QuaternionOrder& order, const std::optional<Real>& override_area) {
  if (override_area) {
    if (!(*override_area > 0)) fail(ErrorCode::invalid_argument, "area override must be positive");
    return *override_area;
  }
  const auto& alg = order.algebra;
  if (alg.discriminant == 1) fail(ErrorCode::non_cocompact, "discriminant 1: the group has cusps");
  if (order.reduced_discriminant != alg.discriminant)
    fail(ErrorCode::unsupported, "order is not maximal; supply an area override");
  Real mu = boost::math::constants::pi<Real>() / 3;
  for (auto p : alg.ramified_primes) mu *= Real(p - 1);
  return mu;
}

std::size_t batch_size(const Real& mu, const Real& C, double c_balance) {
  const Real pi = boost::math::constants::pi<Real>();
  Real t = ceil(Real(c_balance) * mu * mu / (8 * pi * (C - 1)));
  return std::max<std::size_t>(16, t.convert_to<std::size_t>());
}

Complex default_center(Rng& rng) {
  std::uniform_int_distribution<int> offset(-1000, 1000);
  const int k1 = offset(rng);
  const int k2 = offset(rng);
  return Complex(Real(1) / 2 + Real(k1) / 1000000, sqrt(Real(3)) / 2 + Real(k2) / 1000000);
}

std::vector<Complex> choose_centers(const NormalizedBoundary& U, std::size_t k, const Real& R, Rng& rng,
                                    const ToleranceContext& ctx, double targeted_fraction) {
  std::vector<Complex> out;
  out.reserve(k);
  std::vector<std::pair<Real, Real>> arcs;  // (start arg, length)
  Real total = 0;
  const std::size_t n = U.size();
  for (std::size_t j = 0; j < n; ++j) {
    if (U.sides[j]) continue;
    Real start = U.vertex_args[(j + n - 1) % n];
    Real len = n == 1 ? ctx.two_pi() : U.vertex_args[j] - start;
    if (len < 0) len += ctx.two_pi();
    arcs.emplace_back(start, len);
    total += len;
  }
  if (!arcs.empty() && total > 0) {
    const auto targeted = static_cast<std::size_t>(static_cast<double>(k) * targeted_fraction);
    const Real rho = Real(1) - Real(1) / 1000;
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    for (std::size_t i = 0; i < targeted; ++i) {
      // Open arcs: stay off the endpoints.
      Real s = Real(unit(rng)) * total;
      std::size_t a = 0;
      while (a + 1 < arcs.size() && s > arcs[a].second) s -= arcs[a++].second;
      if (s <= 0) s = arcs[a].second / 2;
      if (s >= arcs[a].second) s = arcs[a].second / 2;
      const Real theta = arcs[a].first + s;
      out.emplace_back(rho * cos(theta), rho * sin(theta));
    }
  }
  while (out.size() < k) out.push_back(sample_center(R, rng, ctx));
  return out;
}

namespace {

bool closes_up(const std::vector<DiscAutomorphism>& elements, const Real& mu, const GroupArithmetic& arith,
               const ToleranceContext& ctx) {
  try {
    BasisResult b = normalized_basis(elements, arith, ctx);
    return b.pairing.complete() && b.boundary.area && abs(*b.boundary.area - mu) / mu < Real(1e-9);
  } catch (const Error&) {
    return false;
  }
}

// Binary search; more elements never hurt once the group is generated.
std::size_t shortest_generating_prefix(const std::vector<DiscAutomorphism>& log, const Real& mu,
                                       const GroupArithmetic& arith, const ToleranceContext& ctx) {
  std::size_t lo = 0, hi = log.size();
  while (lo + 1 < hi) {
    const std::size_t mid = lo + (hi - lo) / 2;
    std::vector<DiscAutomorphism> prefix(log.begin(), log.begin() + static_cast<std::ptrdiff_t>(mid));
    (closes_up(prefix, mu, arith, ctx) ? hi : lo) = mid;
  }
  return hi;
}

}  // namespace

DomainResult fundamental_domain(const QuaternionOrder& order, const DriverOptions& options,
                                const ToleranceContext& ctx) {
  const auto started = std::chrono::steady_clock::now();
  DomainResult result;
  // Even with an area override: the stopping rule assumes a compact quotient.
  if (order.algebra.discriminant == 1) fail(ErrorCode::non_cocompact, "discriminant 1: the group has cusps");
  result.mu_target = area_target(order, options.area);
  const Real& mu = result.mu_target;

  EnumerationProfile& profile = result.profile;
  profile.mu = mu;
  profile.r_exponent = options.r_exponent.value_or(2.1);
  profile.c_balance = options.c_balance.value_or(0.5);
  profile.C = options.C ? *options.C : compute_C(1, Real(1), Real(order.reduced_discriminant));
  if (!(profile.C > 1)) fail(ErrorCode::invalid_argument, "search bound C must exceed 1");
  if (!(profile.c_balance > 0)) fail(ErrorCode::invalid_argument, "batch constant must be positive");
  profile.R = compute_R(mu, profile.r_exponent);
  profile.trials_per_iteration = batch_size(mu, profile.C, profile.c_balance);
  profile.stop_after_first = options.stop_after_first;
  profile.use_ifp = options.use_ifp;
  profile.rng_seed = options.seed;

  Rng rng(options.seed);
  Complex base = options.center ? *options.center : default_center(rng);
  if (!(base.im > 0)) fail(ErrorCode::invalid_argument, "centre must lie in the upper half-plane");

  for (std::size_t attempt = 0;; ++attempt) {
    if (attempt == 100) fail(ErrorCode::numeric, "could not find a centre with trivial stabilizer");
    Complex p = base;
    if (attempt > 0) {
      Complex shift = default_center(rng) - Complex(Real(1) / 2, sqrt(Real(3)) / 2);
      p = base + shift;
    }
    OrderArithmetic arith(order, p, ctx);
    NormOneCholesky chol(arith);
    DomainStats stats;
    stats.center_perturbations = attempt;
    std::vector<DiscAutomorphism> pool, log;
    bool stabilized = false;
    auto absorb = [&](std::vector<DiscAutomorphism>&& found) {
      stats.elements_found += found.size();
      for (auto& g : found) {
        if (fixes_origin(g, arith, ctx)) stabilized = true;
        if (options.measure_needed) log.push_back(g);
        pool.push_back(std::move(g));
      }
    };

    // Warm-up at the origin with a slightly larger bound, not stopping early.
    {
      QForm q = build_qform(Complex(0), Complex(0), arith);
      const Real warm = profile.C * Real(21) / 20;
      absorb(options.use_ifp ? ifp_norm_one(q, warm, arith, false) : norm_one_trial(q, warm, chol, arith, false));
      ++stats.trials;
    }
    if (stabilized) continue;

    std::vector<Real> history;
    BasisResult basis;
    bool done = false;
    for (std::size_t it = 0; it < options.max_iterations; ++it) {
      stats.iterations = it + 1;
      basis = normalized_basis(pool, arith, ctx);
      stats.basis_outer_iterations += basis.outer_iterations;
      pool = basis.elements;
      if (basis.boundary.area) {
        const Real& a = *basis.boundary.area;
        if (!history.empty() && a > history.back() + ctx.tolerance() * 10 * (history.back() > 1 ? history.back() : 1))
          fail(ErrorCode::numeric, "domain area increased between iterations");
        history.push_back(a);
      }
      if (basis.pairing.complete() && basis.boundary.area && *basis.boundary.area < 2 * mu) {
        done = true;
        break;
      }
      auto centers = choose_centers(basis.boundary, profile.trials_per_iteration, profile.R, rng, ctx,
                                    options.targeted_fraction);
      auto outcomes = run_trials(centers, profile.C, arith, chol, options, ctx);
      stats.trials += centers.size();
      for (auto& o : outcomes) absorb(std::move(o.found));
      if (stabilized) break;
    }
    if (stabilized) continue;

    if (done && options.measure_needed) stats.elements_needed = shortest_generating_prefix(log, mu, arith, ctx);
    result.boundary = std::move(basis.boundary);
    result.pairing = std::move(basis.pairing);
    result.generators = std::move(basis.elements);
    result.area = result.boundary.area ? *result.boundary.area : Real(-1);
    result.converged = done;
    result.exact = done && abs(result.area - mu) / mu < Real(1e-9);
    result.center = p;
    result.area_history = std::move(history);
    stats.elapsed_s = std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
    result.stats = stats;
    return result;
  }
}

std::vector<long> word(const DomainResult& result, const DiscAutomorphism& gamma, const GroupArithmetic& arith,
                       const ToleranceContext& ctx) {
  if (arith.is_identity(gamma)) return {};
  // Generators and their inverses are single letters; reduction can take a
  // detour through a neighbouring side.
  for (std::size_t s = 0; s < result.boundary.size(); ++s) {
    const auto& g = result.boundary.sides[s];
    if (!g) continue;
    if (arith.same(gamma, *g)) return {static_cast<long>(s + 1)};
    if (arith.same(gamma, arith.inverse(*g))) return {-static_cast<long>(s + 1)};
  }
  auto r = reduce(result.boundary, gamma, Complex(0), arith, ctx);
  if (!arith.is_identity(r.reduced)) fail(ErrorCode::not_in_group, "element does not reduce to the identity");
  // delta = g[w_m] ... g[w_1] and delta * gamma = 1.
  std::vector<long> letters;
  letters.reserve(r.word.size());
  for (auto s : r.word) letters.push_back(-static_cast<long>(s + 1));
  return letters;
}

DiscAutomorphism evaluate_word(const DomainResult& result, const std::vector<long>& letters,
                               const GroupArithmetic& arith) {
  DiscAutomorphism out = arith.identity();
  for (long l : letters) {
    const std::size_t side = static_cast<std::size_t>(l > 0 ? l : -l) - 1;
    if (l == 0 || side >= result.boundary.size() || !result.boundary.sides[side])
      fail(ErrorCode::invalid_argument, "word letter does not name a side");
    const DiscAutomorphism& g = *result.boundary.sides[side];
    out = arith.multiply(out, l > 0 ? g : arith.inverse(g));
  }
  return out;
}

}  // namespace fdom
