#include "core/reduce.hpp"

#include <unordered_set>

namespace fdom {

namespace {

// The element of a side crossed by the segment [0, z] at a point nearer to 0
// than z, if any. Near a vertex both neighbouring sides are tried.
std::optional<std::size_t> crossing_side(const NormalizedBoundary& b, const Complex& z, const ToleranceContext& ctx) {
  const std::size_t k = b.size();
  const Real theta = arg(z, ctx);
  const std::size_t j = side_at_arg(b, theta);
  std::size_t candidates[3] = {j, j, j};
  std::size_t count = 1;
  const Real& lo = b.vertex_args[(j + k - 1) % k];
  const Real& hi = b.vertex_args[j];
  auto near = [&](const Real& a) {
    Real d = abs(theta - a);
    return d < ctx.tolerance() || ctx.two_pi() - d < ctx.tolerance();
  };
  if (near(lo)) candidates[count++] = (j + k - 1) % k;
  if (near(hi)) candidates[count++] = (j + 1) % k;
  const Real modulus = z.abs();
  for (std::size_t c = 0; c < count; ++c) {
    const auto& circle = b.circles[candidates[c]];
    if (!circle) continue;
    auto hits = arc_intersections(RadialSegment{z}, *circle, ctx);
    if (hits.empty()) continue;
    if (modulus - hits.front().abs() >= ctx.tolerance()) return candidates[c];
  }
  return std::nullopt;
}

}  // namespace

ReductionResult reduce(const NormalizedBoundary& boundary, const DiscAutomorphism& gamma, const Complex& z,
                       const GroupArithmetic& arith, const ToleranceContext& ctx) {
  ReductionResult out{arith.identity(), gamma, {}, apply_moebius(gamma.psu, z, ctx)};
  if (boundary.proper_side_count() == 0) return out;
  Complex current = out.final_point;
  Real modulus = current.abs();
  for (std::size_t step = 0;; ++step) {
    if (step == kReduceStepCap) fail(ErrorCode::divergence, "reduction exceeded its step cap");
    if (modulus < ctx.tolerance()) break;
    auto side = crossing_side(boundary, current, ctx);
    if (!side) break;
    const DiscAutomorphism& g = *boundary.sides[*side];
    Complex next = apply_moebius(g.psu, current, ctx);
    Real next_modulus = next.abs();
    if (!(next_modulus < modulus)) fail(ErrorCode::divergence, "reduction step did not move the point towards 0");
    out.delta = arith.multiply(g, out.delta);
    out.word.push_back(*side);
    current = std::move(next);
    modulus = std::move(next_modulus);
  }
  if (!out.word.empty()) {
    out.reduced = arith.multiply(out.delta, gamma);
    out.final_point = apply_moebius(out.reduced.psu, z, ctx);
  }
  return out;
}

namespace {

// Working set of group elements with duplicate detection.
class ElementSet {
 public:
  explicit ElementSet(const GroupArithmetic& arith) : arith_(&arith) {}

  bool add(const DiscAutomorphism& g) {
    if (arith_->is_identity(g)) return false;
    if (auto key = arith_->exact_key(g)) {
      if (!keys_.insert(*key).second) return false;
    } else {
      for (const auto& h : items_)
        if (arith_->same(g, h)) return false;
    }
    items_.push_back(g);
    return true;
  }

  // Adds g and its inverse; true if either was new.
  bool add_pair(const DiscAutomorphism& g) {
    bool a = add(g);
    bool b = add(arith_->inverse(g));
    return a || b;
  }

  const std::vector<DiscAutomorphism>& items() const { return items_; }
  std::size_t size() const { return items_.size(); }

 private:
  const GroupArithmetic* arith_;
  std::vector<DiscAutomorphism> items_;
  std::unordered_set<std::string> keys_;
};

}  // namespace

BasisResult normalized_basis(const std::vector<DiscAutomorphism>& elements, const GroupArithmetic& arith,
                             const ToleranceContext& ctx) {
  ElementSet working(arith);
  for (const auto& g : elements) working.add_pair(g);

  BasisResult out;
  for (std::size_t outer = 0;; ++outer) {
    if (outer == kBasisIterationCap) fail(ErrorCode::divergence, "normalized basis exceeded its iteration cap");
    out.outer_iterations = outer + 1;
    NormalizedBoundary boundary = normalized_boundary(working.items(), ctx);

    // Reduce everything against the current boundary until nothing new
    // appears; every element then lies in the group generated by the sides.
    for (;;) {
      std::vector<DiscAutomorphism> fresh;
      const std::size_t upto = working.size();
      for (std::size_t k = 0; k < upto; ++k) {
        auto r = reduce(boundary, working.items()[k], Complex(0), arith, ctx);
        if (arith.is_identity(r.reduced)) continue;
        const std::size_t before = working.size();
        if (working.add_pair(r.reduced))
          for (std::size_t m = before; m < working.size(); ++m) fresh.push_back(working.items()[m]);
      }
      if (fresh.empty()) break;
      boundary = merge_boundary(boundary, fresh, ctx);
    }

    // Only the sides are needed to generate the same group.
    ElementSet sides(arith);
    for (const auto& s : boundary.sides)
      if (s) sides.add_pair(*s);
    working = std::move(sides);
    boundary = normalized_boundary(working.items(), ctx);

    SidePairing pairing = side_pairing(boundary, ctx);
    if (pairing.complete()) {
      out.boundary = std::move(boundary);
      out.pairing = std::move(pairing);
      out.elements = working.items();
      return out;
    }
    bool added = false;
    for (const auto& u : pairing.unpaired) {
      Complex v = u.vertex;
      if (tol_eq(v.abs(), Real(1), ctx)) v = v * (Real(1) - Real(1) / 1000);
      auto r = reduce(boundary, *boundary.sides[u.side], v, arith, ctx);
      if (!arith.is_identity(r.reduced) && working.add_pair(r.reduced)) added = true;
    }
    if (!added) {
      out.boundary = std::move(boundary);
      out.pairing = std::move(pairing);
      out.elements = working.items();
      return out;
    }
  }
}

}  // namespace fdom
