#include "core/boundary.hpp"

#include <algorithm>
#include <numeric>

namespace fdom {

bool NormalizedBoundary::has_infinite_side() const {
  return std::any_of(sides.begin(), sides.end(), [](const auto& s) { return !s.has_value(); });
}

std::size_t NormalizedBoundary::proper_side_count() const {
  return static_cast<std::size_t>(std::count_if(sides.begin(), sides.end(), [](const auto& s) { return s.has_value(); }));
}

namespace {

struct Item {
  DiscAutomorphism element;
  IsometricCircle circle;
  std::optional<std::size_t> old_side;
};

struct Entry {
  std::optional<std::size_t> item;  // nullopt: infinite side
  Complex start;
};

std::vector<Item> prepare(const std::vector<DiscAutomorphism>& elements, const ToleranceContext& ctx) {
  std::vector<Item> items;
  items.reserve(elements.size());
  for (const auto& g : elements) {
    auto circle = isometric_circle(g.psu, ctx);
    if (!circle) fail(ErrorCode::invalid_element, "element fixes 0 and has no isometric circle");
    items.push_back({g, std::move(*circle), std::nullopt});
  }
  return items;
}

bool item_less(const Item& x, const Item& y) {
  if (x.circle.terminal_arg != y.circle.terminal_arg) return x.circle.terminal_arg < y.circle.terminal_arg;
  return x.circle.radius > y.circle.radius;
}

bool same_circle(const IsometricCircle& x, const IsometricCircle& y, const ToleranceContext& ctx) {
  return tol_eq(x.center, y.center, ctx) && tol_eq(x.radius, y.radius, ctx);
}

// Within runs of tolerance-equal terminal arguments wider circles come first,
// and repeated circles are dropped.
void settle_ties(std::vector<Item>& items, const ToleranceContext& ctx) {
  std::vector<Item> out;
  out.reserve(items.size());
  std::size_t i = 0;
  while (i < items.size()) {
    std::size_t j = i + 1;
    while (j < items.size() && items[j].circle.terminal_arg - items[i].circle.terminal_arg < ctx.tolerance()) ++j;
    std::stable_sort(items.begin() + static_cast<std::ptrdiff_t>(i), items.begin() + static_cast<std::ptrdiff_t>(j),
                     [](const Item& x, const Item& y) { return x.circle.radius > y.circle.radius; });
    const std::size_t run_start = out.size();
    for (std::size_t k = i; k < j; ++k) {
      bool dup = false;
      for (std::size_t m = run_start; m < out.size() && !dup; ++m) dup = same_circle(out[m].circle, items[k].circle, ctx);
      if (!dup) out.push_back(std::move(items[k]));
    }
    i = j;
  }
  items = std::move(out);
}

// Rate of change of |z| with the argument along the circle at a point of the
// positive real axis; the smaller rate is the lower arc just past angle 0.
Real radial_slope(const IsometricCircle& c, const Complex& at) {
  Complex t = c.tangent(at);
  return t.re / t.im;
}

std::size_t choose_seed(const std::vector<Item>& items, Complex& seed_point, const ToleranceContext& ctx) {
  std::optional<std::size_t> best;
  Real best_x;
  Real best_slope;
  const RadialSegment unit_segment{Complex(1)};
  for (std::size_t k = 0; k < items.size(); ++k) {
    auto hits = arc_intersections(unit_segment, items[k].circle, ctx);
    if (hits.empty()) continue;
    const Real& x = hits.front().re;
    if (x > Real(1) - ctx.tolerance()) continue;
    Real slope = radial_slope(items[k].circle, hits.front());
    bool better = false;
    if (!best) {
      better = true;
    } else if (!tol_eq(x, best_x, ctx)) {
      better = x < best_x;
    } else if (!tol_eq(slope, best_slope, ctx)) {
      better = slope < best_slope;
    } else {
      better = items[k].circle.radius < items[*best].circle.radius;
    }
    if (better) {
      best = k;
      best_x = x;
      best_slope = slope;
      seed_point = hits.front();
    }
  }
  if (best) return *best;
  seed_point = items.front().circle.terminal_point;
  return 0;
}

// Position of z along the arc, measured as an angle about 0 from the
// terminal point.
Real along(const IsometricCircle& c, const Complex& z) {
  return atan2(cross(c.terminal_point, z), dot(c.terminal_point, z));
}

// z strictly further along the arc than w.
bool ahead_of(const IsometricCircle& c, const Complex& z, const Complex& w, const ToleranceContext& ctx) {
  return !tol_eq(z, w, ctx) && along(c, z) > along(c, w);
}

bool encloses(const IsometricCircle& outer, const IsometricCircle& inner, const ToleranceContext& ctx) {
  Real pw = outer.power(inner.terminal_point);
  if (abs(pw) >= ctx.tolerance()) return pw < 0;
  const Real cabs = inner.center.abs();
  Complex nearest = inner.center * ((cabs - inner.radius) / cabs);
  return outer.power(nearest) < 0;
}

struct VertexCache {
  const NormalizedBoundary* old = nullptr;

  const Complex* lookup(const Item& a, const Item& b) const {
    if (!old || !a.old_side || !b.old_side) return nullptr;
    const std::size_t k = old->size();
    if ((*a.old_side + 1) % k != *b.old_side) return nullptr;
    return &old->vertices[*a.old_side].point;
  }
};

NormalizedBoundary assemble(const std::vector<Item>& items, const std::vector<Entry>& entries,
                            std::size_t intersections, const ToleranceContext& ctx) {
  const std::size_t m = entries.size() - 1;
  struct Side {
    std::optional<std::size_t> item;
    Vertex end;
  };
  std::vector<Side> sides;
  sides.reserve(m);
  for (std::size_t j = 0; j < m; ++j) {
    const Complex& p = entries[j + 1].start;
    VertexKind kind = tol_eq(p.abs(), Real(1), ctx) ? VertexKind::at_infinity : VertexKind::proper;
    sides.push_back({entries[j].item, Vertex{p, kind, arg(p, ctx)}});
  }
  std::size_t first = 0;
  for (std::size_t j = 1; j < m; ++j)
    if (sides[j].end.arg < sides[first].end.arg) first = j;
  std::rotate(sides.begin(), sides.begin() + static_cast<std::ptrdiff_t>(first), sides.end());

  NormalizedBoundary out;
  out.sweep_intersections = intersections;
  for (auto& s : sides) {
    if (s.item) {
      out.sides.emplace_back(items[*s.item].element);
      out.circles.emplace_back(items[*s.item].circle);
    } else {
      out.sides.emplace_back(std::nullopt);
      out.circles.emplace_back(std::nullopt);
    }
    out.vertex_args.push_back(s.end.arg);
    out.vertices.push_back(std::move(s.end));
  }
  out.area = polygon_area(out, ctx);
  return out;
}

NormalizedBoundary sweep(std::vector<Item> items, const VertexCache& cache, const ToleranceContext& ctx) {
  if (items.empty()) return NormalizedBoundary{};
  Complex seed_point;
  const std::size_t seed = choose_seed(items, seed_point, ctx);
  const bool seeded = seed_point.abs() < Real(1) - ctx.tolerance();
  std::rotate(items.begin(), items.begin() + static_cast<std::ptrdiff_t>(seed), items.end());
  const std::size_t n = items.size();

  // Unwrapped sweep coordinate: arguments counted from 0, except that arcs
  // starting at or after the seed's terminal point (the seed included, when
  // it straddles angle 0) start one turn early, and the seed's closing copy
  // one turn late. Each arc is an interval of this coordinate and two arcs
  // meet only where their coordinates agree.
  std::vector<Real> start(n);
  const Real& seed_term = items[0].circle.terminal_arg;
  for (std::size_t k = 0; k < n; ++k) {
    start[k] = items[k].circle.terminal_arg;
    if (seeded && start[k] >= seed_term) start[k] -= ctx.two_pi();
  }
  auto coord = [&](std::size_t k, const Complex& z, bool closing) {
    Real s = start[k] + along(items[k].circle, z);
    if (closing) s += ctx.two_pi();
    return s;
  };

  std::vector<Entry> stack;
  stack.push_back({0, seed_point});
  std::size_t intersections = 0;
  std::size_t i = 1;
  while (i <= n) {
    const std::size_t gi = i % n;
    const std::size_t g = *stack.back().item;
    const IsometricCircle& cg = items[g].circle;
    const IsometricCircle& ci = items[gi].circle;
    if (g == gi) {
      // Only the seed survives: its circle plus one infinite side.
      stack.push_back({std::nullopt, cg.initial_point});
      stack.push_back({gi, ci.terminal_point});
      ++i;
      continue;
    }
    std::optional<Complex> vnew;
    if (const Complex* cached = cache.lookup(items[g], items[gi])) {
      vnew = *cached;
    } else {
      ++intersections;
      vnew = intersect_isometric(cg, ci, ctx);
    }
    if (vnew && abs(coord(g, *vnew, false) - coord(gi, *vnew, i == n)) > ctx.pi()) vnew.reset();

    const Complex& v = stack.back().start;
    if (vnew && ahead_of(cg, *vnew, v, ctx)) {
      if (!tol_eq(*vnew, ci.initial_point, ctx)) stack.push_back({gi, *vnew});
      ++i;
      continue;
    }
    if (vnew) {
      if (stack.size() == 1) {
        ++i;
        continue;
      }
      stack.pop_back();
      if (!stack.back().item) stack.pop_back();
      continue;
    }
    if (!encloses(cg, ci, ctx)) {
      stack.push_back({std::nullopt, cg.initial_point});
      stack.push_back({gi, ci.terminal_point});
    }
    ++i;
  }
  return assemble(items, stack, intersections, ctx);
}

void sort_items(std::vector<Item>& items, const ToleranceContext& ctx) {
  std::sort(items.begin(), items.end(), item_less);
  settle_ties(items, ctx);
}

}  // namespace

NormalizedBoundary normalized_boundary(const std::vector<DiscAutomorphism>& elements, const ToleranceContext& ctx) {
  auto items = prepare(elements, ctx);
  sort_items(items, ctx);
  return sweep(std::move(items), VertexCache{}, ctx);
}

NormalizedBoundary merge_boundary(const NormalizedBoundary& boundary, const std::vector<DiscAutomorphism>& elements,
                                  const ToleranceContext& ctx) {
  if (elements.empty()) return boundary;
  auto fresh = prepare(elements, ctx);
  std::sort(fresh.begin(), fresh.end(), item_less);

  std::vector<Item> old;
  for (std::size_t j = 0; j < boundary.size(); ++j)
    if (boundary.sides[j]) old.push_back({*boundary.sides[j], *boundary.circles[j], j});
  // The sides are already in cyclic terminal-argument order; rotate the
  // smallest to the front and merge instead of sorting.
  auto lowest = std::min_element(old.begin(), old.end(), item_less);
  std::rotate(old.begin(), lowest, old.end());

  std::vector<Item> merged;
  merged.reserve(old.size() + fresh.size());
  std::merge(std::make_move_iterator(old.begin()), std::make_move_iterator(old.end()),
             std::make_move_iterator(fresh.begin()), std::make_move_iterator(fresh.end()), std::back_inserter(merged),
             item_less);
  settle_ties(merged, ctx);
  return sweep(std::move(merged), VertexCache{&boundary}, ctx);
}

std::optional<Real> polygon_area(const NormalizedBoundary& boundary, const ToleranceContext& ctx) {
  if (boundary.empty()) fail(ErrorCode::degenerate_input, "boundary has no sides");
  if (boundary.has_infinite_side()) return std::nullopt;
  const std::size_t k = boundary.size();
  Real total = ctx.pi() * static_cast<long>(k) - ctx.pi() * 2;
  for (std::size_t j = 0; j < k; ++j) {
    const Vertex& v = boundary.vertices[j];
    if (v.kind == VertexKind::at_infinity) continue;
    Complex t_in = boundary.circles[j]->tangent(v.point);
    Complex t_out = boundary.circles[(j + 1) % k]->tangent(v.point);
    Real turn = atan2(cross(t_in, t_out), dot(t_in, t_out));
    total -= ctx.pi() - turn;
  }
  return total;
}

std::size_t side_at_arg(const NormalizedBoundary& boundary, const Real& theta) {
  auto it = std::upper_bound(boundary.vertex_args.begin(), boundary.vertex_args.end(), theta);
  return static_cast<std::size_t>(it - boundary.vertex_args.begin()) % boundary.size();
}

bool in_exterior(const NormalizedBoundary& boundary, const Complex& z, const ToleranceContext& ctx) {
  for (const auto& c : boundary.circles)
    if (c && (z - c->center).abs() < c->radius - ctx.tolerance()) return false;
  return true;
}

namespace {

std::optional<std::size_t> find_vertex(const NormalizedBoundary& b, const Complex& z, const ToleranceContext& ctx) {
  const std::size_t k = b.size();
  const Real theta = arg(z, ctx);
  auto it = std::lower_bound(b.vertex_args.begin(), b.vertex_args.end(), theta - ctx.tolerance());
  const std::size_t pos = static_cast<std::size_t>(it - b.vertex_args.begin());
  for (std::size_t cand : {pos % k, (pos + k - 1) % k, (pos + 1) % k, std::size_t{0}, k - 1})
    if (tol_eq(b.vertices[cand].point, z, ctx)) return cand;
  return std::nullopt;
}

}  // namespace

SidePairing side_pairing(const NormalizedBoundary& boundary, const ToleranceContext& ctx) {
  SidePairing out;
  const std::size_t k = boundary.size();
  out.partner.assign(k, std::nullopt);
  std::vector<std::optional<std::size_t>> image(k);
  std::vector<std::vector<Complex>> loose(k);
  for (std::size_t i = 0; i < k; ++i) {
    if (!boundary.sides[i]) continue;
    const PsuElement& g = boundary.sides[i]->psu;
    const Complex& start = boundary.vertices[(i + k - 1) % k].point;
    const Complex& end = boundary.vertices[i].point;
    auto j_end = find_vertex(boundary, apply_moebius(g, start, ctx), ctx);
    auto j_start = find_vertex(boundary, apply_moebius(g, end, ctx), ctx);
    if (j_end && j_start && (*j_end + k - 1) % k == *j_start && boundary.sides[*j_end]) {
      image[i] = *j_end;
      continue;
    }
    if (!j_end) loose[i].push_back(start);
    if (!j_start) loose[i].push_back(end);
    if (loose[i].empty()) loose[i] = {start, end};
  }
  for (std::size_t i = 0; i < k; ++i) {
    if (!boundary.sides[i]) continue;
    if (image[i] && image[*image[i]] == i) {
      out.partner[i] = image[i];
      if (i <= *image[i]) out.pairs.push_back({i, *image[i], *boundary.sides[i]});
      continue;
    }
    if (image[i]) loose[i] = {boundary.vertices[(i + k - 1) % k].point, boundary.vertices[i].point};
    for (auto& v : loose[i]) out.unpaired.push_back({i, v});
  }
  return out;
}

}  // namespace fdom
