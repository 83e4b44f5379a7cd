#pragma once

#include "core/group.hpp"

#include <cstddef>
#include <optional>
#include <vector>

namespace fdom {

enum class VertexKind { proper, at_infinity };

struct Vertex {
  Complex point;
  VertexKind kind;
  Real arg;
};

// Normalized boundary of an exterior domain.
//
// Sides are listed counterclockwise. Side j runs from vertices[j-1] to
// vertices[j] (indices mod k), so vertices[j] is the end of side j. A side
// without an element is an infinite side: an arc of the unit circle between
// two vertices at infinity. The list is rotated so that vertices[0] has the
// smallest argument; vertex_args is therefore ascending.
struct NormalizedBoundary {
  std::vector<std::optional<DiscAutomorphism>> sides;
  std::vector<std::optional<IsometricCircle>> circles;
  std::vector<Vertex> vertices;
  std::vector<Real> vertex_args;
  // nullopt encodes an infinite area.
  std::optional<Real> area;
  // Number of circle intersections performed by the sweep that built this.
  std::size_t sweep_intersections = 0;

  std::size_t size() const { return sides.size(); }
  bool empty() const { return sides.empty(); }
  bool has_infinite_side() const;
  std::size_t proper_side_count() const;
};

struct SidePairing {
  struct Pair {
    std::size_t first;
    std::size_t second;
    DiscAutomorphism element;  // maps side `first` onto side `second`
  };
  struct Unpaired {
    std::size_t side;
    Complex vertex;
  };

  std::vector<Pair> pairs;
  // partner[i] is the side paired with side i, if any.
  std::vector<std::optional<std::size_t>> partner;
  std::vector<Unpaired> unpaired;

  bool complete() const { return unpaired.empty(); }
};

NormalizedBoundary normalized_boundary(const std::vector<DiscAutomorphism>& elements, const ToleranceContext& ctx);

NormalizedBoundary merge_boundary(const NormalizedBoundary& boundary, const std::vector<DiscAutomorphism>& elements,
                                  const ToleranceContext& ctx);

// (k - 2)pi minus the interior angles; nullopt when an infinite side exists.
std::optional<Real> polygon_area(const NormalizedBoundary& boundary, const ToleranceContext& ctx);

SidePairing side_pairing(const NormalizedBoundary& boundary, const ToleranceContext& ctx);

// Index of the side whose angular sector contains `theta`.
std::size_t side_at_arg(const NormalizedBoundary& boundary, const Real& theta);

// True when z lies in the closed exterior of every side circle.
bool in_exterior(const NormalizedBoundary& boundary, const Complex& z, const ToleranceContext& ctx);

}  // namespace fdom
