#pragma once

#include "core/boundary.hpp"

#include <string>

namespace fdom {

struct SvgOptions {
  bool isometric_circles = false;  // overlay the full circle of every side
  int size_px = 800;
};

// Unit disc with the domain filled grey and its boundary stroked green.
// Sides are true circular arcs; the y axis points up.
std::string render_svg(const NormalizedBoundary& boundary, const SvgOptions& options = {});

void write_svg(const NormalizedBoundary& boundary, const std::string& path, const SvgOptions& options = {});

}  // namespace fdom
