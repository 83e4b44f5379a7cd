#include "core/svg.hpp"

#include "core/document.hpp"

#include <cstdio>
#include <sstream>

namespace fdom {

namespace {

std::string num(const Real& x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.10g", x.convert_to<double>());
  return buf;
}

std::string point(const Complex& z) { return num(z.re) + " " + num(-z.im); }

}  // namespace

std::string render_svg(const NormalizedBoundary& boundary, const SvgOptions& options) {
  std::ostringstream out;
  out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
      << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" << options.size_px << "\" height=\""
      << options.size_px << "\" viewBox=\"-1.05 -1.05 2.1 2.1\">\n"
      << "  <circle cx=\"0\" cy=\"0\" r=\"1\" fill=\"white\" stroke=\"black\" stroke-width=\"0.004\"/>\n";
  const std::size_t k = boundary.size();
  if (k > 0) {
    std::ostringstream d;
    d << "M " << point(boundary.vertices[k - 1].point);
    for (std::size_t j = 0; j < k; ++j) {
      const Complex& from = boundary.vertices[(j + k - 1) % k].point;
      const Complex& to = boundary.vertices[j].point;
      if (boundary.circles[j]) {
        const auto& c = *boundary.circles[j];
        // Counterclockwise about the centre in the plane is sweep 0 once y is flipped.
        const bool ccw = cross(from - c.center, to - c.center) > 0;
        d << " A " << num(c.radius) << " " << num(c.radius) << " 0 0 " << (ccw ? 0 : 1) << " " << point(to);
      } else {
        Real span = boundary.vertex_args[j] - boundary.vertex_args[(j + k - 1) % k];
        if (k == 1 || span <= 0) span += 2 * boost::math::constants::pi<Real>();
        if (k == 1) {
          // Full circle: two half arcs.
          d << " A 1 1 0 1 0 " << point(-from) << " A 1 1 0 1 0 " << point(to);
        } else {
          d << " A 1 1 0 " << (span > boost::math::constants::pi<Real>() ? 1 : 0) << " 0 " << point(to);
        }
      }
    }
    d << " Z";
    out << "  <path d=\"" << d.str()
        << "\" fill=\"#c8c8c8\" stroke=\"#1a9641\" stroke-width=\"0.006\" stroke-linejoin=\"round\"/>\n";
  }
  if (options.isometric_circles)
    for (const auto& c : boundary.circles)
      if (c)
        out << "  <circle cx=\"" << num(c->center.re) << "\" cy=\"" << num(-c->center.im) << "\" r=\""
            << num(c->radius) << "\" fill=\"none\" stroke=\"#2b83ba\" stroke-width=\"0.002\"/>\n";
  out << "</svg>\n";
  return out.str();
}

void write_svg(const NormalizedBoundary& boundary, const std::string& path, const SvgOptions& options) {
  write_file_atomic(path, render_svg(boundary, options));
}

}  // namespace fdom
