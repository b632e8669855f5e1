#pragma once

#include <string>
#include <vector>

#include "veechmix/surface.hpp"

namespace veechmix {

struct SvgPolyline {
  std::vector<Vec2d> points;
  std::string color = "#c03028";
  double width = 2.0;
};

// Flat picture of the glued polygons: faint fills with grey outlines, one
// palette color per pairing (both partner edges share it; strokes are nudged
// into their own polygon so coincident cut edges stay distinguishable, and
// zero-translation cuts render as light dashes), cone points as filled dots
// colored per vertex class. Overlays draw on top, e.g. flow traces.
std::string surface_svg(const TranslationSurface& s,
                        const std::vector<SvgPolyline>& overlays = {});

// Minimal single-series line plot with linear axes and a few ticks.
std::string line_plot_svg(const std::vector<double>& xs, const std::vector<double>& ys,
                          const std::string& x_label, const std::string& y_label);

}  // namespace veechmix
