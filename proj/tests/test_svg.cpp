#include <doctest.h>

#include <string>
#include <vector>

#include "veechmix/builders.hpp"
#include "veechmix/errors.hpp"
#include "veechmix/svg.hpp"

using namespace veechmix;

namespace {

std::size_t count(const std::string& hay, const std::string& needle) {
  std::size_t n = 0;
  for (std::size_t at = hay.find(needle); at != std::string::npos;
       at = hay.find(needle, at + needle.size()))
    ++n;
  return n;
}

BasisPtr beta_basis() {
  return RealBasis::make({"1", "beta1", "beta2"},
                         {1.0, 0.5411961001461969, 0.8314696123025452});
}

}  // namespace

TEST_SUITE("svg") {

TEST_CASE("torus picture pairs both wrap edges by color") {
  const std::string svg = surface_svg(unit_torus(RealBasis::rationals()));
  CHECK(svg.rfind("<svg", 0) == 0);
  CHECK(count(svg, "</svg>") == 1);
  CHECK(count(svg, "<polygon") == 1);
  // both torus pairings have nonzero translation: two strokes per color
  CHECK(count(svg, "stroke=\"#1f77b4\"") == 2);
  CHECK(count(svg, "stroke=\"#d62728\"") == 2);
  CHECK(count(svg, "<circle") == 0);  // no cone points on the flat torus
}

TEST_CASE("fig1 picture shows the slit pairs and the cone points") {
  const TranslationSurface s = build_fig1_default(beta_basis());
  const std::string svg = surface_svg(s);
  CHECK(svg.rfind("<svg", 0) == 0);
  CHECK(count(svg, "<polygon") == s.polygon_count());
  CHECK(svg.find("nan") == std::string::npos);

  // every pairing draws its two member edges in one color, so each palette
  // color fires an even number of times
  for (const char* color :
       {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#17becf", "#e377c2"}) {
    CHECK(count(svg, std::string("stroke=\"") + color + "\"") % 2 == 0);
  }

  std::size_t cone_corners = 0;
  for (const auto& c : s.cone_points()) cone_corners += c.corners.size();
  CHECK(count(svg, "<circle") == cone_corners);

  // overlays draw on top
  const std::string with_trace =
      surface_svg(s, {SvgPolyline{{{0.1, 0.1}, {0.1, 0.9}}, "#c03028", 2.0}});
  CHECK(count(with_trace, "<polyline") == 1);
}

TEST_CASE("line plot carries axes, ticks and the series") {
  const std::vector<double> xs = {0, 1, 2, 3, 4};
  const std::vector<double> ys = {1.0, 0.7, 0.5, 0.42, 0.35};
  const std::string svg = line_plot_svg(xs, ys, "lag N", "M(N)");
  CHECK(svg.rfind("<svg", 0) == 0);
  CHECK(count(svg, "<polyline") == 1);
  CHECK(svg.find("lag N") != std::string::npos);
  CHECK(svg.find("M(N)") != std::string::npos);
  CHECK(count(svg, "<text") >= 10);

  CHECK_THROWS_AS(line_plot_svg({}, {}, "x", "y"), EmptyInput);
  CHECK_THROWS_AS(line_plot_svg({1, 2}, {1}, "x", "y"), BadParameters);
  CHECK_THROWS_AS(line_plot_svg({1}, {std::nan("")}, "x", "y"), BadParameters);
}

}  // TEST_SUITE
