#include "veechmix/svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>

#include "veechmix/errors.hpp"

namespace veechmix {

namespace {

constexpr const char* kPalette[] = {
    "#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e",
    "#17becf", "#e377c2", "#8c564b", "#bcbd22", "#393b79",
    "#ad494a", "#637939", "#7b4173", "#3182bd", "#e6550d",
    "#31a354", "#756bb1", "#8c6d31", "#636363", "#e7ba52",
};
constexpr int kPaletteSize = 20;

std::string fmt(double v) {
  char buf[48];
  std::snprintf(buf, sizeof buf, "%.4f", v);
  return buf;
}

std::string fmt_tick(double v) {
  char buf[48];
  std::snprintf(buf, sizeof buf, "%.4g", v);
  return buf;
}

std::string xml_escape(const std::string& s) {
  std::string out;
  out.reserve(s.size());
  for (char c : s) {
    if (c == '&')
      out += "&amp;";
    else if (c == '<')
      out += "&lt;";
    else if (c == '>')
      out += "&gt;";
    else
      out += c;
  }
  return out;
}

struct Frame {
  double x0 = 0, y0 = 0, scale = 1, height = 0, margin = 0;
  double px(double x) const { return margin + (x - x0) * scale; }
  double py(double y) const { return height - (margin + (y - y0) * scale); }
};

void append_line(std::string& out, const Frame& f, Vec2d a, Vec2d b, const std::string& color,
                 double width, bool dashed) {
  out += "<line x1=\"" + fmt(f.px(a.x)) + "\" y1=\"" + fmt(f.py(a.y)) + "\" x2=\"" +
         fmt(f.px(b.x)) + "\" y2=\"" + fmt(f.py(b.y)) + "\" stroke=\"" + color +
         "\" stroke-width=\"" + fmt(width) + "\" stroke-linecap=\"round\"";
  if (dashed) out += " stroke-dasharray=\"5 4\"";
  out += "/>\n";
}

}  // namespace

std::string surface_svg(const TranslationSurface& s, const std::vector<SvgPolyline>& overlays) {
  double x0 = std::numeric_limits<double>::infinity(), x1 = -x0;
  double y0 = x0, y1 = -x0;
  for (std::size_t p = 0; p < s.polygon_count(); ++p) {
    for (std::size_t i = 0; i < s.vertex_count(static_cast<int>(p)); ++i) {
      const Vec2d v = s.vertex_hint(static_cast<int>(p), static_cast<int>(i));
      x0 = std::min(x0, v.x);
      x1 = std::max(x1, v.x);
      y0 = std::min(y0, v.y);
      y1 = std::max(y1, v.y);
    }
  }
  const double span_x = std::max(x1 - x0, 1e-12);
  const double span_y = std::max(y1 - y0, 1e-12);

  Frame f;
  f.margin = 36.0;
  f.x0 = x0;
  f.y0 = y0;
  f.scale = 648.0 / std::max(span_x, span_y);
  const double width = span_x * f.scale + 2 * f.margin;
  f.height = span_y * f.scale + 2 * f.margin;

  std::string out;
  out.reserve(1 << 16);
  out += "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"0 0 " + fmt(width) + " " +
         fmt(f.height) + "\" width=\"" + fmt(width) + "\" height=\"" + fmt(f.height) + "\">\n";
  out += "<rect width=\"100%\" height=\"100%\" fill=\"#ffffff\"/>\n";

  std::vector<double> poly_orientation(s.polygon_count(), 1.0);
  for (std::size_t p = 0; p < s.polygon_count(); ++p) {
    std::vector<Vec2d> verts;
    std::string pts;
    for (std::size_t i = 0; i < s.vertex_count(static_cast<int>(p)); ++i) {
      const Vec2d v = s.vertex_hint(static_cast<int>(p), static_cast<int>(i));
      verts.push_back(v);
      if (!pts.empty()) pts += ' ';
      pts += fmt(f.px(v.x)) + "," + fmt(f.py(v.y));
    }
    poly_orientation[p] = polygon_area_hint(verts) >= 0 ? 1.0 : -1.0;
    out += "<polygon points=\"" + pts +
           "\" fill=\"#f7f4ee\" stroke=\"#b9b4aa\" stroke-width=\"1\"/>\n";
  }

  const auto edge_endpoints = [&](EdgeRef e, Vec2d& a, Vec2d& b) {
    const std::size_t n = s.vertex_count(e.poly);
    a = s.vertex_hint(e.poly, e.edge);
    b = s.vertex_hint(e.poly, static_cast<int>((static_cast<std::size_t>(e.edge) + 1) % n));
  };

  for (std::size_t i = 0; i < s.pairings().size(); ++i) {
    const Pairing& pr = s.pairings()[i];
    const Vec2d t = s.pairing_translation_hint(pr.a);
    const bool internal_cut = std::abs(t.x) < 1e-9 && std::abs(t.y) < 1e-9;
    const std::string color = internal_cut ? "#c9c4ba" : kPalette[i % kPaletteSize];
    for (const EdgeRef e : {pr.a, pr.b}) {
      Vec2d a, b;
      edge_endpoints(e, a, b);
      if (internal_cut) {
        append_line(out, f, a, b, color, 1.0, true);
        continue;
      }
      // Nudge the stroke into its own polygon so the two sides of a cut do
      // not overdraw each other.
      const double dx = b.x - a.x, dy = b.y - a.y;
      const double len = std::hypot(dx, dy);
      const double k = poly_orientation[static_cast<std::size_t>(e.poly)] * 2.5 /
                       (f.scale * std::max(len, 1e-12));
      const Vec2d n{-dy * k, dx * k};
      append_line(out, f, Vec2d{a.x + n.x, a.y + n.y}, Vec2d{b.x + n.x, b.y + n.y}, color, 3.0,
                  false);
    }
  }

  const auto& classes = s.vertex_classes();
  for (std::size_t c = 0; c < classes.size(); ++c) {
    if (!classes[c].is_cone()) continue;
    const std::string color = kPalette[(c * 7 + 3) % kPaletteSize];
    for (const auto& [poly, idx] : classes[c].corners) {
      const Vec2d v = s.vertex_hint(poly, idx);
      out += "<circle cx=\"" + fmt(f.px(v.x)) + "\" cy=\"" + fmt(f.py(v.y)) +
             "\" r=\"4.5\" fill=\"" + color + "\" stroke=\"#1a1a1a\" stroke-width=\"1\"/>\n";
    }
  }

  for (const SvgPolyline& ov : overlays) {
    if (ov.points.size() < 2) continue;
    std::string pts;
    for (const Vec2d& v : ov.points) {
      if (!pts.empty()) pts += ' ';
      pts += fmt(f.px(v.x)) + "," + fmt(f.py(v.y));
    }
    out += "<polyline points=\"" + pts + "\" fill=\"none\" stroke=\"" + ov.color +
           "\" stroke-width=\"" + fmt(ov.width) +
           "\" stroke-linejoin=\"round\" stroke-linecap=\"round\"/>\n";
  }

  out += "</svg>\n";
  return out;
}

std::string line_plot_svg(const std::vector<double>& xs, const std::vector<double>& ys,
                          const std::string& x_label, const std::string& y_label) {
  if (xs.empty()) throw EmptyInput("nothing to plot");
  if (xs.size() != ys.size()) throw BadParameters("x and y series lengths differ");
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (!std::isfinite(xs[i]) || !std::isfinite(ys[i]))
      throw BadParameters("plot values must be finite");
  }

  const double W = 640, H = 400, ml = 64, mr = 16, mt = 16, mb = 48;
  double x0 = *std::min_element(xs.begin(), xs.end());
  double x1 = *std::max_element(xs.begin(), xs.end());
  double y0 = *std::min_element(ys.begin(), ys.end());
  double y1 = *std::max_element(ys.begin(), ys.end());
  if (x1 - x0 < 1e-300) {
    x0 -= 1;
    x1 += 1;
  }
  if (y1 - y0 < 1e-300) {
    y0 -= 1;
    y1 += 1;
  }
  const auto px = [&](double x) { return ml + (x - x0) / (x1 - x0) * (W - ml - mr); };
  const auto py = [&](double y) { return H - mb - (y - y0) / (y1 - y0) * (H - mt - mb); };

  std::string out;
  out.reserve(1 << 13);
  out += "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"0 0 " + fmt(W) + " " + fmt(H) +
         "\" width=\"" + fmt(W) + "\" height=\"" + fmt(H) + "\">\n";
  out += "<rect width=\"100%\" height=\"100%\" fill=\"#ffffff\"/>\n";

  for (int t = 0; t <= 4; ++t) {
    const double xv = x0 + (x1 - x0) * t / 4.0;
    const double yv = y0 + (y1 - y0) * t / 4.0;
    out += "<line x1=\"" + fmt(px(xv)) + "\" y1=\"" + fmt(py(y0)) + "\" x2=\"" + fmt(px(xv)) +
           "\" y2=\"" + fmt(py(y1)) + "\" stroke=\"#e4e0d8\" stroke-width=\"1\"/>\n";
    out += "<line x1=\"" + fmt(px(x0)) + "\" y1=\"" + fmt(py(yv)) + "\" x2=\"" + fmt(px(x1)) +
           "\" y2=\"" + fmt(py(yv)) + "\" stroke=\"#e4e0d8\" stroke-width=\"1\"/>\n";
    out += "<text x=\"" + fmt(px(xv)) + "\" y=\"" + fmt(H - mb + 18) +
           "\" font-size=\"11\" font-family=\"sans-serif\" text-anchor=\"middle\">" +
           fmt_tick(xv) + "</text>\n";
    out += "<text x=\"" + fmt(ml - 8) + "\" y=\"" + fmt(py(yv) + 4) +
           "\" font-size=\"11\" font-family=\"sans-serif\" text-anchor=\"end\">" + fmt_tick(yv) +
           "</text>\n";
  }

  out += "<line x1=\"" + fmt(ml) + "\" y1=\"" + fmt(H - mb) + "\" x2=\"" + fmt(W - mr) +
         "\" y2=\"" + fmt(H - mb) + "\" stroke=\"#444\" stroke-width=\"1.5\"/>\n";
  out += "<line x1=\"" + fmt(ml) + "\" y1=\"" + fmt(mt) + "\" x2=\"" + fmt(ml) + "\" y2=\"" +
         fmt(H - mb) + "\" stroke=\"#444\" stroke-width=\"1.5\"/>\n";

  std::string pts;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (!pts.empty()) pts += ' ';
    pts += fmt(px(xs[i])) + "," + fmt(py(ys[i]));
  }
  out += "<polyline points=\"" + pts +
         "\" fill=\"none\" stroke=\"#1f77b4\" stroke-width=\"2\"/>\n";

  out += "<text x=\"" + fmt((ml + W - mr) / 2) + "\" y=\"" + fmt(H - 10) +
         "\" font-size=\"13\" font-family=\"sans-serif\" text-anchor=\"middle\">" + xml_escape(x_label) +
         "</text>\n";
  out += "<text x=\"" + fmt(ml) + "\" y=\"" + fmt(mt - 2) +
         "\" font-size=\"13\" font-family=\"sans-serif\" text-anchor=\"start\">" + xml_escape(y_label) +
         "</text>\n";
  out += "</svg>\n";
  return out;
}

}  // namespace veechmix
