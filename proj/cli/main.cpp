// veechmix: weak mixing certificates for interval exchanges and directional
// flows on translation surfaces, plus the numerical estimators that shadow
// them. One binary, git-style subcommands. Exit codes: 0 success (and
// WeaklyMixingAE for weakmix check), 2 Inconclusive (weakmix check only),
// 64 usage, 65 bad input data, 70 internal fault.

#include <CLI11.hpp>

#include <algorithm>
#include <cctype>
#include <cmath>
#include <complex>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "veechmix/builders.hpp"
#include "veechmix/errors.hpp"
#include "veechmix/flow.hpp"
#include "veechmix/iet.hpp"
#include "veechmix/json_io.hpp"
#include "veechmix/polygon.hpp"
#include "veechmix/spectral.hpp"
#include "veechmix/svg.hpp"
#include "veechmix/weakmix.hpp"

namespace veechmix {
namespace {

// Everything parsed from the command line before a subcommand runs. The basis
// is what bare symbol names in value expressions resolve against.
struct Workspace {
  BasisPtr basis;
  ArithmeticMode mode = ArithmeticMode::Exact;
  std::string out_dir = ".";
  std::uint64_t seed = 1;
  bool json = false;
};

BasisPtr default_basis() {
  return RealBasis::make({"1", "beta1", "beta2", "rt2"},
                         {1.0, 0.5411961001461969, 0.8314696123025452,
                          1.4142135623730951});
}

std::vector<std::string> split(const std::string& text, char sep) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (true) {
    const std::size_t pos = text.find(sep, start);
    if (pos == std::string::npos) {
      out.push_back(text.substr(start));
      return out;
    }
    out.push_back(text.substr(start, pos - start));
    start = pos + 1;
  }
}

int parse_int(const std::string& text) {
  try {
    std::size_t pos = 0;
    const int v = std::stoi(text, &pos);
    if (pos == text.size()) return v;
  } catch (const std::exception&) {
  }
  throw ParseError("expected an integer, got \"" + text + "\"");
}

double parse_double(const std::string& text) {
  try {
    std::size_t pos = 0;
    const double v = std::stod(text, &pos);
    if (pos == text.size()) return v;
  } catch (const std::exception&) {
  }
  throw ParseError("expected a number, got \"" + text + "\"");
}

// Exact values on the command line are signed sums of terms, each a rational
// or rational*symbol: "1/2", "-3/4*beta1", "2-1/16*beta1+1/16*beta2", "rt2".
FieldElement parse_element(const std::string& text, const BasisPtr& basis) {
  std::string s;
  for (char c : text) {
    if (!std::isspace(static_cast<unsigned char>(c))) s.push_back(c);
  }
  if (s.empty()) throw ParseError("empty value; expected e.g. \"1/2\" or \"2-1/16*beta1\"");
  std::vector<Rational> coords(basis->size(), Rational(0));
  std::size_t i = 0;
  while (i < s.size()) {
    int sign = 1;
    if (s[i] == '+' || s[i] == '-') {
      if (s[i] == '-') sign = -1;
      ++i;
    } else if (i > 0) {
      throw ParseError("expected + or - before \"" + s.substr(i) + "\" in \"" + text + "\"");
    }
    if (i >= s.size()) throw ParseError("dangling sign in \"" + text + "\"");
    Rational coef(1);
    bool saw_coef = false;
    bool saw_star = false;
    if (std::isdigit(static_cast<unsigned char>(s[i]))) {
      std::size_t j = i;
      while (j < s.size() &&
             (std::isdigit(static_cast<unsigned char>(s[j])) || s[j] == '/')) {
        ++j;
      }
      coef = parse_rational(s.substr(i, j - i));
      saw_coef = true;
      i = j;
      if (i < s.size() && s[i] == '*') {
        saw_star = true;
        ++i;
      } else if (i < s.size() && s[i] != '+' && s[i] != '-') {
        throw ParseError("expected '*', '+' or '-' after a coefficient in \"" + text + "\"");
      }
    }
    std::string label;
    if (i < s.size() &&
        (std::isalpha(static_cast<unsigned char>(s[i])) || s[i] == '_')) {
      std::size_t j = i;
      while (j < s.size() &&
             (std::isalnum(static_cast<unsigned char>(s[j])) || s[j] == '_')) {
        ++j;
      }
      label = s.substr(i, j - i);
      i = j;
    }
    if (saw_star && label.empty()) throw ParseError("'*' without a symbol in \"" + text + "\"");
    if (!saw_coef && label.empty()) {
      throw ParseError("cannot read a term at \"" + s.substr(i) + "\" in \"" + text + "\"");
    }
    std::size_t slot = 0;
    if (!label.empty()) {
      const int idx = basis->index_of(label);
      if (idx <= 0) {
        std::string known;
        for (std::size_t k = 1; k < basis->size(); ++k) {
          if (!known.empty()) known += ", ";
          known += basis->label(k);
        }
        throw ParseError("\"" + label + "\" is not a basis symbol (have: " + known + ")");
      }
      slot = static_cast<std::size_t>(idx);
    }
    coords[slot] += Rational(sign) * coef;
  }
  return FieldElement(basis, std::move(coords));
}

// Float-mode inputs accept plain decimals; exact expressions still work and
// degrade to their hints.
double parse_scalar_hint(const std::string& text, const BasisPtr& basis) {
  try {
    std::size_t pos = 0;
    const double v = std::stod(text, &pos);
    if (pos == text.size()) return v;
  } catch (const std::exception&) {
  }
  return parse_element(text, basis).hint();
}

std::pair<std::string, std::string> split_pair(const std::string& text, const char* what) {
  const auto parts = split(text, ',');
  if (parts.size() != 2) {
    throw ParseError(std::string(what) + " wants two comma-separated components, got \"" +
                     text + "\"");
  }
  return {parts[0], parts[1]};
}

// Observable specs: fourier:J, indicator:J, chart:J,K, fiber:J.
Observable parse_observable(const std::string& text) {
  const std::size_t colon = text.find(':');
  const std::string kind = text.substr(0, colon == std::string::npos ? text.size() : colon);
  std::vector<int> args;
  if (colon != std::string::npos) {
    for (const std::string& a : split(text.substr(colon + 1), ',')) args.push_back(parse_int(a));
  }
  if (kind == "fourier" && args.size() == 1) return Observable::fourier(args[0]);
  if (kind == "indicator" && args.size() == 1) return Observable::indicator(args[0]);
  if (kind == "chart" && args.size() == 2) return Observable::fourier_chart(args[0], args[1]);
  if (kind == "fiber" && args.size() == 1) return Observable::fourier_fiber(args[0]);
  throw ParseError("bad observable \"" + text +
                   "\"; use fourier:J, indicator:J, chart:J,K or fiber:J");
}

std::string obs_str(const Observable& f) {
  switch (f.kind) {
    case Observable::Kind::FourierCircle:
      return "fourier:" + std::to_string(f.j);
    case Observable::Kind::Indicator:
      return "indicator:" + std::to_string(f.j);
    case Observable::Kind::FourierChart:
      return "chart:" + std::to_string(f.j) + "," + std::to_string(f.k);
    case Observable::Kind::FourierFiber:
      return "fiber:" + std::to_string(f.j);
  }
  return "?";
}

std::string out_path(const Workspace& ws, const std::string& path) {
  namespace fs = std::filesystem;
  fs::path p(path);
  if (p.is_absolute() || ws.out_dir.empty() || ws.out_dir == ".") return path;
  std::error_code ec;
  fs::create_directories(ws.out_dir, ec);
  if (ec) throw IoError("cannot create " + ws.out_dir + ": " + ec.message());
  return (fs::path(ws.out_dir) / p).string();
}

void note(const std::string& message) { std::fprintf(stderr, "%s\n", message.c_str()); }

// ------------------------------------------------------------------ printing

std::string perm_str(const Permutation& pi) {
  std::string out = "(";
  for (std::size_t j = 0; j < pi.size(); ++j) {
    if (j) out += ", ";
    out += std::to_string(pi.images()[j]);
  }
  return out + ")";
}

std::string set_str(const std::vector<int>& cycle) {
  std::string out = "{";
  for (std::size_t i = 0; i < cycle.size(); ++i) {
    if (i) out += ", ";
    out += std::to_string(cycle[i]);
  }
  return out + "}";
}

std::string ivec_str(const std::vector<int>& v) {
  std::string out = "(";
  char buf[16];
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) out += ", ";
    std::snprintf(buf, sizeof buf, "%2d", v[i]);
    out += buf;
  }
  return out + ")";
}

std::string tuple_str(const std::vector<FieldElement>& v) {
  std::string out = "(";
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) out += ", ";
    out += v[i].to_string();
  }
  return out + ")";
}

std::string complex_str(std::complex<double> z) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6g%+.6gi", z.real(), z.imag());
  return buf;
}

void print_decomposition(const Permutation& pi, const SigmaDecomposition& dec) {
  std::printf("permutation %s on %zu intervals, %s\n", perm_str(pi).c_str(), pi.size(),
              is_irreducible(pi) ? "irreducible" : "reducible");
  std::printf("sigma on {0..%zu}:", pi.size());
  for (std::size_t i = 0; i < dec.sigma.size(); ++i) {
    std::printf("  %zu->%d", i, dec.sigma[i]);
  }
  std::printf("\n");
  std::size_t width = 0;
  for (const auto& c : dec.cycles) width = std::max(width, set_str(c).size());
  std::printf("cycles (%zu):\n", dec.cycles.size());
  std::vector<int> total(pi.size(), 0);
  for (std::size_t i = 0; i < dec.cycles.size(); ++i) {
    std::printf("  S_%zu = %-*s  b = %s\n", i, static_cast<int>(width),
                set_str(dec.cycles[i]).c_str(), ivec_str(dec.b[i]).c_str());
    for (std::size_t j = 0; j < total.size(); ++j) total[j] += dec.b[i][j];
  }
  std::printf("b vectors sum to %s\n", ivec_str(total).c_str());
}

void print_verdict(const WeakMixVerdict& v) {
  std::size_t width = 0;
  for (const auto& p : v.pairings) width = std::max(width, set_str(p.cycle).size());
  std::printf("cycle pairings b_S . t:\n");
  for (std::size_t i = 0; i < v.pairings.size(); ++i) {
    const CyclePairing& p = v.pairings[i];
    std::printf("  S_%zu = %-*s  b = %s  b.t = %s\n", i, static_cast<int>(width),
                set_str(p.cycle).c_str(), ivec_str(p.b).c_str(), p.value.to_string().c_str());
  }
  if (v.chosen_j >= 0) {
    std::printf("chosen pair: S_%d and S_%d; rank of their coordinates over Q = %zu"
                "; with the constant 1 adjoined = %zu\n",
                v.chosen_j, v.chosen_k, v.rank_pair, v.rank_with_one);
  } else {
    std::printf("fewer than two cycles pair with t to a nonzero value\n");
  }
  std::printf("status: %s\n", v.status == WeakMixStatus::WeaklyMixingAE
                                  ? "weakly mixing for almost every length vector"
                                  : "inconclusive");
  for (const std::string& c : v.caveats) std::printf("note: %s\n", c.c_str());
}

void print_surface_summary(const TranslationSurface& s) {
  std::printf("surface: %zu polygons, %zu pairings, %s coordinates, genus %d\n",
              s.polygon_count(), s.pairings().size(), s.exact() ? "exact" : "float",
              s.genus());
  const auto cones = s.cone_points();
  if (cones.empty()) {
    std::printf("cone points: none\n");
  } else {
    std::map<int, int> by_angle;
    for (const VertexClass& c : cones) by_angle[c.angle_half_turns] += 1;
    std::string parts;
    for (const auto& [half_turns, count] : by_angle) {
      if (!parts.empty()) parts += ", ";
      parts += std::to_string(count) + " of angle " + std::to_string(half_turns) + "*pi";
    }
    std::printf("cone points: %s\n", parts.c_str());
  }
  if (!s.provenance().empty()) std::printf("provenance: %s\n", s.provenance().c_str());
}

void print_return_map(const ReturnMapResult& r) {
  std::printf("section at height %s: x in [%s, %s), width %s\n",
              r.section.level.to_string().c_str(), r.section.x0().to_string().c_str(),
              r.section.x1().to_string().c_str(), r.section.width().to_string().c_str());
  std::printf("return map on %zu intervals, permutation %s\n", r.iet.size(),
              perm_str(r.iet.perm()).c_str());
  std::size_t wl = 6, wt = 4;  // at least the header labels
  for (std::size_t j = 0; j < r.iet.size(); ++j) {
    wl = std::max(wl, r.iet.lengths()[j].to_string().size());
    wt = std::max(wt, r.times[j].to_string().size());
  }
  std::printf("  %3s  %-*s  %-*s  image\n", "j", static_cast<int>(wl), "length",
              static_cast<int>(wt), "time");
  FieldElement swept = FieldElement::zero(r.iet.basis());
  for (std::size_t j = 0; j < r.iet.size(); ++j) {
    std::printf("  %3zu  %-*s  %-*s  %d\n", j + 1, static_cast<int>(wl),
                r.iet.lengths()[j].to_string().c_str(), static_cast<int>(wt),
                r.times[j].to_string().c_str(), r.iet.perm().image(static_cast<int>(j + 1)));
    swept += r.iet.lengths()[j] * r.times[j];
  }
  std::printf("swept area sum lambda_j * t_j = %s\n", swept.to_string().c_str());
}

// --------------------------------------------------------------------- json

Json complex_json(std::complex<double> z) { return Json::array({z.real(), z.imag()}); }

Json verdict_json(const WeakMixVerdict& v) {
  Json pairings = Json::array();
  for (const CyclePairing& p : v.pairings) {
    pairings.push_back(Json{{"cycle", p.cycle}, {"b", p.b},
                            {"value", field_element_json(p.value)}});
  }
  return Json{{"status", v.status == WeakMixStatus::WeaklyMixingAE ? "WeaklyMixingAE"
                                                                   : "Inconclusive"},
              {"pairings", std::move(pairings)},
              {"chosen", Json::array({v.chosen_j, v.chosen_k})},
              {"rank_pair", v.rank_pair},
              {"rank_with_one", v.rank_with_one},
              {"caveats", v.caveats}};
}

Json return_map_json(const ReturnMapResult& r) {
  return Json{{"level", field_element_json(r.section.level)},
              {"x0", field_element_json(r.section.x0())},
              {"width", field_element_json(r.section.width())},
              {"direction", Json{{"dx", field_element_json(r.direction.dx)},
                                 {"dy", field_element_json(r.direction.dy)}}},
              {"iet", iet_json(r.iet)},
              {"times", elements_json(r.times)}};
}

std::string report_csv(const MixingReport& rep) {
  std::string out = "lag,corr_re,corr_im,corr_abs,cesaro\n";
  char line[160];
  for (std::size_t i = 0; i < rep.lags.size(); ++i) {
    const std::complex<double> c = rep.correlations[i];
    std::snprintf(line, sizeof line, "%zu,%.17g,%.17g,%.17g,%.17g\n", rep.lags[i], c.real(),
                  c.imag(), std::abs(c), rep.cesaro[i]);
    out += line;
  }
  return out;
}

std::string report_svg(const MixingReport& rep) {
  std::vector<double> xs, ys;
  xs.reserve(rep.cesaro.size());
  for (std::size_t i = 0; i < rep.cesaro.size(); ++i) xs.push_back(static_cast<double>(i + 1));
  ys = rep.cesaro;
  return line_plot_svg(xs, ys, "N", "M(N)");
}

Json report_json(const MixingReport& rep, const std::string& estimator, const Observable& f,
                 const Observable& g, std::optional<double> dt) {
  Json corr = Json::array();
  for (const std::complex<double>& c : rep.correlations) corr.push_back(complex_json(c));
  Json out{{"estimator", estimator},
           {"f", obs_str(f)},
           {"g", obs_str(g)},
           {"lags", rep.lags.empty() ? 0 : rep.lags.back()},
           {"samples", rep.sample_count},
           {"seed", rep.seed},
           {"mean_f", complex_json(rep.mean_f)},
           {"mean_g", complex_json(rep.mean_g)},
           {"correlations", std::move(corr)},
           {"cesaro", rep.cesaro}};
  if (dt) out["dt"] = *dt;
  return out;
}

// ------------------------------------------------------- svg trace sampling

// Endpoint tracing gives no waypoints, so the drawing samples the hint flow in
// small rises and restarts the polyline whenever the orbit crosses a gluing.
std::vector<SvgPolyline> trace_overlays(const TranslationSurface& s, int poly, Vec2d start,
                                        Vec2d dir, double rise) {
  std::vector<SvgPolyline> overlays;
  SvgPolyline cur;
  cur.points.push_back(start);
  const int kSteps = 600;
  const double step = rise / kSteps;
  int p = poly;
  Vec2d pos = start;
  try {
    for (int i = 0; i < kSteps; ++i) {
      const FloatTraceResult r = trace_hint(s, p, pos, dir, step);
      if (r.crossings > 0) {
        if (cur.points.size() > 1) overlays.push_back(cur);
        cur = SvgPolyline{};
      }
      p = r.poly;
      pos = r.position;
      cur.points.push_back(pos);
    }
  } catch (const Error&) {
    // sampling brushed a vertex; draw the prefix
  }
  if (cur.points.size() > 1) overlays.push_back(cur);
  return overlays;
}

// ----------------------------------------------------------------- commands

struct IetAnalyzeOpts {
  std::string perm_csv;
  std::string iet_path;
};

int cmd_iet_analyze(const Workspace& ws, const IetAnalyzeOpts& o) {
  std::optional<IET> iet;
  std::vector<int> images;
  if (!o.iet_path.empty()) {
    iet.emplace(parse_iet(load_json(o.iet_path)));
    images = iet->perm().images();
  } else {
    for (const std::string& tok : split(o.perm_csv, ',')) images.push_back(parse_int(tok));
  }
  const Permutation pi(images);
  const SigmaDecomposition dec = sigma_decomposition(pi);
  if (ws.json) {
    Json out{{"perm", pi.images()},
             {"irreducible", is_irreducible(pi)},
             {"sigma", dec.sigma},
             {"cycles", dec.cycles},
             {"b", dec.b}};
    if (iet) {
      out["lengths"] = elements_json(iet->lengths());
      out["lengths_rationally_independent"] = lengths_rationally_independent(*iet);
    }
    std::printf("%s\n", out.dump(2).c_str());
    return 0;
  }
  print_decomposition(pi, dec);
  if (iet) {
    std::printf("lengths %s, total %s, rationally independent: %s\n",
                tuple_str(iet->lengths()).c_str(), iet->total_length().to_string().c_str(),
                lengths_rationally_independent(*iet) ? "yes" : "no");
  }
  return 0;
}

int emit_surface(const Workspace& ws, const TranslationSurface& s, const std::string& out,
                 const std::string& svg) {
  if (ws.json) {
    std::printf("%s\n", surface_json(s).dump(2).c_str());
  } else {
    print_surface_summary(s);
  }
  if (!out.empty()) {
    const std::string p = out_path(ws, out);
    save_json(p, surface_json(s));
    note("wrote " + p);
  }
  if (!svg.empty()) {
    const std::string p = out_path(ws, svg);
    save_text(p, surface_svg(s));
    note("wrote " + p);
  }
  return 0;
}

struct UnfoldOpts {
  std::string polygon_path;
  std::string builtin;
  std::string la = "1/2";
  std::string lb = "1";
  std::string out;
  std::string svg;
};

int cmd_surface_unfold(const Workspace& ws, const UnfoldOpts& o) {
  RationalPolygon poly = [&] {
    if (!o.polygon_path.empty()) return parse_polygon(load_json(o.polygon_path));
    if (o.builtin == "square") return square_polygon();
    if (o.builtin == "triangle") return regular_triangle_polygon();
    if (o.builtin == "right-isoceles") return right_isoceles_polygon();
    return l_shape_polygon(parse_rational(o.la), parse_rational(o.lb));
  }();
  const CoxeterGroup group = coxeter_group(poly);
  const TranslationSurface s = unfold(poly);
  if (!ws.json) {
    std::string angles;
    for (std::size_t i = 0; i < poly.side_count(); ++i) {
      if (i) angles += ", ";
      angles += to_string(poly.angle_fractions()[i]);
    }
    std::printf("polygon: %zu sides, interior angles pi * (%s)\n", poly.side_count(),
                angles.c_str());
    std::printf("coxeter group order %zu\n", group.order());
  }
  return emit_surface(ws, s, o.out, o.svg);
}

struct SuspendOpts {
  std::string iet_path;
  std::string heights_path;
  std::string out;
  std::string svg;
};

int cmd_surface_suspend(const Workspace& ws, const SuspendOpts& o) {
  const IET iet = parse_iet(load_json(o.iet_path));
  const std::vector<FieldElement> heights = parse_elements(load_json(o.heights_path));
  if (heights.size() != iet.size()) {
    throw BadParameters("need one height per interval: the exchange has " +
                        std::to_string(iet.size()) + ", the file has " +
                        std::to_string(heights.size()));
  }
  const TranslationSurface s = suspend(iet, heights);
  if (!ws.json) {
    std::printf("suspension of %s over lengths %s with heights %s\n",
                perm_str(iet.perm()).c_str(), tuple_str(iet.lengths()).c_str(),
                tuple_str(heights).c_str());
  }
  return emit_surface(ws, s, o.out, o.svg);
}

struct Fig1Opts {
  std::string preset = "fig1-default";
  std::string slits_path;
  std::string out;
  std::string svg;
};

std::vector<SlitPair> parse_slit_file(const Json& j, BasisPtr& basis_out) {
  if (!j.is_object() || !j.contains("basis") || !j.contains("hints") || !j.contains("pairs")) {
    throw ParseError(
        "slit file wants {\"basis\": [...], \"hints\": [...], \"pairs\": [...]}");
  }
  std::vector<std::string> labels;
  std::vector<double> hints;
  for (const auto& l : j["basis"]) {
    if (!l.is_string()) throw ParseError("slit file basis labels must be strings");
    labels.push_back(l.get<std::string>());
  }
  for (const auto& h : j["hints"]) {
    if (!h.is_number()) throw ParseError("slit file hints must be numbers");
    hints.push_back(h.get<double>());
  }
  basis_out = RealBasis::make(std::move(labels), std::move(hints));
  if (!j["pairs"].is_array() || j["pairs"].empty()) {
    throw ParseError("slit file pairs must be a nonempty array");
  }
  std::vector<SlitPair> out;
  for (const auto& p : j["pairs"]) {
    const auto field = [&](const char* key) {
      if (!p.is_object() || !p.contains(key) || !p[key].is_string()) {
        throw ParseError(std::string("each slit pair wants string fields ax, ay, bx, by, "
                                     "vx, vy; missing ") +
                         key);
      }
      return parse_element(p[key].get<std::string>(), basis_out);
    };
    out.push_back(SlitPair{Vec2{field("ax"), field("ay")}, Vec2{field("bx"), field("by")},
                           Vec2{field("vx"), field("vy")}});
  }
  return out;
}

int cmd_surface_fig1(const Workspace& ws, const Fig1Opts& o) {
  std::optional<TranslationSurface> s;
  if (!o.slits_path.empty()) {
    BasisPtr basis;
    const std::vector<SlitPair> slits = parse_slit_file(load_json(o.slits_path), basis);
    s.emplace(build_slitted_torus(slits, "custom slit family from " + o.slits_path));
  } else {
    s.emplace(build_fig1_default(ws.basis));
  }
  return emit_surface(ws, *s, o.out, o.svg);
}

struct HvOpts {
  std::string a = "1";
  std::string b = "2";
  std::string out;
  std::string svg;
};

int cmd_surface_hv(const Workspace& ws, const HvOpts& o) {
  const FieldElement a = parse_element(o.a, ws.basis);
  const FieldElement b = parse_element(o.b, ws.basis);
  const TranslationSurface s = build_hv_surface(a, b);
  if (!ws.json) {
    std::printf("horizontal-vertical L surface with a = %s, b = %s\n", a.to_string().c_str(),
                b.to_string().c_str());
  }
  return emit_surface(ws, s, o.out, o.svg);
}

struct FlowTraceOpts {
  std::string surface_path;
  std::string dir = "0,1";
  std::string start = "0,0";
  int poly = 0;
  std::string tmax = "1";
  std::string svg;
};

int cmd_flow_trace(const Workspace& ws, const FlowTraceOpts& o) {
  const TranslationSurface s = parse_surface(load_json(o.surface_path));
  const auto [dxs, dys] = split_pair(o.dir, "--dir");
  const auto [xs, ys] = split_pair(o.start, "--start");
  Vec2d dir_hint{};
  Vec2d start_hint{};
  double rise_hint = 0.0;
  if (ws.mode == ArithmeticMode::Exact) {
    if (!s.exact()) {
      throw BadParameters("exact tracing needs an exact surface; rerun with --mode float");
    }
    const BasisPtr& b = s.basis();
    const Direction dir{parse_element(dxs, b), parse_element(dys, b)};
    const SurfacePoint start{o.poly, Vec2{parse_element(xs, b), parse_element(ys, b)}};
    const FieldElement rise = parse_element(o.tmax, b);
    const TraceResult r = trace(s, start, dir, rise);
    if (ws.json) {
      const Json out{{"mode", "exact"},
                     {"end", Json{{"poly", r.end.poly},
                                  {"x", field_element_json(r.end.position.x)},
                                  {"y", field_element_json(r.end.position.y)}}},
                     {"rise", field_element_json(r.rise)},
                     {"crossings", r.crossings}};
      std::printf("%s\n", out.dump(2).c_str());
    } else {
      std::printf("start: poly %d at (%s, %s), direction (%s, %s), rise %s\n", o.poly,
                  start.position.x.to_string().c_str(), start.position.y.to_string().c_str(),
                  dir.dx.to_string().c_str(), dir.dy.to_string().c_str(),
                  rise.to_string().c_str());
      std::printf("end:   poly %d at (%s, %s)  [hint (%.6f, %.6f)]\n", r.end.poly,
                  r.end.position.x.to_string().c_str(), r.end.position.y.to_string().c_str(),
                  r.end.position.x.hint(), r.end.position.y.hint());
      std::printf("crossings: %zu\n", r.crossings);
    }
    dir_hint = Vec2d{dir.dx.hint(), dir.dy.hint()};
    start_hint = Vec2d{start.position.x.hint(), start.position.y.hint()};
    rise_hint = rise.hint();
  } else {
    dir_hint = Vec2d{parse_scalar_hint(dxs, ws.basis), parse_scalar_hint(dys, ws.basis)};
    start_hint = Vec2d{parse_scalar_hint(xs, ws.basis), parse_scalar_hint(ys, ws.basis)};
    rise_hint = parse_scalar_hint(o.tmax, ws.basis);
    const FloatTraceResult r = trace_hint(s, o.poly, start_hint, dir_hint, rise_hint);
    if (ws.json) {
      const Json out{{"mode", "float"},
                     {"end", Json{{"poly", r.poly}, {"x", r.position.x}, {"y", r.position.y}}},
                     {"rise", r.rise},
                     {"arclength", r.arclength},
                     {"crossings", r.crossings}};
      std::printf("%s\n", out.dump(2).c_str());
    } else {
      std::printf("start: poly %d at (%.6f, %.6f), direction (%.6f, %.6f), rise %.6f\n",
                  o.poly, start_hint.x, start_hint.y, dir_hint.x, dir_hint.y, rise_hint);
      std::printf("end:   poly %d at (%.6f, %.6f), arclength %.6f\n", r.poly, r.position.x,
                  r.position.y, r.arclength);
      std::printf("crossings: %zu\n", r.crossings);
    }
  }
  if (!o.svg.empty()) {
    const std::string p = out_path(ws, o.svg);
    save_text(p, surface_svg(s, trace_overlays(s, o.poly, start_hint, dir_hint, rise_hint)));
    note("wrote " + p);
  }
  return 0;
}

struct ReturnMapOpts {
  std::string surface_path;
  std::string dir = "0,1";
  std::string section = "0";
  std::string out_iet;
  std::string out_times;
};

int cmd_flow_return_map(const Workspace& ws, const ReturnMapOpts& o) {
  const TranslationSurface s = parse_surface(load_json(o.surface_path));
  if (!s.exact()) throw BadParameters("return maps need an exact surface");
  const BasisPtr& b = s.basis();
  const auto [dxs, dys] = split_pair(o.dir, "--dir");
  const Direction dir{parse_element(dxs, b), parse_element(dys, b)};
  const ReturnMapResult r = first_return_map(s, dir, parse_element(o.section, b));
  if (ws.json) {
    std::printf("%s\n", return_map_json(r).dump(2).c_str());
  } else {
    print_return_map(r);
  }
  if (!o.out_iet.empty()) {
    const std::string p = out_path(ws, o.out_iet);
    save_json(p, iet_json(r.iet));
    note("wrote " + p);
  }
  if (!o.out_times.empty()) {
    const std::string p = out_path(ws, o.out_times);
    save_json(p, elements_json(r.times));
    note("wrote " + p);
  }
  return 0;
}

struct WeakmixOpts {
  std::string surface_path;
  std::string dir = "0,1";
  std::string section = "0";
  std::string iet_path;
  std::string times_path;
};

int cmd_weakmix_check(const Workspace& ws, const WeakmixOpts& o) {
  std::optional<SurfaceWeakMixResult> surface_result;
  std::optional<WeakMixVerdict> verdict;
  Permutation pi = Permutation::identity(1);
  std::vector<FieldElement> times;
  if (!o.surface_path.empty()) {
    const TranslationSurface s = parse_surface(load_json(o.surface_path));
    if (!s.exact()) throw BadParameters("the weak mixing check needs an exact surface");
    const BasisPtr& b = s.basis();
    const auto [dxs, dys] = split_pair(o.dir, "--dir");
    surface_result.emplace(check_surface_weak_mixing(
        s, Direction{parse_element(dxs, b), parse_element(dys, b)},
        parse_element(o.section, b)));
    verdict = surface_result->verdict;
    pi = surface_result->return_map.iet.perm();
    times = surface_result->return_map.times;
  } else {
    const IET iet = parse_iet(load_json(o.iet_path));
    times = parse_elements(load_json(o.times_path));
    if (times.size() != iet.size()) {
      throw BadParameters("need one return time per interval: the exchange has " +
                          std::to_string(iet.size()) + ", the times file has " +
                          std::to_string(times.size()));
    }
    pi = iet.perm();
    verdict = check_weak_mixing(pi, times);
  }
  if (ws.json) {
    Json out = verdict_json(*verdict);
    out["perm"] = pi.images();
    out["times"] = elements_json(times);
    if (surface_result) out["return_map"] = return_map_json(surface_result->return_map);
    std::printf("%s\n", out.dump(2).c_str());
  } else {
    if (surface_result) print_return_map(surface_result->return_map);
    else std::printf("permutation %s, times %s\n", perm_str(pi).c_str(), tuple_str(times).c_str());
    print_verdict(*verdict);
  }
  return verdict->status == WeakMixStatus::WeaklyMixingAE ? 0 : 2;
}

struct CorrelateOpts {
  std::string iet_path;
  std::string roof_path;
  double dt = 0.309;
  std::string f = "fourier:1";
  std::string g;
  std::size_t lags = 2000;
  std::size_t samples = 4096;
  std::string csv;
  std::string svg;
};

int cmd_spectrum_correlate(const Workspace& ws, const CorrelateOpts& o) {
  const IET iet = parse_iet(load_json(o.iet_path));
  const Observable f = parse_observable(o.f);
  const Observable g = parse_observable(o.g.empty() ? o.f : o.g);
  std::optional<std::vector<FieldElement>> roof;
  if (!o.roof_path.empty()) {
    roof = parse_elements(load_json(o.roof_path));
    if (roof->size() != iet.size()) {
      throw BadParameters("need one roof height per interval: the exchange has " +
                          std::to_string(iet.size()) + ", the file has " +
                          std::to_string(roof->size()));
    }
  }
  const MixingReport rep =
      roof ? special_flow_correlation(iet, *roof, f, g, o.dt, o.lags, o.samples, ws.seed)
           : birkhoff_correlation(iet, f, g, o.lags, o.samples, ws.seed);
  const std::string estimator = roof ? "special-flow" : "birkhoff";
  if (ws.json) {
    std::printf("%s\n",
                report_json(rep, estimator, f, g,
                            roof ? std::optional<double>(o.dt) : std::nullopt)
                    .dump(2)
                    .c_str());
  } else {
    std::printf("estimator: %s%s, f = %s, g = %s\n", estimator.c_str(),
                roof ? (" (dt = " + std::to_string(o.dt) + ")").c_str() : "",
                obs_str(f).c_str(), obs_str(g).c_str());
    std::printf("lags %zu, samples %zu, seed %llu\n", o.lags, rep.sample_count,
                static_cast<unsigned long long>(rep.seed));
    std::printf("mean f = %s, mean g = %s\n", complex_str(rep.mean_f).c_str(),
                complex_str(rep.mean_g).c_str());
    std::printf("M(1) = %.6f, M(%zu) = %.6f, ratio %.4f\n", rep.cesaro.front(),
                rep.cesaro.size(), rep.cesaro.back(), rep.cesaro.back() / rep.cesaro.front());
  }
  if (!o.csv.empty()) {
    const std::string p = out_path(ws, o.csv);
    save_text(p, report_csv(rep));
    note("wrote " + p);
  }
  if (!o.svg.empty()) {
    const std::string p = out_path(ws, o.svg);
    save_text(p, report_svg(rep));
    note("wrote " + p);
  }
  return 0;
}

struct WeylOpts {
  std::string iet_path;
  std::string roof_path;
  double dt = 0.309;
  std::string f = "fourier:1";
  std::vector<double> alphas;
  std::string alpha_grid;
  std::size_t steps = 100000;
  std::size_t samples = 8;
  std::string csv;
};

int cmd_spectrum_weyl(const Workspace& ws, const WeylOpts& o) {
  const IET iet = parse_iet(load_json(o.iet_path));
  const Observable f = parse_observable(o.f);
  std::optional<std::vector<FieldElement>> roof;
  if (!o.roof_path.empty()) {
    roof = parse_elements(load_json(o.roof_path));
    if (roof->size() != iet.size()) {
      throw BadParameters("need one roof height per interval: the exchange has " +
                          std::to_string(iet.size()) + ", the file has " +
                          std::to_string(roof->size()));
    }
  }
  std::vector<double> alphas = o.alphas;
  if (!o.alpha_grid.empty()) {
    const auto parts = split(o.alpha_grid, ':');
    if (parts.size() != 3) throw ParseError("--alpha-grid wants start:end:step");
    const double a = parse_double(parts[0]);
    const double b = parse_double(parts[1]);
    const double step = parse_double(parts[2]);
    if (step <= 0 || b < a) throw BadParameters("--alpha-grid needs step > 0 and end >= start");
    if ((b - a) / step > 100000) throw BadParameters("--alpha-grid has too many points");
    for (double v = a; v <= b + step * 1e-9; v += step) alphas.push_back(v);
  }
  std::vector<double> sums;
  sums.reserve(alphas.size());
  for (double alpha : alphas) {
    sums.push_back(roof ? flow_weyl_sum(iet, *roof, f, alpha, o.dt, o.steps, o.samples, ws.seed)
                        : weyl_sum(iet, f, alpha, o.steps, o.samples, ws.seed));
  }
  if (ws.json) {
    Json rows = Json::array();
    for (std::size_t i = 0; i < alphas.size(); ++i) {
      rows.push_back(Json{{"alpha", alphas[i]}, {"weyl", sums[i]}});
    }
    Json out{{"f", obs_str(f)}, {"steps", o.steps},         {"samples", o.samples},
             {"seed", ws.seed}, {"rows", std::move(rows)}};
    if (roof) out["dt"] = o.dt;
    std::printf("%s\n", out.dump(2).c_str());
  } else {
    std::printf("%s weyl sums, f = %s, N = %zu, samples %zu, seed %llu\n",
                roof ? "flow" : "map", obs_str(f).c_str(), o.steps, o.samples,
                static_cast<unsigned long long>(ws.seed));
    std::printf("  %12s  %10s\n", "alpha", "|W_N|");
    for (std::size_t i = 0; i < alphas.size(); ++i) {
      std::printf("  %12.6f  %10.6f\n", alphas[i], sums[i]);
    }
  }
  if (!o.csv.empty()) {
    std::string csv = "alpha,weyl\n";
    char line[80];
    for (std::size_t i = 0; i < alphas.size(); ++i) {
      std::snprintf(line, sizeof line, "%.17g,%.17g\n", alphas[i], sums[i]);
      csv += line;
    }
    const std::string p = out_path(ws, o.csv);
    save_text(p, csv);
    note("wrote " + p);
  }
  return 0;
}

struct SpectrumHvOpts {
  std::string a = "1";
  std::string b = "2";
  double theta = 1.0471975511965976;  // pi/3: irrational tangent, no axis modes
  int jk = 3;
  bool verify = false;
  std::size_t verify_samples = 20;
  double tmax = 20.0;
};

int cmd_spectrum_hv(const Workspace& ws, const SpectrumHvOpts& o) {
  const FieldElement a = parse_element(o.a, ws.basis);
  const FieldElement b = parse_element(o.b, ws.basis);
  const HvClass cls = hv_classify(a, b);
  const std::vector<HvEigenvalue> eigs = hv_eigenvalues(o.theta, o.jk, o.jk);
  std::vector<double> residuals;
  if (o.verify) {
    const TranslationSurface s = build_hv_surface(a, b);
    residuals.reserve(eigs.size());
    for (const HvEigenvalue& e : eigs) {
      residuals.push_back(
          verify_hv_eigenfunction(s, e.j, e.k, o.theta, o.verify_samples, o.tmax, ws.seed));
    }
  }
  if (ws.json) {
    Json rows = Json::array();
    for (std::size_t i = 0; i < eigs.size(); ++i) {
      Json row{{"j", eigs[i].j}, {"k", eigs[i].k}, {"alpha", eigs[i].alpha}};
      if (o.verify) row["residual"] = residuals[i];
      rows.push_back(std::move(row));
    }
    const Json out{{"a", field_element_json(a)},
                   {"b", field_element_json(b)},
                   {"class", cls == HvClass::AlmostIntegrable ? "AlmostIntegrable"
                                                              : "WeakMixing"},
                   {"theta", o.theta},
                   {"seed", ws.seed},
                   {"eigenvalues", std::move(rows)}};
    std::printf("%s\n", out.dump(2).c_str());
    return 0;
  }
  std::printf("horizontal-vertical L surface with a = %s, b = %s\n", a.to_string().c_str(),
              b.to_string().c_str());
  std::printf("classification: %s\n",
              cls == HvClass::AlmostIntegrable
                  ? "almost integrable (a/b is rational)"
                  : "weakly mixing in almost every direction (a/b is irrational)");
  if (cls == HvClass::AlmostIntegrable) {
    std::printf("candidate eigenvalues alpha_jk = j*cos(theta) + k*sin(theta), theta = %.10f:\n",
                o.theta);
  } else {
    std::printf("alpha_jk grid below is the almost integrable comparison, not a spectrum "
                "of this surface (theta = %.10f):\n",
                o.theta);
  }
  std::printf("  %3s  %3s  %12s%s\n", "j", "k", "alpha", o.verify ? "      residual" : "");
  for (std::size_t i = 0; i < eigs.size(); ++i) {
    if (o.verify) {
      std::printf("  %3d  %3d  %12.6f  %12.3e\n", eigs[i].j, eigs[i].k, eigs[i].alpha,
                  residuals[i]);
    } else {
      std::printf("  %3d  %3d  %12.6f\n", eigs[i].j, eigs[i].k, eigs[i].alpha);
    }
  }
  return 0;
}

struct DemoOpts {
  bool times_equal = false;
  bool hv = false;
  std::string a = "1";
  std::string b = "2";
};

int demo_hv(const Workspace& ws, const DemoOpts& o) {
  const FieldElement a = parse_element(o.a, ws.basis);
  const FieldElement b = parse_element(o.b, ws.basis);
  const double theta = 1.0471975511965976;
  if (!ws.json) std::printf("== horizontal-vertical variant ==\n");
  const TranslationSurface s = build_hv_surface(a, b);
  const HvClass cls = hv_classify(a, b);
  const std::vector<HvEigenvalue> eigs = hv_eigenvalues(theta, 3, 3);
  std::vector<double> residuals;
  residuals.reserve(eigs.size());
  double worst = 0.0;
  for (const HvEigenvalue& e : eigs) {
    residuals.push_back(verify_hv_eigenfunction(s, e.j, e.k, theta, 12, 15.0, ws.seed));
    worst = std::max(worst, residuals.back());
  }
  Json rows = Json::array();
  for (std::size_t i = 0; i < eigs.size(); ++i) {
    rows.push_back(Json{{"j", eigs[i].j},
                        {"k", eigs[i].k},
                        {"alpha", eigs[i].alpha},
                        {"residual", residuals[i]}});
  }
  const Json report{{"a", field_element_json(a)},
                    {"b", field_element_json(b)},
                    {"class", cls == HvClass::AlmostIntegrable ? "AlmostIntegrable"
                                                               : "WeakMixing"},
                    {"theta", theta},
                    {"seed", ws.seed},
                    {"genus", s.genus()},
                    {"eigenvalues", std::move(rows)}};
  if (ws.json) {
    std::printf("%s\n", report.dump(2).c_str());
  } else {
    print_surface_summary(s);
    std::printf("classification: %s\n", cls == HvClass::AlmostIntegrable
                                            ? "almost integrable (a/b is rational)"
                                            : "weakly mixing in almost every direction");
    std::printf("eigenvalue table alpha_jk = j*cos(theta) + k*sin(theta), theta = %.10f, "
                "|j|,|k| <= 3:\n",
                theta);
    std::printf("  %3s  %3s  %12s  %12s\n", "j", "k", "alpha", "residual");
    for (std::size_t i = 0; i < eigs.size(); ++i) {
      std::printf("  %3d  %3d  %12.6f  %12.3e\n", eigs[i].j, eigs[i].k, eigs[i].alpha,
                  residuals[i]);
    }
    std::printf("largest residual: %.3e\n", worst);
  }
  const std::string p = out_path(ws, "demo_hv.json");
  save_json(p, report);
  note("wrote " + p);
  return 0;
}

int cmd_demo(const Workspace& ws, const DemoOpts& o) {
  if (o.hv) return demo_hv(ws, o);

  const Permutation pi({4, 2, 3, 1});
  const SigmaDecomposition dec = sigma_decomposition(pi);
  if (!ws.json) {
    std::printf("== step 1: a permutation with at least three successor cycles ==\n");
    print_decomposition(pi, dec);
    std::printf("%zu cycles, need >= 3: ok\n\n", dec.cycles.size());
    std::printf("== step 2: a translation surface whose vertical flow returns to it ==\n");
  }

  const TranslationSurface s = build_fig1_default(ws.basis);
  const FieldElement zero = FieldElement::zero(ws.basis);
  const FieldElement one = FieldElement::one(ws.basis);
  const SurfaceWeakMixResult res =
      check_surface_weak_mixing(s, Direction{zero, one}, zero);
  if (res.return_map.iet.perm() != pi) {
    throw InternalError("fig1-default no longer returns to the step 1 permutation");
  }
  if (!ws.json) {
    print_surface_summary(s);
    print_return_map(res.return_map);
    std::printf("\n== step 3: the weak mixing certificate ==\n");
  }

  std::vector<FieldElement> roof = res.return_map.times;
  WeakMixVerdict verdict = res.verdict;
  if (o.times_equal) {
    roof.assign(pi.size(), one);
    verdict = check_weak_mixing(pi, roof);
    if (!ws.json) std::printf("override: return times forced to %s\n", tuple_str(roof).c_str());
  }
  if (!ws.json) print_verdict(verdict);

  // Numerical shadow of the verdict: Cesaro decay of a mean-zero fiber
  // observable under the special flow, plus a Weyl probe at alpha = 1, which
  // the exact pairing test excludes exactly when the times stay irrational.
  const Observable fiber = Observable::fourier_fiber(1);
  const double dt = 0.309;
  const std::size_t lags = 3000;
  const std::size_t samples = 6000;
  const MixingReport rep =
      special_flow_correlation(res.return_map.iet, roof, fiber, fiber, dt, lags, samples,
                               ws.seed);
  const EigenvalueVerdict ev = exclude_eigenvalue(pi, roof, one);
  const double weyl_dt = 0.4714045207910317;
  const double weyl =
      flow_weyl_sum(res.return_map.iet, roof, fiber, 1.0, weyl_dt, 20000, 4, ws.seed);
  if (!ws.json) {
    std::printf("\n== numerical cross-check (seed %llu) ==\n",
                static_cast<unsigned long long>(ws.seed));
    std::printf("cesaro indicator of f = fiber:1 under the special flow, dt = %.3f:\n", dt);
    std::printf("  M(1) = %.6f, M(%zu) = %.6f, ratio %.4f\n", rep.cesaro.front(),
                rep.cesaro.size(), rep.cesaro.back(),
                rep.cesaro.back() / rep.cesaro.front());
    if (ev.status == EigenvalueStatus::Excluded) {
      std::printf("alpha = 1 excluded exactly: cycle S_%d pairs to %s, not an integer\n",
                  ev.witness_cycle, ev.witness_value.to_string().c_str());
    } else {
      std::printf("alpha = 1 not excluded by the pairing test\n");
    }
    std::printf("flow weyl sum at alpha = 1 (N = 20000): %.6f\n", weyl);
  }

  Json certificate{
      {"perm", pi.images()},
      {"cycles", dec.cycles},
      {"b", dec.b},
      {"surface", Json{{"provenance", s.provenance()},
                       {"polygons", s.polygon_count()},
                       {"genus", s.genus()}}},
      {"return_map", return_map_json(res.return_map)},
      {"times_override", o.times_equal},
      {"verdict", verdict_json(verdict)},
      {"spectral", Json{{"f", obs_str(fiber)},
                        {"dt", dt},
                        {"lags", lags},
                        {"samples", samples},
                        {"seed", ws.seed},
                        {"cesaro_first", rep.cesaro.front()},
                        {"cesaro_last", rep.cesaro.back()},
                        {"alpha_probe", 1.0},
                        {"alpha_excluded", ev.status == EigenvalueStatus::Excluded},
                        {"weyl_at_probe", weyl}}}};
  if (o.times_equal) certificate["times"] = elements_json(roof);
  if (ws.json) std::printf("%s\n", certificate.dump(2).c_str());

  const std::string cert_path = out_path(ws, "demo_certificate.json");
  save_json(cert_path, certificate);
  note("wrote " + cert_path);
  const std::string csv_path = out_path(ws, "demo_cesaro.csv");
  save_text(csv_path, report_csv(rep));
  note("wrote " + csv_path);
  const std::string svg_path = out_path(ws, "demo_cesaro.svg");
  save_text(svg_path, report_svg(rep));
  note("wrote " + svg_path);
  return 0;
}

void finalize_workspace(Workspace& ws, const std::string& mode_str,
                        const std::string& basis_decl) {
  ws.mode = mode_str == "float" ? ArithmeticMode::Float : ArithmeticMode::Exact;
  if (basis_decl.empty()) return;
  std::vector<std::string> labels{"1"};
  std::vector<double> hints{1.0};
  for (const std::string& part : split(basis_decl, ',')) {
    const std::size_t eq = part.find('=');
    if (eq == std::string::npos || eq == 0) {
      throw ParseError("--basis wants label=hint[,label=hint...], got \"" + part + "\"");
    }
    labels.push_back(part.substr(0, eq));
    hints.push_back(parse_double(part.substr(eq + 1)));
  }
  ws.basis = RealBasis::make(std::move(labels), std::move(hints));
}

}  // namespace

int run(int argc, char** argv) {
  Workspace ws;
  ws.basis = default_basis();
  std::string mode_str = "exact";
  std::string basis_decl;
  int rc = 0;

  CLI::App app{"weak mixing certificates for interval exchanges and translation flows"};
  app.require_subcommand(1);
  app.add_option("--mode", mode_str, "arithmetic mode for tracing")
      ->check(CLI::IsMember({"exact", "float"}));
  app.add_option("--seed", ws.seed, "seed for every sampled estimator");
  app.add_option("--out-dir", ws.out_dir, "directory for written files");
  app.add_flag("--json", ws.json, "print JSON on stdout instead of tables");
  app.add_option("--basis", basis_decl,
                 "symbol basis for command-line values, label=hint[,label=hint...]");

  const auto ready = [&] { finalize_workspace(ws, mode_str, basis_decl); };

  auto* iet_cmd = app.add_subcommand("iet", "interval exchange combinatorics");
  iet_cmd->require_subcommand(1);
  iet_cmd->fallthrough();
  {
    static IetAnalyzeOpts o;
    auto* c = iet_cmd->add_subcommand("analyze", "successor cycles and their b vectors");
    c->fallthrough();
    auto* perm = c->add_option("--perm", o.perm_csv, "permutation images, e.g. 4,2,3,1");
    auto* file = c->add_option("--iet", o.iet_path, "exchange JSON file");
    perm->excludes(file);
    c->callback([&] {
      if (o.perm_csv.empty() && o.iet_path.empty()) {
        throw CLI::RequiredError("--perm or --iet");
      }
      ready();
      rc = cmd_iet_analyze(ws, o);
    });
  }

  auto* surface_cmd = app.add_subcommand("surface", "build translation surfaces");
  surface_cmd->require_subcommand(1);
  surface_cmd->fallthrough();
  {
    static UnfoldOpts o;
    auto* c = surface_cmd->add_subcommand("unfold", "unfold a rational polygon");
    c->fallthrough();
    auto* poly = c->add_option("--polygon", o.polygon_path, "polygon JSON file");
    auto* builtin =
        c->add_option("--builtin", o.builtin, "square, triangle, right-isoceles or l-shape")
            ->check(CLI::IsMember({"square", "triangle", "right-isoceles", "l-shape"}));
    poly->excludes(builtin);
    c->add_option("--la", o.la, "l-shape inner side, a rational (default 1/2)");
    c->add_option("--lb", o.lb, "l-shape outer side, a rational (default 1)");
    c->add_option("--out", o.out, "write the surface JSON here");
    c->add_option("--svg", o.svg, "write a picture here");
    c->callback([&] {
      if (o.polygon_path.empty() && o.builtin.empty()) {
        throw CLI::RequiredError("--polygon or --builtin");
      }
      ready();
      rc = cmd_surface_unfold(ws, o);
    });
  }
  {
    static SuspendOpts o;
    auto* c = surface_cmd->add_subcommand("suspend",
                                          "suspend an exchange under rectangle heights");
    c->fallthrough();
    c->add_option("--iet", o.iet_path, "exchange JSON file")->required();
    c->add_option("--heights", o.heights_path, "heights JSON file (element array)")->required();
    c->add_option("--out", o.out, "write the surface JSON here");
    c->add_option("--svg", o.svg, "write a picture here");
    c->callback([&] {
      ready();
      rc = cmd_surface_suspend(ws, o);
    });
  }
  {
    static Fig1Opts o;
    auto* c = surface_cmd->add_subcommand("fig1", "slitted torus with a (4,2,3,1) return map");
    c->fallthrough();
    auto* preset = c->add_option("--preset", o.preset, "stored slit family")
                       ->check(CLI::IsMember({"fig1-default"}));
    auto* slits = c->add_option("--slits", o.slits_path, "custom slit family JSON file");
    preset->excludes(slits);
    c->add_option("--out", o.out, "write the surface JSON here");
    c->add_option("--svg", o.svg, "write a picture here");
    c->callback([&] {
      ready();
      rc = cmd_surface_fig1(ws, o);
    });
  }
  {
    static HvOpts o;
    auto* c = surface_cmd->add_subcommand("hv", "horizontal-vertical L surface");
    c->fallthrough();
    c->add_option("--a", o.a, "short side (default 1)");
    c->add_option("--b", o.b, "long side (default 2)");
    c->add_option("--out", o.out, "write the surface JSON here");
    c->add_option("--svg", o.svg, "write a picture here");
    c->callback([&] {
      ready();
      rc = cmd_surface_hv(ws, o);
    });
  }

  auto* flow_cmd = app.add_subcommand("flow", "trace directional flows");
  flow_cmd->require_subcommand(1);
  flow_cmd->fallthrough();
  {
    static FlowTraceOpts o;
    auto* c = flow_cmd->add_subcommand("trace", "flow one point for a given rise");
    c->fallthrough();
    c->add_option("--surface", o.surface_path, "surface JSON file")->required();
    c->add_option("--dir", o.dir, "direction dx,dy (default 0,1)");
    c->add_option("--start", o.start, "start point x,y (default 0,0)");
    c->add_option("--poly", o.poly, "polygon holding the start point (default 0)");
    c->add_option("--tmax", o.tmax, "vertical rise to flow (default 1)");
    c->add_option("--svg", o.svg, "write a picture with the sampled path here");
    c->callback([&] {
      ready();
      rc = cmd_flow_trace(ws, o);
    });
  }
  {
    static ReturnMapOpts o;
    auto* c = flow_cmd->add_subcommand("return-map",
                                       "first-return exchange on a horizontal section");
    c->fallthrough();
    c->add_option("--surface", o.surface_path, "surface JSON file")->required();
    c->add_option("--dir", o.dir, "direction dx,dy (default 0,1)");
    c->add_option("--section", o.section, "section height (default 0)");
    c->add_option("--out-iet", o.out_iet, "write the return exchange JSON here");
    c->add_option("--out-times", o.out_times, "write the return times JSON here");
    c->callback([&] {
      ready();
      rc = cmd_flow_return_map(ws, o);
    });
  }

  auto* weakmix_cmd = app.add_subcommand("weakmix", "weak mixing certificates");
  weakmix_cmd->require_subcommand(1);
  weakmix_cmd->fallthrough();
  {
    static WeakmixOpts o;
    auto* c = weakmix_cmd->add_subcommand(
        "check", "certificate for a surface flow or an exchange with times");
    c->fallthrough();
    auto* surf = c->add_option("--surface", o.surface_path, "surface JSON file");
    c->add_option("--dir", o.dir, "direction dx,dy (default 0,1)");
    c->add_option("--section", o.section, "section height (default 0)");
    auto* iet = c->add_option("--iet", o.iet_path, "exchange JSON file");
    auto* times = c->add_option("--times", o.times_path, "return times JSON file");
    surf->excludes(iet);
    iet->needs(times);
    c->callback([&] {
      if (o.surface_path.empty() && o.iet_path.empty()) {
        throw CLI::RequiredError("--surface or --iet");
      }
      ready();
      rc = cmd_weakmix_check(ws, o);
    });
  }

  auto* spectrum_cmd = app.add_subcommand("spectrum", "numerical estimators");
  spectrum_cmd->require_subcommand(1);
  spectrum_cmd->fallthrough();
  {
    static CorrelateOpts o;
    auto* c = spectrum_cmd->add_subcommand("correlate",
                                           "orbit correlations and the cesaro indicator");
    c->fallthrough();
    c->add_option("--iet", o.iet_path, "exchange JSON file")->required();
    c->add_option("--roof", o.roof_path, "roof heights JSON: correlate the special flow");
    c->add_option("--dt", o.dt, "flow time step (default 0.309)");
    c->add_option("--f", o.f, "observable (default fourier:1)");
    c->add_option("--g", o.g, "second observable (default: same as --f)");
    c->add_option("--lags", o.lags, "largest lag (default 2000)");
    c->add_option("--samples", o.samples, "orbit samples per lag (default 4096)");
    c->add_option("--csv", o.csv, "write lag,corr_re,corr_im,corr_abs,cesaro rows here");
    c->add_option("--svg", o.svg, "write an M(N) line plot here");
    c->callback([&] {
      ready();
      rc = cmd_spectrum_correlate(ws, o);
    });
  }
  {
    static WeylOpts o;
    auto* c = spectrum_cmd->add_subcommand("weyl", "weyl sums over candidate frequencies");
    c->fallthrough();
    c->add_option("--iet", o.iet_path, "exchange JSON file")->required();
    c->add_option("--roof", o.roof_path, "roof heights JSON: probe the special flow");
    c->add_option("--dt", o.dt, "flow time step (default 0.309)");
    c->add_option("--f", o.f, "observable (default fourier:1)");
    auto* alpha = c->add_option("--alpha", o.alphas, "frequency to probe (repeatable)");
    auto* grid = c->add_option("--alpha-grid", o.alpha_grid, "start:end:step sweep");
    alpha->excludes(grid);
    c->add_option("--steps", o.steps, "orbit length N (default 100000)");
    c->add_option("--samples", o.samples, "seeded restarts to average (default 8)");
    c->add_option("--csv", o.csv, "write alpha,weyl rows here");
    c->callback([&] {
      if (o.alphas.empty() && o.alpha_grid.empty()) {
        throw CLI::RequiredError("--alpha or --alpha-grid");
      }
      ready();
      rc = cmd_spectrum_weyl(ws, o);
    });
  }
  {
    static SpectrumHvOpts o;
    auto* c = spectrum_cmd->add_subcommand("hv",
                                           "eigenvalue grid for the horizontal-vertical L");
    c->fallthrough();
    c->add_option("--a", o.a, "short side (default 1)");
    c->add_option("--b", o.b, "long side (default 2)");
    c->add_option("--theta", o.theta, "flow angle in radians (default pi/3)");
    c->add_option("--jk", o.jk, "grid bound |j|,|k| <= jk (default 3)");
    c->add_flag("--verify", o.verify, "sample eigenfunction residuals along the flow");
    c->add_option("--verify-samples", o.verify_samples, "samples per mode (default 20)");
    c->add_option("--tmax", o.tmax, "largest flow time per sample (default 20)");
    c->callback([&] {
      ready();
      rc = cmd_spectrum_hv(ws, o);
    });
  }

  {
    static DemoOpts o;
    auto* c = app.add_subcommand("demo", "end-to-end workflow on the stored preset");
    c->fallthrough();
    auto* te = c->add_flag("--times-equal", o.times_equal,
                           "force equal return times (drops the certificate)");
    auto* hv = c->add_flag("--hv", o.hv, "horizontal-vertical variant instead");
    c->add_option("--a", o.a, "hv short side (default 1)");
    c->add_option("--b", o.b, "hv long side (default 2)");
    te->excludes(hv);
    c->callback([&] {
      ready();
      rc = cmd_demo(ws, o);
    });
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 64;
  } catch (const InternalError& e) {
    std::fprintf(stderr, "veechmix: internal error: %s\n", e.what());
    return 70;
  } catch (const Error& e) {
    std::fprintf(stderr, "veechmix: error: %s\n", e.what());
    return 65;
  } catch (const Json::exception& e) {
    std::fprintf(stderr, "veechmix: error: %s\n", e.what());
    return 65;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "veechmix: unexpected error: %s\n", e.what());
    return 70;
  }
  return rc;
}

}  // namespace veechmix

int main(int argc, char** argv) { return veechmix::run(argc, argv); }
