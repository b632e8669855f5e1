#include "veechmix/json_io.hpp"

#include <filesystem>
#include <fstream>
#include <string>
#include <utility>
#include <vector>

#include "veechmix/errors.hpp"

namespace veechmix {

namespace {

const Json& member(const Json& j, const char* key, const char* what) {
  if (!j.is_object()) throw ParseError(std::string(what) + " must be a JSON object");
  auto it = j.find(key);
  if (it == j.end()) throw ParseError(std::string(what) + " is missing \"" + key + "\"");
  return *it;
}

BigInt parse_bigint(const Json& j) {
  if (!j.is_string()) throw ParseError("integer coordinates must be decimal strings");
  const std::string s = j.get<std::string>();
  try {
    return BigInt(s);
  } catch (const std::exception&) {
    throw ParseError("bad integer \"" + s + "\"");
  }
}

Rational parse_coord(const Json& j) {
  if (!j.is_array() || j.size() != 2) throw ParseError("a coordinate is a [\"num\",\"den\"] pair");
  BigInt n = parse_bigint(j[0]);
  BigInt d = parse_bigint(j[1]);
  if (d == 0) throw ParseError("coordinate with zero denominator");
  return Rational(std::move(n), std::move(d));
}

Json coords_json(const std::vector<Rational>& coords) {
  Json out = Json::array();
  for (const Rational& c : coords) out.push_back(Json::array({num(c).str(), den(c).str()}));
  return out;
}

std::vector<Rational> parse_coords(const Json& j, std::size_t want, const char* what) {
  if (!j.is_array()) throw ParseError(std::string(what) + " coords must be an array");
  if (j.size() != want)
    throw ParseError(std::string(what) + " coords length does not match the basis");
  std::vector<Rational> out;
  out.reserve(j.size());
  for (const auto& c : j) out.push_back(parse_coord(c));
  return out;
}

BasisPtr parse_basis(const Json& labels_j, const Json& hints_j) {
  if (!labels_j.is_array() || !hints_j.is_array())
    throw ParseError("basis and hints must be arrays");
  if (labels_j.size() != hints_j.size())
    throw ParseError("basis and hints lengths differ");
  std::vector<std::string> labels;
  std::vector<double> hints;
  labels.reserve(labels_j.size());
  hints.reserve(hints_j.size());
  for (const auto& l : labels_j) {
    if (!l.is_string()) throw ParseError("basis labels must be strings");
    labels.push_back(l.get<std::string>());
  }
  for (const auto& h : hints_j) {
    if (!h.is_number()) throw ParseError("hints must be numbers");
    hints.push_back(h.get<double>());
  }
  return RealBasis::make(std::move(labels), std::move(hints));
}

// Parse onto a basis the caller already holds, so a list of elements ends up
// arithmetic-compatible instead of each carrying its own copy.
FieldElement parse_field_element_with(const Json& j, const BasisPtr& basis, const char* what) {
  BasisPtr own = parse_basis(member(j, "basis", what), member(j, "hints", what));
  if (!own->same(*basis)) throw ParseError(std::string(what) + " does not share the basis");
  return FieldElement(basis, parse_coords(member(j, "coords", what), basis->size(), what));
}

std::pair<EdgeRef, EdgeRef> parse_pairing(const Json& j) {
  const auto edge = [](const Json& e) {
    if (!e.is_array() || e.size() != 2 || !e[0].is_number_integer() || !e[1].is_number_integer())
      throw ParseError("a pairing edge is an integer [poly, edge] pair");
    return EdgeRef{e[0].get<int>(), e[1].get<int>()};
  };
  if (!j.is_array() || j.size() != 2) throw ParseError("a pairing is a pair of edges");
  return {edge(j[0]), edge(j[1])};
}

}  // namespace

Json field_element_json(const FieldElement& v) {
  return Json{{"basis", v.basis()->labels()},
              {"hints", v.basis()->hints()},
              {"coords", coords_json(v.coords())}};
}

FieldElement parse_field_element(const Json& j) {
  BasisPtr basis = parse_basis(member(j, "basis", "field element"),
                               member(j, "hints", "field element"));
  return FieldElement(basis,
                      parse_coords(member(j, "coords", "field element"), basis->size(),
                                   "field element"));
}

Json iet_json(const IET& v) {
  Json perm = Json::array();
  for (std::size_t i = 1; i <= v.size(); ++i) perm.push_back(v.perm().image(static_cast<int>(i)));
  Json lengths = Json::array();
  for (const FieldElement& l : v.lengths()) lengths.push_back(field_element_json(l));
  return Json{{"perm", std::move(perm)}, {"lengths", std::move(lengths)}};
}

IET parse_iet(const Json& j) {
  const Json& pj = member(j, "perm", "iet");
  if (!pj.is_array() || pj.empty()) throw ParseError("iet perm must be a nonempty array");
  std::vector<int> images;
  images.reserve(pj.size());
  for (const auto& x : pj) {
    if (!x.is_number_integer()) throw ParseError("perm entries are integers");
    images.push_back(x.get<int>());
  }
  const Json& lj = member(j, "lengths", "iet");
  if (!lj.is_array() || lj.size() != images.size())
    throw ParseError("iet needs one length per interval");
  std::vector<FieldElement> lengths;
  lengths.reserve(lj.size());
  for (const auto& e : lj) {
    if (lengths.empty()) {
      lengths.push_back(parse_field_element(e));
    } else {
      lengths.push_back(parse_field_element_with(e, lengths.front().basis(), "iet length"));
    }
  }
  return IET(std::move(lengths), Permutation(images));
}

Json elements_json(const std::vector<FieldElement>& v) {
  Json out = Json::array();
  for (const FieldElement& e : v) out.push_back(field_element_json(e));
  return out;
}

std::vector<FieldElement> parse_elements(const Json& j) {
  if (!j.is_array()) throw ParseError("an element list is a JSON array");
  std::vector<FieldElement> out;
  out.reserve(j.size());
  for (const auto& e : j) {
    if (out.empty()) {
      out.push_back(parse_field_element(e));
    } else {
      out.push_back(parse_field_element_with(e, out.front().basis(), "list element"));
    }
  }
  return out;
}

Json surface_json(const TranslationSurface& s) {
  Json out;
  Json polys = Json::array();
  if (s.exact()) {
    out["mode"] = "exact";
    out["basis"] = s.basis()->labels();
    out["hints"] = s.basis()->hints();
    for (const auto& poly : s.polygons()) {
      Json pj = Json::array();
      for (const Vec2& v : poly) {
        pj.push_back(Json{{"x", coords_json(v.x.coords())}, {"y", coords_json(v.y.coords())}});
      }
      polys.push_back(std::move(pj));
    }
  } else {
    out["mode"] = "float";
    for (std::size_t p = 0; p < s.polygon_count(); ++p) {
      Json pj = Json::array();
      for (std::size_t i = 0; i < s.vertex_count(static_cast<int>(p)); ++i) {
        const Vec2d v = s.vertex_hint(static_cast<int>(p), static_cast<int>(i));
        pj.push_back(Json{{"x", v.x}, {"y", v.y}});
      }
      polys.push_back(std::move(pj));
    }
  }
  out["polygons"] = std::move(polys);
  Json pr = Json::array();
  for (const Pairing& p : s.pairings()) {
    pr.push_back(Json::array(
        {Json::array({p.a.poly, p.a.edge}), Json::array({p.b.poly, p.b.edge})}));
  }
  out["pairings"] = std::move(pr);
  if (!s.provenance().empty()) out["provenance"] = s.provenance();
  return out;
}

TranslationSurface parse_surface(const Json& j) {
  const Json& mode = member(j, "mode", "surface");
  const Json& polys_j = member(j, "polygons", "surface");
  if (!polys_j.is_array() || polys_j.empty()) throw ParseError("surface needs polygons");
  const Json& pairs_j = member(j, "pairings", "surface");
  if (!pairs_j.is_array()) throw ParseError("surface pairings must be an array");
  std::vector<Pairing> pairings;
  pairings.reserve(pairs_j.size());
  for (const auto& p : pairs_j) {
    auto [a, b] = parse_pairing(p);
    pairings.push_back(Pairing{a, b});
  }
  std::string provenance;
  if (j.contains("provenance")) {
    if (!j["provenance"].is_string()) throw ParseError("provenance must be a string");
    provenance = j["provenance"].get<std::string>();
  }

  if (mode == "exact") {
    BasisPtr basis = parse_basis(member(j, "basis", "surface"), member(j, "hints", "surface"));
    std::vector<std::vector<Vec2>> polys;
    polys.reserve(polys_j.size());
    for (const auto& pj : polys_j) {
      if (!pj.is_array()) throw ParseError("a polygon is an array of vertices");
      std::vector<Vec2> poly;
      poly.reserve(pj.size());
      for (const auto& vj : pj) {
        poly.emplace_back(
            FieldElement(basis, parse_coords(member(vj, "x", "vertex"), basis->size(), "vertex")),
            FieldElement(basis, parse_coords(member(vj, "y", "vertex"), basis->size(), "vertex")));
      }
      polys.push_back(std::move(poly));
    }
    return TranslationSurface(std::move(polys), std::move(pairings), std::move(provenance));
  }
  if (mode == "float") {
    std::vector<std::vector<Vec2d>> polys;
    polys.reserve(polys_j.size());
    for (const auto& pj : polys_j) {
      if (!pj.is_array()) throw ParseError("a polygon is an array of vertices");
      std::vector<Vec2d> poly;
      poly.reserve(pj.size());
      for (const auto& vj : pj) {
        const Json& x = member(vj, "x", "vertex");
        const Json& y = member(vj, "y", "vertex");
        if (!x.is_number() || !y.is_number()) throw ParseError("float vertices are number pairs");
        poly.push_back(Vec2d{x.get<double>(), y.get<double>()});
      }
      polys.push_back(std::move(poly));
    }
    return TranslationSurface(std::move(polys), std::move(pairings), std::move(provenance));
  }
  throw ParseError("surface mode must be \"exact\" or \"float\"");
}

Json polygon_json(const RationalPolygon& p) {
  Json verts = Json::array();
  for (const Vec2& v : p.vertices()) {
    verts.push_back(Json{{"x", coords_json(v.x.coords())}, {"y", coords_json(v.y.coords())}});
  }
  Json angles = Json::array();
  for (const Rational& a : p.angle_fractions()) {
    angles.push_back(Json::array({num(a).str(), den(a).str()}));
  }
  return Json{{"basis", p.basis()->labels()},
              {"hints", p.basis()->hints()},
              {"vertices", std::move(verts)},
              {"angles", std::move(angles)}};
}

RationalPolygon parse_polygon(const Json& j) {
  BasisPtr basis = parse_basis(member(j, "basis", "polygon"), member(j, "hints", "polygon"));
  const Json& vj = member(j, "vertices", "polygon");
  if (!vj.is_array()) throw ParseError("polygon vertices must be an array");
  std::vector<Vec2> vertices;
  vertices.reserve(vj.size());
  for (const auto& v : vj) {
    vertices.emplace_back(
        FieldElement(basis, parse_coords(member(v, "x", "vertex"), basis->size(), "vertex")),
        FieldElement(basis, parse_coords(member(v, "y", "vertex"), basis->size(), "vertex")));
  }
  const Json& aj = member(j, "angles", "polygon");
  if (!aj.is_array() || aj.size() != vertices.size())
    throw ParseError("polygon needs one angle fraction per vertex");
  std::vector<Rational> angles;
  angles.reserve(aj.size());
  for (const auto& a : aj) angles.push_back(parse_coord(a));
  return RationalPolygon(std::move(vertices), std::move(angles));
}

Json load_json(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot read " + path);
  try {
    return Json::parse(in);
  } catch (const Json::parse_error& e) {
    throw ParseError(path + ": " + e.what());
  }
}

void save_text(const std::string& path, const std::string& content) {
  namespace fs = std::filesystem;
  const std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot write " + tmp);
    out << content;
    out.flush();
    if (!out) {
      std::error_code ec;
      fs::remove(tmp, ec);
      throw IoError("short write to " + tmp);
    }
  }
  std::error_code ec;
  fs::rename(tmp, path, ec);
  if (ec) {
    std::error_code ignore;
    fs::remove(tmp, ignore);
    throw IoError("cannot move " + tmp + " into place: " + ec.message());
  }
}

void save_json(const std::string& path, const Json& j) {
  save_text(path, j.dump(2) + "\n");
}

}  // namespace veechmix
