#pragma once

#include <json.hpp>

#include <string>
#include <vector>

#include "veechmix/iet.hpp"
#include "veechmix/polygon.hpp"
#include "veechmix/surface.hpp"

namespace veechmix {

using Json = nlohmann::json;

// JSON shapes, chosen so every verdict-grade value round-trips exactly:
//
//   FieldElement  { "basis": ["1","sqrt2"], "hints": [1.0, 1.41...],
//                   "coords": [["p","q"], ...] }   (decimal integer strings)
//   IET           { "perm": [4,2,3,1], "lengths": [FieldElement, ...] }
//   element list  [FieldElement, ...]              (one shared basis)
//   surface       { "mode": "exact"|"float", "polygons": [...],
//                   "pairings": [[[p,e],[q,f]], ...], "provenance": "..." }
//
// An exact surface hoists "basis"/"hints" to the top level and stores each
// vertex as { "x": coords, "y": coords }; a float surface stores plain
// doubles instead and carries no basis. Parsers throw ParseError on shape
// problems and let the value constructors re-validate everything else.

Json field_element_json(const FieldElement& v);
FieldElement parse_field_element(const Json& j);

Json iet_json(const IET& v);
IET parse_iet(const Json& j);

Json elements_json(const std::vector<FieldElement>& v);
std::vector<FieldElement> parse_elements(const Json& j);

Json surface_json(const TranslationSurface& s);
TranslationSurface parse_surface(const Json& j);

// Polygons carry their interior angles as fractions of a half turn, stored as
// ["p", "q"] pairs next to the exact vertices.
Json polygon_json(const RationalPolygon& p);
RationalPolygon parse_polygon(const Json& j);

// File plumbing. Writes go through a sibling temp file and a rename so
// readers never observe a half-written file.
Json load_json(const std::string& path);
void save_json(const std::string& path, const Json& j);
void save_text(const std::string& path, const std::string& content);

}  // namespace veechmix
