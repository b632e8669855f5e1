#include "veechmix/builders.hpp"

#include <cstddef>
#include <string>
#include <utility>

#include "veechmix/errors.hpp"

namespace veechmix {
namespace {

// Sorted insert under exact comparison; duplicates are dropped.
void insert_cut(std::vector<FieldElement>& cuts, const FieldElement& x) {
  for (std::size_t i = 0; i < cuts.size(); ++i) {
    const int c = FieldElement::compare(x, cuts[i]);
    if (c == 0) return;
    if (c < 0) {
      cuts.insert(cuts.begin() + static_cast<std::ptrdiff_t>(i), x);
      return;
    }
  }
  cuts.push_back(x);
}

std::size_t cut_index(const std::vector<FieldElement>& cuts, const FieldElement& x) {
  for (std::size_t i = 0; i < cuts.size(); ++i) {
    if (FieldElement::compare(cuts[i], x) == 0) return i;
  }
  throw InternalError("expected cut point is missing");
}

// Horizontal strip whose bottom and top carry independent subdivisions.
// Vertices run left to right along the bottom, then right to left along the
// top, so the walls fall out as the two joining edges.
struct Strip {
  std::vector<FieldElement> bottom;  // ascending, both endpoints included
  std::vector<FieldElement> top;
  FieldElement y0;
  FieldElement y1;

  std::vector<Vec2> vertices() const {
    std::vector<Vec2> v;
    v.reserve(bottom.size() + top.size());
    for (const auto& x : bottom) v.push_back(Vec2{x, y0});
    for (auto it = top.rbegin(); it != top.rend(); ++it) v.push_back(Vec2{*it, y1});
    return v;
  }

  // Piece i lies between consecutive cuts i and i+1 of the respective run.
  int bottom_edge(std::size_t piece) const { return static_cast<int>(piece); }
  int right_edge() const { return static_cast<int>(bottom.size()) - 1; }
  int top_edge(std::size_t piece) const {
    return static_cast<int>(bottom.size() + top.size() - 2 - piece);
  }
  int left_edge() const { return static_cast<int>(bottom.size() + top.size()) - 1; }
};

}  // namespace

TranslationSurface suspend(const IET& iet, const std::vector<FieldElement>& heights) {
  const std::size_t m = iet.size();
  if (!is_irreducible(iet.perm())) {
    throw ReducibleInput("suspension needs an irreducible permutation");
  }
  if (heights.size() != m) throw BadParameters("need exactly one height per interval");
  for (const auto& t : heights) {
    if (t.basis() != iet.basis()) throw BasisMismatch("heights must share the length basis");
    if (t.sign() <= 0) throw NonPositiveHeight("heights must be positive");
  }

  const auto& lefts = iet.left_endpoints();
  const auto trans = iet.translations();

  // Common refinement of the domain cuts and the image cuts. Subdividing all
  // tops and bottoms by it makes every top piece land on exactly one bottom
  // piece of the target rectangle.
  std::vector<FieldElement> cuts;
  for (const auto& l : lefts) insert_cut(cuts, l);
  for (std::size_t j = 0; j < m; ++j) {
    insert_cut(cuts, lefts[j] + trans[j]);
    insert_cut(cuts, lefts[j + 1] + trans[j]);
  }

  // Bottoms are cut by the refinement directly; tops by its preimage under
  // x -> x + w_j, so that every top piece lands exactly on a bottom piece.
  const FieldElement zero = FieldElement::zero(iet.basis());
  std::vector<Strip> rects;
  rects.reserve(m);
  for (std::size_t j = 0; j < m; ++j) {
    Strip r{{}, {}, zero, heights[j]};
    const FieldElement img_left = lefts[j] + trans[j];
    const FieldElement img_right = lefts[j + 1] + trans[j];
    for (const auto& c : cuts) {
      if (FieldElement::compare(lefts[j], c) <= 0 &&
          FieldElement::compare(c, lefts[j + 1]) <= 0) {
        r.bottom.push_back(c);
      }
      if (FieldElement::compare(img_left, c) <= 0 &&
          FieldElement::compare(c, img_right) <= 0) {
        r.top.push_back(c - trans[j]);
      }
    }
    rects.push_back(std::move(r));
  }

  std::vector<Pairing> pairings;
  for (std::size_t j = 0; j < m; ++j) {
    const int p = static_cast<int>(j);
    pairings.push_back(Pairing{EdgeRef{p, rects[j].left_edge()}, EdgeRef{p, rects[j].right_edge()}});
    for (std::size_t i = 0; i + 1 < rects[j].top.size(); ++i) {
      const FieldElement a = rects[j].top[i] + trans[j];
      const FieldElement b = rects[j].top[i + 1] + trans[j];
      std::size_t k = 0;
      while (k < m && !(FieldElement::compare(lefts[k], a) <= 0 &&
                        FieldElement::compare(b, lefts[k + 1]) <= 0)) {
        ++k;
      }
      if (k == m) throw InternalError("image piece escapes the domain");
      const std::size_t piece = cut_index(rects[k].bottom, a);
      if (FieldElement::compare(rects[k].bottom.at(piece + 1), b) != 0) {
        throw InternalError("image piece straddles a bottom cut");
      }
      pairings.push_back(Pairing{EdgeRef{p, rects[j].top_edge(i)},
                                 EdgeRef{static_cast<int>(k), rects[k].bottom_edge(piece)}});
    }
  }

  std::vector<std::vector<Vec2>> polys;
  polys.reserve(m);
  for (const auto& r : rects) polys.push_back(r.vertices());
  return TranslationSurface(polys, pairings, "suspension m=" + std::to_string(m));
}

TranslationSurface unit_torus(const BasisPtr& basis) {
  const FieldElement z = FieldElement::zero(basis);
  const FieldElement o = FieldElement::one(basis);
  std::vector<std::vector<Vec2>> polys = {
      {Vec2{z, z}, Vec2{o, z}, Vec2{o, o}, Vec2{z, o}}};
  std::vector<Pairing> pairings = {Pairing{EdgeRef{0, 0}, EdgeRef{0, 2}},
                                   Pairing{EdgeRef{0, 1}, EdgeRef{0, 3}}};
  return TranslationSurface(polys, pairings, "unit torus");
}

TranslationSurface build_slitted_torus(const std::vector<SlitPair>& slits,
                                       std::string provenance) {
  const BasisPtr basis =
      slits.empty() ? RealBasis::rationals() : slits.front().anchor_a.x.basis();
  const FieldElement zero = FieldElement::zero(basis);
  const FieldElement one = FieldElement::one(basis);

  struct Seg {
    FieldElement y;
    FieldElement x1;
    FieldElement x2;
    std::size_t pair;
    // Filled in while walking the levels.
    EdgeRef lower{-1, -1};
    EdgeRef upper{-1, -1};
  };

  std::vector<Seg> segs;
  for (std::size_t i = 0; i < slits.size(); ++i) {
    const SlitPair& s = slits[i];
    if (!s.vector.y.is_zero()) throw BadParameters("slit vectors must be horizontal");
    if (s.vector.x.sign() <= 0) throw BadParameters("slit vectors need positive length");
    for (const Vec2* anchor : {&s.anchor_a, &s.anchor_b}) {
      Seg g{anchor->y, anchor->x, anchor->x + s.vector.x, i, {}, {}};
      // Endpoints may touch the vertical seam x=0 / x=1 (one point of the
      // torus), but levels stay strictly between the horizontal seams.
      if (g.x1.sign() < 0 || FieldElement::compare(g.x2, one) > 0 || g.y.sign() <= 0 ||
          FieldElement::compare(g.y, one) >= 0) {
        throw SlitOutsideSquare("slits must lie inside the unit square with 0 < y < 1");
      }
      segs.push_back(std::move(g));
    }
  }
  for (std::size_t i = 0; i < segs.size(); ++i) {
    for (std::size_t j = i + 1; j < segs.size(); ++j) {
      if (FieldElement::compare(segs[i].y, segs[j].y) != 0) continue;
      const bool apart = FieldElement::compare(segs[i].x2, segs[j].x1) <= 0 ||
                         FieldElement::compare(segs[j].x2, segs[i].x1) <= 0;
      if (!apart) throw OverlappingSlits("same-level slits may only touch at endpoints");
    }
  }

  std::vector<FieldElement> levels;
  insert_cut(levels, zero);
  insert_cut(levels, one);
  for (const auto& g : segs) insert_cut(levels, g.y);

  // x cuts per level: wall positions plus every segment endpoint living there.
  std::vector<std::vector<FieldElement>> xcuts(levels.size());
  for (std::size_t li = 0; li < levels.size(); ++li) {
    insert_cut(xcuts[li], zero);
    insert_cut(xcuts[li], one);
    for (const auto& g : segs) {
      if (FieldElement::compare(g.y, levels[li]) == 0) {
        insert_cut(xcuts[li], g.x1);
        insert_cut(xcuts[li], g.x2);
      }
    }
  }

  std::vector<Strip> strips;
  for (std::size_t li = 0; li + 1 < levels.size(); ++li) {
    strips.push_back(Strip{xcuts[li], xcuts[li + 1], levels[li], levels[li + 1]});
  }

  std::vector<Pairing> pairings;
  for (std::size_t si = 0; si < strips.size(); ++si) {
    const int p = static_cast<int>(si);
    pairings.push_back(
        Pairing{EdgeRef{p, strips[si].left_edge()}, EdgeRef{p, strips[si].right_edge()}});
  }
  const int last = static_cast<int>(strips.size()) - 1;
  pairings.push_back(Pairing{EdgeRef{0, strips.front().bottom_edge(0)},
                             EdgeRef{last, strips.back().top_edge(0)}});

  // Interior seams: free pieces close back up, slit pieces wait for their
  // cross partner.
  for (std::size_t li = 1; li + 1 < levels.size(); ++li) {
    const std::size_t below = li - 1;
    const std::size_t above = li;
    for (std::size_t piece = 0; piece + 1 < xcuts[li].size(); ++piece) {
      const FieldElement& c1 = xcuts[li][piece];
      const FieldElement& c2 = xcuts[li][piece + 1];
      Seg* owner = nullptr;
      for (auto& g : segs) {
        if (FieldElement::compare(g.y, levels[li]) == 0 &&
            FieldElement::compare(g.x1, c1) == 0 && FieldElement::compare(g.x2, c2) == 0) {
          owner = &g;
          break;
        }
      }
      const EdgeRef lower{static_cast<int>(below), strips[below].top_edge(piece)};
      const EdgeRef upper{static_cast<int>(above), strips[above].bottom_edge(piece)};
      if (owner == nullptr) {
        pairings.push_back(Pairing{lower, upper});
      } else {
        owner->lower = lower;
        owner->upper = upper;
      }
    }
  }
  for (std::size_t i = 0; i + 1 < segs.size(); i += 2) {
    const Seg& a = segs[i];
    const Seg& b = segs[i + 1];
    pairings.push_back(Pairing{a.lower, b.upper});
    pairings.push_back(Pairing{b.lower, a.upper});
  }

  std::vector<std::vector<Vec2>> polys;
  polys.reserve(strips.size());
  for (const auto& s : strips) polys.push_back(s.vertices());
  if (provenance.empty()) {
    provenance = "slitted torus, " + std::to_string(slits.size()) + " slit pair(s)";
  }
  return TranslationSurface(polys, pairings, std::move(provenance));
}

// Five horizontal slit pairs on the unit torus. The wide pair swaps the two
// halves of the circle; the four narrow pairs route the thirds of the left
// half so that the upward flow returns to the x-axis as the exchange
//   lengths (1/2, 1/6, 1/6, 1/6),  permutation (4, 2, 3, 1),
// with return times
//   (1/16, 33/16 - 1/16 s2, 2 - 1/16 s1 + 1/16 s2, 7/4 + 1/16 s1).
// Only the level order of slits sharing a third of [0,1/2) matters for the
// combinatorics; the two symbol-lifted slits sit alone over their thirds, so
// any level in (1/32, 1) works, and the lift keeps the times rationally
// independent. First full hit of the grid search in tools/fig1_search.cpp.
std::vector<SlitPair> fig1_default_slits(const BasisPtr& basis) {
  if (basis == nullptr || basis->size() < 3) {
    throw BadParameters("fig1-default needs two symbols past the rational coordinate");
  }
  auto rat = [&](long long n, long long d) {
    return FieldElement::from_rational(basis, Rational(n, d));
  };
  const FieldElement lift1 = FieldElement::scaled_symbol(basis, 1, Rational(1, 16));
  const FieldElement lift2 = FieldElement::scaled_symbol(basis, 2, Rational(1, 16));
  if (FieldElement::compare(lift1, rat(1, 32)) <= 0 ||
      FieldElement::compare(lift1, rat(1, 1)) >= 0 ||
      FieldElement::compare(lift2, rat(1, 32)) <= 0 ||
      FieldElement::compare(lift2, rat(1, 1)) >= 0) {
    throw BadParameters(
        "fig1-default needs 1/16*s1 and 1/16*s2 inside (1/32, 1)");
  }
  const FieldElement zero = FieldElement::zero(basis);
  const Vec2 wide{rat(1, 2), zero};
  const Vec2 narrow{rat(1, 6), zero};
  return {
      SlitPair{Vec2{zero, rat(1, 32)}, Vec2{rat(1, 2), rat(31, 32)}, wide},
      SlitPair{Vec2{rat(1, 3), lift1}, Vec2{zero, rat(3, 16)}, narrow},
      SlitPair{Vec2{rat(1, 6), lift2}, Vec2{zero, rat(1, 8)}, narrow},
      SlitPair{Vec2{zero, rat(1, 4)}, Vec2{zero, rat(3, 8)}, narrow},
      SlitPair{Vec2{zero, rat(5, 16)}, Vec2{zero, rat(7, 16)}, narrow},
  };
}

TranslationSurface build_fig1_default(const BasisPtr& basis) {
  return build_slitted_torus(fig1_default_slits(basis),
                             "fig1-default: five slit pairs, grid-searched so the "
                             "vertical return map on the x-axis is (4,2,3,1)");
}

TranslationSurface build_hv_surface(const FieldElement& a, const FieldElement& b) {
  if (a.basis() != b.basis()) throw BasisMismatch("side lengths must share a basis");
  if (a.sign() <= 0 || FieldElement::compare(a, b) >= 0) {
    throw BadParameters("need 0 < a < b");
  }
  const FieldElement z = FieldElement::zero(a.basis());
  std::vector<std::vector<Vec2>> polys = {{
      Vec2{z, z}, Vec2{a, z}, Vec2{b, z}, Vec2{b, a},
      Vec2{a, a}, Vec2{a, b}, Vec2{z, b}, Vec2{z, a},
  }};
  std::vector<Pairing> pairings = {
      Pairing{EdgeRef{0, 0}, EdgeRef{0, 5}},
      Pairing{EdgeRef{0, 1}, EdgeRef{0, 3}},
      Pairing{EdgeRef{0, 2}, EdgeRef{0, 7}},
      Pairing{EdgeRef{0, 4}, EdgeRef{0, 6}},
  };
  return TranslationSurface(polys, pairings,
                            "hv a=" + a.to_string() + " b=" + b.to_string());
}

}  // namespace veechmix
