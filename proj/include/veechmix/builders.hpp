#pragma once

#include <vector>

#include "veechmix/iet.hpp"
#include "veechmix/surface.hpp"

namespace veechmix {

// Rectangles of width lambda_j and height t_j over the exchange intervals,
// each closed into a vertical cylinder (left wall glued to right wall), tops
// glued onto the base in exchange order. The vertical flow's first return to
// the base is exactly the exchange, with return time t_j over interval j.
TranslationSurface suspend(const IET& iet, const std::vector<FieldElement>& heights);

// One pair of parallel slits: copy A from anchor_a, copy B from anchor_b,
// both spanning `vector`. Only horizontal vectors (positive x, zero y) are
// supported; the two copies are cross-identified by translation.
struct SlitPair {
  Vec2 anchor_a;
  Vec2 anchor_b;
  Vec2 vector;
};

// Unit torus (opposite sides identified) cut along both copies of every slit,
// with lower side of A glued to upper side of B and vice versa. Slit levels
// stay strictly between the horizontal seams; endpoints may touch the
// vertical seam x=0 / x=1. Slits may touch other slits only at endpoints.
TranslationSurface build_slitted_torus(const std::vector<SlitPair>& slits,
                                       std::string provenance = {});

// The five-pair configuration whose vertical flow returns to the x-axis as a
// four-interval exchange with permutation (4,2,3,1) and rationally
// independent return times over `basis` (needs at least two symbols past the
// rational one). Found by a grid search over block-structured placements; see
// tools/fig1_search.cpp for the search and the derivation of the lift.
std::vector<SlitPair> fig1_default_slits(const BasisPtr& basis);

// build_slitted_torus(fig1_default_slits(basis)) with provenance recording
// the search.
TranslationSurface build_fig1_default(const BasisPtr& basis);

// Unit torus over the given basis; convenience for flow tests.
TranslationSurface unit_torus(const BasisPtr& basis);

// The L-shaped horizontal-vertical surface ([0,b) x [0,a) plus [0,a) x [a,b))
// with every boundary point identified to the opposite point of its side.
// Genus 2, one cone point of angle 6*pi. Requires 0 < a < b.
TranslationSurface build_hv_surface(const FieldElement& a, const FieldElement& b);

}  // namespace veechmix
