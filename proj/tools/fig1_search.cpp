// Deterministic search for the fig1-default slit configuration.
//
// Frame: one wide pair A=[0,1/2]x{1/32} <-> B=[1/2,1]x{31/32} swaps the two
// halves of the circle. Four narrow pairs (length 1/6) live over the thirds
// of [0,1/2); the search enumerates which third each slit copy covers and the
// level order inside each third (levels take the slots 2/16..9/16 by third
// and stack position). An integer-exact strand simulation keeps only
// arrangements where
//   - every vertical strand returns to the x-axis within 24 crossings,
//   - the return map merges to four intervals with permutation (4,2,3,1),
//   - sum(length * time) == 1, so the section sweeps the whole torus and the
//     vertical flow is the genuine suspension of its return map.
// Each surviving skeleton is re-verified with build_slitted_torus plus
// first_return_map; the first verified one is lifted: two slit levels from
// different pairs move to rational multiples of the basis symbols (staying
// inside their stack slots) until check_weak_mixing certifies the return
// times at rank 2. The preset frozen into the library is this first full
// success, printed below in ready-to-paste form.

#include <algorithm>
#include <array>
#include <cstdio>
#include <optional>
#include <string>
#include <vector>

#include "veechmix/builders.hpp"
#include "veechmix/errors.hpp"
#include "veechmix/flow.hpp"
#include "veechmix/weakmix.hpp"

using namespace veechmix;

namespace {

// Sides are stored pairwise: side s and side s^1 are the two copies of one
// slit pair. Side 0/1 is the wide pair, sides 2..9 the narrow ones.
struct Side {
  int x1_6;      // shadow start, sixths of the circle
  int len_6;     // shadow length, sixths
  int level_32;  // slit level, 1/32 units
};

constexpr int kTargetPerm[4] = {4, 2, 3, 1};

struct CellMap {
  // Per sixth of the circle: landing offset in twelfths, rise in 1/32 units,
  // and the multiset of sides crossed. The multiset is the lift-invariant
  // part of the return time: cells with equal shift and equal multiset merge
  // under every level assignment, different multisets are separated by the
  // symbol lift.
  std::array<int, 6> shift_12{};
  std::array<int, 6> time_32{};
  std::array<std::vector<int>, 6> crossed;
};

bool simulate(const std::vector<Side>& sides, CellMap& out) {
  for (int cell = 0; cell < 6; ++cell) {
    int x = 2 * cell + 1;  // twelfths; cell midpoints stay off slit endpoints
    int y = 0;
    int time = 0;
    bool landed = false;
    std::vector<int> crossed;
    for (int step = 0; step < 24 && !landed; ++step) {
      int best = -1;
      for (std::size_t i = 0; i < sides.size(); ++i) {
        const Side& s = sides[i];
        if (s.level_32 <= y) continue;
        if (2 * s.x1_6 <= x && x < 2 * (s.x1_6 + s.len_6)) {
          if (best < 0 || s.level_32 < sides[best].level_32) best = static_cast<int>(i);
        }
      }
      if (best < 0) {
        time += 32 - y;
        landed = true;
        break;
      }
      const Side& hit = sides[best];
      const Side& par = sides[static_cast<std::size_t>(best) ^ 1];
      crossed.push_back(best);
      time += hit.level_32 - y;
      x = ((x + 2 * (par.x1_6 - hit.x1_6)) % 12 + 12) % 12;
      y = par.level_32;
    }
    if (!landed) return false;
    std::sort(crossed.begin(), crossed.end());
    out.shift_12[cell] = ((x - (2 * cell + 1)) % 12 + 12) % 12;
    out.time_32[cell] = time;
    out.crossed[cell] = std::move(crossed);
  }
  return true;
}

struct Skeleton {
  std::vector<int> lengths_6;  // interval lengths after merging, sixths
  std::vector<int> perm;       // 1-indexed images
};

// Merge adjacent cells with equal shift and equal crossing multiset into
// exchange intervals and read the permutation off the landing order. Rejects
// anything that is not a four-interval exchange with the target permutation
// tiling the circle exactly once.
bool classify(const CellMap& m, Skeleton& out) {
  struct Block {
    int start_12, len_12, shift_12, time_32;
    const std::vector<int>* crossed;
  };
  std::vector<Block> blocks;
  for (int cell = 0; cell < 6; ++cell) {
    if (!blocks.empty() && blocks.back().shift_12 == m.shift_12[cell] &&
        *blocks.back().crossed == m.crossed[cell]) {
      blocks.back().len_12 += 2;
      continue;
    }
    blocks.push_back(Block{2 * cell, 2, m.shift_12[cell], m.time_32[cell], &m.crossed[cell]});
  }
  if (blocks.size() != 4) return false;

  long long swept = 0;
  for (int cell = 0; cell < 6; ++cell) swept += 2LL * m.time_32[cell];
  if (swept != 12 * 32) return false;  // section must sweep the whole torus

  std::array<int, 4> image_start{};
  for (int j = 0; j < 4; ++j) {
    image_start[j] = (blocks[j].start_12 + blocks[j].shift_12) % 12;
  }
  std::array<int, 4> order{0, 1, 2, 3};
  std::sort(order.begin(), order.end(),
            [&](int a, int b) { return image_start[a] < image_start[b]; });
  int expect = 0;
  for (int r = 0; r < 4; ++r) {
    if (image_start[order[r]] != expect) return false;  // images must tile
    expect += blocks[order[r]].len_12;
  }
  if (expect != 12) return false;

  out.lengths_6.clear();
  out.perm.assign(4, 0);
  for (int j = 0; j < 4; ++j) out.lengths_6.push_back(blocks[j].len_12 / 2);
  for (int r = 0; r < 4; ++r) out.perm[order[r]] = r + 1;
  for (int j = 0; j < 4; ++j) {
    if (out.perm[j] != kTargetPerm[j]) return false;
  }
  return true;
}

std::vector<SlitPair> to_slit_pairs(const std::vector<Side>& sides, const BasisPtr& basis,
                                    const std::vector<FieldElement>& levels) {
  auto rat = [&](long long n, long long d) {
    return FieldElement::from_rational(basis, Rational(n, d));
  };
  std::vector<SlitPair> pairs;
  for (std::size_t s = 0; s + 1 < sides.size(); s += 2) {
    pairs.push_back(SlitPair{Vec2{rat(sides[s].x1_6, 6), levels[s]},
                             Vec2{rat(sides[s + 1].x1_6, 6), levels[s + 1]},
                             Vec2{rat(sides[s].len_6, 6), rat(0, 1)}});
  }
  return pairs;
}

std::optional<ReturnMapResult> matching_return_map(const TranslationSurface& surf,
                                                   const BasisPtr& basis) {
  const Direction up{FieldElement::zero(basis), FieldElement::one(basis)};
  std::optional<ReturnMapResult> r;
  try {
    r.emplace(first_return_map(surf, up, FieldElement::zero(basis)));
  } catch (const Error&) {
    return std::nullopt;
  }
  if (r->iet.size() != 4) return std::nullopt;
  for (int j = 1; j <= 4; ++j) {
    if (r->iet.perm().image(j) != kTargetPerm[j - 1]) return std::nullopt;
  }
  return r;
}

std::string code_rational(const Rational& q) {
  return "rat(" + num(q).str() + ", " + den(q).str() + ")";
}

}  // namespace

int main() {
  const BasisPtr basis = RealBasis::make({"1", "beta1", "beta2"},
                                         {1.0, 0.5411961001461969, 0.8314696123025452});

  std::vector<Side> sides(10);
  sides[0] = Side{0, 3, 1};
  sides[1] = Side{3, 3, 31};

  long long arrangements = 0;
  long long skeleton_hits = 0;
  bool done = false;

  for (int assign = 0; assign < 6561 && !done; ++assign) {
    std::array<std::vector<int>, 3> stacks;
    int code = assign;
    for (int s = 2; s < 10; ++s) {
      stacks[code % 3].push_back(s);
      code /= 3;
    }
    // Odometer over the per-block stack orders (bottom to top).
    while (!done) {
      ++arrangements;
      int slot = 0;
      for (int b = 0; b < 3; ++b) {
        for (int s : stacks[b]) {
          sides[s] = Side{b, 1, 2 * (slot + 2)};  // slots 2/16 .. 9/16
          ++slot;
        }
      }
      CellMap cells;
      Skeleton skel;
      if (simulate(sides, cells) && classify(cells, skel)) {
        ++skeleton_hits;
        if (skeleton_hits <= 3) {
          std::printf("skeleton hit #%lld at arrangement %lld:\n", skeleton_hits,
                      arrangements);
          for (int s = 2; s < 10; ++s) {
            std::printf("  side %d: third %d, level %d/32\n", s, sides[s].x1_6,
                        sides[s].level_32);
          }
        }

        // Re-verify the rational skeleton with the real machinery.
        std::vector<FieldElement> levels;
        for (const Side& s : sides) {
          levels.push_back(FieldElement::from_rational(basis, Rational(s.level_32, 32)));
        }
        TranslationSurface surf = build_slitted_torus(to_slit_pairs(sides, basis, levels));
        if (!matching_return_map(surf, basis)) {
          std::printf("  (simulation hit rejected by first_return_map)\n");
        } else if (!done) {
          // Lift two levels from different pairs to symbol multiples, keeping
          // each inside its stack gap so the combinatorics cannot move.
          for (int si = 0; si < 10 && !done; ++si) {
            for (int sj = si + 1; sj < 10 && !done; ++sj) {
              if (si / 2 == sj / 2) continue;
              auto gap = [&](int s, Rational& lo, Rational& hi) {
                lo = Rational(1, 32);  // wide A level: everything sits above it
                hi = Rational(1, 1);
                for (int t = 2; t < 10; ++t) {
                  if (t == s || sides[t].x1_6 != sides[s].x1_6) continue;
                  Rational lv(sides[t].level_32, 32);
                  Rational mine(sides[s].level_32, 32);
                  if (lv < mine && lv > lo) lo = lv;
                  if (lv > mine && lv < hi) hi = lv;
                }
              };
              auto pick = [&](int s, std::size_t symbol, FieldElement& lifted) {
                if (s < 2) return false;  // keep the wide frame rational
                Rational lo, hi;
                gap(s, lo, hi);
                for (long long n = 1; n < 32; ++n) {
                  FieldElement cand =
                      FieldElement::scaled_symbol(basis, symbol, Rational(n, 16));
                  if (FieldElement::compare(cand,
                                            FieldElement::from_rational(basis, lo)) > 0 &&
                      FieldElement::compare(cand,
                                            FieldElement::from_rational(basis, hi)) < 0) {
                    lifted = cand;
                    return true;
                  }
                }
                return false;
              };
              FieldElement lift_i = FieldElement::zero(basis);
              FieldElement lift_j = FieldElement::zero(basis);
              if (!pick(si, 1, lift_i) || !pick(sj, 2, lift_j)) continue;
              std::vector<FieldElement> lifted = levels;
              lifted[si] = lift_i;
              lifted[sj] = lift_j;
              std::vector<SlitPair> pairs = to_slit_pairs(sides, basis, lifted);
              TranslationSurface lifted_surf = build_slitted_torus(pairs);
              auto lifted_map = matching_return_map(lifted_surf, basis);
              if (!lifted_map) continue;
              WeakMixVerdict v = check_weak_mixing(lifted_map->iet.perm(), lifted_map->times);
              if (v.status != WeakMixStatus::WeaklyMixingAE || v.rank_pair != 2) continue;

              std::printf("\nfirst full success (arrangement %lld):\n", arrangements);
              std::printf("  lifted sides: %d -> %s, %d -> %s\n", si,
                          lift_i.to_string().c_str(), sj, lift_j.to_string().c_str());
              std::printf("  slit pairs:\n");
              for (const SlitPair& p : pairs) {
                std::printf("    A=(%s, %s) B=(%s, %s) len=%s\n",
                            p.anchor_a.x.to_string().c_str(),
                            p.anchor_a.y.to_string().c_str(),
                            p.anchor_b.x.to_string().c_str(),
                            p.anchor_b.y.to_string().c_str(),
                            p.vector.x.to_string().c_str());
              }
              std::printf("  paste into fig1_default_slits:\n");
              for (const SlitPair& p : pairs) {
                auto pos = [&](const FieldElement& f) {
                  if (f.is_rational()) return code_rational(f.as_rational());
                  return std::string("<lifted ") + f.to_string() + ">";
                };
                std::printf("      SlitPair{Vec2{%s, %s}, Vec2{%s, %s}, Vec2{%s, zero}},\n",
                            pos(p.anchor_a.x).c_str(), pos(p.anchor_a.y).c_str(),
                            pos(p.anchor_b.x).c_str(), pos(p.anchor_b.y).c_str(),
                            pos(p.vector.x).c_str());
              }
              std::printf("  return times:");
              for (const FieldElement& t : lifted_map->times) {
                std::printf("  %s", t.to_string().c_str());
              }
              std::printf("\n  certificate: rank_pair=%d rank_with_one=%d\n",
                          static_cast<int>(v.rank_pair), static_cast<int>(v.rank_with_one));
              done = true;
            }
          }
        }
      }

      // Advance the stack-order odometer.
      int b = 0;
      while (b < 3 && !std::next_permutation(stacks[b].begin(), stacks[b].end())) ++b;
      if (b == 3) break;
    }
  }

  std::printf("\narrangements scanned: %lld, skeleton hits: %lld\n", arrangements,
              skeleton_hits);
  return done ? 0 : 1;
}
