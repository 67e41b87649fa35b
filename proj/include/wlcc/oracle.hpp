#pragma once

#include <optional>

#include "wlcc/structure.hpp"

namespace wlcc::oracle {

// Fixpoint by repeated splitting of classes on exact p(uv) count vectors;
// returns the stable partition of V^2 as dense ids by first occurrence.
// Independent of the closure module's code path.
std::vector<int> closure_oracle(const Rainbow& r);

// Complete backtracking search over color-class-respecting bijections.
// With respect_colors off, vertex (loop) colors are ignored and only the
// off-diagonal colors must agree.  n <= 40.
std::optional<PointMap> graph_iso(const ColoredSquareMatrix& g, const ColoredSquareMatrix& h,
                                  bool respect_colors);

// Switch sets over the fiber-graph edges (ascending edge order); bit i of a
// mask switches edges[i].
struct SwitchSetFamily {
    std::vector<std::pair<int, int>> edges;
    std::vector<uint32_t> masks;  // ascending
};

// the class permutation f_S for a switch mask
std::vector<int> switch_class_perm(const CoherentConfiguration& c,
                                   const std::vector<std::pair<int, int>>& edges, uint32_t mask);

// All bound permutations f_S that preserve every intersection number,
// verified by a full collocated-triple scan.  Requires an irredundant
// configuration with at most 14 non-uniform interspaces.
SwitchSetFamily enumerate_strict_algebraic_automorphisms(const CoherentConfiguration& c);

struct StrictCombinatorialAutomorphisms {
    std::vector<std::pair<int, int>> edges;
    std::vector<PointMap> points;
    std::vector<uint32_t> induced_masks;  // switch set induced by points[i]
};

// Product enumeration of the per-cell color-preserving groups, filtered to
// configuration automorphisms; the induced class map of each element is the
// switch set it realizes.  Candidate count is capped at 2^22.
StrictCombinatorialAutomorphisms enumerate_strict_combinatorial_automorphisms(
    const CoherentConfiguration& c);

// set equality of the strict algebraic automorphisms with the induced ones
bool separable_oracle_irredundant(const CoherentConfiguration& c);

}  // namespace wlcc::oracle
