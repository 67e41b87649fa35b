#pragma once

#include <optional>

#include "wlcc/core.hpp"

namespace wlcc {

struct ClosureResult {
    CoherentConfiguration config;
    std::vector<int> lineage;  // final class id -> original color id
    int rounds = 0;            // minimum t with R^t = R^{t-1}
};

// Coarsest coherent configuration refining the rainbow (the 2-WL stable
// partition).  Naive O(n^3) per round; new colors per round are assigned by
// the lexicographic rank of (old color, sorted multiset of color pairs).
ClosureResult coherent_closure(const Rainbow& r);

struct EquivalenceWitness {
    ClosureResult g, h;
    std::vector<int> class_map;  // class of g-closure -> class of h-closure, same 2-WL color
};

struct Wl2Result {
    bool equivalent = false;
    int rounds = 0;  // rounds run before verdict
    std::optional<EquivalenceWitness> witness;
};

// Joint lockstep refinement of both graphs over a shared signature
// dictionary; aborts at the first round whose per-color histograms differ.
Wl2Result wl2_equivalent(const ColoredSquareMatrix& g, const ColoredSquareMatrix& h);

}  // namespace wlcc
