#pragma once

#include "wlcc/gf2.hpp"
#include "wlcc/structure.hpp"

namespace wlcc {

// log2 |group of strict algebraic automorphisms| = sum over dcc hyperedges
// of (|C| - 1).
int saa_order_log2(const CoherentConfiguration& c);

struct CompanionGraph {
    ColoredSquareMatrix graph;
    // (fx, fy) with fx < fy -> class id whose block carries the edges
    std::map<std::pair<int, int>, int> block_class;
};

// Vertex-colored graph G(C): classes = fibers, empty inside fibers, the
// lexicographically least 2K22 block of every non-uniform interspace.
CompanionGraph build_companion(const CoherentConfiguration& c);

struct SwitchVariable {
    int fiber = -1;
    int hyperedge = -1;
};

struct SwitchSystem {
    DccHypergraph hyper;
    std::vector<SwitchVariable> vars;            // canonical incidence order
    std::vector<std::vector<int>> var_index;     // [fiber][hyperedge] -> var or -1
    std::vector<Gf2Vector> rows;                 // parity rows then edge rows
    int n_parity_rows = 0;
    std::vector<std::pair<int, int>> edge_rows;  // fiber-graph edge per edge row, sorted
};

// Parity row per dcc-degree-3 fiber (its cell is forced to be F4), one edge
// row per fiber-graph edge.  Fibers of dcc-degree <= 2 contribute no cell
// row: every flip/fix pattern on their determined matchings is realized by a
// cell automorphism.
SwitchSystem switch_system(const CoherentConfiguration& c);

// Right-hand side of the generator f_{X,C}: 1 exactly on the edge rows
// {X, Y} with Y in C \ {X}.
std::vector<char> rhs_for_generator(const SwitchSystem& sys, int fiber, int hyperedge);

struct IrredundantVerdict {
    bool separable = false;
    // first failing incidence in canonical order when non-separable
    int fail_fiber = -1;
    int fail_hyperedge = -1;
};

IrredundantVerdict decide_separable_irredundant(const CoherentConfiguration& c);

// log2 |color-preserving automorphism group| for configurations whose every
// fiber has dcc-degree 3 (all cells F4, all matchings determined): the
// kernel dimension of the homogeneous switch system.
int scac_order_log2_all_f4(const CoherentConfiguration& c);

}  // namespace wlcc
