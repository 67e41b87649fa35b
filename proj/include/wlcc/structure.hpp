#pragma once

#include "wlcc/core.hpp"

namespace wlcc {

enum class CellClass { Trivial1, Pair2, K3, DirC3, K4, F4, C4, DirC4 };

// Non-uniform interspace taxonomy for fibers of size <= 4.  The 3- and
// 4-class 4x4 families carry no names in the source taxonomy; the a/b
// suffix says whether the valency-2 part (resp. some pair of matching
// factors) forms two 4-cycles (a) or one 8-cycle (b).
enum class InterspaceClass {
    Uniform,
    Match2x2,    // 2x2, two matchings
    TwoOf3x3a,   // 3x3, matching + valency-2 complement
    TwoOf3x3b,   // 3x3, three matchings
    TwoK12,      // 2x4
    FourK11,     // 4x4, matching + valency-3 complement
    TwoK22,      // 4x4, two classes of two complete 2x2 blocks
    C8,          // 4x4, two 8-cycle classes
    Three4x4a,   // 4x4, two matchings + two 4-cycles
    Three4x4b,   // 4x4, two matchings + 8-cycle
    Four4x4a,    // 4x4, four matchings, every factor pair = two 4-cycles
    Four4x4b,    // 4x4, four matchings, some factor pair = 8-cycle
};

const char* to_string(CellClass c);
const char* to_string(InterspaceClass c);

struct InterspaceInfo {
    InterspaceClass tag = InterspaceClass::Uniform;
    bool contains_matching = false;
};

CellClass classify_cell(const CoherentConfiguration& c, int fiber);
InterspaceInfo classify_interspace(const CoherentConfiguration& c, int fx, int fy);

struct MatchingRef {
    int fiber = -1;
    int cls = -1;  // symmetric irreflexive valency-1 class inside the fiber's cell
    bool operator==(const MatchingRef& o) const { return fiber == o.fiber && cls == o.cls; }
};

// The matching basis relation in the cell of `fy` determined by the
// interspace C[fx,fy]; requires that interspace to be of type TwoK12,
// TwoK22 or C8.
MatchingRef determined_matching(const CoherentConfiguration& c, int fx, int fy);

enum class ConnectionKind { Direct, Skewed };

// Compares the matchings determined at Y by C[X,Y] and C[Z,Y].
ConnectionKind connection_kind(const CoherentConfiguration& c, int X, int Y, int Z);

struct FiberGraph {
    int nfibers = 0;
    std::vector<std::pair<int, int>> edges;  // fx < fy, non-uniform interspaces, sorted
    std::vector<std::vector<int>> adj;

    bool adjacent(int fx, int fy) const;
    int degree(int f) const { return int(adj[f].size()); }
    bool connected() const;
    std::vector<std::vector<int>> components() const;  // each sorted, ordered by min fiber
};

FiberGraph fiber_graph(const CoherentConfiguration& c);

struct DccHypergraph {
    std::vector<std::vector<int>> hyperedges;  // fiber ids, each sorted; list sorted lex
    // fiber -> (hyperedge index, matching class id determined at that fiber)
    std::vector<std::vector<std::pair<int, int>>> incidence;
    std::vector<std::vector<int>> edge_to_hyperedge;  // [fx][fy] -> hyperedge index or -1

    int degree(int fiber) const { return int(incidence[fiber].size()); }
};

// Clique partition of the fiber graph into directly-connected families.
// Requires an irredundant configuration.
DccHypergraph dcc(const CoherentConfiguration& c);

std::vector<Restriction> decompose_direct_sum(const CoherentConfiguration& c);

enum class IrredundancyDefect { None, Decomposable, FiberSize, MatchingInterspace, C8Interspace };

struct IrredundancyCheck {
    bool irredundant = false;
    IrredundancyDefect reason = IrredundancyDefect::None;
};

const char* to_string(IrredundancyDefect d);

IrredundancyCheck is_irredundant(const CoherentConfiguration& c);

}  // namespace wlcc
