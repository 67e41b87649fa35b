#pragma once

#include <array>
#include <cstdint>

#include "wlcc/core.hpp"

namespace wlcc::census {

// Black/white coloring of the truncated tetrahedron T: four triangles, one
// per fiber; corner (i,j) of triangle i carries the matching determined at
// fiber i by the interspace with fiber j; bit index = 3*i + rank of j.
struct TetraColoring {
    uint16_t bits = 0;  // 12 bits, 1 = black

    bool black(int triangle, int corner) const { return bits >> (3 * triangle + corner) & 1; }
};

// corner index of triangle i pointing at triangle j (rank of j among the
// other three triangles), and its inverse
int corner_index(int triangle, int other);
int corner_target(int triangle, int corner);

// the 24 automorphisms of T as permutations of the 12 corner slots
std::array<std::array<int, 12>, 24> tetra_automorphisms();

// number of vertex colorings of T in n colors up to Aut(T)
uint64_t polya_count(uint64_t ncolors);

// lexicographically least members of the 218 orbits of 2-colorings
std::vector<TetraColoring> enumerate_coloring_orbits();

// The graph pair of one coloring: G built on the 16-point configuration with
// cell subgraphs covering the black matchings, H = G with the interspace
// between the two least fibers complemented.
std::pair<ColoredSquareMatrix, ColoredSquareMatrix> materialize_pair(const TetraColoring& t);

struct CensusReport {
    int classes = 0;
    int graphs = 0;
    std::vector<TetraColoring> colorings;
    std::vector<std::string> verdicts;  // per class
    bool all_passed = false;
};

// Writes class_<k>_a.ccm / class_<k>_b.ccm plus report.tsv; verifies each
// pair (closure = the 16-point configuration, WL2-equivalent, non-isomorphic,
// non-amenable).  Empty out_dir skips the files.  threads = 0 picks the
// hardware count.
CensusReport census16(const std::string& out_dir, int threads = 0);

// the all-white pair with the rook member second
struct ShrikhandeRook {
    ColoredSquareMatrix shrikhande;
    ColoredSquareMatrix rook;
};
ShrikhandeRook shrikhande_rook_pair();

}  // namespace wlcc::census
