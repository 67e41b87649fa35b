#pragma once

#include <iosfwd>

#include "wlcc/core.hpp"

namespace wlcc {

struct PartialLinearSpace {
    int npoints = 0;
    std::vector<std::vector<int>> lines;  // each sorted
};

// every line >= 2 points, two lines share <= 1 point, every point on <= 3
// lines, Gaifman graph connected
void validate_pls(const PartialLinearSpace& d);

struct SimpleGraph {
    int n = 0;
    std::vector<std::pair<int, int>> edges;  // u < v
};

// "graph <n>" then "e <u> <v>" lines; '#' comments
SimpleGraph read_edge_list(std::istream& in);
SimpleGraph read_edge_list_file(const std::string& path);

// "pls <npoints> <nlines>" then one line of point ids per line set
PartialLinearSpace read_pls(std::istream& in);
PartialLinearSpace read_pls_file(const std::string& path);
void write_pls(std::ostream& out, const PartialLinearSpace& d);

enum class DegreeOneCell { F4, C4, DirC4 };

// One 4-point fiber per point, per (point, line) a matching distinct across
// the point's lines, a 2K22 interspace inside every line connecting the two
// matchings, all cross-line interspaces uniform.  Degree-1 points get the
// `one_line_cell` cell; everything else is F4.
CoherentConfiguration pls_to_config(const PartialLinearSpace& d,
                                    DegreeOneCell one_line_cell = DegreeOneCell::F4);

// pls_to_config with lines = edges; the CFI-style family, fiber graph = g.
CoherentConfiguration skew_config(const SimpleGraph& g,
                                  DegreeOneCell one_line_cell = DegreeOneCell::F4);

// n points, lines {i, i+o1, i+o2} mod n
PartialLinearSpace cyclic_pls_offsets(int n, int o1, int o2);
PartialLinearSpace cyclic_pls(int n);  // offsets (2, 3), n >= 7

PartialLinearSpace fano();           // = cyclic_pls(7)
PartialLinearSpace mobius_kantor();  // = cyclic_pls(8)
PartialLinearSpace pappus();

// the unique non-separable 16-point configuration, skew_config(K4)
CoherentConfiguration t16();

// worked examples: two 3-cliques plus a 6-cycle of 2-cliques; three
// 3-cliques plus nine bridge 2-cliques
CoherentConfiguration example_two_triangles();
CoherentConfiguration example_mixed();

// small named graphs used by the CFI family
SimpleGraph path_graph(int k);
SimpleGraph cycle_graph(int k);
SimpleGraph complete_graph(int k);
SimpleGraph complete_bipartite(int a, int b);
SimpleGraph petersen_graph();
SimpleGraph mobius_kantor_graph();  // generalized Petersen GP(8,3)

}  // namespace wlcc
