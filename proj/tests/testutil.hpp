#pragma once

#include <algorithm>
#include <numeric>
#include <set>
#include <vector>

#include "wlcc/core.hpp"
#include "wlcc/generators.hpp"

namespace testutil {

// vertex-colored graph as a square matrix: loop color = class id, one edge
// color, one non-edge color
inline wlcc::ColoredSquareMatrix vertex_colored_graph(const std::vector<int>& vclass,
                                                      const std::vector<std::pair<int, int>>& edges) {
    int n = int(vclass.size());
    int nclasses = *std::max_element(vclass.begin(), vclass.end()) + 1;
    wlcc::ColoredSquareMatrix m(n);
    const int nonedge = nclasses, edge = nclasses + 1;
    for (int u = 0; u < n; ++u)
        for (int v = 0; v < n; ++v) m.color(u, v) = (u == v) ? vclass[u] : nonedge;
    for (auto [u, v] : edges) {
        m.color(u, v) = edge;
        m.color(v, u) = edge;
    }
    return wlcc::rerank_colors(m);
}

// brute-force hypergraph isomorphism for small point counts
inline bool hypergraph_isomorphic(const wlcc::PartialLinearSpace& a,
                                  const wlcc::PartialLinearSpace& b) {
    if (a.npoints != b.npoints || a.lines.size() != b.lines.size()) return false;
    std::set<std::vector<int>> blines(b.lines.begin(), b.lines.end());
    std::vector<int> perm(a.npoints);
    std::iota(perm.begin(), perm.end(), 0);
    do {
        bool ok = true;
        for (const auto& line : a.lines) {
            std::vector<int> img;
            for (int p : line) img.push_back(perm[p]);
            std::sort(img.begin(), img.end());
            if (!blines.count(img)) {
                ok = false;
                break;
            }
        }
        if (ok) return true;
    } while (std::next_permutation(perm.begin(), perm.end()));
    return false;
}

// partitions of pair space compared up to renaming
inline std::vector<int> canonical_partition(const std::vector<int>& colors) {
    std::vector<int> out(colors.size());
    std::vector<int> rank;
    for (size_t i = 0; i < colors.size(); ++i) {
        int c = colors[i];
        if (c >= int(rank.size())) rank.resize(c + 1, -1);
        if (rank[c] < 0) {
            int next = 0;
            for (int r : rank) next = std::max(next, r + 1);
            rank[c] = next;
        }
        out[i] = rank[c];
    }
    return out;
}

inline bool same_partition(const wlcc::ColoredSquareMatrix& a, const wlcc::ColoredSquareMatrix& b) {
    return a.n == b.n && canonical_partition(a.colors) == canonical_partition(b.colors);
}

}  // namespace testutil
