#include "wlcc/oracle.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace wlcc::oracle {

std::vector<int> closure_oracle(const Rainbow& r) {
    const int n = r.n();
    std::vector<int> part(r.mat.colors);
    while (true) {
        // split every class by the exact vector of counts p(uv) over (R,S)
        std::map<std::pair<int, std::vector<std::pair<std::pair<int, int>, int>>>, int> groups;
        std::vector<int> next(size_t(n) * n);
        for (int u = 0; u < n; ++u)
            for (int v = 0; v < n; ++v) {
                std::map<std::pair<int, int>, int> counts;
                for (int w = 0; w < n; ++w)
                    counts[{part[size_t(u) * n + w], part[size_t(w) * n + v]}]++;
                std::pair<int, std::vector<std::pair<std::pair<int, int>, int>>> key{
                    part[size_t(u) * n + v], {counts.begin(), counts.end()}};
                auto it = groups.find(key);
                if (it == groups.end()) it = groups.emplace(key, int(groups.size())).first;
                next[size_t(u) * n + v] = it->second;
            }
        bool stable = int(groups.size()) == 1 + *std::max_element(part.begin(), part.end());
        part = std::move(next);
        if (stable) break;
    }
    // dense ids by first occurrence
    std::map<int, int> rank;
    for (auto& c : part) {
        auto it = rank.find(c);
        if (it == rank.end()) it = rank.emplace(c, int(rank.size())).first;
        c = it->second;
    }
    return part;
}

namespace {

struct IsoSearch {
    const ColoredSquareMatrix& g;
    const ColoredSquareMatrix& h;
    bool respect_colors;
    int n;
    std::vector<int> order;  // g vertices, constraint-first
    std::vector<int> map;    // g vertex -> h vertex or -1
    std::vector<char> used;

    IsoSearch(const ColoredSquareMatrix& g_, const ColoredSquareMatrix& h_, bool rc)
        : g(g_), h(h_), respect_colors(rc), n(g_.n), map(n, -1), used(n, 0) {
        // every pair carries a color, so each candidate is checked against all
        // placed vertices; ascending order is deterministic and propagates fully
        order.resize(n);
        for (int u = 0; u < n; ++u) order[u] = u;
    }

    bool feasible(int u, int w) const {
        if (respect_colors && g.color(u, u) != h.color(w, w)) return false;
        for (int v : order) {
            if (map[v] < 0) continue;
            if (v == u) continue;
            if (g.color(u, v) != h.color(w, map[v])) return false;
            if (g.color(v, u) != h.color(map[v], w)) return false;
        }
        return true;
    }

    bool rec(size_t i) {
        if (i == order.size()) return true;
        int u = order[i];
        for (int w = 0; w < n; ++w) {
            if (used[w]) continue;
            if (!feasible(u, w)) continue;
            map[u] = w;
            used[w] = 1;
            if (rec(i + 1)) return true;
            map[u] = -1;
            used[w] = 0;
        }
        return false;
    }
};

}  // namespace

std::optional<PointMap> graph_iso(const ColoredSquareMatrix& g, const ColoredSquareMatrix& h,
                                  bool respect_colors) {
    if (g.n != h.n) return std::nullopt;
    if (g.n > 40) throw InputError("graph_iso: more than 40 vertices");
    // multiset prefilters
    {
        std::map<int, int> cg, ch;
        for (int u = 0; u < g.n; ++u)
            for (int v = 0; v < g.n; ++v) {
                if (u == v && !respect_colors) continue;
                cg[g.color(u, v)]++;
                ch[h.color(u, v)]++;
            }
        if (cg != ch) return std::nullopt;
    }
    IsoSearch search(g, h, respect_colors);
    if (!search.rec(0)) return std::nullopt;
    return PointMap(search.map);
}

std::vector<int> switch_class_perm(const CoherentConfiguration& c,
                                   const std::vector<std::pair<int, int>>& edges, uint32_t mask) {
    std::vector<int> f(c.num_classes());
    for (size_t i = 0; i < f.size(); ++i) f[i] = int(i);
    for (size_t e = 0; e < edges.size(); ++e) {
        if (!(mask >> e & 1)) continue;
        auto [fx, fy] = edges[e];
        for (auto [a, b] : {std::make_pair(fx, fy), std::make_pair(fy, fx)}) {
            const auto& cls = c.classes_in_block(a, b);
            if (cls.size() != 2)
                throw InternalError("switch_class_perm: switched block is not 2-class");
            std::swap(f[cls[0]], f[cls[1]]);
        }
    }
    return f;
}

SwitchSetFamily enumerate_strict_algebraic_automorphisms(const CoherentConfiguration& c) {
    auto check = is_irredundant(c);
    if (!check.irredundant)
        throw InputError("enumerate_strict_algebraic_automorphisms: not irredundant");
    FiberGraph fg = fiber_graph(c);
    if (fg.edges.size() > 14)
        throw InputError("enumerate_strict_algebraic_automorphisms: more than 14 interspaces");

    const int k = c.num_classes();
    // dense p tensor over collocated triples; entries are at most 4
    std::vector<int8_t> p(size_t(k) * k * k, 0);
    std::vector<std::array<int, 3>> triples;
    for (int A = 0; A < c.num_fibers(); ++A)
        for (int Z = 0; Z < c.num_fibers(); ++Z)
            for (int B = 0; B < c.num_fibers(); ++B)
                for (int T : c.classes_in_block(A, B))
                    for (int R : c.classes_in_block(A, Z))
                        for (int S : c.classes_in_block(Z, B)) {
                            p[(size_t(T) * k + R) * k + S] = int8_t(c.intersection_number(T, R, S));
                            triples.push_back({T, R, S});
                        }

    SwitchSetFamily out;
    out.edges = fg.edges;
    for (uint32_t mask = 0; mask < (uint32_t(1) << fg.edges.size()); ++mask) {
        std::vector<int> f = switch_class_perm(c, fg.edges, mask);
        bool ok = true;
        for (const auto& t : triples)
            if (p[(size_t(t[0]) * k + t[1]) * k + t[2]] !=
                p[(size_t(f[t[0]]) * k + f[t[1]]) * k + f[t[2]]]) {
                ok = false;
                break;
            }
        if (ok) out.masks.push_back(mask);
    }
    return out;
}

StrictCombinatorialAutomorphisms enumerate_strict_combinatorial_automorphisms(
    const CoherentConfiguration& c) {
    auto check = is_irredundant(c);
    if (!check.irredundant)
        throw InputError("enumerate_strict_combinatorial_automorphisms: not irredundant");
    FiberGraph fg = fiber_graph(c);
    const int nf = c.num_fibers();

    // color-preserving permutations of each cell, as local index maps
    std::vector<std::vector<std::array<int, 4>>> cell_groups(nf);
    for (int f = 0; f < nf; ++f) {
        const auto& X = c.fibers()[f];
        std::array<int, 4> perm{0, 1, 2, 3};
        std::sort(perm.begin(), perm.end());
        do {
            bool ok = true;
            for (int i = 0; i < 4 && ok; ++i)
                for (int j = 0; j < 4; ++j)
                    if (c.color(X[perm[i]], X[perm[j]]) != c.color(X[i], X[j])) {
                        ok = false;
                        break;
                    }
            if (ok) cell_groups[f].push_back(perm);
        } while (std::next_permutation(perm.begin(), perm.end()));
    }

    uint64_t total = 1;
    for (const auto& grp : cell_groups) {
        total *= grp.size();
        if (total > (uint64_t(1) << 22))
            throw InputError("enumerate_strict_combinatorial_automorphisms: candidate bound exceeded");
    }

    StrictCombinatorialAutomorphisms out;
    out.edges = fg.edges;
    std::vector<size_t> odo(nf, 0);
    while (true) {
        PointMap phi(c.n());
        for (int f = 0; f < nf; ++f) {
            const auto& X = c.fibers()[f];
            const auto& perm = cell_groups[f][odo[f]];
            for (int i = 0; i < 4; ++i) phi[X[i]] = X[perm[i]];
        }
        // image of every non-uniform block must be the block or its complement
        bool ok = true;
        uint32_t mask = 0;
        for (size_t e = 0; e < fg.edges.size() && ok; ++e) {
            auto [fx, fy] = fg.edges[e];
            int cls = c.classes_in_block(fx, fy).front();
            auto [u0, v0] = c.class_representative(cls);
            int img = c.color(phi[u0], phi[v0]);
            for (auto [u, v] : c.class_pairs(cls))
                if (c.color(phi[u], phi[v]) != img) {
                    ok = false;
                    break;
                }
            if (img != cls) mask |= uint32_t(1) << e;
        }
        if (ok) {
            out.points.push_back(std::move(phi));
            out.induced_masks.push_back(mask);
        }
        int pos = 0;
        while (pos < nf && ++odo[pos] == cell_groups[pos].size()) odo[pos++] = 0;
        if (pos == nf) break;
    }
    return out;
}

bool separable_oracle_irredundant(const CoherentConfiguration& c) {
    SwitchSetFamily saa = enumerate_strict_algebraic_automorphisms(c);
    StrictCombinatorialAutomorphisms sca = enumerate_strict_combinatorial_automorphisms(c);
    std::set<uint32_t> induced(sca.induced_masks.begin(), sca.induced_masks.end());
    std::set<uint32_t> all(saa.masks.begin(), saa.masks.end());
    // induced strict algebraic automorphisms are always a subset
    for (uint32_t m : induced)
        if (!all.count(m))
            throw InternalError("separable_oracle_irredundant: induced map is not algebraic");
    return induced == all;
}

}  // namespace wlcc::oracle
