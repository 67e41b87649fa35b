#include "wlcc/structure.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <numeric>
#include <set>

namespace wlcc {

const char* to_string(CellClass c) {
    switch (c) {
        case CellClass::Trivial1: return "1";
        case CellClass::Pair2: return "2";
        case CellClass::K3: return "K3";
        case CellClass::DirC3: return "dirC3";
        case CellClass::K4: return "K4";
        case CellClass::F4: return "F4";
        case CellClass::C4: return "C4";
        case CellClass::DirC4: return "dirC4";
    }
    return "?";
}

const char* to_string(InterspaceClass c) {
    switch (c) {
        case InterspaceClass::Uniform: return "uniform";
        case InterspaceClass::Match2x2: return "2x2-matchings";
        case InterspaceClass::TwoOf3x3a: return "3x3-two-class";
        case InterspaceClass::TwoOf3x3b: return "3x3-three-class";
        case InterspaceClass::TwoK12: return "2K12";
        case InterspaceClass::FourK11: return "4K11";
        case InterspaceClass::TwoK22: return "2K22";
        case InterspaceClass::C8: return "C8";
        case InterspaceClass::Three4x4a: return "3class-4cycles";
        case InterspaceClass::Three4x4b: return "3class-8cycle";
        case InterspaceClass::Four4x4a: return "4class-4cycles";
        case InterspaceClass::Four4x4b: return "4class-8cycle";
    }
    return "?";
}

const char* to_string(IrredundancyDefect d) {
    switch (d) {
        case IrredundancyDefect::None: return "none";
        case IrredundancyDefect::Decomposable: return "decomposable";
        case IrredundancyDefect::FiberSize: return "fiber size";
        case IrredundancyDefect::MatchingInterspace: return "matching interspace";
        case IrredundancyDefect::C8Interspace: return "C8 interspace";
    }
    return "?";
}

namespace {

bool is_cell_matching(const CoherentConfiguration& c, int cls) {
    const auto& m = c.meta(cls);
    return m.src_fiber == m.dst_fiber && !m.reflexive && m.valency == 1 && m.transpose == cls;
}

// connected components of R union R* viewed as an undirected graph on X u Y
int union_component_count(const CoherentConfiguration& c, int cls) {
    const auto& m = c.meta(cls);
    const auto& X = c.fibers()[m.src_fiber];
    const auto& Y = c.fibers()[m.dst_fiber];
    std::vector<int> verts(X);
    verts.insert(verts.end(), Y.begin(), Y.end());
    std::sort(verts.begin(), verts.end());
    verts.erase(std::unique(verts.begin(), verts.end()), verts.end());
    std::map<int, int> idx;
    for (size_t i = 0; i < verts.size(); ++i) idx[verts[i]] = int(i);
    std::vector<int> parent(verts.size());
    std::iota(parent.begin(), parent.end(), 0);
    std::function<int(int)> find = [&](int a) {
        while (parent[a] != a) a = parent[a] = parent[parent[a]];
        return a;
    };
    int comps = int(verts.size());
    int tcls = m.transpose;
    for (int u : X)
        for (int v : Y)
            if (c.color(u, v) == cls || c.color(u, v) == tcls ||
                c.color(v, u) == cls || c.color(v, u) == tcls) {
                int a = find(idx[u]), b = find(idx[v]);
                if (a != b) {
                    parent[a] = b;
                    --comps;
                }
            }
    return comps;
}

}  // namespace

CellClass classify_cell(const CoherentConfiguration& c, int fiber) {
    if (fiber < 0 || fiber >= c.num_fibers()) throw InputError("classify_cell: bad fiber");
    int size = c.fiber_size(fiber);
    if (size > 4) throw InputError("classify_cell: fiber larger than 4 points");
    const auto& cls = c.classes_in_block(fiber, fiber);
    switch (size) {
        case 1: return CellClass::Trivial1;
        case 2: return CellClass::Pair2;
        case 3: return cls.size() == 2 ? CellClass::K3 : CellClass::DirC3;
        default: break;
    }
    if (cls.size() == 2) return CellClass::K4;
    if (cls.size() == 3) return CellClass::C4;
    // 4 classes: F4 iff all irreflexive classes are self-transposed matchings
    for (int id : cls)
        if (!c.meta(id).reflexive && c.meta(id).transpose != id) return CellClass::DirC4;
    return CellClass::F4;
}

InterspaceInfo classify_interspace(const CoherentConfiguration& c, int fx, int fy) {
    if (fx == fy) throw InputError("classify_interspace: fibers must differ");
    const auto& cls = c.classes_in_block(fx, fy);
    InterspaceInfo info;
    for (int id : cls)
        if (c.meta(id).valency == 1 && c.meta(c.meta(id).transpose).valency == 1)
            info.contains_matching = true;
    if (cls.size() == 1) {
        info.tag = InterspaceClass::Uniform;
        return info;
    }
    int sx = c.fiber_size(fx), sy = c.fiber_size(fy);
    int lo = std::min(sx, sy), hi = std::max(sx, sy);
    if (lo == 2 && hi == 2) {
        info.tag = InterspaceClass::Match2x2;
        return info;
    }
    if (lo == 3 && hi == 3) {
        info.tag = cls.size() == 2 ? InterspaceClass::TwoOf3x3a : InterspaceClass::TwoOf3x3b;
        return info;
    }
    if (lo == 2 && hi == 4) {
        info.tag = InterspaceClass::TwoK12;
        return info;
    }
    if (lo != 4 || hi != 4)
        throw InternalError("classify_interspace: non-uniform interspace outside the taxonomy");
    if (cls.size() == 2) {
        int v0 = c.meta(cls[0]).valency, v1 = c.meta(cls[1]).valency;
        if (std::min(v0, v1) == 1) {
            info.tag = InterspaceClass::FourK11;
        } else {
            info.tag = union_component_count(c, cls[0]) == 2 ? InterspaceClass::TwoK22
                                                             : InterspaceClass::C8;
        }
        return info;
    }
    if (cls.size() == 3) {
        int deg2 = -1;
        for (int id : cls)
            if (c.meta(id).valency == 2) deg2 = id;
        if (deg2 < 0) throw InternalError("classify_interspace: 3-class block without valency-2 part");
        info.tag = union_component_count(c, deg2) == 2 ? InterspaceClass::Three4x4a
                                                       : InterspaceClass::Three4x4b;
        return info;
    }
    if (cls.size() == 4) {
        // factor pair forming a single 8-cycle?
        bool eight = false;
        const auto& X = c.fibers()[fx];
        const auto& Y = c.fibers()[fy];
        for (size_t i = 0; i < cls.size() && !eight; ++i)
            for (size_t j = i + 1; j < cls.size() && !eight; ++j) {
                // walk the union of two perfect matchings between X and Y
                std::map<int, std::vector<int>> adj;
                for (int u : X)
                    for (int v : Y)
                        if (c.color(u, v) == cls[i] || c.color(u, v) == cls[j]) {
                            adj[u].push_back(v);
                            adj[v].push_back(u);
                        }
                std::set<int> seen;
                std::vector<int> stack{X[0]};
                while (!stack.empty()) {
                    int a = stack.back();
                    stack.pop_back();
                    if (!seen.insert(a).second) continue;
                    for (int b : adj[a]) stack.push_back(b);
                }
                eight = seen.size() == 8;
            }
        info.tag = eight ? InterspaceClass::Four4x4b : InterspaceClass::Four4x4a;
        return info;
    }
    throw InternalError("classify_interspace: block with more than 4 classes between 4-point fibers");
}

MatchingRef determined_matching(const CoherentConfiguration& c, int fx, int fy) {
    auto info = classify_interspace(c, fx, fy);
    if (info.tag != InterspaceClass::TwoK12 && info.tag != InterspaceClass::TwoK22 &&
        info.tag != InterspaceClass::C8)
        throw InputError("determined_matching: interspace does not determine a matching");
    if (c.fiber_size(fy) != 4)
        throw InputError("determined_matching: matchings are determined at 4-point fibers");
    int cls = c.classes_in_block(fx, fy).front();
    const auto& X = c.fibers()[fx];
    const auto& Y = c.fibers()[fy];
    // in-neighborhood of each y under the chosen relation
    std::map<int, std::vector<int>> nbr;
    for (int y : Y)
        for (int x : X)
            if (c.color(x, y) == cls) nbr[y].push_back(x);
    int y0 = Y[0];
    int partner = -1;
    for (int y : Y) {
        if (y == y0) continue;
        std::vector<int> common;
        std::set_intersection(nbr[y0].begin(), nbr[y0].end(), nbr[y].begin(), nbr[y].end(),
                              std::back_inserter(common));
        bool match = (info.tag == InterspaceClass::C8) ? common.empty()
                                                       : common.size() == nbr[y0].size();
        if (match) {
            partner = y;
            break;
        }
    }
    if (partner < 0) throw InternalError("determined_matching: no partner found");
    MatchingRef ref{fy, c.color(y0, partner)};
    if (!is_cell_matching(c, ref.cls))
        throw InternalError("determined_matching: determined class is not a cell matching");
    return ref;
}

ConnectionKind connection_kind(const CoherentConfiguration& c, int X, int Y, int Z) {
    MatchingRef a = determined_matching(c, X, Y);
    MatchingRef b = determined_matching(c, Z, Y);
    return a == b ? ConnectionKind::Direct : ConnectionKind::Skewed;
}

bool FiberGraph::adjacent(int fx, int fy) const {
    for (int z : adj[fx])
        if (z == fy) return true;
    return false;
}

bool FiberGraph::connected() const { return components().size() <= 1; }

std::vector<std::vector<int>> FiberGraph::components() const {
    std::vector<int> comp(nfibers, -1);
    std::vector<std::vector<int>> out;
    for (int s = 0; s < nfibers; ++s) {
        if (comp[s] >= 0) continue;
        int id = int(out.size());
        out.push_back({});
        std::vector<int> stack{s};
        comp[s] = id;
        while (!stack.empty()) {
            int a = stack.back();
            stack.pop_back();
            out[id].push_back(a);
            for (int b : adj[a])
                if (comp[b] < 0) {
                    comp[b] = id;
                    stack.push_back(b);
                }
        }
        std::sort(out[id].begin(), out[id].end());
    }
    return out;
}

FiberGraph fiber_graph(const CoherentConfiguration& c) {
    FiberGraph g;
    g.nfibers = c.num_fibers();
    g.adj.assign(g.nfibers, {});
    for (int fx = 0; fx < g.nfibers; ++fx)
        for (int fy = fx + 1; fy < g.nfibers; ++fy)
            if (!c.block_uniform(fx, fy)) {
                g.edges.push_back({fx, fy});
                g.adj[fx].push_back(fy);
                g.adj[fy].push_back(fx);
            }
    return g;
}

DccHypergraph dcc(const CoherentConfiguration& c) {
    auto check = is_irredundant(c);
    if (!check.irredundant)
        throw InputError(std::string("dcc: configuration is not irredundant (") +
                         to_string(check.reason) + ")");
    FiberGraph fg = fiber_graph(c);
    const int ne = int(fg.edges.size());

    // union-find over fiber-graph edges keyed by (fiber, determined matching)
    std::vector<int> parent(ne);
    std::iota(parent.begin(), parent.end(), 0);
    std::function<int(int)> find = [&](int a) {
        while (parent[a] != a) a = parent[a] = parent[parent[a]];
        return a;
    };
    std::map<std::pair<int, int>, int> key_to_edge;  // (fiber, matching class) -> first edge
    std::vector<std::pair<MatchingRef, MatchingRef>> det(ne);
    for (int e = 0; e < ne; ++e) {
        auto [fx, fy] = fg.edges[e];
        det[e] = {determined_matching(c, fy, fx), determined_matching(c, fx, fy)};
        for (const MatchingRef& ref : {det[e].first, det[e].second}) {
            auto key = std::make_pair(ref.fiber, ref.cls);
            auto it = key_to_edge.find(key);
            if (it == key_to_edge.end())
                key_to_edge.emplace(key, e);
            else
                parent[find(e)] = find(it->second);
        }
    }

    std::map<int, std::set<int>> groups;  // root edge -> fiber set
    for (int e = 0; e < ne; ++e) {
        groups[find(e)].insert(fg.edges[e].first);
        groups[find(e)].insert(fg.edges[e].second);
    }

    DccHypergraph h;
    for (auto& [root, fibers] : groups) h.hyperedges.push_back({fibers.begin(), fibers.end()});
    std::sort(h.hyperedges.begin(), h.hyperedges.end());
    std::map<int, int> root_to_idx;
    {
        std::map<std::vector<int>, int> edge_idx;
        for (size_t i = 0; i < h.hyperedges.size(); ++i) edge_idx[h.hyperedges[i]] = int(i);
        for (auto& [root, fibers] : groups)
            root_to_idx[root] = edge_idx.at(std::vector<int>(fibers.begin(), fibers.end()));
    }

    h.incidence.assign(c.num_fibers(), {});
    h.edge_to_hyperedge.assign(c.num_fibers(), std::vector<int>(c.num_fibers(), -1));
    std::map<std::pair<int, int>, int> seen_incidence;  // (fiber, hyperedge) -> matching
    for (int e = 0; e < ne; ++e) {
        int he = root_to_idx.at(find(e));
        auto [fx, fy] = fg.edges[e];
        h.edge_to_hyperedge[fx][fy] = h.edge_to_hyperedge[fy][fx] = he;
        for (const MatchingRef& ref : {det[e].first, det[e].second}) {
            auto key = std::make_pair(ref.fiber, he);
            auto it = seen_incidence.find(key);
            if (it == seen_incidence.end()) {
                seen_incidence.emplace(key, ref.cls);
                h.incidence[ref.fiber].push_back({he, ref.cls});
            } else if (it->second != ref.cls) {
                throw InternalError("dcc: one hyperedge determines two matchings at a fiber");
            }
        }
    }
    for (auto& inc : h.incidence) std::sort(inc.begin(), inc.end());

    // invariants: cliques with all-direct connections, linearity, degree <= 3
    for (size_t i = 0; i < h.hyperedges.size(); ++i) {
        const auto& he = h.hyperedges[i];
        for (size_t a = 0; a < he.size(); ++a)
            for (size_t b = a + 1; b < he.size(); ++b) {
                if (!fg.adjacent(he[a], he[b]))
                    throw InternalError("dcc: hyperedge is not a clique in the fiber graph");
                if (h.edge_to_hyperedge[he[a]][he[b]] != int(i))
                    throw InternalError("dcc: clique edge escaped its hyperedge");
            }
        for (size_t j = i + 1; j < h.hyperedges.size(); ++j) {
            std::vector<int> common;
            std::set_intersection(he.begin(), he.end(), h.hyperedges[j].begin(),
                                  h.hyperedges[j].end(), std::back_inserter(common));
            if (common.size() > 1) throw InternalError("dcc: hyperedges share two fibers");
        }
    }
    for (int f = 0; f < c.num_fibers(); ++f)
        if (h.degree(f) > 3) throw InternalError("dcc: fiber of degree > 3");
    return h;
}

std::vector<Restriction> decompose_direct_sum(const CoherentConfiguration& c) {
    auto comps = fiber_graph(c).components();
    std::vector<Restriction> out;
    out.reserve(comps.size());
    for (const auto& fibers : comps) out.push_back(restrict_to_fibers(c, fibers));
    return out;
}

IrredundancyCheck is_irredundant(const CoherentConfiguration& c) {
    for (int f = 0; f < c.num_fibers(); ++f)
        if (c.fiber_size(f) != 4) return {false, IrredundancyDefect::FiberSize};
    for (int fx = 0; fx < c.num_fibers(); ++fx)
        for (int fy = fx + 1; fy < c.num_fibers(); ++fy) {
            auto info = classify_interspace(c, fx, fy);
            if (info.tag == InterspaceClass::Uniform) continue;
            if (info.contains_matching) return {false, IrredundancyDefect::MatchingInterspace};
            if (info.tag == InterspaceClass::C8) return {false, IrredundancyDefect::C8Interspace};
            if (info.tag != InterspaceClass::TwoK22)
                throw InternalError("is_irredundant: unexpected matching-free interspace type");
        }
    if (!fiber_graph(c).connected()) return {false, IrredundancyDefect::Decomposable};
    return {true, IrredundancyDefect::None};
}

}  // namespace wlcc
