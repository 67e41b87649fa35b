#include "wlcc/closure.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace wlcc {

namespace {

// one refinement sweep over several graphs sharing a color dictionary;
// returns the total number of distinct new colors
using Signature = std::pair<int, std::vector<std::pair<int, int>>>;

int refine_round(std::vector<ColoredSquareMatrix*> graphs, std::vector<std::vector<int>>& next) {
    std::map<Signature, int> dict;
    std::vector<std::vector<Signature>> sigs(graphs.size());
    for (size_t gi = 0; gi < graphs.size(); ++gi) {
        const auto& m = *graphs[gi];
        sigs[gi].reserve(size_t(m.n) * m.n);
        std::vector<std::pair<int, int>> s(m.n);
        for (int u = 0; u < m.n; ++u)
            for (int v = 0; v < m.n; ++v) {
                for (int w = 0; w < m.n; ++w) s[w] = {m.color(u, w), m.color(w, v)};
                std::sort(s.begin(), s.end());
                sigs[gi].push_back({m.color(u, v), s});
                dict[sigs[gi].back()] = 0;
            }
    }
    int next_id = 0;
    for (auto& [sig, id] : dict) id = next_id++;
    for (size_t gi = 0; gi < graphs.size(); ++gi) {
        next[gi].resize(sigs[gi].size());
        for (size_t i = 0; i < sigs[gi].size(); ++i) next[gi][i] = dict.at(sigs[gi][i]);
    }
    return next_id;
}

}  // namespace

ClosureResult coherent_closure(const Rainbow& r) {
    ColoredSquareMatrix cur = r.mat;
    std::vector<int> lineage_of(cur.color_count());
    for (size_t i = 0; i < lineage_of.size(); ++i) lineage_of[i] = int(i);

    int rounds = 0;
    while (true) {
        int k = cur.color_count();
        std::vector<std::vector<int>> next(1);
        int k2 = refine_round({&cur}, next);
        ++rounds;
        if (k2 == k) break;  // refinement only splits, so equal counts mean stable
        std::vector<int> new_lineage(k2, -1);
        for (size_t i = 0; i < cur.colors.size(); ++i) new_lineage[next[0][i]] = lineage_of[cur.colors[i]];
        lineage_of = std::move(new_lineage);
        cur.colors = std::move(next[0]);
    }

    // canonical presentation: dense ids by first occurrence in row-major order
    ColoredSquareMatrix final_mat = rerank_colors(cur);
    std::vector<int> lineage(final_mat.color_count(), -1);
    for (size_t i = 0; i < cur.colors.size(); ++i) lineage[final_mat.colors[i]] = lineage_of[cur.colors[i]];

    ClosureResult out{require_coherent(Rainbow::from_matrix(final_mat), "coherent_closure"),
                      std::move(lineage), rounds};
    return out;
}

Wl2Result wl2_equivalent(const ColoredSquareMatrix& g, const ColoredSquareMatrix& h) {
    for (const auto* m : {&g, &h}) {
        auto diags = validate_colored_graph(*m);
        if (!diags.empty()) throw InputError("wl2_equivalent: " + diags.front().what);
    }

    // shared initial dictionary over the union of transpose-normalized pair colors
    std::set<std::pair<int, int>> pairs;
    for (const auto* m : {&g, &h})
        for (int u = 0; u < m->n; ++u)
            for (int v = 0; v < m->n; ++v) pairs.insert({m->color(u, v), m->color(v, u)});
    std::map<std::pair<int, int>, int> rank;
    for (const auto& p : pairs) rank.emplace(p, int(rank.size()));

    ColoredSquareMatrix cg(g.n), ch(h.n);
    for (int u = 0; u < g.n; ++u)
        for (int v = 0; v < g.n; ++v) cg.color(u, v) = rank.at({g.color(u, v), g.color(v, u)});
    for (int u = 0; u < h.n; ++u)
        for (int v = 0; v < h.n; ++v) ch.color(u, v) = rank.at({h.color(u, v), h.color(v, u)});

    Wl2Result out;
    auto histograms_agree = [&]() {
        std::map<int, int> ha, hb;
        for (int c : cg.colors) ha[c]++;
        for (int c : ch.colors) hb[c]++;
        return ha == hb;
    };

    if (!histograms_agree()) return out;  // round 0

    while (true) {
        int k = 0;
        {
            std::map<int, char> seen;
            for (int c : cg.colors) seen[c] = 1;
            for (int c : ch.colors) seen[c] = 1;
            k = int(seen.size());
        }
        std::vector<std::vector<int>> next(2);
        int k2 = refine_round({&cg, &ch}, next);
        ++out.rounds;
        cg.colors = std::move(next[0]);
        ch.colors = std::move(next[1]);
        if (!histograms_agree()) return out;
        if (k2 == k) break;
    }

    out.equivalent = true;
    EquivalenceWitness w;
    // final joint colors; each color is one class per graph
    ColoredSquareMatrix mg = rerank_colors(cg), mh = rerank_colors(ch);
    w.g.config = require_coherent(Rainbow::from_matrix(mg), "wl2_equivalent/g");
    w.h.config = require_coherent(Rainbow::from_matrix(mh), "wl2_equivalent/h");
    w.g.rounds = w.h.rounds = out.rounds;
    // lineage through the shared dictionary back to the *input* colors
    w.g.lineage.assign(w.g.config.num_classes(), -1);
    for (size_t i = 0; i < cg.colors.size(); ++i)
        w.g.lineage[mg.colors[i]] = g.colors[i];
    w.h.lineage.assign(w.h.config.num_classes(), -1);
    for (size_t i = 0; i < ch.colors.size(); ++i)
        w.h.lineage[mh.colors[i]] = h.colors[i];
    // class map: equal joint color <-> matched classes
    std::map<int, int> joint_to_h;
    for (size_t i = 0; i < ch.colors.size(); ++i) joint_to_h[ch.colors[i]] = mh.colors[i];
    w.class_map.assign(w.g.config.num_classes(), -1);
    for (size_t i = 0; i < cg.colors.size(); ++i) {
        auto it = joint_to_h.find(cg.colors[i]);
        if (it == joint_to_h.end()) throw InternalError("wl2_equivalent: color unmatched after agreement");
        w.class_map[mg.colors[i]] = it->second;
    }
    out.witness = std::move(w);
    return out;
}

}  // namespace wlcc
