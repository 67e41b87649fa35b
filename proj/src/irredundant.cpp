#include "wlcc/irredundant.hpp"

#include <algorithm>

namespace wlcc {

namespace {

void require_irredundant(const CoherentConfiguration& c, const char* who) {
    auto check = is_irredundant(c);
    if (!check.irredundant)
        throw InputError(std::string(who) + ": configuration is not irredundant (" +
                         to_string(check.reason) + ")");
}

}  // namespace

int saa_order_log2(const CoherentConfiguration& c) {
    require_irredundant(c, "saa_order_log2");
    int sum = 0;
    for (const auto& he : dcc(c).hyperedges) sum += int(he.size()) - 1;
    return sum;
}

CompanionGraph build_companion(const CoherentConfiguration& c) {
    require_irredundant(c, "build_companion");
    const int n = c.n();
    const int nf = c.num_fibers();
    CompanionGraph out;
    out.graph = ColoredSquareMatrix(n);
    const int edge_color = nf, nonedge_color = nf + 1;
    for (int v = 0; v < n; ++v) out.graph.color(v, v) = c.fiber_of(v);
    for (int u = 0; u < n; ++u)
        for (int v = 0; v < n; ++v)
            if (u != v) out.graph.color(u, v) = nonedge_color;
    for (int fx = 0; fx < nf; ++fx)
        for (int fy = fx + 1; fy < nf; ++fy) {
            if (c.block_uniform(fx, fy)) continue;
            int cls = c.classes_in_block(fx, fy).front();
            out.block_class[{fx, fy}] = cls;
            for (int u : c.fibers()[fx])
                for (int v : c.fibers()[fy])
                    if (c.color(u, v) == cls) {
                        out.graph.color(u, v) = edge_color;
                        out.graph.color(v, u) = edge_color;
                    }
        }
    return out;
}

SwitchSystem switch_system(const CoherentConfiguration& c) {
    require_irredundant(c, "switch_system");
    SwitchSystem sys;
    sys.hyper = dcc(c);
    const int nf = c.num_fibers();
    const int nhe = int(sys.hyper.hyperedges.size());

    // canonical incidence order: (fiber min-point, hyperedge min-fiber);
    // fibers are already ordered by min point and hyperedges by min fiber
    sys.var_index.assign(nf, std::vector<int>(nhe, -1));
    for (int f = 0; f < nf; ++f)
        for (auto [he, cls] : sys.hyper.incidence[f]) {
            sys.var_index[f][he] = int(sys.vars.size());
            sys.vars.push_back({f, he});
        }
    const int nvars = int(sys.vars.size());

    for (int f = 0; f < nf; ++f) {
        if (sys.hyper.degree(f) != 3) continue;
        if (classify_cell(c, f) != CellClass::F4)
            throw InternalError("switch_system: dcc-degree-3 fiber without F4 cell");
        Gf2Vector row(nvars);
        for (auto [he, cls] : sys.hyper.incidence[f]) row.flip(sys.var_index[f][he]);
        sys.rows.push_back(std::move(row));
    }
    sys.n_parity_rows = int(sys.rows.size());

    FiberGraph fg = fiber_graph(c);
    for (auto [fx, fy] : fg.edges) {
        int he = sys.hyper.edge_to_hyperedge[fx][fy];
        if (he < 0) throw InternalError("switch_system: fiber-graph edge outside every hyperedge");
        Gf2Vector row(nvars);
        row.flip(sys.var_index[fx][he]);
        row.flip(sys.var_index[fy][he]);
        sys.edge_rows.push_back({fx, fy});
        sys.rows.push_back(std::move(row));
    }
    return sys;
}

std::vector<char> rhs_for_generator(const SwitchSystem& sys, int fiber, int hyperedge) {
    if (hyperedge < 0 || hyperedge >= int(sys.hyper.hyperedges.size()))
        throw InputError("rhs_for_generator: bad hyperedge");
    const auto& he = sys.hyper.hyperedges[hyperedge];
    if (!std::binary_search(he.begin(), he.end(), fiber))
        throw InputError("rhs_for_generator: fiber not on the hyperedge");
    std::vector<char> rhs(sys.rows.size(), 0);
    for (size_t i = 0; i < sys.edge_rows.size(); ++i) {
        auto [fx, fy] = sys.edge_rows[i];
        bool switched = (fx == fiber && std::binary_search(he.begin(), he.end(), fy)) ||
                        (fy == fiber && std::binary_search(he.begin(), he.end(), fx));
        rhs[sys.n_parity_rows + i] = switched ? 1 : 0;
    }
    return rhs;
}

IrredundantVerdict decide_separable_irredundant(const CoherentConfiguration& c) {
    require_irredundant(c, "decide_separable_irredundant");
    SwitchSystem sys = switch_system(c);
    Gf2Eliminator elim(sys.rows, int(sys.vars.size()));
    for (const auto& var : sys.vars) {
        auto rhs = rhs_for_generator(sys, var.fiber, var.hyperedge);
        if (!elim.consistent(rhs)) return {false, var.fiber, var.hyperedge};
    }
    return {true, -1, -1};
}

int scac_order_log2_all_f4(const CoherentConfiguration& c) {
    require_irredundant(c, "scac_order_log2_all_f4");
    SwitchSystem sys = switch_system(c);
    for (int f = 0; f < c.num_fibers(); ++f)
        if (sys.hyper.degree(f) != 3)
            throw InputError("scac_order_log2_all_f4: fiber with an undetermined matching");
    Gf2Eliminator elim(sys.rows, int(sys.vars.size()));
    return elim.kernel_dimension();
}

}  // namespace wlcc
