#include "wlcc/reduction.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>

#include "wlcc/irredundant.hpp"
#include "wlcc/oracle.hpp"

namespace wlcc {

namespace {

bool block_has_matching(const CoherentConfiguration& c, int fx, int fy) {
    for (int cls : c.classes_in_block(fx, fy))
        if (c.meta(cls).valency == 1 && c.meta(c.meta(cls).transpose).valency == 1) return true;
    return false;
}

bool block_is_c8(const CoherentConfiguration& c, int fx, int fy) {
    return c.fiber_size(fx) == 4 && c.fiber_size(fy) == 4 &&
           classify_interspace(c, fx, fy).tag == InterspaceClass::C8;
}

int fiber_min_point(const CoherentConfiguration& c, int f) { return c.fibers()[f].front(); }

// ---- reduction engine over fiber-set views of one configuration ----

struct CutRecord {
    enum class Kind { Matching, TwoFiber, C8Pair } kind;
    std::vector<int> removed;  // fiber indices of the base configuration
    int partner = -1;          // Matching: Y with the matching; TwoFiber: anchor
    int anchor_u = -1;         // C8Pair: anchor of removed[0]
    int anchor_w = -1;         // C8Pair: anchor of removed[1], -1 if none
    int matching_cls = -1;     // Matching: class id of M in block (X, partner)
};

enum class ComponentKind { BaseCase, Irredundant };

struct FinalComponent {
    ComponentKind kind;
    std::vector<int> fibers;  // fiber indices, ascending
    std::string reason;       // base cases
};

struct Engine {
    const CoherentConfiguration& base;
    std::vector<CutRecord> cuts;
    std::vector<FinalComponent> finals;
    ReductionTrace trace;

    explicit Engine(const CoherentConfiguration& c) : base(c) {}

    std::vector<int> min_points(const std::vector<int>& fibers) const {
        std::vector<int> out;
        for (int f : fibers) out.push_back(fiber_min_point(base, f));
        return out;
    }

    std::vector<std::vector<int>> components_of(const std::vector<int>& fibers) const {
        std::map<int, int> pos;
        for (size_t i = 0; i < fibers.size(); ++i) pos[fibers[i]] = int(i);
        std::vector<int> comp(fibers.size(), -1);
        std::vector<std::vector<int>> out;
        for (size_t s = 0; s < fibers.size(); ++s) {
            if (comp[s] >= 0) continue;
            out.push_back({});
            std::vector<int> stack{int(s)};
            comp[s] = int(out.size()) - 1;
            while (!stack.empty()) {
                int a = stack.back();
                stack.pop_back();
                out.back().push_back(fibers[a]);
                for (size_t b = 0; b < fibers.size(); ++b)
                    if (comp[b] < 0 && !base.block_uniform(fibers[a], fibers[b])) {
                        comp[b] = comp[a];
                        stack.push_back(int(b));
                    }
            }
            std::sort(out.back().begin(), out.back().end());
        }
        std::sort(out.begin(), out.end());
        return out;
    }

    void base_case(const std::vector<int>& comp, const std::string& reason) {
        finals.push_back({ComponentKind::BaseCase, comp, reason});
        ReductionStep st;
        st.kind = ReductionStep::Kind::BaseCaseSeparable;
        st.fibers = min_points(comp);
        st.reason = reason;
        trace.steps.push_back(std::move(st));
    }

    void run() {
        std::vector<std::vector<int>> work;
        {
            std::vector<int> all(base.num_fibers());
            for (int f = 0; f < base.num_fibers(); ++f) all[f] = f;
            work.push_back(std::move(all));
        }
        while (!work.empty()) {
            std::vector<int> fibers = std::move(work.front());
            work.erase(work.begin());
            auto comps = components_of(fibers);
            if (comps.size() > 1) {
                ReductionStep st;
                st.kind = ReductionStep::Kind::SplitComponents;
                for (const auto& comp : comps) st.parts.push_back(min_points(comp));
                trace.steps.push_back(std::move(st));
                work.insert(work.begin(), comps.begin(), comps.end());
                continue;
            }
            const std::vector<int>& comp = comps.front();
            int max_size = 0;
            for (int f : comp) max_size = std::max(max_size, base.fiber_size(f));
            if (comp.size() <= 1 || max_size <= 3) {
                base_case(comp, comp.size() <= 1 ? "single fiber" : "max fiber size 3");
                continue;
            }

            // matchings first: the later cuts require a matching-free
            // configuration
            bool cut_done = false;
            for (size_t xi = 0; xi < comp.size() && !cut_done; ++xi)
                for (size_t yi = 0; yi < comp.size() && !cut_done; ++yi) {
                    if (xi == yi) continue;
                    int X = comp[xi], Y = comp[yi];
                    if (!block_has_matching(base, X, Y)) continue;
                    CutRecord rec;
                    rec.kind = CutRecord::Kind::Matching;
                    rec.removed = {X};
                    rec.partner = Y;
                    for (int cls : base.classes_in_block(X, Y))
                        if (base.meta(cls).valency == 1 &&
                            base.meta(base.meta(cls).transpose).valency == 1) {
                            rec.matching_cls = cls;
                            break;
                        }
                    cuts.push_back(rec);
                    ReductionStep st;
                    st.kind = ReductionStep::Kind::CutMatching;
                    st.fibers = {fiber_min_point(base, X)};
                    st.partner = fiber_min_point(base, Y);
                    trace.steps.push_back(std::move(st));
                    std::vector<int> rest;
                    for (int f : comp)
                        if (f != X) rest.push_back(f);
                    work.insert(work.begin(), std::move(rest));
                    cut_done = true;
                }
            if (cut_done) continue;

            int two_fiber = -1;
            for (int f : comp)
                if (base.fiber_size(f) == 2) {
                    two_fiber = f;
                    break;
                }
            if (two_fiber >= 0) {
                int anchor = -1;
                for (int f : comp)
                    if (f != two_fiber && !base.block_uniform(two_fiber, f)) {
                        anchor = f;
                        break;
                    }
                if (anchor < 0) throw InternalError("reduce: isolated 2-point fiber in a component");
                CutRecord rec;
                rec.kind = CutRecord::Kind::TwoFiber;
                rec.removed = {two_fiber};
                rec.partner = anchor;
                cuts.push_back(rec);
                ReductionStep st;
                st.kind = ReductionStep::Kind::CutTwoFiber;
                st.fibers = {fiber_min_point(base, two_fiber)};
                st.partner = fiber_min_point(base, anchor);
                trace.steps.push_back(std::move(st));
                std::vector<int> rest;
                for (int f : comp)
                    if (f != two_fiber) rest.push_back(f);
                work.insert(work.begin(), std::move(rest));
                continue;
            }

            std::pair<int, int> c8{-1, -1};
            for (size_t xi = 0; xi < comp.size() && c8.first < 0; ++xi)
                for (size_t yi = xi + 1; yi < comp.size(); ++yi)
                    if (block_is_c8(base, comp[xi], comp[yi])) {
                        c8 = {comp[xi], comp[yi]};
                        break;
                    }
            if (c8.first >= 0) {
                if (comp.size() == 2) {
                    base_case(comp, "two-fiber C8 component");
                    continue;
                }
                int X = c8.first, Y = c8.second;
                auto neighbors = [&](int f) {
                    std::vector<int> out;
                    for (int z : comp)
                        if (z != X && z != Y && !base.block_uniform(z, f)) out.push_back(z);
                    return out;
                };
                std::vector<int> nx = neighbors(X), ny = neighbors(Y);
                if (nx.empty()) {
                    std::swap(X, Y);
                    std::swap(nx, ny);
                }
                if (nx.empty()) throw InternalError("reduce: C8 pair with no outside neighbor");
                CutRecord rec;
                rec.kind = CutRecord::Kind::C8Pair;
                rec.removed = {X, Y};
                std::vector<int> both;
                std::set_intersection(nx.begin(), nx.end(), ny.begin(), ny.end(),
                                      std::back_inserter(both));
                if (!both.empty()) {
                    rec.anchor_u = rec.anchor_w = both.front();
                } else {
                    rec.anchor_u = nx.front();
                    rec.anchor_w = ny.empty() ? -1 : ny.front();
                }
                cuts.push_back(rec);
                ReductionStep st;
                st.kind = ReductionStep::Kind::CutC8Pair;
                st.fibers = {fiber_min_point(base, X), fiber_min_point(base, Y)};
                trace.steps.push_back(std::move(st));
                std::vector<int> rest;
                for (int f : comp)
                    if (f != X && f != Y) rest.push_back(f);
                work.insert(work.begin(), std::move(rest));
                continue;
            }

            finals.push_back({ComponentKind::Irredundant, comp, ""});
            ReductionStep st;
            st.kind = ReductionStep::Kind::IrredundantHandoff;
            st.fibers = min_points(comp);
            st.component_id = int(finals.size()) - 1;
            trace.steps.push_back(std::move(st));
        }
    }
};

void check_fiber_sizes(const CoherentConfiguration& c, const char* who) {
    for (int f = 0; f < c.num_fibers(); ++f)
        if (c.fiber_size(f) > 4)
            throw InputError(std::string(who) + ": fiber larger than 4 points");
}

}  // namespace

std::string to_string(const ReductionTrace& trace) {
    std::ostringstream os;
    auto list = [&](const std::vector<int>& v) {
        os << '[';
        for (size_t i = 0; i < v.size(); ++i) os << (i ? "," : "") << v[i];
        os << ']';
    };
    for (const auto& st : trace.steps) {
        switch (st.kind) {
            case ReductionStep::Kind::SplitComponents:
                os << "split:";
                for (const auto& part : st.parts) {
                    os << ' ';
                    list(part);
                }
                break;
            case ReductionStep::Kind::CutMatching:
                os << "cut matching fiber@" << st.fibers[0] << " partner@" << st.partner;
                break;
            case ReductionStep::Kind::CutTwoFiber:
                os << "cut 2-point fiber@" << st.fibers[0] << " anchor@" << st.partner;
                break;
            case ReductionStep::Kind::CutC8Pair:
                os << "cut C8 pair fiber@" << st.fibers[0] << " fiber@" << st.fibers[1];
                break;
            case ReductionStep::Kind::BaseCaseSeparable:
                os << "base case ";
                list(st.fibers);
                os << " separable (" << st.reason << ")";
                break;
            case ReductionStep::Kind::IrredundantHandoff:
                os << "irredundant component ";
                list(st.fibers);
                break;
        }
        os << '\n';
    }
    return os.str();
}

CoherentConfiguration cut_matching(const CoherentConfiguration& c, int X, int Y) {
    if (X < 0 || Y < 0 || X >= c.num_fibers() || Y >= c.num_fibers() || X == Y)
        throw InputError("cut_matching: bad fiber pair");
    if (!block_has_matching(c, X, Y))
        throw InputError("cut_matching: interspace has no matching basis relation");
    std::vector<int> rest;
    for (int f = 0; f < c.num_fibers(); ++f)
        if (f != X) rest.push_back(f);
    if (rest.empty()) throw InputError("cut_matching: nothing would remain");
    return restrict_to_fibers(c, rest).config;
}

CoherentConfiguration cut_two_fiber(const CoherentConfiguration& c, int X) {
    if (X < 0 || X >= c.num_fibers()) throw InputError("cut_two_fiber: bad fiber");
    if (!fiber_graph(c).connected()) throw InputError("cut_two_fiber: decomposable");
    if (c.n() <= 2) throw InputError("cut_two_fiber: needs more than 2 points");
    for (int f = 0; f < c.num_fibers(); ++f)
        if (c.fiber_size(f) != 2 && c.fiber_size(f) != 4)
            throw InputError("cut_two_fiber: fibers must have size 4 or 2");
    for (int fx = 0; fx < c.num_fibers(); ++fx)
        for (int fy = fx + 1; fy < c.num_fibers(); ++fy)
            if (block_has_matching(c, fx, fy))
                throw InputError("cut_two_fiber: matching interspace present");
    if (c.fiber_size(X) != 2) throw InputError("cut_two_fiber: fiber is not a 2-point fiber");
    std::vector<int> rest;
    for (int f = 0; f < c.num_fibers(); ++f)
        if (f != X) rest.push_back(f);
    return restrict_to_fibers(c, rest).config;
}

CoherentConfiguration cut_c8_pair(const CoherentConfiguration& c, int X, int Y) {
    if (X < 0 || Y < 0 || X >= c.num_fibers() || Y >= c.num_fibers() || X == Y)
        throw InputError("cut_c8_pair: bad fiber pair");
    if (!fiber_graph(c).connected()) throw InputError("cut_c8_pair: decomposable");
    for (int f = 0; f < c.num_fibers(); ++f)
        if (c.fiber_size(f) != 4) throw InputError("cut_c8_pair: all fibers must have size 4");
    for (int fx = 0; fx < c.num_fibers(); ++fx)
        for (int fy = fx + 1; fy < c.num_fibers(); ++fy)
            if (block_has_matching(c, fx, fy))
                throw InputError("cut_c8_pair: matching interspace present");
    if (c.num_fibers() < 3) throw InputError("cut_c8_pair: needs >= 3 fibers");
    if (!block_is_c8(c, X, Y)) throw InputError("cut_c8_pair: interspace is not of C8 type");
    std::vector<int> rest;
    for (int f = 0; f < c.num_fibers(); ++f)
        if (f != X && f != Y) rest.push_back(f);
    return restrict_to_fibers(c, rest).config;
}

ReduceResult reduce_to_irredundant(const CoherentConfiguration& c) {
    check_fiber_sizes(c, "reduce_to_irredundant");
    Engine engine(c);
    engine.run();
    ReduceResult out;
    out.trace = std::move(engine.trace);
    for (const auto& fc : engine.finals)
        if (fc.kind == ComponentKind::Irredundant)
            out.irredundant.push_back(restrict_to_fibers(c, fc.fibers).config);
    return out;
}

namespace {

// switch generator of the failing incidence extended backwards through the
// cuts; a permutation of the base configuration's classes
struct GeneratorExtension {
    const CoherentConfiguration& base;
    std::vector<int> f;  // class permutation

    explicit GeneratorExtension(const CoherentConfiguration& c)
        : base(c), f(c.num_classes()) {
        for (int i = 0; i < int(f.size()); ++i) f[i] = i;
    }

    bool swaps_block(int fx, int fy) const {
        const auto& cls = base.classes_in_block(fx, fy);
        return f[cls.front()] != cls.front();
    }

    void swap_block(int fx, int fy) {
        for (auto [a, b] : {std::make_pair(fx, fy), std::make_pair(fy, fx)}) {
            const auto& cls = base.classes_in_block(a, b);
            if (cls.size() != 2) throw InternalError("companion: switched block is not 2-class");
            std::swap(f[cls[0]], f[cls[1]]);
        }
    }

    // mirror rule for a matching cut: X was removed along the matching M
    // into Y; each class R in a block touching X maps to the class whose
    // projection along M is f(projection of R)
    void extend_matching(int X, int matching_cls, const std::vector<int>& live_after) {
        std::vector<int> nu(base.n());
        for (int v = 0; v < base.n(); ++v) nu[v] = v;
        for (auto [x, y] : base.class_pairs(matching_cls)) nu[x] = y;

        std::vector<int> zs = live_after;
        zs.push_back(X);
        std::vector<int> fnew = f;
        for (int Z : zs) {
            std::vector<std::pair<int, int>> blocks{{X, Z}, {Z, X}};
            if (Z == X) blocks = {{X, X}};
            for (auto [a, b] : blocks) {
                std::map<int, int> image;     // class of this block -> nu-image class
                std::map<int, int> pullback;  // nu-image class -> class of this block
                for (int cls : base.classes_in_block(a, b)) {
                    auto pairs = base.class_pairs(cls);
                    int img = base.color(nu[pairs.front().first], nu[pairs.front().second]);
                    for (auto [u, v] : pairs)
                        if (base.color(nu[u], nu[v]) != img)
                            throw InternalError("companion: matching projection split a class");
                    image[cls] = img;
                    if (!pullback.emplace(img, cls).second)
                        throw InternalError("companion: matching projection not injective on a block");
                }
                for (auto [cls, img] : image) {
                    auto it = pullback.find(f[img]);
                    if (it == pullback.end())
                        throw InternalError("companion: matching pullback left the block");
                    fnew[cls] = it->second;
                }
            }
        }
        f = std::move(fnew);
    }
};

struct DetailedDecision {
    SeparabilityResult result;
    std::vector<CutRecord> cuts;
    std::vector<int> failing_component;  // fiber indices of base, ascending
    int gen_fiber = -1;                  // fiber index of base
    std::vector<int> gen_hyperedge;      // fiber indices of base
};

DetailedDecision decide_separable_detailed(const CoherentConfiguration& c) {
    check_fiber_sizes(c, "decide_separable");
    Engine engine(c);
    engine.run();
    DetailedDecision out;
    out.cuts = engine.cuts;
    out.result.trace = engine.trace;
    out.result.separable = true;
    for (const auto& fc : engine.finals) {
        if (fc.kind != ComponentKind::Irredundant) continue;
        Restriction r = restrict_to_fibers(c, fc.fibers);
        IrredundantVerdict v = decide_separable_irredundant(r.config);
        if (v.separable) continue;
        out.result.separable = false;
        out.failing_component = fc.fibers;
        // map local fibers back: restriction keeps ascending point order
        out.gen_fiber = fc.fibers[v.fail_fiber];
        SwitchSystem sys = switch_system(r.config);
        for (int lf : sys.hyper.hyperedges[v.fail_hyperedge])
            out.gen_hyperedge.push_back(fc.fibers[lf]);
        NonSeparableWitness w;
        for (int f : fc.fibers) w.component_fibers.push_back(fiber_min_point(c, f));
        w.generator_fiber = fiber_min_point(c, out.gen_fiber);
        for (int f : out.gen_hyperedge) w.generator_hyperedge.push_back(fiber_min_point(c, f));
        out.result.witness = std::move(w);
        break;
    }
    return out;
}

}  // namespace

SeparabilityResult decide_separable(const CoherentConfiguration& c) {
    return decide_separable_detailed(c).result;
}

AmenabilityResult decide_amenable(const ColoredSquareMatrix& g) {
    auto diags = validate_colored_graph(g);
    if (!diags.empty()) throw InputError("decide_amenable: " + diags.front().what);
    {
        std::map<int, int> class_size;
        for (int v = 0; v < g.n; ++v) class_size[g.color(v, v)]++;
        for (auto [cls, size] : class_size)
            if (size > 4) throw InputError("decide_amenable: color multiplicity exceeds 4");
    }

    NormalizedGraph norm = normalize_transpose_ex(g);
    ClosureResult closure = coherent_closure(Rainbow::from_matrix(norm.mat));
    const CoherentConfiguration& c0 = closure.config;

    AmenabilityResult out;
    DetailedDecision dec = decide_separable_detailed(c0);
    out.separability = dec.result;
    if (dec.result.separable) {
        out.amenable = true;
        return out;
    }

    // The switch generator f_{X,C} on the failing component, extended back
    // through the cuts in reverse order.
    GeneratorExtension ext(c0);
    for (int Y : dec.gen_hyperedge)
        if (Y != dec.gen_fiber) ext.swap_block(dec.gen_fiber, Y);

    std::vector<char> removed(c0.num_fibers(), 0);
    for (const auto& rec : dec.cuts)
        for (int f : rec.removed) removed[f] = 1;
    for (auto it = dec.cuts.rbegin(); it != dec.cuts.rend(); ++it) {
        const CutRecord& rec = *it;
        std::vector<int> live_after;  // fibers alive after this cut
        for (int f = 0; f < c0.num_fibers(); ++f)
            if (!removed[f]) live_after.push_back(f);
        switch (rec.kind) {
            case CutRecord::Kind::Matching:
                ext.extend_matching(rec.removed[0], rec.matching_cls, live_after);
                break;
            case CutRecord::Kind::TwoFiber: {
                int X = rec.removed[0], Y = rec.partner;
                for (int Z : live_after) {
                    if (Z == Y || c0.block_uniform(X, Z)) continue;
                    if (c0.block_uniform(Z, Y))
                        throw InternalError("companion: 2-fiber neighbor detached from the anchor");
                    if (ext.swaps_block(Z, Y)) ext.swap_block(X, Z);
                }
                break;
            }
            case CutRecord::Kind::C8Pair: {
                int X = rec.removed[0], Y = rec.removed[1];
                for (int Z : live_after) {
                    if (Z != rec.anchor_u && Z != rec.anchor_w && !c0.block_uniform(X, Z)) {
                        if (c0.block_uniform(Z, rec.anchor_u))
                            throw InternalError("companion: C8 neighbor detached from the X anchor");
                        if (ext.swaps_block(Z, rec.anchor_u)) ext.swap_block(X, Z);
                    }
                    if (Z != rec.anchor_w && Z != rec.anchor_u && !c0.block_uniform(Y, Z)) {
                        if (rec.anchor_w < 0 || c0.block_uniform(Z, rec.anchor_w))
                            throw InternalError("companion: C8 neighbor detached from the Y anchor");
                        if (ext.swaps_block(Z, rec.anchor_w)) ext.swap_block(Y, Z);
                    }
                }
                break;
            }
        }
        for (int f : rec.removed) removed[f] = 0;
    }

    // the extension must be a strict algebraic automorphism of the closure
    for (int A = 0; A < c0.num_fibers(); ++A)
        for (int Z = 0; Z < c0.num_fibers(); ++Z)
            for (int B = 0; B < c0.num_fibers(); ++B)
                for (int T : c0.classes_in_block(A, B))
                    for (int R : c0.classes_in_block(A, Z))
                        for (int S : c0.classes_in_block(Z, B))
                            if (c0.intersection_number(T, R, S) !=
                                c0.intersection_number(ext.f[T], ext.f[R], ext.f[S]))
                                throw InternalError(
                                    "decide_amenable: extended generator breaks an intersection number");

    // H = G^f in the normalized palette, then decoded to the input palette
    std::vector<int> finv(ext.f.size());
    for (size_t i = 0; i < ext.f.size(); ++i) finv[ext.f[i]] = int(i);
    ColoredSquareMatrix h(g.n);
    for (int u = 0; u < g.n; ++u)
        for (int v = 0; v < g.n; ++v)
            h.color(u, v) = norm.pair_of_color[closure.lineage[finv[c0.color(u, v)]]].first;

    auto eq = wl2_equivalent(g, h);
    if (!eq.equivalent)
        throw InternalError("decide_amenable: companion is not WL2-equivalent to the input");
    if (g.n <= 40 && oracle::graph_iso(g, h, true))
        throw InternalError("decide_amenable: companion is isomorphic to the input");
    out.amenable = false;
    out.companion = std::move(h);
    return out;
}

}  // namespace wlcc
