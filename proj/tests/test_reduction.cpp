#include <doctest.h>

#include <map>
#include <random>
#include <set>

#include "testutil.hpp"
#include "wlcc/census.hpp"
#include "wlcc/closure.hpp"
#include "wlcc/generators.hpp"
#include "wlcc/oracle.hpp"
#include "wlcc/reduction.hpp"
#include "wlcc/irredundant.hpp"
#include "wlcc/selftest.hpp"
#include "wlcc/structure.hpp"

using namespace wlcc;

namespace {

CoherentConfiguration close_graph(const ColoredSquareMatrix& g) {
    return coherent_closure(Rainbow::from_matrix(normalize_transpose(g))).config;
}

// the 16-point configuration's colored version extended by a pendant class W
// (2 or 4 points) attached to fiber 0
ColoredSquareMatrix t16_with_pendant(int pendant_size) {
    auto t = t16();
    int n = 16 + pendant_size;
    int base = t.num_classes();
    ColoredSquareMatrix m(n);
    for (int u = 0; u < 16; ++u)
        for (int v = 0; v < 16; ++v) m.color(u, v) = t.color(u, v);
    int loop_w = base, edge = base + 1, nonedge = base + 2;
    for (int u = 16; u < n; ++u)
        for (int v = 0; v < n; ++v) {
            if (v >= 16) m.color(u, v) = u == v ? loop_w : nonedge;
            else m.color(u, v) = m.color(v, u) = nonedge;
        }
    if (pendant_size == 2) {
        // w1 and w2 each adjacent to one pair of a matching of fiber 0
        int mcls = determined_matching(t, 1, 0).cls;
        auto pairs = t.class_pairs(mcls);
        std::set<std::pair<int, int>> used;
        std::vector<std::vector<int>> sides;
        for (auto [a, b] : pairs) {
            auto key = std::minmax(a, b);
            if (used.insert(key).second) sides.push_back({key.first, key.second});
        }
        REQUIRE(sides.size() == 2);
        for (int x : sides[0]) m.color(16, x) = m.color(x, 16) = edge;
        for (int x : sides[1]) m.color(17, x) = m.color(x, 17) = edge;
    } else {
        // perfect matching between W and fiber 0
        for (int i = 0; i < 4; ++i) {
            m.color(16 + i, i) = edge;
            m.color(i, 16 + i) = edge;
        }
    }
    return rerank_colors(m);
}

}  // namespace

TEST_CASE("cut_matching") {
    SUBCASE("two empty 4-classes joined by a matching") {
        auto c = close_graph(testutil::vertex_colored_graph(
            {0, 0, 0, 0, 1, 1, 1, 1}, {{0, 4}, {1, 5}, {2, 6}, {3, 7}}));
        REQUIRE(c.num_fibers() == 2);
        auto cut = cut_matching(c, 0, 1);
        CHECK(cut.num_fibers() == 1);
        CHECK(cut.n() == 4);
    }
    SUBCASE("a chain of matchings collapses to one cell") {
        std::vector<int> vclass(12);
        std::vector<std::pair<int, int>> edges;
        for (int b = 0; b < 3; ++b)
            for (int i = 0; i < 4; ++i) vclass[4 * b + i] = b;
        for (int b = 0; b + 1 < 3; ++b)
            for (int i = 0; i < 4; ++i) edges.push_back({4 * b + i, 4 * (b + 1) + i});
        auto c = close_graph(testutil::vertex_colored_graph(vclass, edges));
        REQUIRE(c.num_fibers() == 3);
        auto once = cut_matching(c, 0, 1);
        CHECK(once.num_fibers() == 2);
        auto twice = cut_matching(once, 0, 1);
        CHECK(twice.num_fibers() == 1);
    }
    SUBCASE("cutting does not change the remaining tags") {
        auto g = t16_with_pendant(4);
        auto c = close_graph(g);
        REQUIRE(c.num_fibers() == 5);
        // fiber 4 is the pendant; its interspace with fiber 0 has a matching
        auto cut = cut_matching(c, 4, 0);
        for (int fx = 0; fx < 4; ++fx)
            for (int fy = fx + 1; fy < 4; ++fy)
                CHECK(classify_interspace(cut, fx, fy).tag ==
                      classify_interspace(c, fx, fy).tag);
    }
    SUBCASE("guard") {
        CHECK_THROWS_AS(cut_matching(t16(), 0, 1), InputError);
    }
}

TEST_CASE("cut_two_fiber") {
    auto g = t16_with_pendant(2);
    auto c = close_graph(g);
    REQUIRE(c.num_fibers() == 5);
    REQUIRE(c.fiber_size(4) == 2);
    SUBCASE("removes the pendant") {
        auto cut = cut_two_fiber(c, 4);
        CHECK(cut.num_fibers() == 4);
        CHECK(cut.n() == 16);
        CHECK_FALSE(decide_separable(cut).separable);
    }
    SUBCASE("guards") {
        CHECK_THROWS_WITH_AS(cut_two_fiber(c, 0), "cut_two_fiber: fiber is not a 2-point fiber",
                             InputError);
        auto with_matching = close_graph(t16_with_pendant(4));
        CHECK_THROWS_WITH_AS(cut_two_fiber(with_matching, 0),
                             "cut_two_fiber: matching interspace present", InputError);
        auto decomposable = close_graph(testutil::vertex_colored_graph({0, 0, 1, 1}, {}));
        CHECK_THROWS_WITH_AS(cut_two_fiber(decomposable, 0), "cut_two_fiber: decomposable",
                             InputError);
    }
}

namespace {

// C8 between X and Y plus a 2K22 anchor U seeing both (case U = W)
ColoredSquareMatrix c8_gadget() {
    ColoredSquareMatrix m(12);
    for (int u = 0; u < 12; ++u)
        for (int v = 0; v < 12; ++v) m.color(u, v) = u == v ? u / 4 : 3;
    // points: X = 0..3, Y = 4..7 on the cycle x1 y1 x2 y2 x3 y3 x4 y4
    int cyc[8] = {0, 4, 1, 5, 2, 6, 3, 7};
    for (int i = 0; i < 8; ++i) {
        int a = cyc[i], b = cyc[(i + 1) % 8];
        m.color(a, b) = m.color(b, a) = 4;
    }
    // U = 8..11: 2K22 to X along the antipodal matching {x1,x3},{x2,x4}
    for (int u : {8, 9})
        for (int x : {0, 2}) m.color(u, x) = m.color(x, u) = 5;
    for (int u : {10, 11})
        for (int x : {1, 3}) m.color(u, x) = m.color(x, u) = 5;
    // and 2K22 to Y along {y1,y3},{y2,y4}, skew at U
    for (int u : {8, 10})
        for (int y : {4, 6}) m.color(u, y) = m.color(y, u) = 6;
    for (int u : {9, 11})
        for (int y : {5, 7}) m.color(u, y) = m.color(y, u) = 6;
    return rerank_colors(m);
}

}  // namespace

TEST_CASE("cut_c8_pair") {
    auto c = close_graph(c8_gadget());
    REQUIRE(c.num_fibers() == 3);
    int X = -1, Y = -1;
    for (int fx = 0; fx < 3 && X < 0; ++fx)
        for (int fy = fx + 1; fy < 3; ++fy)
            if (classify_interspace(c, fx, fy).tag == InterspaceClass::C8) {
                X = fx;
                Y = fy;
            }
    REQUIRE(X >= 0);
    auto cut = cut_c8_pair(c, X, Y);
    CHECK(cut.num_fibers() == 1);
    CHECK(cut.n() == 4);

    // a two-fiber C8 is rejected (base case instead)
    std::vector<std::pair<int, int>> edges;
    for (int i = 0; i < 8; ++i) edges.push_back({i, (i + 1) % 8});
    auto two = close_graph(testutil::vertex_colored_graph({0, 1, 0, 1, 0, 1, 0, 1}, edges));
    CHECK_THROWS_WITH_AS(cut_c8_pair(two, 0, 1), "cut_c8_pair: needs >= 3 fibers", InputError);
}

TEST_CASE("reduce_to_irredundant") {
    SUBCASE("small instances never produce a non-separable component") {
        std::mt19937 rng(77);
        for (int trial = 0; trial < 60; ++trial) {
            int n = 1 + int(rng() % 15);
            auto g = wlcc::selftest::random_colored_graph(rng, n);
            auto c = coherent_closure(Rainbow::from_matrix(g)).config;
            auto red = reduce_to_irredundant(c);
            for (const auto& comp : red.irredundant) {
                CHECK(is_irredundant(comp).irredundant);
                CHECK(decide_separable_irredundant(comp).separable);
            }
        }
        // a 15-point-or-smaller closure can still hand off an irredundant
        // component (the two-fiber 2K22 pair on 8 points); it decides separable
        auto small = pls_to_config({2, {{0, 1}}});
        auto red = reduce_to_irredundant(small);
        REQUIRE(red.irredundant.size() == 1);
        CHECK(decide_separable_irredundant(red.irredundant[0]).separable);
    }
    SUBCASE("the 16-point configuration survives unchanged") {
        auto red = reduce_to_irredundant(t16());
        REQUIRE(red.irredundant.size() == 1);
        CHECK(red.irredundant[0].matrix().same_colors(t16().matrix()));
    }
    SUBCASE("pendant removed, core survives") {
        auto c = close_graph(t16_with_pendant(2));
        auto red = reduce_to_irredundant(c);
        REQUIRE(red.irredundant.size() == 1);
        CHECK(red.irredundant[0].n() == 16);
        CHECK(testutil::same_partition(red.irredundant[0].matrix(), t16().matrix()));
    }
    SUBCASE("trace replay determinism") {
        auto c = close_graph(t16_with_pendant(4));
        auto red1 = reduce_to_irredundant(c);
        auto red2 = reduce_to_irredundant(c);
        REQUIRE(red1.trace.steps.size() == red2.trace.steps.size());
        CHECK(to_string(red1.trace) == to_string(red2.trace));
    }
}

TEST_CASE("trace replay reproduces the final components") {
    for (auto& base : {close_graph(t16_with_pendant(2)), close_graph(t16_with_pendant(4)),
                       close_graph(c8_gadget())}) {
        auto red = reduce_to_irredundant(base);

        // live configurations tagged with the original point behind each point
        struct Live {
            CoherentConfiguration config;
            std::vector<int> orig;  // point -> point of `base`
        };
        std::vector<int> all(base.n());
        for (int i = 0; i < base.n(); ++i) all[i] = i;
        std::vector<Live> live;
        live.push_back({base, all});

        auto fiber_min_points = [&](const Live& l) {
            std::vector<int> out;
            for (const auto& f : l.config.fibers()) out.push_back(l.orig[f.front()]);
            return out;
        };
        auto find_live = [&](int fiber_min_point) {
            for (size_t i = 0; i < live.size(); ++i)
                for (int mp : fiber_min_points(live[i]))
                    if (mp == fiber_min_point) return int(i);
            return -1;
        };
        auto local_fiber = [&](const Live& l, int fiber_min_point) {
            auto mps = fiber_min_points(l);
            for (size_t f = 0; f < mps.size(); ++f)
                if (mps[f] == fiber_min_point) return int(f);
            return -1;
        };
        auto drop_fibers = [&](Live l, std::vector<int> local_fibers,
                               const CoherentConfiguration& next) {
            std::vector<int> orig;
            for (int p = 0; p < l.config.n(); ++p)
                if (!std::count(local_fibers.begin(), local_fibers.end(), l.config.fiber_of(p)))
                    orig.push_back(l.orig[p]);
            REQUIRE(int(orig.size()) == next.n());
            return Live{next, orig};
        };

        std::vector<std::vector<int>> finals;
        for (const auto& st : red.trace.steps) {
            switch (st.kind) {
                case ReductionStep::Kind::SplitComponents: {
                    int ci = find_live(st.parts.front().front());
                    REQUIRE(ci >= 0);
                    Live original = std::move(live[ci]);
                    live.erase(live.begin() + ci);
                    auto comps = decompose_direct_sum(original.config);
                    REQUIRE(comps.size() == st.parts.size());
                    for (auto& comp : comps) {
                        std::vector<int> orig;
                        for (int p : comp.points) orig.push_back(original.orig[p]);
                        live.push_back({comp.config, orig});
                    }
                    break;
                }
                case ReductionStep::Kind::CutMatching: {
                    int ci = find_live(st.fibers[0]);
                    REQUIRE(ci >= 0);
                    int fx = local_fiber(live[ci], st.fibers[0]);
                    int fy = local_fiber(live[ci], st.partner);
                    auto next = cut_matching(live[ci].config, fx, fy);
                    live[ci] = drop_fibers(std::move(live[ci]), {fx}, next);
                    break;
                }
                case ReductionStep::Kind::CutTwoFiber: {
                    int ci = find_live(st.fibers[0]);
                    REQUIRE(ci >= 0);
                    int fx = local_fiber(live[ci], st.fibers[0]);
                    auto next = cut_two_fiber(live[ci].config, fx);
                    live[ci] = drop_fibers(std::move(live[ci]), {fx}, next);
                    break;
                }
                case ReductionStep::Kind::CutC8Pair: {
                    int ci = find_live(st.fibers[0]);
                    REQUIRE(ci >= 0);
                    int fx = local_fiber(live[ci], st.fibers[0]);
                    int fy = local_fiber(live[ci], st.fibers[1]);
                    auto next = cut_c8_pair(live[ci].config, fx, fy);
                    live[ci] = drop_fibers(std::move(live[ci]), {fx, fy}, next);
                    break;
                }
                case ReductionStep::Kind::BaseCaseSeparable:
                case ReductionStep::Kind::IrredundantHandoff: {
                    int ci = find_live(st.fibers.front());
                    REQUIRE(ci >= 0);
                    CHECK(fiber_min_points(live[ci]) == st.fibers);
                    if (st.kind == ReductionStep::Kind::IrredundantHandoff)
                        CHECK(is_irredundant(live[ci].config).irredundant);
                    finals.push_back(st.fibers);
                    live.erase(live.begin() + ci);
                    break;
                }
            }
        }
        CHECK(live.empty());
        CHECK_FALSE(finals.empty());
    }
}

TEST_CASE("decide_separable end to end") {
    CHECK_FALSE(decide_separable(t16()).separable);
    CHECK(decide_separable(pls_to_config(mobius_kantor())).separable);
    auto fano_res = decide_separable(pls_to_config(fano()));
    CHECK_FALSE(fano_res.separable);
    REQUIRE(fano_res.witness.has_value());
    CHECK(fano_res.witness->generator_hyperedge.size() == 3);
}

TEST_CASE("decide_amenable basics") {
    SUBCASE("multiplicity-3 graphs are amenable") {
        std::mt19937 rng(31);
        for (int trial = 0; trial < 25; ++trial) {
            int n = 3 + int(rng() % 15);
            std::vector<int> vclass(n);
            for (int i = 0; i < n; ++i) vclass[i] = i / 3;
            std::vector<std::pair<int, int>> edges;
            for (int u = 0; u < n; ++u)
                for (int v = u + 1; v < n; ++v)
                    if (rng() % 2) edges.push_back({u, v});
            auto res = decide_amenable(testutil::vertex_colored_graph(vclass, edges));
            CHECK(res.amenable);
        }
    }
    SUBCASE("multiplicity above 4 is rejected") {
        std::vector<int> vclass(5, 0);
        CHECK_THROWS_AS(decide_amenable(testutil::vertex_colored_graph(vclass, {})), InputError);
    }
}

TEST_CASE("companion construction through cuts") {
    // decide_amenable verifies WL2 equivalence and non-isomorphism of its own
    // companion; these instances force each extension rule to run
    SUBCASE("two-fiber cut between the generator and the input") {
        auto g = t16_with_pendant(2);
        auto res = decide_amenable(g);
        REQUIRE_FALSE(res.amenable);
        REQUIRE(res.companion.has_value());
        CHECK(wl2_equivalent(g, *res.companion).equivalent);
        CHECK_FALSE(oracle::graph_iso(g, *res.companion, true).has_value());
    }
    SUBCASE("matching cut between the generator and the input") {
        auto g = t16_with_pendant(4);
        auto res = decide_amenable(g);
        REQUIRE_FALSE(res.amenable);
        CHECK(wl2_equivalent(g, *res.companion).equivalent);
        CHECK_FALSE(oracle::graph_iso(g, *res.companion, true).has_value());
    }
    SUBCASE("C8 cut in a parallel component") {
        // disjoint union of the C8 gadget and the 16-point obstruction
        auto gadget = c8_gadget();
        auto t = t16();
        int n = 12 + 16;
        ColoredSquareMatrix m(n);
        int base_colors = gadget.color_count();
        int cross_a = base_colors + t.num_classes(), cross_b = cross_a + 1;
        for (int u = 0; u < 12; ++u)
            for (int v = 0; v < 12; ++v) m.color(u, v) = gadget.color(u, v);
        for (int u = 0; u < 16; ++u)
            for (int v = 0; v < 16; ++v)
                m.color(12 + u, 12 + v) = base_colors + t.color(u, v);
        for (int u = 0; u < 12; ++u)
            for (int v = 12; v < n; ++v) {
                m.color(u, v) = cross_a;
                m.color(v, u) = cross_b;
            }
        auto g = rerank_colors(m);
        auto res = decide_amenable(g);
        REQUIRE_FALSE(res.amenable);
        CHECK(wl2_equivalent(g, *res.companion).equivalent);
        CHECK_FALSE(oracle::graph_iso(g, *res.companion, true).has_value());
    }
}

TEST_CASE("companion for the Shrikhande member is the rook member") {
    auto pair = wlcc::census::shrikhande_rook_pair();
    auto res = decide_amenable(pair.shrikhande);
    REQUIRE_FALSE(res.amenable);
    CHECK(oracle::graph_iso(*res.companion, pair.rook, true).has_value());
}

TEST_CASE("cut soundness at desk scale") {
    // everything with at most 12 points is separable before and after cuts
    std::mt19937 rng(1212);
    for (int trial = 0; trial < 40; ++trial) {
        int n = 2 + int(rng() % 11);
        auto g = wlcc::selftest::random_colored_graph(rng, n);
        auto c = coherent_closure(Rainbow::from_matrix(g)).config;
        CHECK(decide_separable(c).separable);
    }
    // and the 20-point pendant instances agree with the oracle after the cut
    auto c = close_graph(t16_with_pendant(2));
    CHECK_FALSE(decide_separable(c).separable);
    auto red = reduce_to_irredundant(c);
    REQUIRE(red.irredundant.size() == 1);
    CHECK_FALSE(oracle::separable_oracle_irredundant(red.irredundant[0]));
}

namespace {

// colored version of a skew core with random pendant 2-fibers (2K12 onto a
// matching of a core fiber) and matched 4-fibers; every cut preserves
// separability, so the verdict must equal the core's
ColoredSquareMatrix decorated_core(std::mt19937& rng, const CoherentConfiguration& core,
                                   int pendants, int matched) {
    int extra = 2 * pendants + 4 * matched;
    int n = core.n() + extra;
    ColoredSquareMatrix m(n);
    int next = core.num_classes();
    int nonedge = next++;
    for (int u = 0; u < n; ++u)
        for (int v = 0; v < n; ++v)
            m.color(u, v) = (u < core.n() && v < core.n()) ? core.color(u, v) : nonedge;
    int at = core.n();
    auto cell_matchings = [&](int fiber) {
        std::vector<int> out;
        for (int cls : core.classes_in_block(fiber, fiber))
            if (!core.meta(cls).reflexive && core.meta(cls).valency == 1) out.push_back(cls);
        return out;
    };
    for (int p = 0; p < pendants; ++p) {
        int fiber = int(rng() % core.num_fibers());
        auto ms = cell_matchings(fiber);
        int mcls = ms[rng() % ms.size()];
        int loop = next++, edge = next++;
        m.color(at, at) = m.color(at + 1, at + 1) = loop;
        std::set<std::pair<int, int>> sides;
        for (auto [a, b] : core.class_pairs(mcls)) sides.insert(std::minmax(a, b));
        int w = at;
        for (auto [a, b] : sides) {
            m.color(w, a) = m.color(a, w) = edge;
            m.color(w, b) = m.color(b, w) = edge;
            ++w;
        }
        at += 2;
    }
    for (int q = 0; q < matched; ++q) {
        int fiber = int(rng() % core.num_fibers());
        int loop = next++, edge = next++;
        for (int i = 0; i < 4; ++i) m.color(at + i, at + i) = loop;
        for (int i = 0; i < 4; ++i) {
            int x = core.fibers()[fiber][i];
            m.color(at + i, x) = m.color(x, at + i) = edge;
        }
        at += 4;
    }
    return rerank_colors(m);
}

}  // namespace

TEST_CASE("decorated cores keep the core verdict") {
    std::mt19937 rng(97531);
    std::vector<std::pair<CoherentConfiguration, bool>> cores;  // (core, amenable)
    cores.push_back({skew_config(complete_graph(4)), false});
    cores.push_back({skew_config(cycle_graph(4)), true});
    cores.push_back({skew_config(cycle_graph(5)), true});
    cores.push_back({pls_to_config({5, {{0, 1, 2}, {2, 3, 4}}}), true});
    cores.push_back({skew_config(complete_bipartite(3, 3)), false});
    int with_cuts = 0;
    for (int trial = 0; trial < 60; ++trial) {
        const auto& [core, amenable] = cores[trial % cores.size()];
        int pendants = int(rng() % 3), matched = int(rng() % 2);
        auto g = decorated_core(rng, core, pendants, matched);
        auto res = decide_amenable(g);
        INFO("trial ", trial, " pendants ", pendants, " matched ", matched);
        CHECK(res.amenable == amenable);
        if (!res.amenable) {
            CHECK(wl2_equivalent(g, *res.companion).equivalent);
            if (g.n <= 40) CHECK_FALSE(oracle::graph_iso(g, *res.companion, true).has_value());
        }
        for (const auto& st : res.separability.trace.steps)
            if (st.kind != ReductionStep::Kind::SplitComponents &&
                st.kind != ReductionStep::Kind::BaseCaseSeparable &&
                st.kind != ReductionStep::Kind::IrredundantHandoff) {
                ++with_cuts;
                break;
            }
    }
    CHECK(with_cuts >= 30);  // the decorations really exercise the cut pipeline
}

TEST_CASE("matched chain: companion through chained matching cuts") {
    // V and W sit at the lowest point indices so the canonical failing
    // generator switches blocks that the matching mirrors must transport
    auto t = t16();
    int n = 8 + 16;
    ColoredSquareMatrix m(n);
    int base = t.num_classes();
    int loop_v = base, loop_w = base + 1, edge = base + 2, nonedge = base + 3;
    for (int u = 0; u < n; ++u)
        for (int v = 0; v < n; ++v) m.color(u, v) = nonedge;
    for (int i = 0; i < 4; ++i) {
        m.color(i, i) = loop_v;
        m.color(4 + i, 4 + i) = loop_w;
    }
    for (int u = 0; u < 16; ++u)
        for (int v = 0; v < 16; ++v)
            if (!t.meta(t.color(u, v)).reflexive || u == v) m.color(8 + u, 8 + v) = t.color(u, v);
    for (int u = 0; u < 16; ++u) m.color(8 + u, 8 + u) = t.color(u, u);
    for (int i = 0; i < 4; ++i) {
        m.color(i, 4 + i) = m.color(4 + i, i) = edge;      // V matched to W
        m.color(4 + i, 8 + i) = m.color(8 + i, 4 + i) = edge;  // W matched to fiber 0
    }
    auto g = rerank_colors(m);
    auto res = decide_amenable(g);
    REQUIRE_FALSE(res.amenable);
    CHECK(wl2_equivalent(g, *res.companion).equivalent);
    CHECK_FALSE(oracle::graph_iso(g, *res.companion, true).has_value());
    // the trace walks two matching cuts before the irredundant core
    int matching_cuts = 0;
    for (const auto& st : res.separability.trace.steps)
        if (st.kind == ReductionStep::Kind::CutMatching) ++matching_cuts;
    CHECK(matching_cuts >= 2);
}

TEST_CASE("C8 cut with distinct anchors") {
    // X and Y joined by an 8-cycle; U sees only X, W sees only Y
    ColoredSquareMatrix m(16);
    for (int u = 0; u < 16; ++u)
        for (int v = 0; v < 16; ++v) m.color(u, v) = u == v ? u / 4 : 4;
    int cyc[8] = {0, 4, 1, 5, 2, 6, 3, 7};
    for (int i = 0; i < 8; ++i) {
        int a = cyc[i], b = cyc[(i + 1) % 8];
        m.color(a, b) = m.color(b, a) = 5;
    }
    for (int u : {8, 9})
        for (int x : {0, 2}) m.color(u, x) = m.color(x, u) = 6;
    for (int u : {10, 11})
        for (int x : {1, 3}) m.color(u, x) = m.color(x, u) = 6;
    for (int w : {12, 13})
        for (int y : {4, 6}) m.color(w, y) = m.color(y, w) = 7;
    for (int w : {14, 15})
        for (int y : {5, 7}) m.color(w, y) = m.color(y, w) = 7;
    auto c = close_graph(rerank_colors(m));
    REQUIRE(c.num_fibers() == 4);
    REQUIRE(classify_interspace(c, 0, 1).tag == InterspaceClass::C8);
    CHECK(c.block_uniform(2, 1));  // U does not see Y
    CHECK(c.block_uniform(3, 0));  // W does not see X
    auto res = decide_separable(c);
    CHECK(res.separable);
    bool cut_seen = false;
    for (const auto& st : res.trace.steps)
        if (st.kind == ReductionStep::Kind::CutC8Pair) cut_seen = true;
    CHECK(cut_seen);
    auto direct = cut_c8_pair(c, 0, 1);
    CHECK(direct.num_fibers() == 2);
    CHECK(fiber_graph(direct).edges.empty());
}
