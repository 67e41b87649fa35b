#include <doctest.h>

#include "testutil.hpp"
#include "wlcc/closure.hpp"
#include "wlcc/generators.hpp"
#include "wlcc/reduction.hpp"
#include "wlcc/structure.hpp"

#include <sstream>

using namespace wlcc;

TEST_CASE("pls validation") {
    CHECK_THROWS_AS(validate_pls({3, {{0}}}), InputError);                    // short line
    CHECK_THROWS_AS(validate_pls({4, {{0, 1, 2}, {0, 1, 3}}}), InputError);   // two shared points
    CHECK_THROWS_AS(validate_pls({5, {{0, 1}, {0, 2}, {0, 3}, {0, 4}}}), InputError);  // degree 4
    CHECK_THROWS_AS(validate_pls({4, {{0, 1}, {2, 3}}}), InputError);         // disconnected
    CHECK_NOTHROW(validate_pls({3, {{0, 1, 2}}}));
}

TEST_CASE("pls_to_config smallest case") {
    auto c = pls_to_config({2, {{0, 1}}});
    CHECK(c.n() == 8);
    CHECK(c.num_fibers() == 2);
    CHECK(classify_interspace(c, 0, 1).tag == InterspaceClass::TwoK22);
    // and it is stable under refinement
    CHECK(coherent_closure(c.rainbow()).rounds == 1);
}

TEST_CASE("pls_to_config named geometries") {
    auto fano_c = pls_to_config(fano());
    CHECK(fano_c.n() == 28);
    CHECK(fano_c.num_fibers() == 7);
    auto pappus_c = pls_to_config(pappus());
    CHECK(pappus_c.n() == 36);
    CHECK(coherent_closure(pappus_c.rainbow()).rounds == 1);
}

TEST_CASE("cyclic pls") {
    CHECK_THROWS_AS(cyclic_pls(6), InputError);
    for (int n = 7; n <= 64; ++n) CHECK_NOTHROW(cyclic_pls(n));

    // textbook Fano plane, 0-based
    PartialLinearSpace textbook{7, {{0, 1, 2}, {0, 3, 4}, {0, 5, 6}, {1, 3, 5},
                                    {1, 4, 6}, {2, 3, 6}, {2, 4, 5}}};
    CHECK(testutil::hypergraph_isomorphic(cyclic_pls(7), textbook));
    CHECK(fano().lines == cyclic_pls(7).lines);
    CHECK(mobius_kantor().lines == cyclic_pls(8).lines);
    CHECK_FALSE(testutil::hypergraph_isomorphic(mobius_kantor(), fano()));
    CHECK_NOTHROW(validate_pls(cyclic_pls(9)));
    CHECK_NOTHROW(validate_pls(cyclic_pls_offsets(9, 3, 4)));
}

TEST_CASE("skew_config basics") {
    auto c5 = skew_config(cycle_graph(5));
    CHECK(c5.num_fibers() == 5);
    CHECK(decide_separable(c5).separable);
    auto fg = fiber_graph(c5);
    CHECK(fg.edges.size() == 5);
    SimpleGraph too_dense = complete_graph(5);  // degree 4
    CHECK_THROWS_AS(skew_config(too_dense), InputError);
}

TEST_CASE("t16 structure") {
    auto t = t16();
    CHECK(t.n() == 16);
    CHECK_FALSE(decide_separable(t).separable);
    auto h = dcc(t);
    for (int f = 0; f < 4; ++f) {
        CHECK(classify_cell(t, f) == CellClass::F4);
        CHECK(h.degree(f) == 3);
    }
    for (int fx = 0; fx < 4; ++fx)
        for (int fy = fx + 1; fy < 4; ++fy)
            CHECK(classify_interspace(t, fx, fy).tag == InterspaceClass::TwoK22);
}

TEST_CASE("worked examples") {
    CHECK(decide_separable(example_two_triangles()).separable);
    CHECK_FALSE(decide_separable(example_mixed()).separable);
}

TEST_CASE("dcc round trip for the example patterns") {
    PartialLinearSpace two{6, {{0, 1, 2}, {3, 4, 5}, {0, 3}, {1, 3}, {1, 5},
                               {2, 5}, {2, 4}, {0, 4}}};
    auto h = dcc(example_two_triangles());
    PartialLinearSpace back{int(h.incidence.size()), h.hyperedges};
    CHECK(testutil::hypergraph_isomorphic(back, two));
    auto hm = dcc(example_mixed());
    PartialLinearSpace mixed{9, {{0, 1, 2}, {3, 4, 5}, {6, 7, 8}, {0, 3}, {1, 4}, {2, 5},
                                 {3, 6}, {4, 7}, {5, 8}, {0, 6}, {1, 7}, {2, 8}}};
    PartialLinearSpace back_m{int(hm.incidence.size()), hm.hyperedges};
    CHECK(testutil::hypergraph_isomorphic(back_m, mixed));
}

TEST_CASE("degree-one cell options stay coherent and separable") {
    for (auto cell : {DegreeOneCell::F4, DegreeOneCell::C4, DegreeOneCell::DirC4}) {
        auto c = skew_config(path_graph(3), cell);
        CHECK(coherent_closure(c.rainbow()).rounds == 1);
        CHECK(decide_separable(c).separable);
    }
}

TEST_CASE("pls and edge list io") {
    PartialLinearSpace d = pappus();
    std::ostringstream os;
    write_pls(os, d);
    std::istringstream is(os.str());
    auto back = read_pls(is);
    CHECK(back.npoints == d.npoints);
    CHECK(back.lines == d.lines);

    std::istringstream gs("graph 4\ne 0 1\ne 1 2 # comment\ne 2 3\ne 3 0\n");
    auto g = read_edge_list(gs);
    CHECK(g.n == 4);
    CHECK(g.edges.size() == 4);
    std::istringstream bad("graph 3\ne 0 3\n");
    CHECK_THROWS_AS(read_edge_list(bad), InputError);
}

TEST_CASE("all generated configurations verify as coherent") {
    // pls_to_config already runs verify_coherence internally; spot-check that
    // refinement does not split them either
    for (const auto& d : {fano(), mobius_kantor(), cyclic_pls(9)})
        CHECK(coherent_closure(pls_to_config(d).rainbow()).rounds == 1);
    CHECK(coherent_closure(example_mixed().rainbow()).rounds == 1);
}
