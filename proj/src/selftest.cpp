#include "wlcc/selftest.hpp"

#include <algorithm>
#include <chrono>
#include <filesystem>
#include <functional>
#include <numeric>
#include <ostream>
#include <set>
#include <sstream>

#include "wlcc/census.hpp"
#include "wlcc/closure.hpp"
#include "wlcc/generators.hpp"
#include "wlcc/irredundant.hpp"
#include "wlcc/oracle.hpp"
#include "wlcc/reduction.hpp"

namespace wlcc::selftest {

ColoredSquareMatrix random_colored_graph(std::mt19937& rng, int n, int arrow_colors) {
    std::vector<int> points(n);
    std::iota(points.begin(), points.end(), 0);
    std::shuffle(points.begin(), points.end(), rng);
    std::vector<int> vclass(n, -1);
    int nclasses = 0;
    for (int i = 0; i < n;) {
        int size = std::min<int>(n - i, 1 + int(rng() % 4));
        for (int j = 0; j < size; ++j) vclass[points[i + j]] = nclasses;
        ++nclasses;
        i += size;
    }
    ColoredSquareMatrix m(n);
    for (int u = 0; u < n; ++u)
        for (int v = 0; v < n; ++v)
            m.color(u, v) = (u == v) ? vclass[u] : nclasses + int(rng() % arrow_colors);
    // an arrow color may go unused, so densify before validating
    return normalize_transpose(rerank_colors(m));
}

namespace {

using Clock = std::chrono::steady_clock;

struct Runner {
    std::ostream& log;
    int threads;
    std::vector<CriterionResult> results;

    void run(int number, const std::string& name, const std::function<std::string()>& body) {
        CriterionResult r;
        r.number = number;
        r.name = name;
        auto t0 = Clock::now();
        try {
            r.detail = body();
            r.passed = r.detail.empty();
        } catch (const std::exception& e) {
            r.passed = false;
            r.detail = std::string("exception: ") + e.what();
        }
        r.seconds = std::chrono::duration<double>(Clock::now() - t0).count();
        std::ostringstream line;
        line << (r.passed ? "PASS" : "FAIL") << "  criterion " << r.number << " (" << name << ")";
        if (!r.detail.empty()) line << ": " << r.detail;
        char buf[32];
        std::snprintf(buf, sizeof buf, "  [%.2fs]", r.seconds);
        log << line.str() << buf << std::endl;
        results.push_back(std::move(r));
    }
};

SeparabilityResult decide_matrix(const CoherentConfiguration& c) { return decide_separable(c); }

std::string expect_separable(const CoherentConfiguration& c, const std::string& label, bool want) {
    auto res = decide_matrix(c);
    if (res.separable != want)
        return label + ": expected " + (want ? "Separable" : "NonSeparable");
    return "";
}

// instances for the oracle cross-checks: irredundant, small
std::vector<std::pair<std::string, CoherentConfiguration>> irredundant_corpus(bool small_only) {
    std::vector<std::pair<std::string, CoherentConfiguration>> out;
    auto add_skew = [&](const std::string& name, const SimpleGraph& g,
                        DegreeOneCell cell = DegreeOneCell::F4) {
        out.push_back({name, skew_config(g, cell)});
    };
    add_skew("skew(K2)", path_graph(2));
    add_skew("skew(P3)", path_graph(3));
    add_skew("skew(P3,C4-ends)", path_graph(3), DegreeOneCell::C4);
    add_skew("skew(P3,dirC4-ends)", path_graph(3), DegreeOneCell::DirC4);
    add_skew("skew(P4)", path_graph(4));
    add_skew("skew(P5)", path_graph(5));
    add_skew("skew(C3)", cycle_graph(3));
    add_skew("skew(C4)", cycle_graph(4));
    add_skew("skew(C5)", cycle_graph(5));
    add_skew("skew(K4)", complete_graph(4));
    add_skew("skew(star3)", complete_bipartite(1, 3));
    {
        SimpleGraph paw;  // triangle with a pendant
        paw.n = 4;
        paw.edges = {{0, 1}, {0, 2}, {1, 2}, {2, 3}};
        add_skew("skew(paw)", paw);
    }
    {
        SimpleGraph diamond;  // K4 minus an edge
        diamond.n = 4;
        diamond.edges = {{0, 1}, {0, 2}, {1, 2}, {1, 3}, {2, 3}};
        add_skew("skew(diamond)", diamond);
    }
    auto add_pls = [&](const std::string& name, PartialLinearSpace d,
                       DegreeOneCell cell = DegreeOneCell::F4) {
        out.push_back({name, pls_to_config(d, cell)});
    };
    add_pls("one 3-line", {3, {{0, 1, 2}}});
    add_pls("one 3-line (C4)", {3, {{0, 1, 2}}}, DegreeOneCell::C4);
    add_pls("3-line + pendant", {4, {{0, 1, 2}, {2, 3}}});
    add_pls("two 3-lines", {5, {{0, 1, 2}, {2, 3, 4}}});
    add_pls("3-line + two pendants", {5, {{0, 1, 2}, {0, 3}, {1, 4}}});
    if (!small_only) {
        add_skew("skew(C6)", cycle_graph(6));
        add_skew("skew(P6)", path_graph(6));
        out.push_back({"two triangles", example_two_triangles()});
        out.push_back({"t16", t16()});
    }
    return out;
}

// spanning complete bipartite test of one switch set inside one dcc clique
bool switch_set_allowed(const std::vector<int>& clique,
                        const std::set<std::pair<int, int>>& switched) {
    std::vector<std::pair<int, int>> inside;
    for (size_t a = 0; a < clique.size(); ++a)
        for (size_t b = a + 1; b < clique.size(); ++b)
            if (switched.count({clique[a], clique[b]})) inside.push_back({clique[a], clique[b]});
    if (inside.empty()) return true;
    // parts = components of the complement inside the clique
    std::map<int, int> part;
    for (int v : clique) part[v] = v;
    std::function<int(int)> find = [&](int a) {
        while (part[a] != a) a = part[a] = part[part[a]];
        return a;
    };
    auto in_s = [&](int a, int b) {
        return std::count(inside.begin(), inside.end(),
                          std::make_pair(std::min(a, b), std::max(a, b))) > 0;
    };
    for (size_t a = 0; a < clique.size(); ++a)
        for (size_t b = a + 1; b < clique.size(); ++b)
            if (!in_s(clique[a], clique[b])) part[find(clique[a])] = find(clique[b]);
    std::set<int> roots;
    for (int v : clique) roots.insert(find(v));
    if (roots.size() != 2) return false;
    // complete across parts
    for (size_t a = 0; a < clique.size(); ++a)
        for (size_t b = a + 1; b < clique.size(); ++b)
            if ((find(clique[a]) != find(clique[b])) != in_s(clique[a], clique[b])) return false;
    return true;
}

}  // namespace

std::vector<CriterionResult> run_all(std::ostream& log, int threads) {
    Runner run{log, threads, {}};

    run.run(1, "small-instance amenability", [&]() -> std::string {
        std::mt19937 rng(20240811);
        auto t0 = Clock::now();
        for (int i = 0; i < 1000; ++i) {
            int n = 1 + int(rng() % 15);
            auto g = random_colored_graph(rng, n, 2 + int(rng() % 2));
            auto res = decide_amenable(g);
            if (!res.amenable)
                return "graph " + std::to_string(i) + " (n=" + std::to_string(n) +
                       ") reported non-amenable";
        }
        double secs = std::chrono::duration<double>(Clock::now() - t0).count();
        if (secs >= 60.0) return "runtime " + std::to_string(secs) + "s exceeds 60s";
        return "";
    });

    run.run(2, "16-vertex census", [&]() -> std::string {
        auto t0 = Clock::now();
        if (census::polya_count(2) != 218) return "polya_count(2) != 218";
        auto dir = std::filesystem::temp_directory_path() / "wlcc_census16";
        auto report = census::census16(dir.string(), run.threads);
        if (report.classes != 218) return "classes != 218";
        if (report.graphs != 436) return "graphs != 436";
        if (!report.all_passed) return "a pair failed verification";
        size_t files = 0;
        for (const auto& entry : std::filesystem::directory_iterator(dir))
            if (entry.path().extension() == ".ccm") ++files;
        if (files != 436) return "expected 436 emitted .ccm files";
        double secs = std::chrono::duration<double>(Clock::now() - t0).count();
        if (secs >= 300.0) return "runtime " + std::to_string(secs) + "s exceeds 5min";
        return "";
    });

    run.run(3, "unique 16-point obstruction", [&]() -> std::string {
        if (auto err = expect_separable(t16(), "t16", false); !err.empty()) return err;
        std::mt19937 rng(987654321);
        for (int i = 0; i < 500; ++i) {
            int n = 1 + int(rng() % 15);
            auto g = random_colored_graph(rng, n, 2 + int(rng() % 2));
            auto cl = coherent_closure(Rainbow::from_matrix(g));
            auto res = decide_separable(cl.config);
            if (!res.separable)
                return "random closure " + std::to_string(i) + " reported non-separable";
        }
        return "";
    });

    run.run(4, "CFI criterion", [&]() -> std::string {
        std::vector<std::pair<std::string, SimpleGraph>> separable_cases = {
            {"P4", path_graph(4)},
            {"C5", cycle_graph(5)},
            {"C6", cycle_graph(6)},
            {"P9", path_graph(9)},  // a tree of maximum degree 2
        };
        std::vector<std::pair<std::string, SimpleGraph>> nonseparable_cases = {
            {"K4", complete_graph(4)},
            {"K33", complete_bipartite(3, 3)},
            {"Petersen", petersen_graph()},
            {"MK-graph", mobius_kantor_graph()},
        };
        for (const auto& [name, g] : separable_cases)
            if (auto err = expect_separable(skew_config(g), "skew(" + name + ")", true);
                !err.empty())
                return err;
        for (const auto& [name, g] : nonseparable_cases)
            if (auto err = expect_separable(skew_config(g), "skew(" + name + ")", false);
                !err.empty())
                return err;
        return "";
    });

    run.run(5, "(n3) multiples of 7", [&]() -> std::string {
        for (int n = 7; n <= 21; ++n) {
            bool want_nonsep = (n % 7 == 0);
            auto res = decide_separable(pls_to_config(cyclic_pls(n)));
            if (res.separable != !want_nonsep)
                return "cyclic(" + std::to_string(n) + ") verdict wrong";
        }
        return "";
    });

    run.run(6, "named geometries", [&]() -> std::string {
        if (auto e = expect_separable(pls_to_config(fano()), "Fano", false); !e.empty()) return e;
        if (auto e = expect_separable(pls_to_config(mobius_kantor()), "Moebius-Kantor", true);
            !e.empty())
            return e;
        if (auto e = expect_separable(pls_to_config(pappus()), "Pappus", false); !e.empty())
            return e;
        if (auto e = expect_separable(pls_to_config(cyclic_pls(9)), "cyclic(9,{0,2,3})", true);
            !e.empty())
            return e;
        if (auto e = expect_separable(pls_to_config(cyclic_pls_offsets(9, 3, 4)),
                                      "cyclic(9,{0,3,4})", true);
            !e.empty())
            return e;
        return "";
    });

    run.run(7, "worked examples", [&]() -> std::string {
        if (auto e = expect_separable(example_two_triangles(), "two-triangles", true); !e.empty())
            return e;
        auto mixed = example_mixed();
        if (auto e = expect_separable(mixed, "mixed", false); !e.empty()) return e;
        if (int s = saa_order_log2(mixed); s != 15)
            return "saa_order_log2(mixed) = " + std::to_string(s) + ", expected 15";
        // the color-preserving group has order 32, counted two independent ways
        int s = scac_order_log2_all_f4(mixed);
        if (s != 5) return "scac_order_log2_all_f4(mixed) = " + std::to_string(s) + ", expected 5";
        auto sca = oracle::enumerate_strict_combinatorial_automorphisms(mixed);
        size_t identity_inducing = 0;
        for (uint32_t m : sca.induced_masks)
            if (m == 0) ++identity_inducing;
        if (identity_inducing != (size_t(1) << s))
            return "kernel count disagrees with the enumeration oracle";
        return "";
    });

    run.run(8, "oracle concordance", [&]() -> std::string {
        for (const auto& [name, c] : irredundant_corpus(true)) {
            if (c.num_fibers() > 5) continue;
            bool fast = decide_separable_irredundant(c).separable;
            bool slow = oracle::separable_oracle_irredundant(c);
            if (fast != slow) return name + ": decision disagrees with the oracle";
        }
        std::mt19937 rng(55555);
        for (int i = 0; i < 200; ++i) {
            int n = 2 + int(rng() % 15);
            auto g = random_colored_graph(rng, n, 2 + int(rng() % 2));
            Rainbow r = Rainbow::from_matrix(g);
            auto cl = coherent_closure(r);
            auto oracle_part = oracle::closure_oracle(r);
            if (cl.config.matrix().colors != oracle_part)
                return "closure disagrees with the oracle on instance " + std::to_string(i);
        }
        int counted = 0;
        for (const auto& [name, c] : irredundant_corpus(false)) {
            if (fiber_graph(c).edges.size() > 14) continue;
            auto fam = oracle::enumerate_strict_algebraic_automorphisms(c);
            if (fam.masks.size() != (size_t(1) << saa_order_log2(c)))
                return name + ": |saa| != 2^saa_order_log2";
            ++counted;
        }
        if (counted < 20) return "fewer than 20 saa instances checked";
        return "";
    });

    run.run(9, "Shrikhande / rook pair", [&]() -> std::string {
        auto pair = census::shrikhande_rook_pair();
        if (!wl2_equivalent(pair.shrikhande, pair.rook).equivalent) return "pair not equivalent";
        if (oracle::graph_iso(pair.shrikhande, pair.rook, true)) return "pair colored-isomorphic";
        if (oracle::graph_iso(pair.shrikhande, pair.rook, false))
            return "pair uncolored-isomorphic";
        const int edge = 4;
        for (const auto* m : {&pair.shrikhande, &pair.rook}) {
            for (int u = 0; u < 16; ++u) {
                int deg = 0;
                for (int v = 0; v < 16; ++v)
                    if (v != u && m->color(u, v) == edge) ++deg;
                if (deg != 6) return "member not 6-regular";
            }
            for (int u = 0; u < 16; ++u)
                for (int v = u + 1; v < 16; ++v) {
                    int common = 0;
                    for (int w = 0; w < 16; ++w)
                        if (w != u && w != v && m->color(u, w) == edge && m->color(v, w) == edge)
                            ++common;
                    if (common != 2) return "member violates SRG(16,6,2,2)";
                }
        }
        auto has_k4 = [&](const ColoredSquareMatrix& m) {
            for (int a = 0; a < 16; ++a)
                for (int b = a + 1; b < 16; ++b)
                    for (int cc = b + 1; cc < 16; ++cc)
                        for (int d = cc + 1; d < 16; ++d)
                            if (m.color(a, b) == edge && m.color(a, cc) == edge &&
                                m.color(a, d) == edge && m.color(b, cc) == edge &&
                                m.color(b, d) == edge && m.color(cc, d) == edge)
                                return true;
            return false;
        };
        if (has_k4(pair.shrikhande) || !has_k4(pair.rook))
            return "exactly the rook member must contain a 4-clique";
        return "";
    });

    run.run(10, "switch-set law", [&]() -> std::string {
        for (const auto& [name, c] : irredundant_corpus(false)) {
            auto fg = fiber_graph(c);
            if (fg.edges.size() > 12) continue;
            auto fam = oracle::enumerate_strict_algebraic_automorphisms(c);
            std::set<uint32_t> scanned(fam.masks.begin(), fam.masks.end());
            auto hyper = dcc(c);
            for (uint32_t mask = 0; mask < (uint32_t(1) << fg.edges.size()); ++mask) {
                std::set<std::pair<int, int>> switched;
                for (size_t e = 0; e < fg.edges.size(); ++e)
                    if (mask >> e & 1) switched.insert(fg.edges[e]);
                bool allowed = true;
                for (const auto& clique : hyper.hyperedges)
                    if (!switch_set_allowed(clique, switched)) {
                        allowed = false;
                        break;
                    }
                if (allowed != (scanned.count(mask) > 0))
                    return name + ": mask " + std::to_string(mask) +
                           " disagrees with the bipartite characterization";
            }
        }
        return "";
    });

    return run.results;
}

bool all_passed(const std::vector<CriterionResult>& results) {
    for (const auto& r : results)
        if (!r.passed) return false;
    return !results.empty();
}

}  // namespace wlcc::selftest
