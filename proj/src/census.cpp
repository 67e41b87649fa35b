#include "wlcc/census.hpp"

#include <algorithm>
#include <atomic>
#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>
#include <thread>

#include "wlcc/closure.hpp"
#include "wlcc/generators.hpp"
#include "wlcc/oracle.hpp"
#include "wlcc/reduction.hpp"
#include "wlcc/structure.hpp"

namespace wlcc::census {

int corner_index(int triangle, int other) {
    int rank = 0;
    for (int j = 0; j < 4; ++j) {
        if (j == triangle) continue;
        if (j == other) return rank;
        ++rank;
    }
    throw InternalError("corner_index: other == triangle");
}

int corner_target(int triangle, int corner) {
    int rank = 0;
    for (int j = 0; j < 4; ++j) {
        if (j == triangle) continue;
        if (rank == corner) return j;
        ++rank;
    }
    throw InternalError("corner_target: corner out of range");
}

std::array<std::array<int, 12>, 24> tetra_automorphisms() {
    // Aut(T) = S4 acting on corner slots (i,j) -> (s(i), s(j))
    std::array<std::array<int, 12>, 24> out;
    std::array<int, 4> s{0, 1, 2, 3};
    int idx = 0;
    do {
        for (int i = 0; i < 4; ++i)
            for (int corner = 0; corner < 3; ++corner) {
                int j = corner_target(i, corner);
                out[idx][3 * i + corner] = 3 * s[i] + corner_index(s[i], s[j]);
            }
        ++idx;
    } while (std::next_permutation(s.begin(), s.end()));
    return out;
}

uint64_t polya_count(uint64_t n) {
    auto pw = [](uint64_t b, int e) {
        unsigned __int128 r = 1;
        for (int i = 0; i < e; ++i) r *= b;
        return r;
    };
    unsigned __int128 sum = pw(n, 12) + 6 * pw(n, 7) + 3 * pw(n, 6) + 8 * pw(n, 4) + 6 * pw(n, 3);
    return uint64_t(sum / 24);
}

std::vector<TetraColoring> enumerate_coloring_orbits() {
    auto aut = tetra_automorphisms();
    std::vector<TetraColoring> reps;
    for (uint32_t bits = 0; bits < (1u << 12); ++bits) {
        uint32_t least = bits;
        for (const auto& perm : aut) {
            uint32_t img = 0;
            for (int slot = 0; slot < 12; ++slot)
                if (bits >> slot & 1) img |= 1u << perm[slot];
            least = std::min(least, img);
        }
        if (least == bits) reps.push_back({uint16_t(bits)});
    }
    if (uint64_t(reps.size()) != polya_count(2))
        throw InternalError("enumerate_coloring_orbits: orbit count disagrees with the formula");
    return reps;
}

namespace {

struct TBase {
    CoherentConfiguration config;           // the 16-point configuration
    std::array<std::array<int, 3>, 4> matching_cls;   // [fiber][corner] -> cell class
    std::array<std::array<int, 4>, 4> chosen_block;   // [fx][fy] -> least class of block
};

const TBase& t_base() {
    static const TBase base = [] {
        TBase b{t16(), {}, {}};
        for (int i = 0; i < 4; ++i)
            for (int j = 0; j < 4; ++j) {
                if (i == j) continue;
                MatchingRef ref = determined_matching(b.config, j, i);
                b.matching_cls[i][corner_index(i, j)] = ref.cls;
                b.chosen_block[i][j] = b.config.classes_in_block(i, j).front();
            }
        return b;
    }();
    return base;
}

}  // namespace

std::pair<ColoredSquareMatrix, ColoredSquareMatrix> materialize_pair(const TetraColoring& t) {
    const TBase& base = t_base();
    const CoherentConfiguration& c = base.config;
    const int edge = 4, nonedge = 5;

    ColoredSquareMatrix g(16);
    for (int u = 0; u < 16; ++u)
        for (int v = 0; v < 16; ++v)
            g.color(u, v) = (u == v) ? c.fiber_of(u) : nonedge;
    // interspace blocks: least class of each interspace
    for (int fx = 0; fx < 4; ++fx)
        for (int fy = fx + 1; fy < 4; ++fy) {
            int cls = base.chosen_block[fx][fy];
            for (int u : c.fibers()[fx])
                for (int v : c.fibers()[fy])
                    if (c.color(u, v) == cls) g.color(u, v) = g.color(v, u) = edge;
        }
    // cell subgraphs: union of the black matchings (0 -> empty, 1 -> 2K2,
    // 2 -> C4, 3 -> K4)
    for (int i = 0; i < 4; ++i)
        for (int corner = 0; corner < 3; ++corner) {
            if (!t.black(i, corner)) continue;
            int cls = base.matching_cls[i][corner];
            for (auto [u, v] : c.class_pairs(cls)) g.color(u, v) = edge;
        }

    // companion: complement the interspace between the two least fibers
    ColoredSquareMatrix h = g;
    for (int u : c.fibers()[0])
        for (int v : c.fibers()[1]) {
            h.color(u, v) = (g.color(u, v) == edge) ? nonedge : edge;
            h.color(v, u) = h.color(u, v);
        }
    return {g, h};
}

namespace {

int run_threads(int requested) {
    if (requested > 0) return requested;
    if (const char* env = std::getenv("WLCC_THREADS")) {
        int v = std::atoi(env);
        if (v > 0) return v;
    }
    unsigned hw = std::thread::hardware_concurrency();
    return hw ? int(hw) : 1;
}

}  // namespace

CensusReport census16(const std::string& out_dir, int threads) {
    CensusReport report;
    report.colorings = enumerate_coloring_orbits();
    report.classes = int(report.colorings.size());
    report.graphs = 2 * report.classes;
    report.verdicts.assign(report.classes, "");

    const ColoredSquareMatrix& t_matrix = t_base().config.matrix();

    std::atomic<int> next{0};
    std::atomic<bool> ok{true};
    auto verify_one = [&](int k) {
        auto [g, h] = materialize_pair(report.colorings[k]);
        std::ostringstream verdict;
        bool pass = true;
        // the closure must reproduce the 16-point configuration's partition
        ClosureResult cl = coherent_closure(Rainbow::from_matrix(normalize_transpose(g)));
        if (!cl.config.matrix().same_colors(rerank_colors(t_matrix))) {
            pass = false;
            verdict << "closure!=T ";
        }
        if (!wl2_equivalent(g, h).equivalent) {
            pass = false;
            verdict << "not-equivalent ";
        }
        if (oracle::graph_iso(g, h, true)) {
            pass = false;
            verdict << "isomorphic ";
        }
        for (const auto* member : {&g, &h})
            if (decide_amenable(*member).amenable) {
                pass = false;
                verdict << "amenable ";
            }
        verdict << (pass ? "ok" : "FAIL");
        report.verdicts[k] = verdict.str();
        if (!pass) ok = false;
    };
    auto worker = [&]() {
        while (true) {
            int k = next.fetch_add(1);
            if (k >= report.classes) break;
            try {
                verify_one(k);
            } catch (const std::exception& e) {
                report.verdicts[k] = std::string("FAIL exception: ") + e.what();
                ok = false;
            }
        }
    };
    int nthreads = run_threads(threads);
    std::vector<std::thread> pool;
    for (int i = 1; i < nthreads; ++i) pool.emplace_back(worker);
    worker();
    for (auto& th : pool) th.join();
    report.all_passed = ok;
    if (!report.all_passed) {
        for (int k = 0; k < report.classes; ++k)
            if (report.verdicts[k].find("FAIL") != std::string::npos)
                throw InternalError("census16: verification failed for coloring " +
                                    std::to_string(report.colorings[k].bits));
    }

    if (!out_dir.empty()) {
        std::filesystem::create_directories(out_dir);
        for (int k = 0; k < report.classes; ++k) {
            auto [g, h] = materialize_pair(report.colorings[k]);
            write_ccm_file(out_dir + "/class_" + std::to_string(k) + "_a.ccm", g);
            write_ccm_file(out_dir + "/class_" + std::to_string(k) + "_b.ccm", h);
        }
        std::ofstream rep(out_dir + "/report.tsv");
        rep << "class\tcoloring_bits\tverdict\n";
        for (int k = 0; k < report.classes; ++k)
            rep << k << '\t' << report.colorings[k].bits << '\t' << report.verdicts[k] << "\n";
    }
    return report;
}

ShrikhandeRook shrikhande_rook_pair() {
    auto [g, h] = materialize_pair(TetraColoring{0});
    // the rook member is the one with a 4-clique in its underlying graph
    auto has_k4 = [](const ColoredSquareMatrix& m) {
        const int edge = 4;
        for (int a = 0; a < m.n; ++a)
            for (int b = a + 1; b < m.n; ++b) {
                if (m.color(a, b) != edge) continue;
                for (int c = b + 1; c < m.n; ++c) {
                    if (m.color(a, c) != edge || m.color(b, c) != edge) continue;
                    for (int d = c + 1; d < m.n; ++d)
                        if (m.color(a, d) == edge && m.color(b, d) == edge &&
                            m.color(c, d) == edge)
                            return true;
                }
            }
        return false;
    };
    bool g_rook = has_k4(g), h_rook = has_k4(h);
    if (g_rook == h_rook)
        throw InternalError("shrikhande_rook_pair: exactly one member must contain a 4-clique");
    ShrikhandeRook out;
    out.shrikhande = g_rook ? h : g;
    out.rook = g_rook ? g : h;
    return out;
}

}  // namespace wlcc::census
