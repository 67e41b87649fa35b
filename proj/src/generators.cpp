#include "wlcc/generators.hpp"

#include <algorithm>
#include <fstream>
#include <istream>
#include <ostream>
#include <set>
#include <sstream>

namespace wlcc {

void validate_pls(const PartialLinearSpace& d) {
    if (d.npoints <= 0) throw InputError("pls: needs at least one point");
    std::vector<int> degree(d.npoints, 0);
    for (const auto& line : d.lines) {
        if (line.size() < 2) throw InputError("pls: line with fewer than 2 points");
        for (size_t i = 0; i < line.size(); ++i) {
            int p = line[i];
            if (p < 0 || p >= d.npoints) throw InputError("pls: point id out of range");
            if (i && line[i] <= line[i - 1]) throw InputError("pls: line not strictly sorted");
            ++degree[p];
        }
    }
    for (int p = 0; p < d.npoints; ++p)
        if (degree[p] > 3) throw InputError("pls: point on more than 3 lines");
    for (size_t i = 0; i < d.lines.size(); ++i)
        for (size_t j = i + 1; j < d.lines.size(); ++j) {
            std::vector<int> common;
            std::set_intersection(d.lines[i].begin(), d.lines[i].end(), d.lines[j].begin(),
                                  d.lines[j].end(), std::back_inserter(common));
            if (common.size() > 1) throw InputError("pls: two lines share two points");
        }
    // Gaifman connectivity
    std::vector<std::vector<int>> adj(d.npoints);
    for (const auto& line : d.lines)
        for (size_t i = 0; i < line.size(); ++i)
            for (size_t j = i + 1; j < line.size(); ++j) {
                adj[line[i]].push_back(line[j]);
                adj[line[j]].push_back(line[i]);
            }
    std::vector<char> seen(d.npoints, 0);
    std::vector<int> stack{0};
    seen[0] = 1;
    int cnt = 0;
    while (!stack.empty()) {
        int a = stack.back();
        stack.pop_back();
        ++cnt;
        for (int b : adj[a])
            if (!seen[b]) {
                seen[b] = 1;
                stack.push_back(b);
            }
    }
    if (cnt != d.npoints) throw InputError("pls: Gaifman graph is disconnected");
}

namespace {

// the three matchings of a 4-set in local coordinates; index i pairs 0 with i+1
const int kMateOf[3][4] = {
    {1, 0, 3, 2},  // {0,1},{2,3}
    {2, 3, 0, 1},  // {0,2},{1,3}
    {3, 2, 1, 0},  // {0,3},{1,2}
};

}  // namespace

CoherentConfiguration pls_to_config(const PartialLinearSpace& d, DegreeOneCell one_line_cell) {
    validate_pls(d);
    const int np = d.npoints;
    const int n = 4 * np;

    // matching index of (point, line) = rank of the line at the point
    std::vector<std::vector<int>> lines_at(np);
    std::map<std::pair<int, int>, int> midx;  // (point, line) -> 0..2
    for (size_t li = 0; li < d.lines.size(); ++li)
        for (int p : d.lines[li]) {
            midx[{p, int(li)}] = int(lines_at[p].size());
            lines_at[p].push_back(int(li));
        }

    ColoredSquareMatrix m(n);
    int next_color = 0;
    auto fresh = [&next_color]() { return next_color++; };

    for (int p = 0; p < np; ++p) {
        int base = 4 * p;
        int diag = fresh();
        for (int i = 0; i < 4; ++i) m.color(base + i, base + i) = diag;
        bool f4 = lines_at[p].size() >= 2 || one_line_cell == DegreeOneCell::F4;
        if (f4) {
            for (int mi = 0; mi < 3; ++mi) {
                int col = fresh();
                for (int i = 0; i < 4; ++i) m.color(base + i, base + kMateOf[mi][i]) = col;
            }
        } else {
            int mcol = fresh();
            for (int i = 0; i < 4; ++i) m.color(base + i, base + kMateOf[0][i]) = mcol;
            if (one_line_cell == DegreeOneCell::C4) {
                int cyc = fresh();
                for (int i = 0; i < 4; ++i) {
                    m.color(base + i, base + kMateOf[1][i]) = cyc;
                    m.color(base + i, base + kMateOf[2][i]) = cyc;
                }
            } else {
                // directed 4-cycle 0 -> 2 -> 1 -> 3 -> 0 on top of matching {0,1},{2,3}
                int fwd = fresh(), bwd = fresh();
                const int succ[4] = {2, 3, 1, 0};
                for (int i = 0; i < 4; ++i) {
                    m.color(base + i, base + succ[i]) = fwd;
                    m.color(base + succ[i], base + i) = bwd;
                }
            }
        }
    }

    std::set<std::pair<int, int>> collinear;
    for (size_t li = 0; li < d.lines.size(); ++li) {
        const auto& line = d.lines[li];
        for (size_t a = 0; a < line.size(); ++a)
            for (size_t b = a + 1; b < line.size(); ++b) {
                int p = line[a], q = line[b];
                collinear.insert({p, q});
                int mp = midx.at({p, int(li)}), mq = midx.at({q, int(li)});
                // 2K22 block joining the matching pair of 4p with the pair of 4q
                int r = fresh(), rc = fresh(), rt = fresh(), rct = fresh();
                for (int i = 0; i < 4; ++i)
                    for (int j = 0; j < 4; ++j) {
                        bool in_r = (i == 0 || kMateOf[mp][i] == 0) ==
                                    (j == 0 || kMateOf[mq][j] == 0);
                        m.color(4 * p + i, 4 * q + j) = in_r ? r : rc;
                        m.color(4 * q + j, 4 * p + i) = in_r ? rt : rct;
                    }
            }
    }
    for (int p = 0; p < np; ++p)
        for (int q = p + 1; q < np; ++q) {
            if (collinear.count({p, q})) continue;
            int cpq = fresh(), cqp = fresh();
            for (int i = 0; i < 4; ++i)
                for (int j = 0; j < 4; ++j) {
                    m.color(4 * p + i, 4 * q + j) = cpq;
                    m.color(4 * q + j, 4 * p + i) = cqp;
                }
        }

    return require_coherent(Rainbow::from_matrix(rerank_colors(m)), "pls_to_config");
}

CoherentConfiguration skew_config(const SimpleGraph& g, DegreeOneCell one_line_cell) {
    PartialLinearSpace d;
    d.npoints = g.n;
    std::vector<std::pair<int, int>> edges = g.edges;
    std::sort(edges.begin(), edges.end());
    for (auto [u, v] : edges) {
        if (u == v) throw InputError("skew_config: loop edge");
        d.lines.push_back({std::min(u, v), std::max(u, v)});
    }
    return pls_to_config(d, one_line_cell);
}

PartialLinearSpace cyclic_pls_offsets(int n, int o1, int o2) {
    if (n < 7) throw InputError("cyclic_pls: needs n >= 7");
    PartialLinearSpace d;
    d.npoints = n;
    for (int i = 0; i < n; ++i) {
        std::vector<int> line{i, (i + o1) % n, (i + o2) % n};
        std::sort(line.begin(), line.end());
        d.lines.push_back(line);
    }
    validate_pls(d);
    return d;
}

PartialLinearSpace cyclic_pls(int n) { return cyclic_pls_offsets(n, 2, 3); }

PartialLinearSpace fano() { return cyclic_pls(7); }

PartialLinearSpace mobius_kantor() { return cyclic_pls(8); }

PartialLinearSpace pappus() {
    PartialLinearSpace d;
    d.npoints = 9;
    d.lines = {{0, 1, 2}, {3, 4, 5}, {6, 7, 8}, {0, 4, 8}, {2, 4, 6},
               {0, 3, 7}, {1, 3, 6}, {1, 5, 8}, {2, 5, 7}};
    validate_pls(d);
    return d;
}

CoherentConfiguration t16() { return skew_config(complete_graph(4)); }

CoherentConfiguration example_two_triangles() {
    PartialLinearSpace d;
    d.npoints = 6;
    d.lines = {{0, 1, 2}, {3, 4, 5}, {0, 3}, {1, 3}, {1, 5}, {2, 5}, {2, 4}, {0, 4}};
    return pls_to_config(d);
}

CoherentConfiguration example_mixed() {
    PartialLinearSpace d;
    d.npoints = 9;
    d.lines = {{0, 1, 2}, {3, 4, 5}, {6, 7, 8},
               {0, 3},    {1, 4},    {2, 5},
               {3, 6},    {4, 7},    {5, 8},
               {0, 6},    {1, 7},    {2, 8}};
    return pls_to_config(d);
}

SimpleGraph path_graph(int k) {
    SimpleGraph g;
    g.n = k;
    for (int i = 0; i + 1 < k; ++i) g.edges.push_back({i, i + 1});
    return g;
}

SimpleGraph cycle_graph(int k) {
    SimpleGraph g = path_graph(k);
    if (k >= 3) g.edges.push_back({0, k - 1});
    return g;
}

SimpleGraph complete_graph(int k) {
    SimpleGraph g;
    g.n = k;
    for (int i = 0; i < k; ++i)
        for (int j = i + 1; j < k; ++j) g.edges.push_back({i, j});
    return g;
}

SimpleGraph complete_bipartite(int a, int b) {
    SimpleGraph g;
    g.n = a + b;
    for (int i = 0; i < a; ++i)
        for (int j = 0; j < b; ++j) g.edges.push_back({i, a + j});
    return g;
}

SimpleGraph petersen_graph() {
    SimpleGraph g;
    g.n = 10;
    for (int i = 0; i < 5; ++i) {
        g.edges.push_back({i, (i + 1) % 5});
        g.edges.push_back({i, i + 5});
        g.edges.push_back({i + 5, (i + 2) % 5 + 5});
    }
    for (auto& [u, v] : g.edges)
        if (u > v) std::swap(u, v);
    std::sort(g.edges.begin(), g.edges.end());
    g.edges.erase(std::unique(g.edges.begin(), g.edges.end()), g.edges.end());
    return g;
}

SimpleGraph mobius_kantor_graph() {
    SimpleGraph g;
    g.n = 16;
    for (int i = 0; i < 8; ++i) {
        g.edges.push_back({i, (i + 1) % 8});
        g.edges.push_back({i, i + 8});
        g.edges.push_back({i + 8, (i + 3) % 8 + 8});
    }
    for (auto& [u, v] : g.edges)
        if (u > v) std::swap(u, v);
    std::sort(g.edges.begin(), g.edges.end());
    g.edges.erase(std::unique(g.edges.begin(), g.edges.end()), g.edges.end());
    return g;
}

// ---- io ----

namespace {
std::string next_line(std::istream& in) {
    std::string line;
    while (std::getline(in, line)) {
        auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        std::istringstream probe(line);
        std::string tok;
        if (probe >> tok) return line;
    }
    return {};
}
}  // namespace

SimpleGraph read_edge_list(std::istream& in) {
    std::string header = next_line(in);
    std::istringstream hs(header);
    std::string tag;
    SimpleGraph g;
    if (!(hs >> tag >> g.n) || tag != "graph" || g.n <= 0)
        throw InputError("edge list: expected header 'graph <n>'");
    std::string line;
    while (!(line = next_line(in)).empty()) {
        std::istringstream ls(line);
        std::string kw;
        int u, v;
        if (!(ls >> kw >> u >> v) || kw != "e") throw InputError("edge list: expected 'e <u> <v>'");
        if (u < 0 || v < 0 || u >= g.n || v >= g.n || u == v)
            throw InputError("edge list: bad endpoint");
        g.edges.push_back({std::min(u, v), std::max(u, v)});
    }
    std::sort(g.edges.begin(), g.edges.end());
    g.edges.erase(std::unique(g.edges.begin(), g.edges.end()), g.edges.end());
    return g;
}

SimpleGraph read_edge_list_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot open " + path);
    return read_edge_list(in);
}

PartialLinearSpace read_pls(std::istream& in) {
    std::string header = next_line(in);
    std::istringstream hs(header);
    std::string tag;
    int np, nl;
    if (!(hs >> tag >> np >> nl) || tag != "pls" || np <= 0 || nl < 0)
        throw InputError("pls: expected header 'pls <npoints> <nlines>'");
    PartialLinearSpace d;
    d.npoints = np;
    for (int i = 0; i < nl; ++i) {
        std::string line = next_line(in);
        if (line.empty()) throw InputError("pls: truncated line list");
        std::istringstream ls(line);
        std::vector<int> pts;
        int p;
        while (ls >> p) pts.push_back(p);
        std::sort(pts.begin(), pts.end());
        d.lines.push_back(pts);
    }
    validate_pls(d);
    return d;
}

PartialLinearSpace read_pls_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot open " + path);
    return read_pls(in);
}

void write_pls(std::ostream& out, const PartialLinearSpace& d) {
    out << "pls " << d.npoints << ' ' << d.lines.size() << "\n";
    for (const auto& line : d.lines) {
        for (size_t i = 0; i < line.size(); ++i) out << (i ? " " : "") << line[i];
        out << "\n";
    }
}

}  // namespace wlcc
