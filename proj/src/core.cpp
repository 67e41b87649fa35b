#include "wlcc/core.hpp"

#include <algorithm>
#include <fstream>
#include <istream>
#include <map>
#include <ostream>
#include <set>
#include <sstream>

namespace wlcc {

int ColoredSquareMatrix::color_count() const {
    int k = 0;
    for (int c : colors) k = std::max(k, c + 1);
    return k;
}

std::vector<Diagnostic> validate_colored_graph(const ColoredSquareMatrix& m) {
    std::vector<Diagnostic> out;
    if (m.n <= 0) {
        out.push_back({"matrix must have at least one point", -1, -1});
        return out;
    }
    if (int(m.colors.size()) != m.n * m.n) {
        out.push_back({"color matrix size does not match n", -1, -1});
        return out;
    }
    for (int c : m.colors)
        if (c < 0) {
            out.push_back({"negative color id", -1, -1});
            return out;
        }

    std::set<int> loop_colors, arrow_colors;
    for (int u = 0; u < m.n; ++u)
        for (int v = 0; v < m.n; ++v)
            (u == v ? loop_colors : arrow_colors).insert(m.color(u, v));

    for (int u = 0; u < m.n; ++u)
        for (int v = 0; v < m.n; ++v)
            if (u != v && loop_colors.count(m.color(u, v)))
                out.push_back({"loop color reused on arrow", u, v});

    std::set<int> all = loop_colors;
    all.insert(arrow_colors.begin(), arrow_colors.end());
    int expect = 0;
    for (int c : all) {
        if (c != expect) {
            out.push_back({"color ids are not dense 0..k-1", -1, -1});
            break;
        }
        ++expect;
    }
    return out;
}

NormalizedGraph normalize_transpose_ex(const ColoredSquareMatrix& m) {
    auto diags = validate_colored_graph(m);
    if (!diags.empty()) throw InputError("normalize_transpose: " + diags.front().what);

    std::set<std::pair<int, int>> pairs;
    for (int u = 0; u < m.n; ++u)
        for (int v = 0; v < m.n; ++v) pairs.insert({m.color(u, v), m.color(v, u)});

    std::map<std::pair<int, int>, int> rank;
    NormalizedGraph out;
    for (const auto& p : pairs) {
        rank[p] = int(out.pair_of_color.size());
        out.pair_of_color.push_back(p);
    }
    out.mat = ColoredSquareMatrix(m.n);
    for (int u = 0; u < m.n; ++u)
        for (int v = 0; v < m.n; ++v)
            out.mat.color(u, v) = rank[{m.color(u, v), m.color(v, u)}];
    return out;
}

ColoredSquareMatrix normalize_transpose(const ColoredSquareMatrix& m) {
    return normalize_transpose_ex(m).mat;
}

Rainbow Rainbow::from_matrix(const ColoredSquareMatrix& m) {
    if (m.n <= 0 || int(m.colors.size()) != m.n * m.n)
        throw InputError("rainbow: malformed matrix");
    Rainbow r;
    r.mat = m;
    r.nclasses = m.color_count();
    r.transpose_of.assign(r.nclasses, -1);
    r.reflexive.assign(r.nclasses, 0);
    r.representative.assign(r.nclasses, {-1, -1});
    r.class_size.assign(r.nclasses, 0);

    std::vector<char> seen(r.nclasses, 0), has_arrow(r.nclasses, 0);
    for (int u = 0; u < m.n; ++u)
        for (int v = 0; v < m.n; ++v) {
            int c = m.color(u, v);
            if (c < 0) throw InputError("rainbow: negative color id");
            if (!seen[c]) {
                seen[c] = 1;
                r.representative[c] = {u, v};
            }
            r.class_size[c]++;
            if (u == v)
                r.reflexive[c] = 1;
            else
                has_arrow[c] = 1;
            int t = m.color(v, u);
            if (r.transpose_of[c] == -1)
                r.transpose_of[c] = t;
            else if (r.transpose_of[c] != t)
                throw InputError("rainbow: transpose relation of a class is not a class");
        }
    for (int c = 0; c < r.nclasses; ++c) {
        if (!seen[c]) throw InputError("rainbow: color ids are not dense 0..k-1");
        if (r.reflexive[c] && has_arrow[c])
            throw InputError("rainbow: a class mixes loops and arrows");
        if (r.transpose_of[r.transpose_of[c]] != c)
            throw InputError("rainbow: transpose relation of a class is not a class");
    }
    return r;
}

// ---- CoherentConfiguration ----

CoherentConfiguration::CoherentConfiguration(const CoherentConfiguration& o)
    : rainbow_(o.rainbow_),
      fibers_(o.fibers_),
      fiber_of_(o.fiber_of_),
      diag_class_(o.diag_class_),
      meta_(o.meta_),
      block_classes_(o.block_classes_) {}

CoherentConfiguration& CoherentConfiguration::operator=(const CoherentConfiguration& o) {
    if (this != &o) {
        rainbow_ = o.rainbow_;
        fibers_ = o.fibers_;
        fiber_of_ = o.fiber_of_;
        diag_class_ = o.diag_class_;
        meta_ = o.meta_;
        block_classes_ = o.block_classes_;
        std::lock_guard<std::mutex> lock(memo_mutex_);
        memo_.clear();
    }
    return *this;
}

CoherentConfiguration::CoherentConfiguration(CoherentConfiguration&& o) noexcept
    : rainbow_(std::move(o.rainbow_)),
      fibers_(std::move(o.fibers_)),
      fiber_of_(std::move(o.fiber_of_)),
      diag_class_(std::move(o.diag_class_)),
      meta_(std::move(o.meta_)),
      block_classes_(std::move(o.block_classes_)),
      memo_(std::move(o.memo_)) {}

CoherentConfiguration& CoherentConfiguration::operator=(CoherentConfiguration&& o) noexcept {
    if (this != &o) {
        rainbow_ = std::move(o.rainbow_);
        fibers_ = std::move(o.fibers_);
        fiber_of_ = std::move(o.fiber_of_);
        diag_class_ = std::move(o.diag_class_);
        meta_ = std::move(o.meta_);
        block_classes_ = std::move(o.block_classes_);
        memo_ = std::move(o.memo_);
    }
    return *this;
}

const std::vector<int>& CoherentConfiguration::classes_in_block(int fx, int fy) const {
    return block_classes_[size_t(fx) * fibers_.size() + fy];
}

std::vector<std::pair<int, int>> CoherentConfiguration::class_pairs(int cls) const {
    std::vector<std::pair<int, int>> out;
    out.reserve(rainbow_.class_size[cls]);
    const auto& X = fibers_[meta_[cls].src_fiber];
    const auto& Y = fibers_[meta_[cls].dst_fiber];
    for (int u : X)
        for (int v : Y)
            if (color(u, v) == cls) out.push_back({u, v});
    return out;
}

int CoherentConfiguration::intersection_number(int T, int R, int S) const {
    if (T < 0 || R < 0 || S < 0 || T >= num_classes() || R >= num_classes() || S >= num_classes())
        throw InputError("intersection_number: class id out of range");
    // collocation: T in X x Y, R in X x Z, S in Z x Y
    if (meta_[T].src_fiber != meta_[R].src_fiber || meta_[T].dst_fiber != meta_[S].dst_fiber ||
        meta_[R].dst_fiber != meta_[S].src_fiber)
        return 0;
    uint64_t key = (uint64_t(T) << 42) | (uint64_t(R) << 21) | uint64_t(S);
    {
        std::lock_guard<std::mutex> lock(memo_mutex_);
        auto it = memo_.find(key);
        if (it != memo_.end()) return it->second;
    }
    auto [u, v] = rainbow_.representative[T];
    const auto& Z = fibers_[meta_[R].dst_fiber];
    int p = 0;
    for (int w : Z)
        if (color(u, w) == R && color(w, v) == S) ++p;
    std::lock_guard<std::mutex> lock(memo_mutex_);
    memo_.emplace(key, p);
    return p;
}

std::variant<CoherentConfiguration, FailureWitness> verify_coherence(const Rainbow& r) {
    const int n = r.n();
    const int k = r.nclasses;

    // fibers from reflexive classes, ordered by min point (= first point seen)
    std::vector<std::vector<int>> fibers;
    std::vector<int> fiber_of(n, -1), diag_class;
    {
        std::map<int, int> cls_to_fiber;
        for (int v = 0; v < n; ++v) {
            int c = r.color(v, v);
            auto it = cls_to_fiber.find(c);
            if (it == cls_to_fiber.end()) {
                cls_to_fiber.emplace(c, int(fibers.size()));
                fiber_of[v] = int(fibers.size());
                fibers.push_back({v});
                diag_class.push_back(c);
            } else {
                fiber_of[v] = it->second;
                fibers[it->second].push_back(v);
            }
        }
    }

    // Per-pair signature: sorted multiset of (c(uw), c(wv)).  Constant per
    // class iff the rainbow is coherent.  The w=u and w=v entries expose the
    // endpoint loop colors, so constancy also forces block alignment.
    std::vector<std::vector<std::pair<int, int>>> sig_of_class(k);
    std::vector<char> have_sig(k, 0);
    std::vector<std::pair<int, int>> sig(n);
    int bad_class = -1;
    std::pair<int, int> bad_pair{-1, -1};
    for (int u = 0; u < n && bad_class < 0; ++u)
        for (int v = 0; v < n; ++v) {
            for (int w = 0; w < n; ++w) sig[w] = {r.color(u, w), r.color(w, v)};
            std::sort(sig.begin(), sig.end());
            int c = r.color(u, v);
            if (!have_sig[c]) {
                have_sig[c] = 1;
                sig_of_class[c] = sig;
            } else if (sig_of_class[c] != sig) {
                bad_class = c;
                bad_pair = {u, v};
                break;
            }
        }

    if (bad_class >= 0) {
        // witness: least (T, R, S) with differing counts between the class
        // representative and the first offending pair
        FailureWitness w;
        w.pair1 = r.representative[bad_class];
        w.pair2 = bad_pair;
        auto count = [&](std::pair<int, int> uv, int R, int S) {
            int p = 0;
            for (int z = 0; z < n; ++z)
                if (r.color(uv.first, z) == R && r.color(z, uv.second) == S) ++p;
            return p;
        };
        // scan T ascending; for the least T that is bad_class (the least
        // violating class by construction of the scan would need a full pass,
        // so rescan all classes to honor the "least triple" contract)
        for (int T = 0; T < k; ++T) {
            // find two pairs in T with different signatures
            bool found = false;
            std::vector<std::pair<int, int>> first_sig;
            std::pair<int, int> first_pair{-1, -1}, second_pair{-1, -1};
            for (int u = 0; u < n && !found; ++u)
                for (int v = 0; v < n; ++v) {
                    if (r.color(u, v) != T) continue;
                    for (int z = 0; z < n; ++z) sig[z] = {r.color(u, z), r.color(z, v)};
                    std::sort(sig.begin(), sig.end());
                    if (first_pair.first < 0) {
                        first_pair = {u, v};
                        first_sig = sig;
                    } else if (sig != first_sig) {
                        second_pair = {u, v};
                        found = true;
                        break;
                    }
                }
            if (!found) continue;
            for (int R = 0; R < k && w.T < 0; ++R)
                for (int S = 0; S < k; ++S) {
                    int c1 = count(first_pair, R, S), c2 = count(second_pair, R, S);
                    if (c1 != c2) {
                        w.T = T;
                        w.R = R;
                        w.S = S;
                        w.pair1 = first_pair;
                        w.pair2 = second_pair;
                        w.count1 = c1;
                        w.count2 = c2;
                        break;
                    }
                }
            break;  // least violating T handled
        }
        if (w.T < 0) throw InternalError("verify_coherence: witness extraction failed");
        return w;
    }

    CoherentConfiguration c;
    c.rainbow_ = r;
    c.fibers_ = std::move(fibers);
    c.fiber_of_ = std::move(fiber_of);
    c.diag_class_ = std::move(diag_class);
    const int nf = int(c.fibers_.size());
    c.meta_.assign(k, RelationMeta{});
    c.block_classes_.assign(size_t(nf) * nf, {});
    for (int cls = 0; cls < k; ++cls) {
        auto [u, v] = r.representative[cls];
        RelationMeta& m = c.meta_[cls];
        m.src_fiber = c.fiber_of_[u];
        m.dst_fiber = c.fiber_of_[v];
        m.reflexive = r.reflexive[cls];
        m.transpose = r.transpose_of[cls];
        int sz = int(c.fibers_[m.src_fiber].size());
        if (r.class_size[cls] % sz != 0)
            throw InternalError("verify_coherence: class size not divisible by fiber size");
        m.valency = r.class_size[cls] / sz;
        c.block_classes_[size_t(m.src_fiber) * nf + m.dst_fiber].push_back(cls);
    }
    for (auto& blk : c.block_classes_) std::sort(blk.begin(), blk.end());
    // d(R)|X| = |R| = d(R*)|Y|
    for (int cls = 0; cls < k; ++cls) {
        const auto& m = c.meta_[cls];
        const auto& mt = c.meta_[m.transpose];
        if (m.valency * int(c.fibers_[m.src_fiber].size()) !=
            mt.valency * int(c.fibers_[mt.src_fiber].size()))
            throw InternalError("verify_coherence: valency identity violated");
    }
    return c;
}

CoherentConfiguration require_coherent(const Rainbow& r, const char* context) {
    auto res = verify_coherence(r);
    if (auto* w = std::get_if<FailureWitness>(&res))
        throw InternalError(std::string(context) + ": expected coherent configuration, witness T=" +
                            std::to_string(w->T) + " R=" + std::to_string(w->R) +
                            " S=" + std::to_string(w->S));
    return std::get<CoherentConfiguration>(std::move(res));
}

ColoredSquareMatrix rerank_colors(const ColoredSquareMatrix& m) {
    ColoredSquareMatrix out(m.n);
    std::unordered_map<int, int> rank;
    for (size_t i = 0; i < m.colors.size(); ++i) {
        auto it = rank.find(m.colors[i]);
        if (it == rank.end()) it = rank.emplace(m.colors[i], int(rank.size())).first;
        out.colors[i] = it->second;
    }
    for (const auto& [old_id, name] : m.color_names) {
        auto it = rank.find(old_id);
        if (it != rank.end()) out.color_names[it->second] = name;
    }
    return out;
}

Restriction restrict_to_fibers(const CoherentConfiguration& c, const std::vector<int>& fiber_ids) {
    std::vector<int> ids = fiber_ids;
    std::sort(ids.begin(), ids.end());
    ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
    for (int f : ids)
        if (f < 0 || f >= c.num_fibers()) throw InputError("restrict: fiber id out of range");

    Restriction out;
    for (int f : ids)
        for (int p : c.fibers()[f]) out.points.push_back(p);
    std::sort(out.points.begin(), out.points.end());

    const int m = int(out.points.size());
    if (m == 0) throw InputError("restrict: empty fiber set");
    ColoredSquareMatrix sub(m);
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j) sub.color(i, j) = c.color(out.points[i], out.points[j]);

    // dense re-rank, remember the original class per new id
    std::unordered_map<int, int> rank;
    out.class_map.clear();
    for (auto& col : sub.colors) {
        auto it = rank.find(col);
        if (it == rank.end()) {
            it = rank.emplace(col, int(rank.size())).first;
            out.class_map.push_back(col);
        }
        col = it->second;
    }
    out.config = require_coherent(Rainbow::from_matrix(sub), "restrict_to_fibers");
    return out;
}

MappedConfiguration apply_point_map(const CoherentConfiguration& c, const PointMap& phi) {
    const int n = c.n();
    if (int(phi.size()) != n) throw InputError("apply_point_map: size mismatch");
    std::vector<char> hit(n, 0);
    for (int v : phi) {
        if (v < 0 || v >= n || hit[v]) throw InputError("apply_point_map: not a bijection");
        hit[v] = 1;
    }
    ColoredSquareMatrix img(n);
    for (int u = 0; u < n; ++u)
        for (int v = 0; v < n; ++v) img.color(phi[u], phi[v]) = c.color(u, v);

    MappedConfiguration out;
    std::unordered_map<int, int> rank;
    for (auto& col : img.colors) {
        auto it = rank.find(col);
        if (it == rank.end()) it = rank.emplace(col, int(rank.size())).first;
        col = it->second;
    }
    out.class_map.assign(c.num_classes(), -1);
    for (int cls = 0; cls < c.num_classes(); ++cls) out.class_map[cls] = rank.at(cls);
    out.config = require_coherent(Rainbow::from_matrix(img), "apply_point_map");
    return out;
}

// ---- .ccm io ----

namespace {
std::string next_content_line(std::istream& in) {
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

ColoredSquareMatrix read_ccm(std::istream& in) {
    std::string header = next_content_line(in);
    std::istringstream hs(header);
    std::string tag;
    int n = 0;
    if (!(hs >> tag >> n) || tag != "ccm" || n <= 0)
        throw InputError("ccm: expected header 'ccm <n>'");
    ColoredSquareMatrix m(n);
    int row = 0;
    while (row < n) {
        std::string line = next_content_line(in);
        if (line.empty()) throw InputError("ccm: truncated matrix");
        std::istringstream ls(line);
        for (int col = 0; col < n; ++col) {
            long long c;
            if (!(ls >> c) || c < 0) throw InputError("ccm: bad color entry");
            m.color(row, col) = int(c);
        }
        std::string extra;
        if (ls >> extra) throw InputError("ccm: trailing tokens in matrix row");
        ++row;
    }
    std::string line;
    while (!(line = next_content_line(in)).empty()) {
        std::istringstream ls(line);
        std::string kw;
        ls >> kw;
        if (kw != "name") throw InputError("ccm: unknown trailing directive '" + kw + "'");
        int id;
        std::string label;
        if (!(ls >> id) || !(ls >> label)) throw InputError("ccm: bad name directive");
        m.color_names[id] = label;
    }
    return m;
}

ColoredSquareMatrix read_ccm_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot open " + path);
    return read_ccm(in);
}

void write_ccm(std::ostream& out, const ColoredSquareMatrix& m) {
    out << "ccm " << m.n << "\n";
    for (int u = 0; u < m.n; ++u) {
        for (int v = 0; v < m.n; ++v) {
            if (v) out << ' ';
            out << m.color(u, v);
        }
        out << "\n";
    }
    for (const auto& [id, label] : m.color_names) out << "name " << id << ' ' << label << "\n";
}

void write_ccm_file(const std::string& path, const ColoredSquareMatrix& m) {
    std::ofstream out(path);
    if (!out) throw InputError("cannot open " + path + " for writing");
    write_ccm(out, m);
}

}  // namespace wlcc
