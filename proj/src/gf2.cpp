#include "wlcc/gf2.hpp"

#include <bit>

#include "wlcc/core.hpp"

namespace wlcc {

int Gf2Vector::lowest_set() const {
    for (size_t w = 0; w < words.size(); ++w)
        if (words[w]) return int(w) * 64 + std::countr_zero(words[w]);
    return -1;
}

bool Gf2Vector::dot(const Gf2Vector& o) const {
    uint64_t acc = 0;
    for (size_t w = 0; w < words.size(); ++w) acc ^= words[w] & o.words[w];
    return std::popcount(acc) & 1;
}

Gf2Solution gf2_solve(const std::vector<Gf2Vector>& rows, const std::vector<char>& rhs) {
    if (rows.size() != rhs.size()) throw InputError("gf2_solve: dimension mismatch");
    int ncols = rows.empty() ? 0 : rows.front().nbits;
    for (const auto& r : rows)
        if (r.nbits != ncols) throw InputError("gf2_solve: ragged rows");

    struct Row {
        Gf2Vector v;
        char b;
    };
    std::vector<Row> work;
    work.reserve(rows.size());
    for (size_t i = 0; i < rows.size(); ++i) work.push_back({rows[i], rhs[i]});

    std::vector<int> pivot_row_of_col(ncols, -1);
    int next = 0;
    for (int col = 0; col < ncols; ++col) {
        int pr = -1;
        for (int r = next; r < int(work.size()); ++r)
            if (work[r].v.get(col)) {
                pr = r;
                break;
            }
        if (pr < 0) continue;
        std::swap(work[next], work[pr]);
        for (int r = 0; r < int(work.size()); ++r)
            if (r != next && work[r].v.get(col)) {
                work[r].v ^= work[next].v;
                work[r].b ^= work[next].b;
            }
        pivot_row_of_col[col] = next;
        ++next;
    }
    for (int r = next; r < int(work.size()); ++r)
        if (work[r].b) return {};

    Gf2Solution sol;
    sol.solvable = true;
    sol.x.assign(ncols, 0);
    for (int col = 0; col < ncols; ++col)
        if (pivot_row_of_col[col] >= 0) sol.x[col] = work[pivot_row_of_col[col]].b;
    return sol;
}

Gf2Eliminator::Gf2Eliminator(std::vector<Gf2Vector> rows, int ncols) : ncols_(ncols) {
    const int m = int(rows.size());
    // augment each row with an identity tag tracking its combination
    std::vector<Gf2Vector> tag(m);
    for (int i = 0; i < m; ++i) {
        tag[i] = Gf2Vector(m);
        tag[i].set(i, true);
        if (rows[i].nbits != ncols) throw InputError("gf2: ragged rows");
    }
    int next = 0;
    for (int col = 0; col < ncols && next < m; ++col) {
        int pr = -1;
        for (int r = next; r < m; ++r)
            if (rows[r].get(col)) {
                pr = r;
                break;
            }
        if (pr < 0) continue;
        std::swap(rows[next], rows[pr]);
        std::swap(tag[next], tag[pr]);
        for (int r = 0; r < m; ++r)
            if (r != next && rows[r].get(col)) {
                rows[r] ^= rows[next];
                tag[r] ^= tag[next];
            }
        ++next;
    }
    rank_ = next;
    for (int r = next; r < m; ++r) left_kernel_.push_back(std::move(tag[r]));
}

bool Gf2Eliminator::consistent(const std::vector<char>& rhs) const {
    Gf2Vector b(int(rhs.size()));
    for (size_t i = 0; i < rhs.size(); ++i)
        if (rhs[i]) b.set(int(i), true);
    for (const auto& k : left_kernel_)
        if (k.dot(b)) return false;
    return true;
}

}  // namespace wlcc
