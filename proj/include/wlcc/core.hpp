#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <mutex>
#include <optional>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <utility>
#include <variant>
#include <vector>

namespace wlcc {

// Bad user-supplied data (files, CLI args, malformed matrices).  CLI exit 2.
struct InputError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Broken internal invariant.  CLI exit 3.
struct InternalError : std::logic_error {
    using std::logic_error::logic_error;
};

// n x n matrix of color ids; the carrier for colored graphs and coherent
// configurations alike.  Diagonal entries are loop colors, off-diagonal
// entries are arrow colors; the two id sets must be disjoint.
struct ColoredSquareMatrix {
    int n = 0;
    std::vector<int> colors;                    // row-major, size n*n
    std::map<int, std::string> color_names;

    ColoredSquareMatrix() = default;
    explicit ColoredSquareMatrix(int n_) : n(n_), colors(size_t(n_) * n_, 0) {}

    int color(int u, int v) const { return colors[size_t(u) * n + v]; }
    int& color(int u, int v) { return colors[size_t(u) * n + v]; }

    // ids are dense 0..k-1 for valid inputs; this is max+1
    int color_count() const;

    bool same_colors(const ColoredSquareMatrix& o) const {
        return n == o.n && colors == o.colors;
    }
};

struct Diagnostic {
    std::string what;
    int u = -1, v = -1;
};

// Empty result means the matrix is a valid colored graph: loop colors and
// arrow colors disjoint, ids dense.
std::vector<Diagnostic> validate_colored_graph(const ColoredSquareMatrix& m);

// Recolor so that equal arrow colors imply equal inverse-arrow colors:
// each cell (u,v) gets the id of the pair (old(uv), old(vu)), pairs ranked
// lexicographically.  Idempotent up to color re-ranking.
ColoredSquareMatrix normalize_transpose(const ColoredSquareMatrix& m);

struct NormalizedGraph {
    ColoredSquareMatrix mat;
    std::vector<std::pair<int, int>> pair_of_color;  // new id -> (old fwd, old bwd)
};
NormalizedGraph normalize_transpose_ex(const ColoredSquareMatrix& m);

// A transpose-closed, loop-separated partition of V^2.
struct Rainbow {
    ColoredSquareMatrix mat;
    int nclasses = 0;
    std::vector<int> transpose_of;                  // class -> class
    std::vector<char> reflexive;                    // class -> contains loops
    std::vector<std::pair<int, int>> representative;  // class -> first pair, row-major
    std::vector<int> class_size;

    int n() const { return mat.n; }
    int color(int u, int v) const { return mat.color(u, v); }

    // Validates dense ids, property (A) (loop classes are pure) and
    // property (B) (transpose-closed).  Throws InputError otherwise.
    static Rainbow from_matrix(const ColoredSquareMatrix& m);
};

struct RelationMeta {
    int src_fiber = -1;
    int dst_fiber = -1;
    int valency = 0;        // d(R), arrows per source point
    int transpose = -1;     // class id of R*
    bool reflexive = false;
};

// Least triple (T,R,S) violating the intersection-number condition, with
// two pairs of T whose p_{RS} counts differ.
struct FailureWitness {
    int T = -1, R = -1, S = -1;
    std::pair<int, int> pair1, pair2;
    int count1 = 0, count2 = 0;
};

using PointMap = std::vector<int>;  // point -> point, bijective

class CoherentConfiguration {
public:
    int n() const { return rainbow_.n(); }
    int num_classes() const { return rainbow_.nclasses; }
    int num_fibers() const { return int(fibers_.size()); }
    int color(int u, int v) const { return rainbow_.color(u, v); }

    const Rainbow& rainbow() const { return rainbow_; }
    const ColoredSquareMatrix& matrix() const { return rainbow_.mat; }
    const std::vector<std::vector<int>>& fibers() const { return fibers_; }
    int fiber_of(int point) const { return fiber_of_[point]; }
    int fiber_size(int f) const { return int(fibers_[f].size()); }
    const RelationMeta& meta(int cls) const { return meta_[cls]; }
    int diagonal_class(int fiber) const { return diag_class_[fiber]; }

    // class ids inside the block X x Y, ascending
    const std::vector<int>& classes_in_block(int fx, int fy) const;
    bool block_uniform(int fx, int fy) const { return classes_in_block(fx, fy).size() == 1; }

    std::vector<std::pair<int, int>> class_pairs(int cls) const;
    std::pair<int, int> class_representative(int cls) const { return rainbow_.representative[cls]; }

    // p^T_{RS}; 0 for non-collocated triples.  Memoized.
    int intersection_number(int T, int R, int S) const;

private:
    friend std::variant<CoherentConfiguration, FailureWitness> verify_coherence(const Rainbow&);

    Rainbow rainbow_;
    std::vector<std::vector<int>> fibers_;      // ordered by min point
    std::vector<int> fiber_of_;
    std::vector<int> diag_class_;
    std::vector<RelationMeta> meta_;
    std::vector<std::vector<int>> block_classes_;  // (fx * nfibers + fy) -> class ids

    mutable std::mutex memo_mutex_;
    mutable std::unordered_map<uint64_t, int> memo_;

public:
    CoherentConfiguration() = default;  // empty; fill via verify_coherence
    CoherentConfiguration(const CoherentConfiguration& o);
    CoherentConfiguration& operator=(const CoherentConfiguration& o);
    CoherentConfiguration(CoherentConfiguration&&) noexcept;
    CoherentConfiguration& operator=(CoherentConfiguration&&) noexcept;
    ~CoherentConfiguration() = default;
};

// Checks property (C) on a rainbow.  On success the returned configuration
// carries fibers, per-class metadata and intersection-number access.
std::variant<CoherentConfiguration, FailureWitness> verify_coherence(const Rainbow& r);

// verify_coherence that is expected to succeed; throws InternalError with
// `context` if it does not.
CoherentConfiguration require_coherent(const Rainbow& r, const char* context);

struct Restriction {
    CoherentConfiguration config;
    std::vector<int> points;     // new point -> old point
    std::vector<int> class_map;  // new class -> old class
};

// Induced configuration on a union of fibers, colors re-ranked dense by
// first occurrence in row-major order.
Restriction restrict_to_fibers(const CoherentConfiguration& c, const std::vector<int>& fiber_ids);

struct MappedConfiguration {
    CoherentConfiguration config;
    std::vector<int> class_map;  // old class -> new class
};

MappedConfiguration apply_point_map(const CoherentConfiguration& c, const PointMap& phi);

// Dense re-ranking of color ids by first occurrence in row-major order.
ColoredSquareMatrix rerank_colors(const ColoredSquareMatrix& m);

// .ccm text format: "ccm <n>", n rows of n ids, optional "name <id> <label>",
// '#' starts a comment.
ColoredSquareMatrix read_ccm(std::istream& in);
ColoredSquareMatrix read_ccm_file(const std::string& path);
void write_ccm(std::ostream& out, const ColoredSquareMatrix& m);
void write_ccm_file(const std::string& path, const ColoredSquareMatrix& m);

}  // namespace wlcc
