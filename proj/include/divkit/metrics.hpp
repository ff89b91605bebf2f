#ifndef DIVKIT_METRICS_HPP
#define DIVKIT_METRICS_HPP

#include <set>
#include <utility>
#include <vector>

#include "divkit/core.hpp"

// Edge match predicate, per-edge divergence classification and sentence /
// corpus match percentages in both directions.
//
// An edge (c, p) of one tree matches when some aligned image of c is headed
// by some aligned image of p in the other tree. Non-matching edges fall into
// SWAP (images stand in the reversed relation), MERGE (both endpoints share
// an image), UNALIGNED (either endpoint has no image) or OTHER, checked in
// that priority order so the classification is total and exclusive.
//
// All aggregates are carried as integer counts; percentages are derived
// views so exact comparisons stay available to callers.

namespace divkit {

enum class EdgeClass { Match, Swap, Merge, Unaligned, Other };

inline const char* to_string(EdgeClass c) {
    switch (c) {
        case EdgeClass::Match: return "match";
        case EdgeClass::Swap: return "swap";
        case EdgeClass::Merge: return "merge";
        case EdgeClass::Unaligned: return "unaligned";
        default: return "other";
    }
}

inline std::set<int> aligned_targets(int f, const Alignment& a) { return a.targets_of(f); }
inline std::set<int> aligned_sources(int e, const Alignment& a) { return a.sources_of(e); }

// True iff some image of child is headed by some image of parent in `other`.
inline bool edge_matches(int child, int parent, const DepTree& other, const Alignment& a) {
    const auto ec = a.targets_of(child);
    const auto ep = a.targets_of(parent);
    for (int e_a : ec)
        for (int e_b : ep)
            if (other.head_of(e_a) == e_b) return true;
    return false;
}

inline EdgeClass classify_edge(int child, int parent, const DepTree& other, const Alignment& a) {
    const auto ec = a.targets_of(child);
    const auto ep = a.targets_of(parent);
    for (int e_a : ec)
        for (int e_b : ep)
            if (other.head_of(e_a) == e_b) return EdgeClass::Match;
    for (int e_a : ec)
        for (int e_b : ep)
            if (other.head_of(e_b) == e_a) return EdgeClass::Swap;
    for (int e_a : ec)
        if (ep.count(e_a)) return EdgeClass::Merge;
    if (ec.empty() || ep.empty()) return EdgeClass::Unaligned;
    return EdgeClass::Other;
}

struct ClassCounts {
    int match = 0;
    int swap = 0;
    int merge = 0;
    int unaligned = 0;
    int other = 0;
    // Unaligned edges whose child end is the spontaneous one; sub-count kept
    // for comparability with reports that only count unaligned children.
    int unaligned_child = 0;

    int total() const { return match + swap + merge + unaligned + other; }

    ClassCounts& operator+=(const ClassCounts& o) {
        match += o.match;
        swap += o.swap;
        merge += o.merge;
        unaligned += o.unaligned;
        other += o.other;
        unaligned_child += o.unaligned_child;
        return *this;
    }

    bool operator==(const ClassCounts&) const = default;
};

// Classifies every edge of the designated side of a pair.
inline ClassCounts count_classes(const AlignedPair& pair, Direction dir) {
    const DepTree& tree = pair.side(dir);
    const DepTree& other = pair.other_side(dir);
    const Alignment a =
        dir == Direction::SrcToTgt ? pair.alignment() : pair.alignment().transposed();
    ClassCounts counts;
    for (const auto& [child, parent] : tree.edges()) {
        switch (classify_edge(child, parent, other, a)) {
            case EdgeClass::Match: ++counts.match; break;
            case EdgeClass::Swap: ++counts.swap; break;
            case EdgeClass::Merge: ++counts.merge; break;
            case EdgeClass::Unaligned:
                ++counts.unaligned;
                if (a.targets_of(child).empty()) ++counts.unaligned_child;
                break;
            case EdgeClass::Other: ++counts.other; break;
        }
    }
    return counts;
}

struct MatchReport {
    Direction direction = Direction::SrcToTgt;
    ClassCounts counts;

    int edges() const { return counts.total(); }

    double pct(int count) const {
        return counts.total() == 0 ? 0.0 : 100.0 * count / counts.total();
    }
    double match_pct() const { return pct(counts.match); }
    double swap_pct() const { return pct(counts.swap); }
    double merge_pct() const { return pct(counts.merge); }
    double unaligned_pct() const { return pct(counts.unaligned); }
    double other_pct() const { return pct(counts.other); }
    double unaligned_child_pct() const { return pct(counts.unaligned_child); }

    bool operator==(const MatchReport&) const = default;
};

// Percentage of designated-side edges that match; 0 when the side has none.
inline double sent_match(const AlignedPair& pair, Direction dir) {
    const ClassCounts c = count_classes(pair, dir);
    return c.total() == 0 ? 0.0 : 100.0 * c.match / c.total();
}

inline MatchReport breakdown(const AlignedPair& pair, Direction dir) {
    return MatchReport{dir, count_classes(pair, dir)};
}

// Micro-average over the corpus: one ratio of summed counts, not a mean of
// per-sentence percentages.
inline MatchReport breakdown(const Corpus& corpus, Direction dir) {
    ClassCounts sum;
    for (const auto& pair : corpus.pairs()) sum += count_classes(pair, dir);
    return MatchReport{dir, sum};
}

inline double corpus_match(const Corpus& corpus, Direction dir) {
    return breakdown(corpus, dir).match_pct();
}

}  // namespace divkit

#endif  // DIVKIT_METRICS_HPP
