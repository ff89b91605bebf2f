#ifndef DIVKIT_TRANSFORM_HPP
#define DIVKIT_TRANSFORM_HPP

#include <algorithm>
#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "divkit/core.hpp"
#include "divkit/metrics.hpp"
#include "divkit/tree_ops.hpp"

// The staged tree-pair transformation: remove spontaneous tokens from both
// sides, merge tokens that share an alignment target with their parent, and
// swap source edges whose images stand in the reversed relation.
//
// Scan orders are fixed (tokens left to right, links ascending by (f, e)) so
// a run is fully deterministic. The merge stage iterates to a fixpoint on
// both sides jointly; chains of three or more tokens aligned to one node
// need repeated application. The swap stage is a single pass over the links
// with each edge swapped at most once, and applies to the source tree only.

namespace divkit {

class DegenerateTreeError : public Error { public: using Error::Error; };

enum class Stage { Baseline, Remove, Merge, Swap };

inline const char* to_string(Stage s) {
    switch (s) {
        case Stage::Baseline: return "baseline";
        case Stage::Remove: return "remove";
        case Stage::Merge: return "merge";
        default: return "swap";
    }
}

inline constexpr Stage kStages[] = {Stage::Baseline, Stage::Remove, Stage::Merge, Stage::Swap};

namespace detail {

// Rewrites one side of the alignment through an index map; links whose
// token disappeared without a successor are dropped.
inline Alignment remap_alignment(const Alignment& a, const std::map<int, int>& index_map,
                                 Side side) {
    std::set<Alignment::Link> links;
    for (const auto& [f, e] : a.links()) {
        if (side == Side::Source) {
            auto it = index_map.find(f);
            if (it != index_map.end()) links.emplace(it->second, e);
        } else {
            auto it = index_map.find(e);
            if (it != index_map.end()) links.emplace(f, it->second);
        }
    }
    return Alignment(std::move(links));
}

inline bool is_spontaneous(const Alignment& a, Side side, int idx) {
    return side == Side::Source ? a.targets_of(idx).empty() : a.sources_of(idx).empty();
}

}  // namespace detail

// Removes every token with no alignment link, source side first, each side
// left to right. Surviving links are reindexed through the provenance maps.
inline std::pair<AlignedPair, OpLog> remove_spontaneous(const AlignedPair& pair) {
    DepTree source = pair.source();
    DepTree target = pair.target();
    Alignment a = pair.alignment();
    OpLog log;

    for (Side side : {Side::Source, Side::Target}) {
        DepTree& tree = side == Side::Source ? source : target;
        bool any_aligned = false;
        for (int i = 1; i <= tree.size(); ++i)
            if (!detail::is_spontaneous(a, side, i)) { any_aligned = true; break; }
        if (!any_aligned)
            throw DegenerateTreeError("pair \"" + pair.id() + "\": every " +
                                      std::string(to_string(side)) +
                                      " token is spontaneous; side would become empty");
        while (true) {
            int victim = 0;
            for (int i = 1; i <= tree.size(); ++i) {
                if (detail::is_spontaneous(a, side, i)) { victim = i; break; }
            }
            if (victim == 0) break;
            const Token& tok = tree.token(victim);
            OpLogEntry entry{pair.id(), OpKind::Remove, side, tok.pos, "", tok.form, false};
            TreeEdit edit = remove_token(tree, victim);
            entry.root_promotion = edit.root_promotion;
            log.push_back(std::move(entry));
            tree = std::move(edit.tree);
            a = detail::remap_alignment(a, edit.index_map, side);
        }
    }
    return {AlignedPair(pair.id(), std::move(source), std::move(target), std::move(a)),
            std::move(log)};
}

// For each link (f, e) whose source parent also links to e, merges f into
// its parent and drops the link; then symmetrically on the target side.
// Iterated until no mergeable link remains on either side.
inline std::pair<AlignedPair, OpLog> merge_aligned(const AlignedPair& pair) {
    DepTree source = pair.source();
    DepTree target = pair.target();
    Alignment a = pair.alignment();
    OpLog log;

    auto merge_pass = [&](Side side) {
        bool changed = false;
        while (true) {
            int child = 0, parent = 0, link_f = 0, link_e = 0;
            for (const auto& [f, e] : a.links()) {
                if (side == Side::Source) {
                    int fp = source.head_of(f);
                    if (fp != 0 && a.contains(fp, e)) {
                        child = f; parent = fp; link_f = f; link_e = e;
                        break;
                    }
                } else {
                    int ep = target.head_of(e);
                    if (ep != 0 && a.contains(f, ep)) {
                        child = e; parent = ep; link_f = f; link_e = e;
                        break;
                    }
                }
            }
            if (child == 0) break;
            DepTree& tree = side == Side::Source ? source : target;
            log.push_back(OpLogEntry{pair.id(), OpKind::Merge, side, tree.token(child).pos,
                                     tree.token(parent).pos,
                                     tree.token(child).form + " " + tree.token(parent).form,
                                     false});
            auto links = a.links();
            links.erase({link_f, link_e});
            a = Alignment(std::move(links));
            TreeEdit edit = merge_edge(tree, child, parent);
            tree = std::move(edit.tree);
            a = detail::remap_alignment(a, edit.index_map, side);
            changed = true;
        }
        return changed;
    };

    bool changed = true;
    while (changed) {
        changed = false;
        if (merge_pass(Side::Source)) changed = true;
        if (merge_pass(Side::Target)) changed = true;
    }
    return {AlignedPair(pair.id(), std::move(source), std::move(target), std::move(a)),
            std::move(log)};
}

// For each link (f, e): when some child of e aligns to f's parent, the
// source edge (f, parent) is reversed. Single pass over the links in
// ascending order; each edge swapped at most once. Source side only.
inline std::pair<AlignedPair, OpLog> swap_reversed(const AlignedPair& pair) {
    DepTree source = pair.source();
    const DepTree& target = pair.target();
    const Alignment& a = pair.alignment();
    OpLog log;

    std::set<std::pair<int, int>> swapped;  // unordered edge ids
    for (const auto& [f, e] : a.links()) {
        int fp = source.head_of(f);
        if (fp == 0) continue;
        auto key = std::minmax(f, fp);
        if (swapped.count({key.first, key.second})) continue;
        bool reversed = false;
        for (int e_c : target.children(e)) {
            if (a.contains(fp, e_c)) { reversed = true; break; }
        }
        if (!reversed) continue;
        log.push_back(OpLogEntry{pair.id(), OpKind::Swap, Side::Source, source.token(f).pos,
                                 source.token(fp).pos,
                                 source.token(f).form + " " + source.token(fp).form, false});
        source = swap_edge(source, f, fp);
        swapped.insert({key.first, key.second});
    }
    return {AlignedPair(pair.id(), std::move(source), target, a), std::move(log)};
}

struct StageResult {
    Stage stage = Stage::Baseline;
    AlignedPair state;
    OpLog ops;  // operations applied in this stage
    MatchReport src_to_tgt;
    MatchReport tgt_to_src;
};

struct TransformResult {
    std::vector<StageResult> stages;  // baseline, remove, merge, swap

    const AlignedPair& final_state() const { return stages.back().state; }
};

inline TransformResult transform_pair(const AlignedPair& pair) {
    TransformResult result;
    auto push = [&result](Stage stage, AlignedPair state, OpLog ops) {
        MatchReport fwd = breakdown(state, Direction::SrcToTgt);
        MatchReport bwd = breakdown(state, Direction::TgtToSrc);
        result.stages.push_back(
            StageResult{stage, std::move(state), std::move(ops), fwd, bwd});
    };
    push(Stage::Baseline, pair, {});
    auto [removed, remove_log] = remove_spontaneous(pair);
    push(Stage::Remove, removed, std::move(remove_log));
    auto [merged, merge_log] = merge_aligned(removed);
    push(Stage::Merge, merged, std::move(merge_log));
    auto [swapped, swap_log] = swap_reversed(merged);
    push(Stage::Swap, std::move(swapped), std::move(swap_log));
    return result;
}

struct StageTableRow {
    Direction direction = Direction::SrcToTgt;
    Stage stage = Stage::Baseline;
    ClassCounts counts;

    int edges() const { return counts.total(); }
    double pct(int c) const { return counts.total() == 0 ? 0.0 : 100.0 * c / counts.total(); }
};

struct StageTable {
    std::vector<StageTableRow> rows;     // direction-major, stages in order
    std::vector<std::string> skipped;    // degenerate pair ids, excluded from rows
    OpLog log;                           // all operations, corpus order then stage order
    Corpus transformed;                  // final states of the surviving pairs
};

// Runs the full pipeline over a corpus and aggregates per-stage class counts
// in both directions. Pairs whose side would empty out are skipped and
// reported, not fatal.
inline StageTable corpus_stage_table(const Corpus& corpus) {
    StageTable table;
    std::map<std::pair<int, int>, ClassCounts> cells;  // (direction, stage) -> counts
    std::vector<AlignedPair> finals;
    for (const AlignedPair& pair : corpus.pairs()) {
        TransformResult result;
        try {
            result = transform_pair(pair);
        } catch (const DegenerateTreeError&) {
            table.skipped.push_back(pair.id());
            continue;
        }
        for (std::size_t s = 0; s < result.stages.size(); ++s) {
            cells[{0, static_cast<int>(s)}] += result.stages[s].src_to_tgt.counts;
            cells[{1, static_cast<int>(s)}] += result.stages[s].tgt_to_src.counts;
            for (const auto& op : result.stages[s].ops) table.log.push_back(op);
        }
        finals.push_back(result.final_state());
    }
    if (!finals.empty()) {
        for (int dir = 0; dir < 2; ++dir)
            for (int s = 0; s < 4; ++s)
                table.rows.push_back(StageTableRow{
                    dir == 0 ? Direction::SrcToTgt : Direction::TgtToSrc, kStages[s],
                    cells[{dir, s}]});
    }
    table.transformed = Corpus(std::move(finals));
    return table;
}

}  // namespace divkit

#endif  // DIVKIT_TRANSFORM_HPP
