#ifndef DIVKIT_POS_STATS_HPP
#define DIVKIT_POS_STATS_HPP

#include <algorithm>
#include <map>
#include <string>
#include <tuple>
#include <vector>

#include "divkit/core.hpp"
#include "divkit/tree_ops.hpp"

// Aggregates an operation log into POS-pair statistics: for each
// (child POS, parent POS) pattern, how often merge/swap applied out of all
// baseline edges with that pattern; for each POS, how often remove applied
// out of all baseline tokens carrying it.

namespace divkit {

struct PosPairStat {
    OpKind kind = OpKind::Remove;
    std::string child_pos;
    std::string parent_pos;  // empty for Remove
    int applied = 0;
    int opportunities = 0;

    double rate() const {
        return opportunities == 0 ? 0.0 : 100.0 * applied / opportunities;
    }

    bool operator==(const PosPairStat&) const = default;
};

// Opportunity denominators come from the baseline trees of the designated
// side. Cascaded operations can hit a POS configuration the baseline never
// had; the denominator is then raised to the applied count so rates stay
// within 0..100.
inline std::vector<PosPairStat> pos_breakdown(const Corpus& baseline, const OpLog& log,
                                              Direction dir) {
    const Side side = dir == Direction::SrcToTgt ? Side::Source : Side::Target;

    std::map<std::pair<std::string, std::string>, int> edge_opportunities;
    std::map<std::string, int> token_opportunities;
    for (const AlignedPair& pair : baseline.pairs()) {
        const DepTree& tree = pair.side(dir);
        for (const Token& tok : tree.tokens()) ++token_opportunities[tok.pos];
        for (const auto& [child, parent] : tree.edges())
            ++edge_opportunities[{tree.token(child).pos, tree.token(parent).pos}];
    }

    std::map<std::tuple<int, std::string, std::string>, int> applied;
    for (const OpLogEntry& entry : log) {
        if (entry.side != side) continue;
        applied[{static_cast<int>(entry.kind), entry.child_pos,
                 entry.kind == OpKind::Remove ? std::string() : entry.parent_pos}]++;
    }

    std::vector<PosPairStat> stats;
    for (OpKind kind : {OpKind::Merge, OpKind::Swap}) {
        std::map<std::pair<std::string, std::string>, int> keys = edge_opportunities;
        for (const auto& [k, count] : applied)
            if (std::get<0>(k) == static_cast<int>(kind))
                keys.emplace(std::make_pair(std::get<1>(k), std::get<2>(k)), 0);
        for (const auto& [key, opportunities] : keys) {
            auto it = applied.find({static_cast<int>(kind), key.first, key.second});
            int n_applied = it == applied.end() ? 0 : it->second;
            stats.push_back(PosPairStat{kind, key.first, key.second, n_applied,
                                        std::max(opportunities, n_applied)});
        }
    }
    {
        std::map<std::string, int> keys = token_opportunities;
        for (const auto& [k, count] : applied)
            if (std::get<0>(k) == static_cast<int>(OpKind::Remove)) keys.emplace(std::get<1>(k), 0);
        for (const auto& [pos, opportunities] : keys) {
            auto it = applied.find({static_cast<int>(OpKind::Remove), pos, std::string()});
            int n_applied = it == applied.end() ? 0 : it->second;
            stats.push_back(PosPairStat{OpKind::Remove, pos, "", n_applied,
                                        std::max(opportunities, n_applied)});
        }
    }

    auto kind_order = [](OpKind k) {
        switch (k) {
            case OpKind::Merge: return 0;
            case OpKind::Swap: return 1;
            default: return 2;
        }
    };
    std::sort(stats.begin(), stats.end(), [&](const PosPairStat& a, const PosPairStat& b) {
        if (kind_order(a.kind) != kind_order(b.kind)) return kind_order(a.kind) < kind_order(b.kind);
        if (a.rate() != b.rate()) return a.rate() > b.rate();
        if (a.applied != b.applied) return a.applied > b.applied;
        if (a.child_pos != b.child_pos) return a.child_pos < b.child_pos;
        return a.parent_pos < b.parent_pos;
    });
    return stats;
}

}  // namespace divkit

#endif  // DIVKIT_POS_STATS_HPP
