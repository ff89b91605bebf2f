#ifndef DIVKIT_REPORT_IO_HPP
#define DIVKIT_REPORT_IO_HPP

#include <cmath>
#include <cstdio>
#include <string>
#include <vector>

#include <json.hpp>

#include "divkit/core.hpp"
#include "divkit/metrics.hpp"
#include "divkit/pos_stats.hpp"
#include "divkit/projection.hpp"
#include "divkit/rules.hpp"
#include "divkit/transform.hpp"
#include "divkit/tree_ops.hpp"

// TSV and JSON emission for every report surface. Both carry identical
// content; match-style percentages are printed with one decimal digit,
// precision/recall/F1 with two. Rounding happens here only.

namespace divkit {

using ordered_json = nlohmann::ordered_json;

inline std::string fmt_fixed(double v, int digits) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.*f", digits, v);
    return buf;
}

inline std::string fmt1(double v) { return fmt_fixed(v, 1); }
inline std::string fmt2(double v) { return fmt_fixed(v, 2); }

inline double round_to(double v, int digits) {
    const double scale = std::pow(10.0, digits);
    return std::round(v * scale) / scale;
}

inline constexpr const char* kClassificationPriority = "match>swap>merge>unaligned>other";
inline constexpr const char* kMergePolicy = "iterated-to-fixpoint";
inline constexpr const char* kOpportunityPolicy = "baseline-occurrences";
inline constexpr const char* kScoringPolicy =
    "predicted=attached-non-root-edges gold=all-non-root-edges unattached-excluded";

inline bool direction_selected(Direction d, const std::string& selector) {
    return selector == "both" || selector == to_string(d);
}

// ---- breakdown (per-direction class percentages) ----

inline std::string breakdown_tsv(const std::vector<MatchReport>& reports) {
    std::string out;
    out += std::string("# classification-priority\t") + kClassificationPriority + "\n";
    out += "direction\tmatch\tswap\tunaligned\tmerge\tother\tunaligned_child\tedges\n";
    for (const MatchReport& r : reports) {
        out += std::string(to_string(r.direction)) + "\t" + fmt1(r.match_pct()) + "\t" +
               fmt1(r.swap_pct()) + "\t" + fmt1(r.unaligned_pct()) + "\t" + fmt1(r.merge_pct()) +
               "\t" + fmt1(r.other_pct()) + "\t" + fmt1(r.unaligned_child_pct()) + "\t" +
               std::to_string(r.edges()) + "\n";
    }
    return out;
}

inline ordered_json breakdown_json(const std::vector<MatchReport>& reports) {
    ordered_json doc;
    doc["meta"]["classification_priority"] = kClassificationPriority;
    doc["rows"] = ordered_json::array();
    for (const MatchReport& r : reports) {
        ordered_json row;
        row["direction"] = to_string(r.direction);
        row["match"] = round_to(r.match_pct(), 1);
        row["swap"] = round_to(r.swap_pct(), 1);
        row["unaligned"] = round_to(r.unaligned_pct(), 1);
        row["merge"] = round_to(r.merge_pct(), 1);
        row["other"] = round_to(r.other_pct(), 1);
        row["unaligned_child"] = round_to(r.unaligned_child_pct(), 1);
        row["edges"] = r.edges();
        doc["rows"].push_back(std::move(row));
    }
    return doc;
}

// ---- stage table ----

inline std::string stage_table_tsv(const StageTable& table, const std::string& directions) {
    std::string out;
    out += std::string("# classification-priority\t") + kClassificationPriority + "\n";
    out += std::string("# merge-stage\t") + kMergePolicy + "\n";
    std::string skipped = "-";
    if (!table.skipped.empty()) {
        skipped.clear();
        for (std::size_t i = 0; i < table.skipped.size(); ++i)
            skipped += (i ? "," : "") + table.skipped[i];
    }
    out += "# skipped-pairs\t" + skipped + "\n";
    out += "direction\tstage\tmatch\tswap\tunaligned\tmerge\tother\tunaligned_child\tedges\n";
    for (const StageTableRow& r : table.rows) {
        if (!direction_selected(r.direction, directions)) continue;
        out += std::string(to_string(r.direction)) + "\t" + to_string(r.stage) + "\t" +
               fmt1(r.pct(r.counts.match)) + "\t" + fmt1(r.pct(r.counts.swap)) + "\t" +
               fmt1(r.pct(r.counts.unaligned)) + "\t" + fmt1(r.pct(r.counts.merge)) + "\t" +
               fmt1(r.pct(r.counts.other)) + "\t" + fmt1(r.pct(r.counts.unaligned_child)) + "\t" +
               std::to_string(r.edges()) + "\n";
    }
    return out;
}

inline ordered_json stage_table_json(const StageTable& table, const std::string& directions) {
    ordered_json doc;
    doc["meta"]["classification_priority"] = kClassificationPriority;
    doc["meta"]["merge_stage"] = kMergePolicy;
    doc["meta"]["skipped_pairs"] = table.skipped;
    doc["rows"] = ordered_json::array();
    for (const StageTableRow& r : table.rows) {
        if (!direction_selected(r.direction, directions)) continue;
        ordered_json row;
        row["direction"] = to_string(r.direction);
        row["stage"] = to_string(r.stage);
        row["match"] = round_to(r.pct(r.counts.match), 1);
        row["swap"] = round_to(r.pct(r.counts.swap), 1);
        row["unaligned"] = round_to(r.pct(r.counts.unaligned), 1);
        row["merge"] = round_to(r.pct(r.counts.merge), 1);
        row["other"] = round_to(r.pct(r.counts.other), 1);
        row["unaligned_child"] = round_to(r.pct(r.counts.unaligned_child), 1);
        row["edges"] = r.edges();
        doc["rows"].push_back(std::move(row));
    }
    return doc;
}

// ---- POS statistics ----

inline std::string pos_stats_tsv(const std::vector<PosPairStat>& stats) {
    std::string out;
    out += std::string("# opportunities\t") + kOpportunityPolicy + "\n";
    out += "op\tchild_pos\tparent_pos\tapplied\topportunities\trate\n";
    for (const PosPairStat& s : stats) {
        out += std::string(to_string(s.kind)) + "\t" + s.child_pos + "\t" + s.parent_pos + "\t" +
               std::to_string(s.applied) + "\t" + std::to_string(s.opportunities) + "\t" +
               fmt1(s.rate()) + "\n";
    }
    return out;
}

inline ordered_json pos_stats_json(const std::vector<PosPairStat>& stats) {
    ordered_json doc;
    doc["meta"]["opportunities"] = kOpportunityPolicy;
    doc["rows"] = ordered_json::array();
    for (const PosPairStat& s : stats) {
        ordered_json row;
        row["op"] = to_string(s.kind);
        row["child_pos"] = s.child_pos;
        row["parent_pos"] = s.parent_pos;
        row["applied"] = s.applied;
        row["opportunities"] = s.opportunities;
        row["rate"] = round_to(s.rate(), 1);
        doc["rows"].push_back(std::move(row));
    }
    return doc;
}

// ---- operation log ----

inline std::string oplog_tsv(const OpLog& log) {
    std::string out = "pair_id\top\tside\tchild_pos\tparent_pos\tforms\tnote\n";
    for (const OpLogEntry& e : log) {
        out += e.pair_id + "\t" + to_string(e.kind) + "\t" + to_string(e.side) + "\t" +
               e.child_pos + "\t" + e.parent_pos + "\t" + e.forms + "\t" +
               (e.root_promotion ? "root-promotion" : "") + "\n";
    }
    return out;
}

// ---- swap rules ----

inline std::string rules_tsv(const std::vector<SwapRule>& rules) {
    std::string out = "child_pos\tparent_pos\tfrequency\tsupport\n";
    for (const SwapRule& r : rules)
        out += r.child_pos + "\t" + r.parent_pos + "\t" + fmt_fixed(r.frequency, 4) + "\t" +
               std::to_string(r.support) + "\n";
    return out;
}

inline ordered_json rules_json(const std::vector<SwapRule>& rules) {
    ordered_json doc = ordered_json::array();
    for (const SwapRule& r : rules) {
        ordered_json row;
        row["child_pos"] = r.child_pos;
        row["parent_pos"] = r.parent_pos;
        row["frequency"] = round_to(r.frequency, 4);
        row["support"] = r.support;
        doc.push_back(std::move(row));
    }
    return doc;
}

// ---- experiment report ----

inline std::string experiment_tsv(const ExperimentReport& r) {
    std::string out;
    out += std::string("# attachment-scoring\t") + kScoringPolicy + "\n";
    out += "# split\tseed=" + std::to_string(r.seed) +
           " train_fraction=" + fmt2(r.train_fraction) + " train=" + std::to_string(r.train_pairs) +
           " test=" + std::to_string(r.test_pairs) + "\n";
    out += "row\tthreshold\tmin_support\tprecision\trecall\tf1\tpredicted\tgold\tcorrect\n";
    auto emit = [&out](const std::string& label, const std::string& threshold,
                       const std::string& support, const EvalResult& e) {
        out += label + "\t" + threshold + "\t" + support + "\t" + fmt2(e.precision()) + "\t" +
               fmt2(e.recall()) + "\t" + fmt2(e.f1()) + "\t" + std::to_string(e.predicted) + "\t" +
               std::to_string(e.gold) + "\t" + std::to_string(e.correct) + "\n";
    };
    emit("baseline", "-", "-", r.baseline);
    emit("corrected", fmt2(r.threshold), std::to_string(r.min_support), r.corrected);
    return out;
}

inline ordered_json experiment_json(const ExperimentReport& r) {
    ordered_json doc;
    doc["meta"]["attachment_scoring"] = kScoringPolicy;
    doc["meta"]["seed"] = r.seed;
    doc["meta"]["train_fraction"] = round_to(r.train_fraction, 2);
    doc["meta"]["train"] = r.train_pairs;
    doc["meta"]["test"] = r.test_pairs;
    auto row = [](const EvalResult& e, const ordered_json& threshold,
                  const ordered_json& support) {
        ordered_json out;
        out["threshold"] = threshold;
        out["min_support"] = support;
        out["precision"] = round_to(e.precision(), 2);
        out["recall"] = round_to(e.recall(), 2);
        out["f1"] = round_to(e.f1(), 2);
        out["predicted"] = e.predicted;
        out["gold"] = e.gold;
        out["correct"] = e.correct;
        return out;
    };
    doc["rows"] = ordered_json::array();
    {
        ordered_json b = row(r.baseline, nullptr, nullptr);
        ordered_json items;
        items["row"] = "baseline";
        items.update(b);
        doc["rows"].push_back(items);
    }
    {
        ordered_json c = row(r.corrected, round_to(r.threshold, 2), r.min_support);
        ordered_json items;
        items["row"] = "corrected";
        items.update(c);
        doc["rows"].push_back(items);
    }
    return doc;
}

// ---- projected trees ----

// Token-line format with HEAD -1 marking unattached tokens; output only,
// never accepted back as corpus input.
inline std::string projected_trees_text(const std::vector<std::pair<std::string, ProjectedTree>>&
                                            projections) {
    std::string out;
    for (const auto& [id, proj] : projections) {
        out += "# id " + id + "\n";
        out += "## projected\n";
        for (int i = 1; i <= proj.size(); ++i) {
            const Token& tok = proj.tokens[i - 1];
            out += std::to_string(tok.index) + "\t" + tok.form + "\t" + tok.pos + "\t" +
                   std::to_string(proj.heads[i - 1]) + "\n";
        }
        out += "\n";
    }
    return out;
}

}  // namespace divkit

#endif  // DIVKIT_REPORT_IO_HPP
