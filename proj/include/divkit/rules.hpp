#ifndef DIVKIT_RULES_HPP
#define DIVKIT_RULES_HPP

#include <algorithm>
#include <map>
#include <random>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "divkit/core.hpp"
#include "divkit/projection.hpp"

// Learns POS-pattern swap rules from a training corpus, applies them to
// projected trees, and evaluates attachment accuracy against gold trees.
//
// A candidate pattern is the (child POS, parent POS) of a projected edge
// under the projected (target-side) tags; it counts as swapped when the
// gold source tree holds the reversed edge. Learned rules keep candidates
// at or above both the frequency threshold and the support floor.

namespace divkit {

class TokenMismatchError : public Error { public: using Error::Error; };
class EmptySplitError : public Error { public: using Error::Error; };
class ConfigError : public Error { public: using Error::Error; };

struct SwapRule {
    std::string child_pos;
    std::string parent_pos;
    double frequency = 0.0;  // swapped / observed, in [0, 1]
    int support = 0;         // observed projected dependencies

    bool operator==(const SwapRule&) const = default;
};

inline std::vector<SwapRule> collect_swap_stats(const Corpus& train) {
    std::map<std::pair<std::string, std::string>, std::pair<int, int>> seen;  // observed, swapped
    for (const AlignedPair& pair : train.pairs()) {
        ProjectedTree proj;
        try {
            proj = project_pair(pair);
        } catch (const ProjectionDegenerateError&) {
            continue;  // nothing projectable, nothing to learn from
        }
        const DepTree& gold = pair.source();
        for (const auto& [child, head] : proj.attached_edges()) {
            auto& cell = seen[{proj.tokens[child - 1].pos, proj.tokens[head - 1].pos}];
            ++cell.first;
            if (gold.head_of(head) == child) ++cell.second;
        }
    }
    std::vector<SwapRule> candidates;
    for (const auto& [key, cell] : seen)
        candidates.push_back(SwapRule{key.first, key.second,
                                      static_cast<double>(cell.second) / cell.first, cell.first});
    std::sort(candidates.begin(), candidates.end(), [](const SwapRule& a, const SwapRule& b) {
        if (a.support != b.support) return a.support > b.support;
        if (a.child_pos != b.child_pos) return a.child_pos < b.child_pos;
        return a.parent_pos < b.parent_pos;
    });
    return candidates;
}

// Both cutoffs are inclusive: frequency >= threshold and support >= floor.
inline std::vector<SwapRule> learn_swap_rules(const std::vector<SwapRule>& candidates,
                                              double threshold, int min_support) {
    std::vector<SwapRule> rules;
    for (const SwapRule& c : candidates)
        if (c.frequency >= threshold && c.support >= min_support &&
            c.child_pos != kUnknownPos && c.parent_pos != kUnknownPos)
            rules.push_back(c);
    std::sort(rules.begin(), rules.end(), [](const SwapRule& a, const SwapRule& b) {
        if (a.support != b.support) return a.support > b.support;
        if (a.child_pos != b.child_pos) return a.child_pos < b.child_pos;
        return a.parent_pos < b.parent_pos;
    });
    return rules;
}

// Single bottom-up pass over the attached forest (children before heads,
// left to right among siblings, order fixed by the input structure): an edge
// whose POS pattern matches a rule is reversed in place. Each node's edge is
// considered once, against the current structure.
inline ProjectedTree apply_swap_rules(const ProjectedTree& proj,
                                      const std::vector<SwapRule>& rules) {
    std::set<std::pair<std::string, std::string>> patterns;
    for (const SwapRule& r : rules) patterns.emplace(r.child_pos, r.parent_pos);

    const int n = proj.size();
    std::vector<std::vector<int>> kids(n + 1);
    std::vector<int> roots;
    for (int i = 1; i <= n; ++i) {
        int h = proj.heads[i - 1];
        if (h > 0) kids[h].push_back(i);
        else if (h == 0) roots.push_back(i);
    }
    std::vector<int> order;  // post-order of the original forest
    std::vector<std::pair<int, bool>> stack;
    for (auto it = roots.rbegin(); it != roots.rend(); ++it) stack.push_back({*it, false});
    while (!stack.empty()) {
        auto [node, expanded] = stack.back();
        stack.pop_back();
        if (expanded) {
            order.push_back(node);
            continue;
        }
        stack.push_back({node, true});
        for (auto it = kids[node].rbegin(); it != kids[node].rend(); ++it)
            stack.push_back({*it, false});
    }

    ProjectedTree out = proj;
    for (int node : order) {
        int head = out.heads[node - 1];
        if (head < 1) continue;
        if (!patterns.count({out.tokens[node - 1].pos, out.tokens[head - 1].pos})) continue;
        out.heads[node - 1] = out.heads[head - 1];
        out.heads[head - 1] = node;
    }
    return out;
}

struct EvalResult {
    int predicted = 0;  // attached non-root edges of the prediction
    int gold = 0;       // all n-1 gold edges
    int correct = 0;

    double precision() const { return predicted == 0 ? 0.0 : 100.0 * correct / predicted; }
    double recall() const { return gold == 0 ? 0.0 : 100.0 * correct / gold; }
    double f1() const {
        double p = precision(), r = recall();
        return p + r == 0.0 ? 0.0 : 2.0 * p * r / (p + r);
    }

    EvalResult& operator+=(const EvalResult& o) {
        predicted += o.predicted;
        gold += o.gold;
        correct += o.correct;
        return *this;
    }

    bool operator==(const EvalResult&) const = default;
};

inline EvalResult evaluate_attachment(const ProjectedTree& pred, const DepTree& gold) {
    if (pred.size() != gold.size())
        throw TokenMismatchError("prediction has " + std::to_string(pred.size()) +
                                 " tokens, gold has " + std::to_string(gold.size()));
    for (int i = 1; i <= gold.size(); ++i)
        if (pred.tokens[i - 1].form != gold.token(i).form)
            throw TokenMismatchError("token " + std::to_string(i) + " differs: \"" +
                                     pred.tokens[i - 1].form + "\" vs \"" + gold.token(i).form +
                                     "\"");
    EvalResult r;
    const auto gold_edges = gold.edges();
    const std::set<std::pair<int, int>> gold_set(gold_edges.begin(), gold_edges.end());
    for (const auto& edge : pred.attached_edges()) {
        ++r.predicted;
        if (gold_set.count(edge)) ++r.correct;
    }
    r.gold = static_cast<int>(gold_set.size());
    return r;
}

struct ExperimentReport {
    double threshold = 0.0;
    int min_support = 0;
    double train_fraction = 0.0;
    unsigned long seed = 0;
    int train_pairs = 0;
    int test_pairs = 0;
    std::vector<SwapRule> candidates;
    std::vector<SwapRule> rules;
    EvalResult baseline;   // projection as-is, micro-averaged over the test set
    EvalResult corrected;  // projection after applying the learned rules
    std::vector<std::string> unprojectable;  // test pair ids skipped
};

// Deterministic seeded split (hand-rolled Fisher-Yates so the sequence does
// not depend on the standard library), learn on the train part, project,
// correct and score on the held-out part.
inline ExperimentReport holdout_experiment(const Corpus& corpus, double train_fraction,
                                           double threshold, int min_support,
                                           unsigned long seed) {
    if (!(train_fraction > 0.0 && train_fraction < 1.0))
        throw ConfigError("train fraction must be strictly between 0 and 1");
    if (threshold < 0.0) throw ConfigError("threshold must be non-negative");
    if (min_support < 0) throw ConfigError("min support must be non-negative");

    const int n = corpus.size();
    std::vector<int> index(n);
    for (int i = 0; i < n; ++i) index[i] = i;
    std::mt19937_64 gen(seed);
    for (int i = n - 1; i >= 1; --i) {
        int j = static_cast<int>(gen() % static_cast<unsigned long>(i + 1));
        std::swap(index[i], index[j]);
    }
    const int train_count = static_cast<int>(train_fraction * n);
    if (train_count == 0 || train_count == n)
        throw EmptySplitError("split leaves an empty train or test set (" +
                              std::to_string(train_count) + "/" + std::to_string(n - train_count) +
                              ")");

    std::vector<AlignedPair> train_pairs, test_pairs;
    for (int i = 0; i < n; ++i)
        (i < train_count ? train_pairs : test_pairs).push_back(corpus.pairs()[index[i]]);

    ExperimentReport report;
    report.threshold = threshold;
    report.min_support = min_support;
    report.train_fraction = train_fraction;
    report.seed = seed;
    report.train_pairs = train_count;
    report.test_pairs = n - train_count;
    report.candidates = collect_swap_stats(Corpus(std::move(train_pairs)));
    report.rules = learn_swap_rules(report.candidates, threshold, min_support);

    for (const AlignedPair& pair : test_pairs) {
        ProjectedTree proj;
        try {
            proj = project_pair(pair);
        } catch (const ProjectionDegenerateError&) {
            report.unprojectable.push_back(pair.id());
            continue;
        }
        report.baseline += evaluate_attachment(proj, pair.source());
        report.corrected += evaluate_attachment(apply_swap_rules(proj, report.rules),
                                                pair.source());
    }
    return report;
}

}  // namespace divkit

#endif  // DIVKIT_RULES_HPP
