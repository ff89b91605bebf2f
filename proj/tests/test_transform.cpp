#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "divkit/corpus_io.hpp"
#include "divkit/transform.hpp"
#include "support/builders.hpp"
#include "support/oracle.hpp"

using namespace divkit;
using builders::make_tree;

static int index_of_form(const DepTree& t, const std::string& form) {
    for (const Token& tok : t.tokens())
        if (tok.form == form) return tok.index;
    return 0;
}

// Brute-force fixpoint check: no link left whose child-parent pair shares a
// target, on either side.
static bool merge_fixpoint(const AlignedPair& pair) {
    for (const auto& [f, e] : pair.alignment().links()) {
        int fp = pair.source().head_of(f);
        if (fp != 0 && pair.alignment().contains(fp, e)) return false;
        int ep = pair.target().head_of(e);
        if (ep != 0 && pair.alignment().contains(f, ep)) return false;
    }
    return true;
}

TEST_CASE("remove_spontaneous strips unaligned tokens from both sides") {
    // determiner on the target side has no counterpart
    DepTree f = make_tree({{"laDakA", "NN"}, {"haMsA", "VB"}}, {2, 0});
    DepTree e = make_tree({{"the", "DT"}, {"boy", "NN"}, {"laughed", "VBD"}}, {2, 3, 0});
    AlignedPair pair("p", f, e, Alignment{{1, 2}, {2, 3}});
    auto [out, log] = remove_spontaneous(pair);
    REQUIRE(out.target().size() == 2);
    REQUIRE(out.source().size() == 2);
    REQUIRE(log.size() == 1);
    REQUIRE(log[0].kind == OpKind::Remove);
    REQUIRE(log[0].side == Side::Target);
    REQUIRE(log[0].child_pos == "DT");
    REQUIRE(log[0].forms == "the");
    REQUIRE(out.alignment().links() == std::set<Alignment::Link>{{1, 1}, {2, 2}});
    REQUIRE(sent_match(out, Direction::TgtToSrc) == 100.0);
}

TEST_CASE("remove_spontaneous on a fully aligned pair is the identity") {
    DepTree f = make_tree({{"a", "X"}, {"b", "X"}}, {2, 0});
    AlignedPair pair("p", f, f, Alignment{{1, 1}, {2, 2}});
    auto [out, log] = remove_spontaneous(pair);
    REQUIRE(out == pair);
    REQUIRE(log.empty());
}

TEST_CASE("remove_spontaneous flags root promotion") {
    DepTree f = make_tree({{"spont", "UH"}, {"a", "X"}, {"b", "X"}}, {0, 1, 2});
    DepTree e = make_tree({{"ea", "X"}, {"eb", "X"}}, {0, 1});
    AlignedPair pair("p", f, e, Alignment{{2, 1}, {3, 2}});
    auto [out, log] = remove_spontaneous(pair);
    REQUIRE(log.size() == 1);
    REQUIRE(log[0].root_promotion);
    REQUIRE(out.source().root() == index_of_form(out.source(), "a"));
}

TEST_CASE("remove_spontaneous rejects a side that would empty out") {
    DepTree f = make_tree({{"a", "X"}, {"b", "X"}}, {2, 0});
    AlignedPair pair("p", f, f, Alignment{});
    REQUIRE_THROWS_AS(remove_spontaneous(pair), DegenerateTreeError);
}

TEST_CASE("merge_aligned merges a chain of three into one node") {
    // three source tokens all aligned to the single target token
    DepTree f = make_tree({{"a", "P"}, {"b", "Q"}, {"c", "R"}}, {2, 3, 0});
    DepTree e = make_tree({{"x", "Z"}}, {0});
    AlignedPair pair("p", f, e, Alignment{{1, 1}, {2, 1}, {3, 1}});
    auto [out, log] = merge_aligned(pair);
    REQUIRE(log.size() == 2);
    REQUIRE(log[0].kind == OpKind::Merge);
    REQUIRE(out.source().size() == 1);
    REQUIRE(out.source().token(1).form == "a+b+c");
    REQUIRE(out.source().token(1).pos == "R");
    REQUIRE(out.alignment().links() == std::set<Alignment::Link>{{1, 1}});
    REQUIRE(merge_fixpoint(out));
}

TEST_CASE("merge_aligned is the identity on a one-to-one pair") {
    DepTree f = make_tree({{"a", "X"}, {"b", "X"}}, {2, 0});
    AlignedPair pair("p", f, f, Alignment{{1, 1}, {2, 2}});
    auto [out, log] = merge_aligned(pair);
    REQUIRE(out == pair);
    REQUIRE(log.empty());
}

TEST_CASE("merge_aligned logs child and parent POS") {
    DepTree f = make_tree({{"hE", "VAUX"}, {"jAtA", "VM"}}, {2, 0});
    DepTree e = make_tree({{"goes", "VBZ"}}, {0});
    AlignedPair pair("p", f, e, Alignment{{1, 1}, {2, 1}});
    auto [out, log] = merge_aligned(pair);
    REQUIRE(log.size() == 1);
    REQUIRE(log[0].child_pos == "VAUX");
    REQUIRE(log[0].parent_pos == "VM");
    REQUIRE(log[0].side == Side::Source);
    REQUIRE(out.source().token(1).form == "hE+jAtA");
}

TEST_CASE("swap_reversed reverses a reversed edge and nothing else") {
    // postposition pattern: source noun under postposition, target reversed
    DepTree f = make_tree({{"ghara", "NN"}, {"meM", "IN"}, {"rahatA", "VB"}}, {2, 3, 0});
    DepTree e = make_tree({{"lives", "VBZ"}, {"in", "IN"}, {"house", "NN"}}, {0, 3, 1});
    AlignedPair pair("p", f, e, Alignment{{1, 3}, {2, 2}, {3, 1}});
    REQUIRE(classify_edge(1, 2, pair.target(), pair.alignment()) == EdgeClass::Swap);
    auto [out, log] = swap_reversed(pair);
    REQUIRE(log.size() == 1);
    REQUIRE(log[0].kind == OpKind::Swap);
    REQUIRE(log[0].child_pos == "NN");
    REQUIRE(log[0].parent_pos == "IN");
    // the swapped edge now matches
    REQUIRE(classify_edge(2, 1, out.target(), out.alignment()) == EdgeClass::Match);
    REQUIRE(out.source().head_of(2) == 1);
    REQUIRE(out.source().head_of(1) == 3);
}

TEST_CASE("swap_reversed is the identity when nothing is reversed") {
    DepTree f = make_tree({{"a", "X"}, {"b", "X"}}, {2, 0});
    AlignedPair pair("p", f, f, Alignment{{1, 1}, {2, 2}});
    auto [out, log] = swap_reversed(pair);
    REQUIRE(out == pair);
    REQUIRE(log.empty());
}

TEST_CASE("swap_reversed handles the promotional pattern at the root") {
    // adverb heads the verb on the target side: the source edge is reversed
    DepTree f = make_tree({{"usually", "RB"}, {"goes", "VB"}}, {2, 0});
    DepTree e = make_tree({{"suele", "VB"}, {"ir", "VB"}}, {0, 1});
    AlignedPair pair("p", f, e, Alignment{{1, 1}, {2, 2}});
    auto [out, log] = swap_reversed(pair);
    REQUIRE(log.size() == 1);
    REQUIRE(out.source().root() == 1);  // the dependent was promoted
    REQUIRE(out.source().head_of(2) == 1);
    REQUIRE(sent_match(out, Direction::SrcToTgt) == 100.0);
}

TEST_CASE("transform_pair emits four stages in order") {
    DepTree f = make_tree({{"a", "X"}, {"b", "X"}}, {2, 0});
    AlignedPair pair("p", f, f, Alignment{{1, 1}, {2, 2}});
    auto result = transform_pair(pair);
    REQUIRE(result.stages.size() == 4);
    REQUIRE(result.stages[0].stage == Stage::Baseline);
    REQUIRE(result.stages[0].ops.empty());
    REQUIRE(result.stages[3].stage == Stage::Swap);
    for (const auto& stage : result.stages) {
        REQUIRE(stage.src_to_tgt.match_pct() == 100.0);
        REQUIRE(stage.tgt_to_src.match_pct() == 100.0);
        REQUIRE(stage.state == pair);
    }
}

TEST_CASE("fixture A pipeline: zeroing, monotonicity, and the conflational pair") {
    auto doc = builders::load_fixture("fixture_a.corpus");
    for (const auto& pair : doc.corpus.pairs()) {
        auto result = transform_pair(pair);
        for (std::size_t s = 1; s < result.stages.size(); ++s) {
            const auto& stage = result.stages[s];
            // spontaneous tokens never reappear
            REQUIRE(stage.src_to_tgt.counts.unaligned == 0);
            REQUIRE(stage.tgt_to_src.counts.unaligned == 0);
            if (s >= 2) {
                REQUIRE(stage.src_to_tgt.counts.merge == 0);
                REQUIRE(stage.tgt_to_src.counts.merge == 0);
            }
            // recomputing the breakdown from the stage state agrees
            REQUIRE(stage.src_to_tgt.counts == oracle::count_classes(stage.state, Direction::SrcToTgt));
            REQUIRE(stage.tgt_to_src.counts == oracle::count_classes(stage.state, Direction::TgtToSrc));
        }
    }
    // the Hindi-English causative pair ends structurally isomorphic
    auto result = transform_pair(doc.corpus.pairs()[3]);
    REQUIRE(doc.corpus.pairs()[3].id() == "a04");
    REQUIRE(result.stages.back().src_to_tgt.match_pct() == 100.0);
    REQUIRE(result.stages.back().tgt_to_src.match_pct() == 100.0);
    // merged forms surface with the child+parent spelling
    REQUIRE(index_of_form(result.final_state().target(), "given+caused") != 0);
}

TEST_CASE("corpus stage table aggregates per-pair transforms") {
    auto doc = builders::load_fixture("fixture_a.corpus");
    auto table = corpus_stage_table(doc.corpus);
    REQUIRE(table.rows.size() == 8);
    REQUIRE(table.skipped.empty());

    // equals a per-pair recomputation
    std::map<std::pair<int, int>, ClassCounts> cells;
    for (const auto& pair : doc.corpus.pairs()) {
        auto result = transform_pair(pair);
        for (std::size_t s = 0; s < result.stages.size(); ++s) {
            cells[{0, static_cast<int>(s)}] += result.stages[s].src_to_tgt.counts;
            cells[{1, static_cast<int>(s)}] += result.stages[s].tgt_to_src.counts;
        }
    }
    for (const auto& row : table.rows) {
        int dir = row.direction == Direction::SrcToTgt ? 0 : 1;
        int stage = static_cast<int>(row.stage);
        REQUIRE(row.counts == cells[{dir, stage}]);
    }

    // baseline and final match percentages, frozen from the hand-built fixture
    REQUIRE(table.rows[0].counts.match == 14);
    REQUIRE(table.rows[0].edges() == 28);
    REQUIRE(table.rows[4].counts.match == 14);
    REQUIRE(table.rows[4].edges() == 29);

    // non-decreasing match within each direction
    for (int dir = 0; dir < 2; ++dir)
        for (int s = 1; s < 4; ++s) {
            const auto& prev = table.rows[dir * 4 + s - 1];
            const auto& cur = table.rows[dir * 4 + s];
            REQUIRE(cur.pct(cur.counts.match) >= prev.pct(prev.counts.match));
        }

    // the transformed corpus serializes deterministically
    CorpusDocument out{table.transformed, doc.source_language, doc.target_language};
    auto table2 = corpus_stage_table(doc.corpus);
    CorpusDocument out2{table2.transformed, doc.source_language, doc.target_language};
    REQUIRE(serialize_corpus(out) == serialize_corpus(out2));
}

TEST_CASE("corpus stage table of an empty corpus has no rows") {
    auto table = corpus_stage_table(Corpus());
    REQUIRE(table.rows.empty());
    REQUIRE(table.skipped.empty());
}

TEST_CASE("degenerate pairs are skipped with a warning, not fatal") {
    DepTree f = make_tree({{"a", "X"}, {"b", "X"}}, {2, 0});
    AlignedPair good("good", f, f, Alignment{{1, 1}, {2, 2}});
    AlignedPair bad("bad", f, f, Alignment{});
    auto table = corpus_stage_table(Corpus({good, bad}));
    REQUIRE(table.skipped == std::vector<std::string>{"bad"});
    REQUIRE(table.transformed.size() == 1);
    REQUIRE(table.rows[0].edges() == 1);
}

TEST_CASE("pipeline invariants hold on random corpora") {
    std::mt19937 rng(5150);
    for (int iter = 0; iter < 60; ++iter) {
        // arbitrary many-to-many alignments
        auto corpus = oracle::random_corpus(rng, 4, 8, false);
        for (const auto& pair : corpus.pairs()) {
            TransformResult result;
            try {
                result = transform_pair(pair);
            } catch (const DegenerateTreeError&) {
                continue;
            }
            REQUIRE(result.stages[1].src_to_tgt.counts.unaligned == 0);
            REQUIRE(result.stages[1].tgt_to_src.counts.unaligned == 0);
            REQUIRE(result.stages[2].src_to_tgt.counts.merge == 0);
            REQUIRE(result.stages[2].tgt_to_src.counts.merge == 0);
            REQUIRE(merge_fixpoint(result.stages[2].state));
            // determinism
            auto again = transform_pair(pair);
            REQUIRE(again.final_state() == result.final_state());
        }
    }
}

TEST_CASE("match is non-decreasing across stages under one-link-per-source alignments") {
    std::mt19937 rng(8080);
    for (int iter = 0; iter < 60; ++iter) {
        auto style = iter % 2 == 0 ? oracle::AlignStyle::Matching
                                   : oracle::AlignStyle::SourceFunction;
        auto corpus = oracle::random_corpus(rng, 4, 8, style);
        for (const auto& pair : corpus.pairs()) {
            TransformResult result;
            try {
                result = transform_pair(pair);
            } catch (const DegenerateTreeError&) {
                continue;
            }
            for (std::size_t s = 1; s < result.stages.size(); ++s) {
                REQUIRE(result.stages[s].src_to_tgt.match_pct() >=
                        result.stages[s - 1].src_to_tgt.match_pct());
                REQUIRE(result.stages[s].tgt_to_src.match_pct() >=
                        result.stages[s - 1].tgt_to_src.match_pct());
            }
        }
    }
}

TEST_CASE("stage locality: matched edges with surviving endpoints stay matched") {
    // Surviving tokens are identified by form; the random generator makes
    // forms unique per side and merges mark their outputs with '+'.
    std::mt19937 rng(6060);
    auto find_form = [](const DepTree& t, const std::string& form) {
        for (const Token& tok : t.tokens())
            if (tok.form == form) return tok.index;
        return 0;
    };
    for (int iter = 0; iter < 120; ++iter) {
        AlignedPair pair = oracle::random_pair(rng, "p", 8, true);
        TransformResult result;
        try {
            result = transform_pair(pair);
        } catch (const DegenerateTreeError&) {
            continue;
        }
        for (std::size_t s = 0; s + 1 < result.stages.size(); ++s) {
            const AlignedPair& before = result.stages[s].state;
            const AlignedPair& after = result.stages[s + 1].state;
            bool swap_stage = result.stages[s + 1].stage == Stage::Swap;
            for (const auto& [c, p] : before.source().edges()) {
                if (!edge_matches(c, p, before.target(), before.alignment())) continue;
                int c2 = find_form(after.source(), before.source().token(c).form);
                int p2 = find_form(after.source(), before.source().token(p).form);
                if (c2 == 0 || p2 == 0) continue;          // an endpoint was merged or removed
                if (after.source().head_of(c2) != p2) {
                    REQUIRE(swap_stage);                    // only a swap may rewire a matched edge
                    continue;
                }
                REQUIRE(edge_matches(c2, p2, after.target(), after.alignment()));
            }
        }
    }
}
