#include <catch2/catch_amalgamated.hpp>

#include <map>
#include <random>
#include <set>

#include "divkit/core.hpp"
#include "support/builders.hpp"
#include "support/oracle.hpp"

using namespace divkit;
using builders::make_tree;

TEST_CASE("build_tree accepts a minimal two-node tree") {
    DepTree t = make_tree({{"a", "X"}, {"b", "Y"}}, {0, 1});
    REQUIRE(t.size() == 2);
    REQUIRE(t.root() == 1);
    REQUIRE(t.head_of(2) == 1);
    REQUIRE(t.edges() == std::vector<std::pair<int, int>>{{2, 1}});
}

TEST_CASE("build_tree rejects invalid head maps") {
    SECTION("two-cycle") {
        REQUIRE_THROWS_AS(make_tree({{"a", "X"}, {"b", "X"}}, {2, 1}), CycleError);
    }
    SECTION("self head") {
        REQUIRE_THROWS_AS(make_tree({{"a", "X"}, {"b", "X"}}, {0, 2}), CycleError);
    }
    SECTION("two roots") {
        REQUIRE_THROWS_AS(make_tree({{"a", "X"}, {"b", "X"}, {"c", "X"}}, {0, 0, 1}),
                          MultipleRootError);
    }
    SECTION("no root always manifests as a cycle under a total head map") {
        REQUIRE_THROWS_AS(make_tree({{"a", "X"}, {"b", "X"}, {"c", "X"}}, {2, 3, 1}), CycleError);
        REQUIRE_THROWS_AS(make_tree({{"a", "X"}, {"b", "X"}}, {2, 2}), CycleError);
    }
    SECTION("dangling head") {
        REQUIRE_THROWS_AS(make_tree({{"a", "X"}, {"b", "X"}}, {0, 7}), DanglingHeadError);
    }
    SECTION("missing head entry") {
        std::vector<Token> toks{{1, "a", "X"}, {2, "b", "X"}};
        REQUIRE_THROWS_AS(DepTree::build(toks, {{1, 0}}), DanglingHeadError);
    }
    SECTION("empty tokens") {
        REQUIRE_THROWS_AS(DepTree::build({}, {}), TokenError);
    }
    SECTION("empty form") {
        REQUIRE_THROWS_AS(make_tree({{"", "X"}}, {0}), TokenError);
    }
    SECTION("non-contiguous indices") {
        std::vector<Token> toks{{1, "a", "X"}, {3, "b", "X"}};
        REQUIRE_THROWS_AS(DepTree::build(toks, {{1, 0}, {3, 1}}), TokenError);
    }
    SECTION("duplicate indices") {
        std::vector<Token> toks{{1, "a", "X"}, {1, "b", "X"}};
        REQUIRE_THROWS_AS(DepTree::build(toks, {{1, 0}}), TokenError);
    }
}

// The base tree drawn for the operation walk-throughs: h is the root with
// children i, j, k; j has children l, m, n; l has children o, p.
static DepTree figure_tree() {
    return make_tree({{"h", "X"},
                      {"i", "X"},
                      {"j", "X"},
                      {"k", "X"},
                      {"l", "X"},
                      {"m", "X"},
                      {"n", "X"},
                      {"o", "X"},
                      {"p", "X"}},
                     {0, 1, 1, 1, 3, 3, 3, 5, 5});
}

TEST_CASE("children and parent accessors") {
    DepTree t = figure_tree();
    REQUIRE(t.children(3) == std::vector<int>{5, 6, 7});   // j -> {l, m, n}
    REQUIRE(t.children(1) == std::vector<int>{2, 3, 4});   // h -> {i, j, k}
    REQUIRE(t.children(9).empty());                        // leaf
    REQUIRE(t.children(0) == std::vector<int>{1});         // root sentinel
    REQUIRE(t.head_of(5) == 3);                            // parent(l) = j
    REQUIRE(t.head_of(1) == 0);                            // parent(root) = 0
    REQUIRE_THROWS_AS(t.head_of(42), IndexError);
    REQUIRE_THROWS_AS(t.children(42), IndexError);
    REQUIRE_THROWS_AS(t.token(0), IndexError);
}

TEST_CASE("children and parent are mutually consistent on random trees") {
    std::mt19937 rng(1234);
    for (int iter = 0; iter < 200; ++iter) {
        DepTree t = oracle::random_tree(rng, static_cast<int>(rng() % 9) + 2, "w");
        REQUIRE(static_cast<int>(t.edges().size()) == t.size() - 1);
        for (int i = 0; i <= t.size(); ++i)
            for (int j : t.children(i)) REQUIRE(t.head_of(j) == i);
        for (int j = 1; j <= t.size(); ++j) {
            auto kids = t.children(t.head_of(j));
            REQUIRE(std::find(kids.begin(), kids.end(), j) != kids.end());
        }
    }
}

TEST_CASE("build_tree accepts exactly the head maps a brute-force checker accepts") {
    std::mt19937 rng(99);
    int accepted = 0, rejected = 0;
    for (int iter = 0; iter < 3000; ++iter) {
        int n = static_cast<int>(rng() % 5) + 1;
        std::map<int, int> heads;
        for (int i = 1; i <= n; ++i) heads[i] = static_cast<int>(rng() % (n + 1));
        std::vector<Token> toks;
        for (int i = 1; i <= n; ++i) toks.push_back(Token{i, "w" + std::to_string(i), "X"});
        bool expected = oracle::valid_head_map(n, heads);
        bool got = true;
        try {
            DepTree::build(toks, heads);
        } catch (const Error&) {
            got = false;
        }
        REQUIRE(got == expected);
        (expected ? accepted : rejected)++;
    }
    REQUIRE(accepted > 100);
    REQUIRE(rejected > 100);
}

TEST_CASE("alignment set semantics") {
    Alignment a{{1, 1}, {1, 2}};
    REQUIRE(a.targets_of(1) == std::set<int>{1, 2});
    REQUIRE(a.targets_of(2).empty());  // spontaneous
    Alignment b{{1, 2}, {2, 2}};
    REQUIRE(b.sources_of(2) == std::set<int>{1, 2});
    REQUIRE(b.transposed().targets_of(2) == std::set<int>{1, 2});
    REQUIRE(Alignment{}.empty());
    REQUIRE_THROWS_AS(Alignment({{0, 1}}), IndexError);
    // duplicates collapse through set construction
    REQUIRE(Alignment(std::set<Alignment::Link>{{1, 1}, {1, 1}}).size() == 1);
}

TEST_CASE("aligned pair validates link ranges") {
    DepTree t = make_tree({{"a", "X"}, {"b", "X"}}, {0, 1});
    REQUIRE_NOTHROW(AlignedPair("p", t, t, Alignment{{2, 2}}));
    REQUIRE_THROWS_AS(AlignedPair("p", t, t, Alignment{{3, 1}}), IndexError);
    REQUIRE_THROWS_AS(AlignedPair("p", t, t, Alignment{{1, 3}}), IndexError);
    REQUIRE_NOTHROW(AlignedPair("p", t, t, Alignment{}));  // empty alignment permitted
}

TEST_CASE("corpus rejects duplicate pair ids") {
    DepTree t = make_tree({{"a", "X"}}, {0});
    AlignedPair p("same", t, t, Alignment{});
    REQUIRE_THROWS_AS(Corpus({p, p}), DuplicateIdError);
    REQUIRE(Corpus({p}).size() == 1);
}
