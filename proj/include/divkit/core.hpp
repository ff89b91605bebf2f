#ifndef DIVKIT_CORE_HPP
#define DIVKIT_CORE_HPP

#include <algorithm>
#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

// Core data model: tokens, dependency trees, word alignments, aligned tree
// pairs and corpora. All types are immutable value objects once constructed;
// every structural edit elsewhere in the library produces a new tree.

namespace divkit {

class Error : public std::runtime_error {
public:
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

class CycleError : public Error { public: using Error::Error; };
class NoRootError : public Error { public: using Error::Error; };
class MultipleRootError : public Error { public: using Error::Error; };
class DanglingHeadError : public Error { public: using Error::Error; };
class TokenError : public Error { public: using Error::Error; };
class IndexError : public Error { public: using Error::Error; };
class DuplicateIdError : public Error { public: using Error::Error; };

enum class Direction { SrcToTgt, TgtToSrc };

inline const char* to_string(Direction d) {
    return d == Direction::SrcToTgt ? "src-tgt" : "tgt-src";
}

inline Direction flipped(Direction d) {
    return d == Direction::SrcToTgt ? Direction::TgtToSrc : Direction::SrcToTgt;
}

// One surface word. index is the 1-based surface position; pos is an opaque
// tag (no tagset validation, inputs mix PTB-style and other inventories).
struct Token {
    int index = 0;
    std::string form;
    std::string pos;

    bool operator==(const Token&) const = default;
};

// Rooted single-headed dependency tree over a token sequence. Head index 0
// is the virtual root sentinel; exactly one token has head 0.
class DepTree {
public:
    // Validates all tree invariants: contiguous 1..n token indices, non-empty
    // forms, a head for every token, exactly one root, no cycles.
    static DepTree build(std::vector<Token> tokens, const std::map<int, int>& heads) {
        if (tokens.empty())
            throw TokenError("a tree needs at least one token");
        std::sort(tokens.begin(), tokens.end(),
                  [](const Token& a, const Token& b) { return a.index < b.index; });
        const int n = static_cast<int>(tokens.size());
        for (int i = 0; i < n; ++i) {
            if (tokens[i].index != i + 1) {
                if (i > 0 && tokens[i].index == tokens[i - 1].index)
                    throw TokenError("duplicate token index " + std::to_string(tokens[i].index));
                throw TokenError("token indices must form a contiguous 1.." +
                                 std::to_string(n) + " range");
            }
            if (tokens[i].form.empty())
                throw TokenError("token " + std::to_string(i + 1) + " has an empty form");
        }
        std::vector<int> head_vec(n, -1);
        for (const auto& [idx, head] : heads) {
            if (idx < 1 || idx > n)
                throw DanglingHeadError("head given for unknown token index " + std::to_string(idx));
            if (head < 0 || head > n)
                throw DanglingHeadError("head index " + std::to_string(head) +
                                        " of token " + std::to_string(idx) + " is out of range");
            if (head == idx)
                throw CycleError("token " + std::to_string(idx) + " is its own head");
            head_vec[idx - 1] = head;
        }
        int root_count = 0;
        for (int i = 0; i < n; ++i) {
            if (head_vec[i] < 0)
                throw DanglingHeadError("no head given for token " + std::to_string(i + 1));
            if (head_vec[i] == 0)
                ++root_count;
        }
        for (int i = 1; i <= n; ++i) {
            int cur = i, steps = 0;
            while (cur != 0) {
                cur = head_vec[cur - 1];
                if (++steps > n)
                    throw CycleError("head chain from token " + std::to_string(i) +
                                     " never reaches the root");
            }
        }
        // a total acyclic head map always reaches 0, so by now roots >= 1
        if (root_count == 0) throw NoRootError("no token has head 0");
        if (root_count > 1) throw MultipleRootError("more than one token has head 0");
        return DepTree(std::move(tokens), std::move(head_vec));
    }

    int size() const { return static_cast<int>(tokens_.size()); }

    const std::vector<Token>& tokens() const { return tokens_; }

    const Token& token(int idx) const {
        check_index(idx);
        return tokens_[idx - 1];
    }

    // Head of a token; 0 for the root.
    int head_of(int idx) const {
        check_index(idx);
        return heads_[idx - 1];
    }

    int root() const {
        for (int i = 0; i < size(); ++i)
            if (heads_[i] == 0) return i + 1;
        return 0;  // unreachable on a validated tree
    }

    // All j with head(j) == idx, ascending. idx 0 yields the root index.
    std::vector<int> children(int idx) const {
        if (idx != 0) check_index(idx);
        std::vector<int> out;
        for (int i = 0; i < size(); ++i)
            if (heads_[i] == idx) out.push_back(i + 1);
        return out;
    }

    // Non-root edges as (child, parent), child ascending. |edges| == n - 1.
    std::vector<std::pair<int, int>> edges() const {
        std::vector<std::pair<int, int>> out;
        for (int i = 0; i < size(); ++i)
            if (heads_[i] != 0) out.emplace_back(i + 1, heads_[i]);
        return out;
    }

    bool operator==(const DepTree&) const = default;

private:
    DepTree(std::vector<Token> tokens, std::vector<int> heads)
        : tokens_(std::move(tokens)), heads_(std::move(heads)) {}

    void check_index(int idx) const {
        if (idx < 1 || idx > size())
            throw IndexError("token index " + std::to_string(idx) + " out of range 1.." +
                             std::to_string(size()));
    }

    std::vector<Token> tokens_;
    std::vector<int> heads_;
};

// Many-to-many word alignment: a set of 1-based (source, target) index pairs.
class Alignment {
public:
    using Link = std::pair<int, int>;

    Alignment() = default;

    explicit Alignment(std::set<Link> links) : links_(std::move(links)) {
        for (const auto& [f, e] : links_)
            if (f < 1 || e < 1)
                throw IndexError("alignment links are 1-based");
    }

    Alignment(std::initializer_list<Link> links) : Alignment(std::set<Link>(links)) {}

    const std::set<Link>& links() const { return links_; }
    bool empty() const { return links_.empty(); }
    int size() const { return static_cast<int>(links_.size()); }

    bool contains(int f, int e) const { return links_.count({f, e}) != 0; }

    std::set<int> targets_of(int f) const {
        std::set<int> out;
        for (const auto& [a, b] : links_)
            if (a == f) out.insert(b);
        return out;
    }

    std::set<int> sources_of(int e) const {
        std::set<int> out;
        for (const auto& [a, b] : links_)
            if (b == e) out.insert(a);
        return out;
    }

    Alignment transposed() const {
        std::set<Link> out;
        for (const auto& [f, e] : links_) out.emplace(e, f);
        return Alignment(std::move(out));
    }

    bool operator==(const Alignment&) const = default;

private:
    std::set<Link> links_;
};

// A source tree F, a target tree E and a word alignment A between them.
class AlignedPair {
public:
    AlignedPair(std::string id, DepTree source, DepTree target, Alignment alignment)
        : id_(std::move(id)),
          source_(std::move(source)),
          target_(std::move(target)),
          alignment_(std::move(alignment)) {
        if (id_.empty()) throw TokenError("pair id must be non-empty");
        for (const auto& [f, e] : alignment_.links()) {
            if (f > source_.size())
                throw IndexError("alignment source index " + std::to_string(f) +
                                 " exceeds source length " + std::to_string(source_.size()));
            if (e > target_.size())
                throw IndexError("alignment target index " + std::to_string(e) +
                                 " exceeds target length " + std::to_string(target_.size()));
        }
    }

    const std::string& id() const { return id_; }
    const DepTree& source() const { return source_; }
    const DepTree& target() const { return target_; }
    const Alignment& alignment() const { return alignment_; }

    const DepTree& side(Direction d) const {
        return d == Direction::SrcToTgt ? source_ : target_;
    }
    const DepTree& other_side(Direction d) const {
        return d == Direction::SrcToTgt ? target_ : source_;
    }

    bool operator==(const AlignedPair&) const = default;

private:
    std::string id_;
    DepTree source_;
    DepTree target_;
    Alignment alignment_;
};

class Corpus {
public:
    Corpus() = default;

    explicit Corpus(std::vector<AlignedPair> pairs) : pairs_(std::move(pairs)) {
        std::set<std::string> seen;
        for (const auto& p : pairs_)
            if (!seen.insert(p.id()).second)
                throw DuplicateIdError("duplicate pair id \"" + p.id() + "\"");
    }

    const std::vector<AlignedPair>& pairs() const { return pairs_; }
    bool empty() const { return pairs_.empty(); }
    int size() const { return static_cast<int>(pairs_.size()); }

    bool operator==(const Corpus&) const = default;

private:
    std::vector<AlignedPair> pairs_;
};

}  // namespace divkit

#endif  // DIVKIT_CORE_HPP
