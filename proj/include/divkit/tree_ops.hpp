#ifndef DIVKIT_TREE_OPS_HPP
#define DIVKIT_TREE_OPS_HPP

#include <map>
#include <string>
#include <vector>

#include "divkit/core.hpp"

// The three tree rewriting operations: remove a token, merge a child into
// its parent, and swap a child with its parent. remove and merge shrink the
// tree and reindex the survivors to a contiguous 1..n-1 range; the returned
// index_map (old index -> new index) lets callers rewrite alignments. swap
// only rewires heads and leaves indices untouched.

namespace divkit {

class LastTokenError : public Error { public: using Error::Error; };
class NotAnEdgeError : public Error { public: using Error::Error; };

enum class OpKind { Remove, Merge, Swap };
enum class Side { Source, Target };

inline const char* to_string(OpKind k) {
    switch (k) {
        case OpKind::Remove: return "remove";
        case OpKind::Merge: return "merge";
        default: return "swap";
    }
}

inline const char* to_string(Side s) { return s == Side::Source ? "source" : "target"; }

// One applied operation; the raw material for the POS breakdown tables.
// For Remove the affected token's POS is stored in child_pos.
struct OpLogEntry {
    std::string pair_id;
    OpKind kind = OpKind::Remove;
    Side side = Side::Source;
    std::string child_pos;
    std::string parent_pos;
    std::string forms;            // affected surface forms, space-joined
    bool root_promotion = false;  // remove of the root: leftmost child promoted
};

using OpLog = std::vector<OpLogEntry>;

struct TreeEdit {
    DepTree tree;
    std::map<int, int> index_map;  // old index -> new index for survivors
    bool root_promotion = false;
};

namespace detail {

inline std::map<int, int> shift_map(int n, int removed) {
    std::map<int, int> m;
    for (int i = 1; i <= n; ++i)
        if (i != removed) m.emplace(i, i > removed ? i - 1 : i);
    return m;
}

inline DepTree rebuild(const DepTree& t, const std::vector<int>& new_heads, int removed,
                       const std::map<int, int>& idx_map,
                       const std::map<int, Token>& replacements) {
    std::vector<Token> tokens;
    std::map<int, int> heads;
    for (const Token& tok : t.tokens()) {
        if (tok.index == removed) continue;
        Token out = tok;
        if (auto it = replacements.find(tok.index); it != replacements.end()) out = it->second;
        int ni = idx_map.at(tok.index);
        out.index = ni;
        int h = new_heads[tok.index - 1];
        tokens.push_back(std::move(out));
        heads[ni] = h == 0 ? 0 : idx_map.at(h);
    }
    return DepTree::build(std::move(tokens), heads);
}

}  // namespace detail

// Deletes w's edge to its parent and re-heads w's children to that parent.
// When w is the root its leftmost child becomes the new root and the other
// children re-head to it (root_promotion is set on the result).
inline TreeEdit remove_token(const DepTree& t, int w) {
    t.token(w);  // index check
    if (t.size() < 2) throw LastTokenError("cannot remove the only token of a tree");
    const int parent = t.head_of(w);
    std::vector<int> heads(t.size());
    for (int i = 1; i <= t.size(); ++i) heads[i - 1] = t.head_of(i);
    bool promoted = false;
    if (parent == 0) {
        const auto kids = t.children(w);  // non-empty: every other token hangs below the root
        const int new_root = kids.front();
        heads[new_root - 1] = 0;
        for (int c : kids)
            if (c != new_root) heads[c - 1] = new_root;
        promoted = true;
    } else {
        for (int c : t.children(w)) heads[c - 1] = parent;
    }
    auto idx_map = detail::shift_map(t.size(), w);
    return TreeEdit{detail::rebuild(t, heads, w, idx_map, {}), std::move(idx_map), promoted};
}

// Collapses the edge (child, parent): child's children re-head to parent,
// child's token disappears, and the surviving node keeps parent's position
// and POS with form "childform+parentform". The index_map sends the merged
// child to the surviving node so alignment links transfer to it.
inline TreeEdit merge_edge(const DepTree& t, int child, int parent) {
    t.token(child);
    t.token(parent);
    if (t.head_of(child) != parent)
        throw NotAnEdgeError("(" + std::to_string(child) + ", " + std::to_string(parent) +
                             ") is not an edge");
    std::vector<int> heads(t.size());
    for (int i = 1; i <= t.size(); ++i) heads[i - 1] = t.head_of(i);
    for (int c : t.children(child)) heads[c - 1] = parent;
    Token merged = t.token(parent);
    merged.form = t.token(child).form + "+" + t.token(parent).form;
    auto idx_map = detail::shift_map(t.size(), child);
    DepTree out = detail::rebuild(t, heads, child, idx_map, {{parent, merged}});
    idx_map.emplace(child, idx_map.at(parent));
    return TreeEdit{std::move(out), std::move(idx_map), false};
}

// Reverses the edge (child, parent): parent becomes a child of child, and
// child attaches to parent's former head (becoming root if parent was root).
// Both keep their remaining children; indices never change.
inline DepTree swap_edge(const DepTree& t, int child, int parent) {
    t.token(child);
    t.token(parent);
    if (t.head_of(child) != parent)
        throw NotAnEdgeError("(" + std::to_string(child) + ", " + std::to_string(parent) +
                             ") is not an edge");
    std::map<int, int> heads;
    for (int i = 1; i <= t.size(); ++i) heads[i] = t.head_of(i);
    heads[child] = t.head_of(parent);
    heads[parent] = child;
    return DepTree::build(t.tokens(), heads);
}

}  // namespace divkit

#endif  // DIVKIT_TREE_OPS_HPP
