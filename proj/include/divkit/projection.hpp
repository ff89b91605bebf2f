#ifndef DIVKIT_PROJECTION_HPP
#define DIVKIT_PROJECTION_HPP

#include <string>
#include <vector>

#include "divkit/core.hpp"

// Direct projection of POS tags and dependency structure from the parsed
// side (E) onto the other side (F) through the word alignment.
//
// Multi-alignments resolve leftmost-first everywhere. Head assignment climbs
// the E tree transitively over tokens with no F counterpart. F tokens with
// no aligned E token stay unattached and surface with head -1; they carry
// the sentinel POS "UNK", which no learned rule ever matches.

namespace divkit {

class ProjectionDegenerateError : public Error { public: using Error::Error; };

inline constexpr const char* kUnknownPos = "UNK";

// A partial dependency forest over F's tokens. heads entries: -1 unattached,
// 0 root, otherwise a token index. The attached part is acyclic with at
// most one root.
struct ProjectedTree {
    std::vector<Token> tokens;  // forms from F, POS projected from E
    std::vector<int> heads;

    int size() const { return static_cast<int>(tokens.size()); }

    bool attached(int idx) const { return heads.at(idx - 1) >= 0; }

    int head_of(int idx) const { return heads.at(idx - 1); }

    // Attached non-root edges as (child, head), child ascending.
    std::vector<std::pair<int, int>> attached_edges() const {
        std::vector<std::pair<int, int>> out;
        for (int i = 1; i <= size(); ++i)
            if (heads[i - 1] >= 1) out.emplace_back(i, heads[i - 1]);
        return out;
    }

    bool operator==(const ProjectedTree&) const = default;
};

inline std::vector<std::string> project_pos(const DepTree& e, const Alignment& a,
                                            const std::vector<Token>& f_tokens) {
    std::vector<std::string> out;
    out.reserve(f_tokens.size());
    for (const Token& tok : f_tokens) {
        auto targets = a.targets_of(tok.index);
        out.push_back(targets.empty() ? std::string(kUnknownPos)
                                      : e.token(*targets.begin()).pos);
    }
    return out;
}

inline ProjectedTree project_tree(const DepTree& e, const Alignment& a,
                                  const std::vector<Token>& f_tokens) {
    const int n = static_cast<int>(f_tokens.size());
    if (a.empty())
        throw ProjectionDegenerateError("no token is aligned; nothing to project");

    ProjectedTree proj;
    proj.heads.assign(n, -1);
    const auto pos = project_pos(e, a, f_tokens);
    for (int i = 0; i < n; ++i)
        proj.tokens.push_back(Token{i + 1, f_tokens[i].form, pos[i]});

    // True when `node` lies below `ancestor` in the partial forest built so far.
    auto is_descendant = [&proj, n](int node, int ancestor) {
        int cur = node;
        for (int steps = 0; steps <= n; ++steps) {
            if (cur == ancestor) return true;
            if (cur <= 0) return false;
            cur = proj.heads[cur - 1];
        }
        return false;
    };

    for (int f = 1; f <= n; ++f) {
        const auto targets = a.targets_of(f);
        if (targets.empty()) continue;
        int cur = e.head_of(*targets.begin());
        while (true) {
            if (cur == 0) {
                proj.heads[f - 1] = 0;  // image chain ended at E's root
                break;
            }
            const auto sources = a.sources_of(cur);
            if (!sources.empty()) {
                int fh = *sources.begin();
                // skip heads that would close a cycle in the partial forest
                if (fh != f && !is_descendant(fh, f)) {
                    proj.heads[f - 1] = fh;
                    break;
                }
            }
            cur = e.head_of(cur);
        }
    }

    // Root normalization: the designated root is the leftmost F token aligned
    // to E's root, falling back to the leftmost token whose image chain ended
    // at the root, then to the leftmost attached token. Every other head-0
    // token re-heads to it so the forest keeps a single root.
    int root = 0;
    const auto root_sources = a.sources_of(e.root());
    if (!root_sources.empty()) {
        root = *root_sources.begin();
    } else {
        for (int f = 1; f <= n && root == 0; ++f)
            if (proj.heads[f - 1] == 0) root = f;
        for (int f = 1; f <= n && root == 0; ++f)
            if (proj.heads[f - 1] > 0) root = f;
    }
    proj.heads[root - 1] = 0;
    for (int f = 1; f <= n; ++f)
        if (f != root && proj.heads[f - 1] == 0) proj.heads[f - 1] = root;
    return proj;
}

// Projects the target side of a pair onto its source side.
inline ProjectedTree project_pair(const AlignedPair& pair) {
    return project_tree(pair.target(), pair.alignment(), pair.source().tokens());
}

}  // namespace divkit

#endif  // DIVKIT_PROJECTION_HPP
